#include "orthohaptic/wrist.hpp"

#include <doctest.h>

#include <cmath>

using namespace orthohaptic;

namespace {

double rot_diff(const Rot3& a, const Rot3& b) {
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("hybrid fk") {
    CHECK(rot_diff(hybrid_fk(WristAngles{}), Rot3::identity()) == 0.0);
    CHECK(rot_diff(hybrid_fk(WristAngles{deg2rad(30), 0, 0}),
                   rot_axis_angle(unit_x(), deg2rad(30))) < 1e-15);
    // roll is never clamped
    CHECK_NOTHROW(hybrid_fk(WristAngles{deg2rad(10), deg2rad(20), deg2rad(730)}));
    try {
        hybrid_fk(WristAngles{deg2rad(50), 0, 0});
        FAIL("expected LimitViolation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LimitViolation);
        CHECK(e.index() == 1);
    }
}

TEST_CASE("hybrid ik") {
    const WristAngles home = hybrid_ik(Rot3::identity());
    CHECK(home.theta1 == 0.0);
    CHECK(home.theta2 == 0.0);
    CHECK(home.phi == 0.0);

    const WristAngles a = hybrid_ik(rot_axis_angle(unit_y(), deg2rad(40)));
    CHECK(a.theta1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(a.theta2 == doctest::Approx(deg2rad(40)).epsilon(1e-12));

    try {
        hybrid_ik(rot_axis_angle(unit_y(), deg2rad(60)));
        FAIL("expected OutOfRange");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OutOfRange);
    }

    // the gimbal fold sits outside the +-45 degree limits but is still reported
    try {
        hybrid_ik(rot_axis_angle(unit_y(), kPi / 2.0 - 1e-10));
        FAIL("expected GimbalDegeneracy");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::GimbalDegeneracy);
    }
}

TEST_CASE("hybrid ik inverts fk including roll wrap") {
    const WristAngles a{deg2rad(-12), deg2rad(33), deg2rad(150)};
    const WristAngles b = hybrid_ik(hybrid_fk(a));
    CHECK(b.theta1 == doctest::Approx(a.theta1).epsilon(1e-12));
    CHECK(b.theta2 == doctest::Approx(a.theta2).epsilon(1e-12));
    CHECK(b.phi == doctest::Approx(a.phi).epsilon(1e-12));
}

TEST_CASE("hybrid jacobian") {
    CHECK(rot_diff(Rot3::from_matrix(hybrid_jacobian(WristAngles{})), Rot3::identity()) ==
          0.0);

    // det J = cos(theta2); at the 45-degree limit that is 0.7071
    const WristAngles edge{0.0, kPi / 4.0, 0.0};
    CHECK(hybrid_jacobian(edge).determinant() ==
          doctest::Approx(std::cos(kPi / 4.0)).epsilon(1e-9));

    // finite differences of rot_log(fk) as the oracle
    const WristAngles a{0.21, -0.34, 0.5};
    const Mat3 j = hybrid_jacobian(a);
    const double h = 1e-7;
    for (int k = 0; k < 3; ++k) {
        WristAngles hi = a, lo = a;
        (k == 0 ? hi.theta1 : k == 1 ? hi.theta2 : hi.phi) += h;
        (k == 0 ? lo.theta1 : k == 1 ? lo.theta2 : lo.phi) -= h;
        const Vec3 col =
            rot_log(orthonormalize((hybrid_fk(hi) * hybrid_fk(lo).transposed()).matrix())) /
            (2.0 * h);
        CHECK((j.col(k) - col).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("spm ik") {
    const SphericalLegGeometry geom = SphericalLegGeometry::standard();
    CHECK(spm_ik(Rot3::identity(), geom).cwiseAbs().maxCoeff() == 0.0);

    const Vec3 theta = spm_ik(rot_axis_angle(unit_x(), deg2rad(10)), geom);
    CHECK(theta[0] == doctest::Approx(deg2rad(10)).epsilon(1e-12));
    CHECK(theta[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(theta[2] == doctest::Approx(0.0).epsilon(1e-12));

    // residuals vanish on the returned branch for orientations near home
    const Rot3 r = rot_axis_angle(Vec3(0.3, -0.5, 0.81).normalized(), deg2rad(18));
    const Vec3 t = spm_ik(r, geom);
    for (int i = 0; i < 3; ++i) {
        const Vec3 m = rot_axis_angle(geom.u[i], t[i]) * geom.m0[i];
        CHECK(std::abs(m.dot(r * geom.v[i])) < 1e-10);
    }
}

TEST_CASE("spm ik leg degeneracy") {
    const SphericalLegGeometry geom = SphericalLegGeometry::standard();
    // Rot(z, -90deg) maps v_1 = e2 onto u_1 = e1: the leg-1 constraint holds
    // for every motor angle
    try {
        spm_ik(rot_axis_angle(unit_z(), -kPi / 2.0), geom);
        FAIL("expected LegDegeneracy");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LegDegeneracy);
        CHECK(e.index() == 1);
    }
}

TEST_CASE("spm fk") {
    const SphericalLegGeometry geom = SphericalLegGeometry::standard();
    CHECK(rot_diff(spm_fk(Vec3::Zero(), geom), Rot3::identity()) < 1e-15);
    CHECK(rot_diff(spm_fk(Vec3(deg2rad(10), 0, 0), geom),
                   rot_axis_angle(unit_x(), deg2rad(10))) < 1e-9);

    const Vec3 theta(0.2, -0.35, 0.4);
    const Vec3 back = spm_ik(spm_fk(theta, geom), geom);
    CHECK((back - theta).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("spm jacobian") {
    const SphericalLegGeometry geom = SphericalLegGeometry::standard();
    const Mat3 at_home = spm_jacobian(Rot3::identity(), geom);
    CHECK((at_home - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::JacobiSVD<Mat3> svd(at_home);
    CHECK((svd.singularValues() - Vec3::Ones()).cwiseAbs().maxCoeff() < 1e-12);

    // finite differences of spm_fk near home
    const Vec3 theta(0.1, 0.15, -0.2);
    const Rot3 r = spm_fk(theta, geom);
    const Mat3 j = spm_jacobian(r, geom);
    const double h = 1e-6;
    for (int k = 0; k < 3; ++k) {
        Vec3 hi = theta, lo = theta;
        hi[k] += h;
        lo[k] -= h;
        const Vec3 col = rot_log(orthonormalize(
                             (spm_fk(hi, geom) * spm_fk(lo, geom).transposed()).matrix())) /
                         (2.0 * h);
        CHECK((j.col(k) - col).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("wrist limit checks") {
    CHECK(wrist_limits_check(WristAngles{0, 0, 1000.0}).ok);
    const LimitsCheck bad = wrist_limits_check(WristAngles{deg2rad(50), 0, 0});
    CHECK_FALSE(bad.ok);
    CHECK(bad.offending[0]);
    CHECK_FALSE(bad.offending[1]);
    CHECK(wrist_limits_check(WristAngles{}).ok);
    CHECK(wrist_limits_check(Vec3::Zero()).ok);
    CHECK_FALSE(wrist_limits_check(Vec3(0, deg2rad(46), 0)).ok);
}

TEST_CASE("wrist variants carry the home axis") {
    const WristVariant hybrid = WristVariant::hybrid();
    CHECK((hybrid.mount * unit_z() - unit_z()).norm() < 1e-15);
    CHECK_NOTHROW(hybrid.validate());

    const WristVariant spherical = WristVariant::spherical();
    CHECK((spherical.mount * unit_z() - Vec3(1, 1, 1).normalized()).norm() < 1e-15);
    CHECK_NOTHROW(spherical.validate());

    WristVariant wrong{WristTag::Spherical3R, Rot3::identity()};
    CHECK_THROWS_AS(wrong.validate(), Error);
}

TEST_CASE("standard spherical geometry is valid") {
    CHECK_NOTHROW(SphericalLegGeometry::standard().validate());
    SphericalLegGeometry bad = SphericalLegGeometry::standard();
    bad.m0[0] = bad.u[0];  // no longer perpendicular
    CHECK_THROWS_AS(bad.validate(), Error);
}
