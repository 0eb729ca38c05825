#include "orthohaptic/orthoglide.hpp"

#include <doctest.h>

#include <cmath>

using namespace orthohaptic;

namespace {

OrthoglideParams default_params() { return OrthoglideParams{}; }

// sphere-constraint residual of an ik result
double ik_residual(const Vec3& p, const PrismaticVector& rho, const OrthoglideParams& params) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        worst = std::max(worst,
                         std::abs((p - rho[i] * params.axes[i]).norm() - params.L));
    return worst;
}

}  // namespace

TEST_CASE("ik at home and along an axis") {
    const OrthoglideParams params = default_params();
    const PrismaticVector home = ik(Vec3::Zero(), params);
    CHECK(home[0] == 1.0);
    CHECK(home[1] == 1.0);
    CHECK(home[2] == 1.0);

    // closed form: rho = (1.1, sqrt(0.99), sqrt(0.99)); frozen from the
    // sphere-constraint oracle
    const PrismaticVector rho = ik(Vec3(0.1, 0, 0), params);
    CHECK(rho[0] == doctest::Approx(1.1).epsilon(1e-12));
    CHECK(rho[1] == doctest::Approx(0.99498743710662).epsilon(1e-12));
    CHECK(rho[2] == doctest::Approx(0.99498743710662).epsilon(1e-12));
    CHECK(ik_residual(Vec3(0.1, 0, 0), rho, params) < 1e-12);
}

TEST_CASE("ik failure modes") {
    const OrthoglideParams params = default_params();
    try {
        ik(Vec3(0, 1.2, 0), params);
        FAIL("expected OutsideCylinder");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OutsideCylinder);
        CHECK(e.index() == 1);
    }

    // rho_1 = 0.95 + 1 = 1.95 beyond the 1.9 limit
    try {
        ik(Vec3(0.95, 0, 0), params);
        FAIL("expected RangeLimit");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RangeLimit);
        CHECK(e.index() == 1);
    }
    CHECK_NOTHROW(ik(Vec3(0.95, 0, 0), params, /*check_limits=*/false));
}

TEST_CASE("fk inverts ik on the home sheet") {
    const OrthoglideParams params = default_params();
    CHECK((fk(PrismaticVector(1, 1, 1), params) - Vec3::Zero()).norm() < 1e-15);

    const Vec3 p(0.1, 0, 0);
    const Vec3 back = fk(ik(p, params), params);
    CHECK((back - p).norm() < 1e-9);

    // rho = (1,1,1) also admits the mirror point (2/3, 2/3, 2/3) on the far
    // assembly sheet; the home-sheet rule must pick the origin
    const Vec3 home = fk(PrismaticVector(1, 1, 1), params);
    CHECK(home.norm() < 1e-12);
}

TEST_CASE("fk detects impossible assemblies") {
    const OrthoglideParams params = default_params();
    try {
        fk(PrismaticVector(2.5, 2.5, 2.5), params);
        FAIL("expected NoAssembly");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoAssembly);
    }
}

TEST_CASE("fk uses the seed only at the fold") {
    OrthoglideParams params = default_params();
    // tangency on the diagonal: rho = sqrt(3/2) per leg puts both sheets at
    // the same point p = (1/sqrt6, 1/sqrt6, 1/sqrt6)
    const double rho_fold = std::sqrt(1.5);
    const double u = 1.0 / std::sqrt(6.0);
    const Vec3 seeded = fk(PrismaticVector::Constant(rho_fold), params, Vec3(u, u, u));
    CHECK((seeded - Vec3(u, u, u)).norm() < 1e-6);
}

TEST_CASE("jacobian at home is the identity") {
    const OrthoglideParams params = default_params();
    const Mat3 j = jacobian(Vec3::Zero(), params);
    CHECK((j - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("jacobian matches central finite differences") {
    const OrthoglideParams params = default_params();
    const Vec3 p(0.1, 0.1, 0.1);
    const Mat3 j = jacobian(p, params);
    const PrismaticVector rho = ik(p, params);
    const double h = 1e-6;
    for (int k = 0; k < 3; ++k) {
        PrismaticVector hi = rho, lo = rho;
        hi[k] += h;
        lo[k] -= h;
        const Vec3 col = (fk(hi, params) - fk(lo, params)) / (2.0 * h);
        for (int r = 0; r < 3; ++r)
            CHECK(std::abs(j(r, k) - col[r]) <= 1e-6 * std::max(1.0, std::abs(j(r, k))));
    }
}

TEST_CASE("jacobian throws at the cylinder boundary") {
    const OrthoglideParams params = default_params();
    try {
        jacobian(Vec3(0, 1.0, 0), params);  // leg 1 orthogonal to its axis
        FAIL("expected SerialSingularity");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SerialSingularity);
        CHECK(e.index() == 1);
    }
}

TEST_CASE("amplification factors") {
    const OrthoglideParams params = default_params();
    const Vec3 at_home = amplification_factors(Vec3::Zero(), params);
    CHECK((at_home - Vec3::Ones()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(at_home[2] / at_home[0] == doctest::Approx(1.0).epsilon(1e-12));

    // SVD of the finite-difference Jacobian as an oracle
    const Vec3 p(0, 0.6, 0);
    const Vec3 sv = amplification_factors(p, params);
    const PrismaticVector rho = ik(p, params);
    Mat3 j_fd;
    const double h = 1e-6;
    for (int k = 0; k < 3; ++k) {
        PrismaticVector hi = rho, lo = rho;
        hi[k] += h;
        lo[k] -= h;
        j_fd.col(k) = (fk(hi, params) - fk(lo, params)) / (2.0 * h);
    }
    Eigen::JacobiSVD<Mat3> svd(j_fd);
    const Vec3 oracle(svd.singularValues()[2], svd.singularValues()[1],
                      svd.singularValues()[0]);
    CHECK((sv - oracle).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(sv[0] <= sv[1]);
    CHECK(sv[1] <= sv[2]);
}

TEST_CASE("singularity classification is total") {
    const OrthoglideParams params = default_params();
    CHECK(singularity_report(Vec3::Zero(), params).kind == SingularityClass::Regular);
    CHECK(singularity_report(Vec3(0, 1.2, 0), params).kind == SingularityClass::Outside);

    const SingularityReport serial = singularity_report(Vec3(0, 1.0, 0), params);
    CHECK(serial.kind == SingularityClass::Serial);
    CHECK(serial.serial_legs[0]);
    CHECK_FALSE(serial.serial_legs[1]);

    // coplanar leg directions on the diagonal at u = 1/sqrt(6); the
    // determinant oracle |det A| < 1e-8 agrees there
    const double u = 1.0 / std::sqrt(6.0);
    const SingularityReport par = singularity_report(Vec3(u, u, u), params);
    CHECK(par.kind == SingularityClass::Parallel);
    const LegState st = leg_state(Vec3(u, u, u), params);
    Mat3 a;
    for (int i = 0; i < 3; ++i) a.row(i) = st.d[i];
    CHECK(std::abs(a.determinant()) < 1e-8);
}

TEST_CASE("params validation") {
    OrthoglideParams params = default_params();
    params.L = -1.0;
    CHECK_THROWS_AS(params.validate(), Error);
    params = default_params();
    params.axes[1] = Vec3(1, 0, 0);  // not orthogonal to axes[0]
    CHECK_THROWS_AS(params.validate(), Error);
}
