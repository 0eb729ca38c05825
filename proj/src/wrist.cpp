#include "orthohaptic/wrist.hpp"

#include <algorithm>
#include <cmath>

namespace orthohaptic {

namespace {

const Vec3 kDiagonal = Vec3(1, 1, 1).normalized();

Rot3 minimal_rotation_z_to(const Vec3& target) {
    const Vec3 z = unit_z();
    const Vec3 axis = z.cross(target);
    const double s = axis.norm();
    const double c = z.dot(target);
    if (s < 1e-15) return Rot3::identity();
    return rot_axis_angle(axis / s, std::atan2(s, c));
}

}  // namespace

WristVariant WristVariant::hybrid() { return WristVariant{WristTag::Hybrid2R1R, Rot3::identity()}; }

WristVariant WristVariant::spherical() {
    return WristVariant{WristTag::Spherical3R, minimal_rotation_z_to(kDiagonal)};
}

void WristVariant::validate(const Tolerances& tol) const {
    const Vec3 axis = mount * unit_z();
    const Vec3 expected = (tag == WristTag::Hybrid2R1R) ? unit_z() : kDiagonal;
    if ((axis - expected).norm() > 1e3 * tol.unit)
        raise(ErrorCode::BadConfig, "mount does not map z to the variant's home axis");
}

SphericalLegGeometry SphericalLegGeometry::standard() {
    SphericalLegGeometry g;
    const std::array<Vec3, 3> e = {unit_x(), unit_y(), unit_z()};
    for (int i = 0; i < 3; ++i) {
        g.u[i] = e[i];
        g.v[i] = e[(i + 1) % 3];
        g.m0[i] = e[(i + 2) % 3];
    }
    return g;
}

SphericalLegGeometry SphericalLegGeometry::rotated(const Rot3& q) const {
    SphericalLegGeometry g;
    for (int i = 0; i < 3; ++i) {
        g.u[i] = q * u[i];
        g.v[i] = q * v[i];
        g.m0[i] = q * m0[i];
    }
    return g;
}

void SphericalLegGeometry::validate(const Tolerances& tol) const {
    for (int i = 0; i < 3; ++i) {
        if (std::abs(u[i].norm() - 1.0) > tol.unit || std::abs(v[i].norm() - 1.0) > tol.unit ||
            std::abs(m0[i].norm() - 1.0) > tol.unit)
            raise(ErrorCode::NonUnitAxis, "wrist geometry vector is not unit length", i + 1);
        if (std::abs(m0[i].dot(u[i])) > tol.unit)
            raise(ErrorCode::BadConfig, "m0 must be perpendicular to u for leg " +
                                            std::to_string(i + 1));
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(u[i].dot(u[j])) > tol.unit)
                raise(ErrorCode::BadConfig, "motor axes must be mutually orthogonal");
}

Rot3 hybrid_fk(const WristAngles& a, double limit, const Tolerances& tol) {
    const double slack = tol.residual;
    if (std::abs(a.theta1) > limit + slack)
        raise(ErrorCode::LimitViolation, "pitch exceeds the joint limit", 1);
    if (std::abs(a.theta2) > limit + slack)
        raise(ErrorCode::LimitViolation, "yaw exceeds the joint limit", 2);
    return rot_axis_angle(unit_x(), a.theta1) * rot_axis_angle(unit_y(), a.theta2) *
           rot_axis_angle(unit_z(), a.phi);
}

WristAngles hybrid_ik(const Rot3& R, double limit, const Tolerances& tol) {
    WristAngles a;
    const double s2 = std::clamp(R(0, 2), -1.0, 1.0);
    a.theta2 = std::asin(s2);
    if (std::abs(a.theta2) >= kPi / 2.0 - tol.singular)
        raise(ErrorCode::GimbalDegeneracy, "yaw at +-90 degrees leaves pitch and roll coupled");
    a.theta1 = std::atan2(-R(1, 2), R(2, 2));
    a.phi = std::atan2(-R(0, 1), R(0, 0));
    const double slack = tol.residual;
    if (std::abs(a.theta1) > limit + slack)
        raise(ErrorCode::OutOfRange, "pitch exceeds the joint limit", 1);
    if (std::abs(a.theta2) > limit + slack)
        raise(ErrorCode::OutOfRange, "yaw exceeds the joint limit", 2);
    return a;
}

Mat3 hybrid_jacobian(const WristAngles& a, double limit, const Tolerances& tol) {
    const double slack = tol.residual;
    if (std::abs(a.theta1) > limit + slack)
        raise(ErrorCode::LimitViolation, "pitch exceeds the joint limit", 1);
    if (std::abs(a.theta2) > limit + slack)
        raise(ErrorCode::LimitViolation, "yaw exceeds the joint limit", 2);
    const Rot3 r1 = rot_axis_angle(unit_x(), a.theta1);
    const Rot3 r12 = r1 * rot_axis_angle(unit_y(), a.theta2);
    Mat3 j;
    j.col(0) = unit_x();
    j.col(1) = r1 * unit_y();
    j.col(2) = r12 * unit_z();
    return j;
}

Vec3 spm_ik(const Rot3& R, const SphericalLegGeometry& geom, const Tolerances& tol) {
    Vec3 theta;
    for (int i = 0; i < 3; ++i) {
        const Vec3 rv = R * geom.v[i];
        const double a = geom.m0[i].dot(rv);
        const double b = geom.u[i].cross(geom.m0[i]).dot(rv);
        if (std::abs(a) <= tol.singular && std::abs(b) <= tol.singular)
            raise(ErrorCode::LegDegeneracy,
                  "constraint of leg " + std::to_string(i + 1) +
                      " is satisfied for every motor angle",
                  i + 1);
        // roots of a*cos + b*sin = 0 are atan2(-a, b) + k*pi; keep the
        // representative nearest zero (the branch continuous with home)
        double t = std::atan2(-a, b);
        if (t > kPi / 2.0) t -= kPi;
        if (t <= -kPi / 2.0) t += kPi;
        theta[i] = t;
    }
    return theta;
}

namespace {

Vec3 spm_residual(const Rot3& R, const Vec3& theta, const SphericalLegGeometry& geom) {
    Vec3 f;
    for (int i = 0; i < 3; ++i) {
        const Vec3 m = rot_axis_angle(geom.u[i], theta[i]) * geom.m0[i];
        f[i] = m.dot(R * geom.v[i]);
    }
    return f;
}

}  // namespace

Rot3 spm_fk(const Vec3& theta, const SphericalLegGeometry& geom, const Rot3& seed,
            const Tolerances& tol, int max_iter) {
    std::array<Vec3, 3> m;
    for (int i = 0; i < 3; ++i) m[i] = rot_axis_angle(geom.u[i], theta[i]) * geom.m0[i];

    Rot3 R = seed;
    Vec3 f = spm_residual(R, theta, geom);
    double res = f.cwiseAbs().maxCoeff();

    // drive the iteration well below the contract bound; quadratic
    // convergence makes the extra iterations nearly free
    const double target = std::min(tol.residual, 1e-13);
    for (int iter = 0; iter < max_iter; ++iter) {
        if (res <= target) break;

        // d/d(delta) m_i.(exp([delta]x) R v_i) = ((R v_i) x m_i) . delta
        Mat3 grad;
        for (int i = 0; i < 3; ++i) grad.row(i) = (R * geom.v[i]).cross(m[i]);
        Eigen::FullPivLU<Mat3> lu(grad);
        if (lu.rank() < 3)
            raise(ErrorCode::JacobianSingular, "Newton system of the wrist FK drops rank");
        Vec3 delta = lu.solve(-f);

        // damped step: halve on residual increase
        double scale = 1.0;
        for (int k = 0; k < 30; ++k) {
            const Vec3 step = scale * delta;
            const double angle = step.norm();
            Rot3 trial = R;
            if (angle > 0.0)
                trial = orthonormalize((rot_axis_angle(step / angle, angle) * R).matrix(), tol);
            const Vec3 ft = spm_residual(trial, theta, geom);
            const double rt = ft.cwiseAbs().maxCoeff();
            if (rt < res || scale < 1e-6) {
                R = trial;
                f = ft;
                res = rt;
                break;
            }
            scale *= 0.5;
        }
    }
    if (res <= tol.residual) return R;
    raise(ErrorCode::NoConvergence, "wrist FK Newton iteration did not converge");
}

Mat3 spm_jacobian(const Rot3& R, const SphericalLegGeometry& geom, const Tolerances& tol) {
    const Vec3 theta = spm_ik(R, geom, tol);
    // theta_i_dot * (u_i x m_i).(R v_i) = (m_i x (R v_i)) . omega
    Mat3 minv;
    for (int i = 0; i < 3; ++i) {
        const Vec3 m = rot_axis_angle(geom.u[i], theta[i]) * geom.m0[i];
        const Vec3 rv = R * geom.v[i];
        const double denom = geom.u[i].cross(m).dot(rv);
        if (std::abs(denom) <= tol.singular)
            raise(ErrorCode::WristSingular,
                  "leg " + std::to_string(i + 1) + " cannot drive the platform", i + 1);
        minv.row(i) = m.cross(rv) / denom;
    }
    Eigen::FullPivLU<Mat3> lu(minv);
    if (std::abs(minv.determinant()) <= tol.singular || lu.rank() < 3)
        raise(ErrorCode::WristSingular, "wrist constraint matrix is rank-deficient");
    return lu.inverse();
}

LimitsCheck wrist_limits_check(const WristAngles& a, double limit) {
    LimitsCheck chk;
    if (std::abs(a.theta1) > limit) {
        chk.ok = false;
        chk.offending[0] = true;
    }
    if (std::abs(a.theta2) > limit) {
        chk.ok = false;
        chk.offending[1] = true;
    }
    return chk;  // roll never offends
}

LimitsCheck wrist_limits_check(const Vec3& theta, double limit) {
    LimitsCheck chk;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(theta[i]) > limit) {
            chk.ok = false;
            chk.offending[i] = true;
        }
    }
    return chk;
}

}  // namespace orthohaptic
