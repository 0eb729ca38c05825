#include "orthohaptic/geometry.hpp"

#include <cmath>

namespace orthohaptic {

void Tolerances::validate() const {
    if (!(unit > 0.0) || !(residual > 0.0) || !(singular > 0.0) || !(grid_match > 0.0))
        raise(ErrorCode::BadConfig, "tolerances must be strictly positive");
    if (residual < unit)
        raise(ErrorCode::BadConfig, "tol.residual must be >= tol.unit");
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonUnitAxis: return "NonUnitAxis";
        case ErrorCode::NotARotation: return "NotARotation";
        case ErrorCode::OutsideCylinder: return "OutsideCylinder";
        case ErrorCode::RangeLimit: return "RangeLimit";
        case ErrorCode::NoAssembly: return "NoAssembly";
        case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
        case ErrorCode::SerialSingularity: return "SerialSingularity";
        case ErrorCode::ParallelSingularity: return "ParallelSingularity";
        case ErrorCode::LimitViolation: return "LimitViolation";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::GimbalDegeneracy: return "GimbalDegeneracy";
        case ErrorCode::LegDegeneracy: return "LegDegeneracy";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::JacobianSingular: return "JacobianSingular";
        case ErrorCode::WristSingular: return "WristSingular";
        case ErrorCode::BendTooLarge: return "BendTooLarge";
        case ErrorCode::MisalignedYokes: return "MisalignedYokes";
        case ErrorCode::EmptyWorkspace: return "EmptyWorkspace";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::BadConfig: return "BadConfig";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, std::string detail, int index)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
      code_(code),
      index_(index) {}

void raise(ErrorCode code, const std::string& detail, int index) {
    throw Error(code, detail, index);
}

Rot3 Rot3::from_matrix(const Mat3& m, double ortho_tol) {
    const Mat3 gram = m.transpose() * m;
    const double drift = (gram - Mat3::Identity()).cwiseAbs().maxCoeff();
    if (drift > ortho_tol)
        raise(ErrorCode::NotARotation, "matrix is not orthonormal within tolerance");
    if (m.determinant() <= 0.0)
        raise(ErrorCode::NotARotation, "matrix has non-positive determinant");
    return Rot3(m, unchecked_tag{});
}

Rot3 rot_axis_angle(const Vec3& axis, double angle, const Tolerances& tol) {
    if (std::abs(axis.norm() - 1.0) > tol.unit)
        raise(ErrorCode::NonUnitAxis, "rotation axis must have unit norm");
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Mat3 k;
    k << 0, -axis.z(), axis.y(),
         axis.z(), 0, -axis.x(),
        -axis.y(), axis.x(), 0;
    const Mat3 m = Mat3::Identity() + s * k + (1.0 - c) * (k * k);
    return Rot3(m, Rot3::unchecked_tag{});
}

Vec3 rot_log(const Rot3& R) {
    const Mat3& m = R.matrix();
    // w = sin(theta) * axis, c = cos(theta)
    const Vec3 w(0.5 * (m(2, 1) - m(1, 2)),
                 0.5 * (m(0, 2) - m(2, 0)),
                 0.5 * (m(1, 0) - m(0, 1)));
    const double s = w.norm();
    const double c = 0.5 * (m.trace() - 1.0);
    const double theta = std::atan2(s, c);

    if (c >= 0.0) {
        if (s > 1e-9) return (theta / s) * w;
        // theta near zero: theta/sin(theta) ~ 1 + theta^2/6
        return (1.0 + theta * theta / 6.0) * w;
    }
    if (s > 1e-3) return (theta / s) * w;

    // theta near pi, where the skew part cancels: the symmetric part
    // S = c I + (1 - c) a a^T still carries the axis at full precision
    const Mat3 sym = 0.5 * (m + m.transpose());
    int k = 0;
    sym.diagonal().maxCoeff(&k);
    const double denom = 1.0 - c;
    Vec3 a;
    a[k] = std::sqrt(std::max((sym(k, k) - c) / denom, 0.0));
    const double scale = 1.0 / (denom * std::max(a[k], 1e-300));
    a[(k + 1) % 3] = sym((k + 1) % 3, k) * scale;
    a[(k + 2) % 3] = sym((k + 2) % 3, k) * scale;
    a.normalize();
    // orient along the remaining skew signal; at exactly pi either
    // representative is valid
    if (s > 0.0 && a.dot(w) < 0.0) a = -a;
    return theta * a;
}

Rot3 orthonormalize(const Mat3& raw, const Tolerances& tol) {
    (void)tol;
    if (raw.determinant() <= 0.0)
        raise(ErrorCode::NotARotation, "determinant is non-positive");
    Eigen::JacobiSVD<Mat3> svd(raw, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 proj = svd.matrixU() * svd.matrixV().transpose();
    if (proj.determinant() < 0.0) {
        // closest special-orthogonal factor: flip the smallest singular direction
        Mat3 u = svd.matrixU();
        u.col(2) *= -1.0;
        proj = u * svd.matrixV().transpose();
    }
    constexpr double kMaxDrift = 1e-6;
    if ((raw - proj).cwiseAbs().maxCoeff() > kMaxDrift)
        raise(ErrorCode::NotARotation, "input drifts more than 1e-6 from a proper rotation");
    return Rot3(proj, Rot3::unchecked_tag{});
}

}  // namespace orthohaptic
