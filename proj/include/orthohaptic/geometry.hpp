#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace orthohaptic {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Shared numeric tolerances. All kinematic routines take these instead of
/// hard-coding epsilons; length-like bounds are relative to the leg length.
struct Tolerances {
    double unit = 1e-12;       // unit-norm drift of direction vectors
    double residual = 1e-9;    // constraint residuals (relative to L)
    double singular = 1e-8;    // singularity detection threshold
    double grid_match = 0.01;  // fractional agreement with sampling oracles

    void validate() const;
};

enum class ErrorCode {
    NonUnitAxis,
    NotARotation,
    OutsideCylinder,
    RangeLimit,
    NoAssembly,
    BranchAmbiguity,
    SerialSingularity,
    ParallelSingularity,
    LimitViolation,
    OutOfRange,
    GimbalDegeneracy,
    LegDegeneracy,
    NoConvergence,
    JacobianSingular,
    WristSingular,
    BendTooLarge,
    MisalignedYokes,
    EmptyWorkspace,
    Infeasible,
    BadConfig,
    IoError,
};

const char* error_code_name(ErrorCode code);

/// Single exception type for all kinematic failures. `index` is the 1-based
/// leg or joint number when the failure is per-leg, otherwise 0.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, std::string detail, int index = 0);

    ErrorCode code() const { return code_; }
    int index() const { return index_; }

  private:
    ErrorCode code_;
    int index_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& detail, int index = 0);

/// Proper rotation matrix (R^T R = I, det R = +1). Construction from a raw
/// matrix validates; composition of valid rotations is left unchecked since
/// round-off drift stays far below the validation bound.
class Rot3 {
  public:
    Rot3() : m_(Mat3::Identity()) {}

    /// Validating constructor; throws NotARotation if `m` is not orthonormal
    /// within `ortho_tol` elementwise or has det <= 0.
    static Rot3 from_matrix(const Mat3& m, double ortho_tol = 1e-10);

    static Rot3 identity() { return Rot3(); }

    const Mat3& matrix() const { return m_; }

    Rot3 transposed() const { return Rot3(m_.transpose(), unchecked_tag{}); }
    Rot3 operator*(const Rot3& rhs) const { return Rot3(m_ * rhs.m_, unchecked_tag{}); }
    Vec3 operator*(const Vec3& v) const { return m_ * v; }

    double operator()(int r, int c) const { return m_(r, c); }

    bool is_approx(const Rot3& rhs, double tol) const {
        return (m_ - rhs.m_).cwiseAbs().maxCoeff() <= tol;
    }

  private:
    struct unchecked_tag {};
    Rot3(const Mat3& m, unchecked_tag) : m_(m) {}

    Mat3 m_;

    friend Rot3 rot_axis_angle(const Vec3&, double, const Tolerances&);
    friend Rot3 orthonormalize(const Mat3&, const Tolerances&);
};

/// Rotation by `angle` (rad, right-hand rule) about a unit `axis`.
/// Throws NonUnitAxis when |norm(axis) - 1| > tol.unit.
Rot3 rot_axis_angle(const Vec3& axis, double angle, const Tolerances& tol = {});

/// Rotation vector w with rot_axis_angle(w/|w|, |w|) == R and |w| in [0, pi].
/// At |w| == pi either antipodal representative may be returned.
Vec3 rot_log(const Rot3& R);

/// Nearest proper rotation (polar projection). The input must be within 1e-6
/// of a proper rotation; reflections and larger drift throw NotARotation.
Rot3 orthonormalize(const Mat3& raw, const Tolerances& tol = {});

inline Vec3 unit_x() { return Vec3(1, 0, 0); }
inline Vec3 unit_y() { return Vec3(0, 1, 0); }
inline Vec3 unit_z() { return Vec3(0, 0, 1); }

constexpr double kPi = 3.141592653589793238462643383279502884;

inline double deg2rad(double d) { return d * (kPi / 180.0); }
inline double rad2deg(double r) { return r * (180.0 / kPi); }

}  // namespace orthohaptic
