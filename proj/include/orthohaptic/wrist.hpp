#pragma once

#include "orthohaptic/geometry.hpp"

#include <array>

namespace orthohaptic {

enum class WristTag { Hybrid2R1R, Spherical3R };

/// Wrist variant plus its base mounting rotation. The mount carries the home
/// distinguished axis: mount*z == z for the hybrid wrist and
/// mount*z == (1,1,1)/sqrt(3) for the spherical wrist.
struct WristVariant {
    WristTag tag = WristTag::Hybrid2R1R;
    Rot3 mount = Rot3::identity();

    static WristVariant hybrid();
    static WristVariant spherical();

    void validate(const Tolerances& tol = {}) const;
};

/// Hybrid wrist joint values: pitch and yaw are limited, roll is unbounded.
struct WristAngles {
    double theta1 = 0.0;  // pitch about x
    double theta2 = 0.0;  // yaw about y
    double phi = 0.0;     // roll about z, unbounded
};

/// Leg geometry of the 3-dof spherical wrist: base motor axes u_i, platform
/// markers v_i and intermediate references m_i0 with m_i0 perpendicular to u_i.
struct SphericalLegGeometry {
    std::array<Vec3, 3> u;
    std::array<Vec3, 3> v;
    std::array<Vec3, 3> m0;

    /// u_i = e_i, v_i = e_{i+1 mod 3}, m_i0 = e_{i+2 mod 3}: nondegenerate at
    /// home with an identity Jacobian there.
    static SphericalLegGeometry standard();

    /// Geometry with every vector rotated by Q (frame-change helper).
    SphericalLegGeometry rotated(const Rot3& q) const;

    void validate(const Tolerances& tol = {}) const;
};

constexpr double kDefaultPitchYawLimit = kPi / 4.0;

/// R = Rot(x, theta1) * Rot(y, theta2) * Rot(z, phi). Throws LimitViolation
/// when |theta1| or |theta2| exceeds `limit`; roll is never clamped.
Rot3 hybrid_fk(const WristAngles& a, double limit = kDefaultPitchYawLimit,
               const Tolerances& tol = {});

/// X-Y-Z factorization of R. Throws OutOfRange past the pitch/yaw limit and
/// GimbalDegeneracy when |theta2| >= pi/2 - tol.singular.
WristAngles hybrid_ik(const Rot3& R, double limit = kDefaultPitchYawLimit,
                      const Tolerances& tol = {});

/// Columns are the instantaneous joint axes in the base frame, mapping
/// (theta1_dot, theta2_dot, phi_dot) to body angular velocity. det = cos(theta2).
Mat3 hybrid_jacobian(const WristAngles& a, double limit = kDefaultPitchYawLimit,
                     const Tolerances& tol = {});

/// Motor angles solving m_i(theta_i).(R v_i) = 0 on the branch continuous
/// with theta = 0 at R = I. Throws LegDegeneracy(i) when the constraint is
/// identically satisfied for leg i.
Vec3 spm_ik(const Rot3& R, const SphericalLegGeometry& geom, const Tolerances& tol = {});

/// Newton solve of the three leg constraints, parameterized by an incremental
/// rotation vector with re-orthonormalization each step. Throws NoConvergence
/// after max_iter and JacobianSingular when the Newton system drops rank.
Rot3 spm_fk(const Vec3& theta, const SphericalLegGeometry& geom,
            const Rot3& seed = Rot3::identity(), const Tolerances& tol = {},
            int max_iter = 50);

/// Maps motor rates to body angular velocity from the linearized constraints;
/// identity at R = I with the standard geometry. Throws WristSingular when the
/// constraint matrix is rank-deficient within tol.singular.
Mat3 spm_jacobian(const Rot3& R, const SphericalLegGeometry& geom,
                  const Tolerances& tol = {});

struct LimitsCheck {
    bool ok = true;
    std::array<bool, 3> offending = {false, false, false};
};

/// Hybrid: checks pitch and yaw against the limit, never roll.
LimitsCheck wrist_limits_check(const WristAngles& a, double limit = kDefaultPitchYawLimit);

/// Spherical: applies the same bound to all three motor angles.
LimitsCheck wrist_limits_check(const Vec3& theta, double limit = kDefaultPitchYawLimit);

}  // namespace orthohaptic
