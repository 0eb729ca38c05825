#pragma once

#include "orthohaptic/geometry.hpp"

#include <array>
#include <optional>

namespace orthohaptic {

/// Geometry of the translational stage: three orthogonal prismatic axes, one
/// leg length. Base and platform offsets are absorbed into the rho origin and
/// the platform reference point, so each leg obeys |p - rho_i * e_i| = L.
struct OrthoglideParams {
    double L = 1.0;
    double rho_min = 0.1;
    double rho_max = 1.9;
    std::array<Vec3, 3> axes = {unit_x(), unit_y(), unit_z()};
    Tolerances tol = {};

    void validate() const;
};

/// Actuated prismatic joint values, one per leg.
using PrismaticVector = Vec3;

/// Per-leg direction data at a platform position.
struct LegState {
    std::array<Vec3, 3> d;    // unit leg directions (p - rho_i e_i)/L
    std::array<double, 3> c;  // axial components d_i . e_i
    PrismaticVector rho;
};

enum class SingularityClass { Regular, Serial, Parallel, Outside };

struct SingularityReport {
    SingularityClass kind = SingularityClass::Regular;
    std::array<bool, 3> serial_legs = {false, false, false};  // valid when kind == Serial
};

/// Inverse position model, positive square-root branch for every leg:
///   rho_i = p.e_i + sqrt(L^2 - r_i^2),  r_i^2 = |p|^2 - (p.e_i)^2.
/// Throws OutsideCylinder(i) when r_i > L, and RangeLimit(i) when the result
/// leaves [rho_min, rho_max] (unless check_limits is false).
PrismaticVector ik(const Vec3& p, const OrthoglideParams& params, bool check_limits = true);

/// Forward position model by exact three-sphere intersection. Of the two
/// intersection points the one on the home assembly sheet (det A < 0, the
/// sheet containing rho = L*(1,1,1) -> p = 0) is returned; `seed` is consulted
/// only when the spheres are tangent within tol.singular.
Vec3 fk(const PrismaticVector& rho, const OrthoglideParams& params,
        const std::optional<Vec3>& seed = std::nullopt);

/// Leg directions and axial components at p (rho recomputed via ik without
/// range checking).
LegState leg_state(const Vec3& p, const OrthoglideParams& params);

/// Jacobian J = A^{-1} B mapping prismatic rates to platform velocity, where
/// A has rows d_i^T and B = diag(c_i). Throws SerialSingularity(i) when
/// |c_i| <= tol.singular and ParallelSingularity when |det A| <= tol.singular.
Mat3 jacobian(const Vec3& p, const OrthoglideParams& params);

/// Ordered singular values (sigma_min, sigma_mid, sigma_max) of the Jacobian.
Vec3 amplification_factors(const Vec3& p, const OrthoglideParams& params);

/// Total singularity classification; never throws.
SingularityReport singularity_report(const Vec3& p, const OrthoglideParams& params);

}  // namespace orthohaptic
