#pragma once

#include "orthohaptic/orthoglide.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace orthohaptic {

/// Membership data for the translational workspace: the geometric constraints
/// of the stage plus an optional velocity-amplification band [1/psi, psi] and
/// a cylinder-shell exclusion margin.
struct WorkspaceSpec {
    OrthoglideParams params;
    std::optional<double> psi;            // >= 1 when present
    double exclude_singular_shell = 0.0;  // shrinks the cylinder radii to L*(1-margin)

    void validate() const;
};

enum class MemberFail { None, Cylinder, RangeMin, RangeMax, Amplification };

struct MembershipResult {
    bool member = true;
    MemberFail fail = MemberFail::None;
    int leg = 0;  // 1-based leg for per-leg failures, 0 otherwise

    explicit operator bool() const { return member; }
};

/// Axis-aligned inscribed cube.
struct CubeResult {
    Vec3 center = Vec3::Zero();
    double edge = 0.0;
    bool axis_aligned = true;
};

struct GridSpec {
    Vec3 lo = Vec3(-1, -1, -1);
    Vec3 hi = Vec3(1, 1, 1);
    std::array<int, 3> n = {2, 2, 2};
};

struct ConditioningRow {
    Vec3 p = Vec3::Zero();
    bool member = false;
    bool sigma_valid = false;  // false for non-members and singular points
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    double kappa = 0.0;
};

/// Membership with the first failing constraint, checked in the order
/// cylinder, range-low, range-high per leg 1..3, then the amplification band.
MembershipResult is_member(const Vec3& p, const WorkspaceSpec& spec);

/// Signed feasibility margin (<= 0 inside the workspace). Length-like terms
/// are scaled by 1/L so geometric and amplification margins are comparable.
double membership_margin(const Vec3& p, const WorkspaceSpec& spec);

/// Largest axis-aligned cube with center on the x=y=z diagonal. Feasibility
/// of a candidate is sampled on the 8 corners, 12 edge midpoints, 6 face
/// centers and an n-by-n grid per face; the outer loop bisects the edge with
/// a nested golden-section search over the center position.
/// Throws EmptyWorkspace when no feasible center exists even at edge zero.
CubeResult largest_cube(const WorkspaceSpec& spec, int face_samples = 17);

/// Row-major scan (x slowest, z fastest) of membership and amplification
/// factors. Rows are computed concurrently but returned in index order.
std::vector<ConditioningRow> conditioning_map(const WorkspaceSpec& spec, const GridSpec& grid);

/// CSV schema: x,y,z,sigma_min,sigma_max,kappa,member with empty sigma fields
/// when sigma_valid is false; doubles use shortest round-trip formatting.
void write_conditioning_csv(const std::vector<ConditioningRow>& rows, std::ostream& os);

}  // namespace orthohaptic
