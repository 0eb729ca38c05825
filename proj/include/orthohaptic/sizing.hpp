#pragma once

#include "orthohaptic/workspace.hpp"

namespace orthohaptic {

/// Sizing requirement: a cube of the given edge must fit in the workspace
/// with all velocity amplification factors inside [1/psi, psi].
struct DesignSpec {
    double required_edge = 0.5;
    double psi = 2.0;
    double margin = 0.0;  // added on both ends of the returned rho range

    void validate() const;
};

/// Feasibility report of one candidate geometry for a DesignSpec. The cube is
/// scanned along the x=y=z diagonal; worst-case values are reported at the
/// best offset found.
struct EvalResult {
    bool feasible = false;
    double offset = 0.0;  // diagonal coordinate of the best cube center
    double sigma_min = 0.0;
    double sigma_max = 0.0;        // worst factors over the sample grid
    int geometric_failures = 0;    // samples failing cylinder/range membership
    int amplification_failures = 0;
    double rho_low = 0.0;   // IK extent over the cube samples
    double rho_high = 0.0;
};

/// Sized stage: smallest leg length whose workspace carries the cube, with
/// the tight rho range covering the cube plus the requested margin.
struct DesignResult {
    OrthoglideParams params;
    CubeResult cube;
    double sigma_min = 1.0;  // worst factors over the verification grid
    double sigma_max = 1.0;
};

/// Evaluates a candidate (L, rho range) against the sizing requirement on an
/// m^3 grid per cube placement, scanning the cube center along the diagonal.
EvalResult evaluate_design(const OrthoglideParams& candidate, const DesignSpec& spec,
                           int grid_m = 9);

/// Bisection on the leg length (bracket grown geometrically from the required
/// edge) with evaluate_design inside, to 1e-3 relative width; the result is
/// re-verified on a grid twice as fine. The solve runs in units of the
/// required edge, so results scale exactly linearly with it.
/// Throws Infeasible when no length up to 1000x the edge passes.
DesignResult size_device(const DesignSpec& spec, int grid_m = 9);

}  // namespace orthohaptic
