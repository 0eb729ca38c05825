#include "orthohaptic/sizing.hpp"

#include <algorithm>
#include <cmath>

namespace orthohaptic {

namespace {

struct PlacementReport {
    double worst_margin = 1e300;  // max over samples of the violation margin
    double sigma_min = 1e300;
    double sigma_max = 0.0;
    int geometric_failures = 0;
    int amplification_failures = 0;
    double rho_low = 1e300;
    double rho_high = -1e300;
};

// One cube placement: membership and amplification over an m^3 grid.
PlacementReport evaluate_placement(const OrthoglideParams& params, double psi, double offset,
                                   double edge, int m) {
    PlacementReport rep;
    rep.worst_margin = -1e300;
    WorkspaceSpec geometric{params, std::nullopt, 0.0};
    const double h = edge / 2.0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c) {
                Vec3 frac(a, b, c);
                Vec3 p = Vec3::Constant(offset - h);
                if (m > 1) p += frac * (edge / (m - 1));
                rep.worst_margin = std::max(rep.worst_margin, membership_margin(p, geometric));
                if (!is_member(p, geometric)) {
                    ++rep.geometric_failures;
                    continue;
                }
                const PrismaticVector rho = ik(p, params, /*check_limits=*/false);
                rep.rho_low = std::min(rep.rho_low, rho.minCoeff());
                rep.rho_high = std::max(rep.rho_high, rho.maxCoeff());
                if (singularity_report(p, params).kind != SingularityClass::Regular) {
                    ++rep.amplification_failures;
                    rep.worst_margin = std::max(rep.worst_margin, 1e6);
                    continue;
                }
                const Vec3 s = amplification_factors(p, params);
                rep.sigma_min = std::min(rep.sigma_min, s[0]);
                rep.sigma_max = std::max(rep.sigma_max, s[2]);
                const double amp_margin = std::max(s[2] - psi, 1.0 / psi - s[0]);
                if (amp_margin > 0.0) ++rep.amplification_failures;
                rep.worst_margin = std::max(rep.worst_margin, amp_margin);
            }
    return rep;
}

}  // namespace

void DesignSpec::validate() const {
    if (!(required_edge > 0.0)) raise(ErrorCode::BadConfig, "required_edge must be positive");
    if (!(psi >= 1.0)) raise(ErrorCode::BadConfig, "psi must be >= 1");
    if (!(margin >= 0.0)) raise(ErrorCode::BadConfig, "margin must be >= 0");
}

EvalResult evaluate_design(const OrthoglideParams& candidate, const DesignSpec& spec,
                           int grid_m) {
    spec.validate();
    candidate.validate();
    if (grid_m < 2) raise(ErrorCode::BadConfig, "grid_m must be >= 2");

    // Diagonal offsets are scanned over the reach of the stage; the best
    // placement is the one with the smallest worst-case violation.
    const double span = 0.75 * candidate.L;
    const int n_offsets = 41;
    EvalResult out;
    double best = 1e300;
    for (int i = 0; i < n_offsets; ++i) {
        const double u = -span + 2.0 * span * i / (n_offsets - 1);
        const PlacementReport rep =
            evaluate_placement(candidate, spec.psi, u, spec.required_edge, grid_m);
        if (rep.worst_margin < best) {
            best = rep.worst_margin;
            out.offset = u;
            out.feasible = rep.worst_margin <= 0.0;
            out.sigma_min = rep.sigma_min;
            out.sigma_max = rep.sigma_max;
            out.geometric_failures = rep.geometric_failures;
            out.amplification_failures = rep.amplification_failures;
            out.rho_low = rep.rho_low;
            out.rho_high = rep.rho_high;
        }
    }
    return out;
}

DesignResult size_device(const DesignSpec& spec, int grid_m) {
    spec.validate();
    if (!(spec.psi > 1.0))
        raise(ErrorCode::BadConfig, "size_device requires psi > 1");

    // Normalized problem in units of the required edge: find the smallest
    // lambda = L / edge carrying a unit cube. Every decision below is made on
    // dimensionless numbers, which keeps the result exactly linear in the
    // edge length.
    DesignSpec unit_spec{1.0, spec.psi, 0.0};
    const auto feasible = [&](double lambda, int m) {
        OrthoglideParams cand;
        cand.L = lambda;
        cand.rho_min = -1e9;  // range is derived afterwards, not a constraint
        cand.rho_max = 1e9;
        return evaluate_design(cand, unit_spec, m);
    };

    double hi = 1.0;
    while (!feasible(hi, grid_m).feasible) {
        hi *= 2.0;
        if (hi > 1000.0)
            raise(ErrorCode::Infeasible,
                  "no leg length up to 1000x the required edge satisfies the bound");
    }
    double lo = hi;
    while (feasible(lo * 0.5, grid_m).feasible) {
        lo *= 0.5;
        if (lo < 1.0 / 1024.0) break;
    }
    hi = lo;    // smallest length known feasible
    lo *= 0.5;  // known infeasible (or the bracket floor)

    while ((hi - lo) / hi > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid, grid_m).feasible)
            hi = mid;
        else
            lo = mid;
    }

    // Verification on a grid twice as fine; grow the length slightly when the
    // finer sampling exposes optimism at the coarse grid.
    const int fine_m = 2 * grid_m - 1;
    double lambda = hi;
    EvalResult fine = feasible(lambda, fine_m);
    for (int attempt = 0; attempt < 50 && !fine.feasible; ++attempt) {
        lambda *= 1.002;
        fine = feasible(lambda, fine_m);
    }
    if (!fine.feasible)
        raise(ErrorCode::Infeasible, "refinement verification failed to converge");

    DesignResult result;
    result.params.L = lambda * spec.required_edge;
    result.params.rho_min = fine.rho_low * spec.required_edge - spec.margin;
    result.params.rho_max = fine.rho_high * spec.required_edge + spec.margin;
    result.cube.center = Vec3::Constant(fine.offset * spec.required_edge);
    result.cube.edge = spec.required_edge;
    result.cube.axis_aligned = true;
    result.sigma_min = fine.sigma_min;
    result.sigma_max = fine.sigma_max;
    return result;
}

}  // namespace orthohaptic
