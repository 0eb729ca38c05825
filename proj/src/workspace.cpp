#include "orthohaptic/workspace.hpp"

#include "orthohaptic/text.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <thread>

namespace orthohaptic {

namespace {

struct LegQuantities {
    double r2;   // squared transverse radius
    double rho;  // positive-branch prismatic value (clamped sqrt)
};

LegQuantities leg_quantities(const Vec3& p, const OrthoglideParams& params, int i) {
    const double xi = p.dot(params.axes[i]);
    const double r2 = p.squaredNorm() - xi * xi;
    const double s = std::sqrt(std::max(params.L * params.L - r2, 0.0));
    return {r2, xi + s};
}

// Amplification margin relative to the band [1/psi, psi]; a large constant
// stands in for singular points where no factors exist.
double amplification_margin(const Vec3& p, const WorkspaceSpec& spec) {
    const SingularityReport rep = singularity_report(p, spec.params);
    if (rep.kind != SingularityClass::Regular) return 1e6;
    const Vec3 s = amplification_factors(p, spec.params);
    return std::max(s[2] - *spec.psi, 1.0 / *spec.psi - s[0]);
}

}  // namespace

void WorkspaceSpec::validate() const {
    params.validate();
    if (psi && !(*psi >= 1.0)) raise(ErrorCode::BadConfig, "psi must be >= 1");
    if (!(exclude_singular_shell >= 0.0))
        raise(ErrorCode::BadConfig, "exclude_singular_shell must be >= 0");
}

MembershipResult is_member(const Vec3& p, const WorkspaceSpec& spec) {
    const double L = spec.params.L;
    const double shrink = L * (1.0 - spec.exclude_singular_shell);
    for (int i = 0; i < 3; ++i) {
        const LegQuantities q = leg_quantities(p, spec.params, i);
        if (q.r2 > shrink * shrink) return {false, MemberFail::Cylinder, i + 1};
        if (q.rho < spec.params.rho_min) return {false, MemberFail::RangeMin, i + 1};
        if (q.rho > spec.params.rho_max) return {false, MemberFail::RangeMax, i + 1};
    }
    if (spec.psi && amplification_margin(p, spec) > 0.0)
        return {false, MemberFail::Amplification, 0};
    return {};
}

double membership_margin(const Vec3& p, const WorkspaceSpec& spec) {
    const double L = spec.params.L;
    const double shrink = L * (1.0 - spec.exclude_singular_shell);
    double margin = -1e300;
    bool geometric_ok = true;
    for (int i = 0; i < 3; ++i) {
        const LegQuantities q = leg_quantities(p, spec.params, i);
        margin = std::max(margin, (std::sqrt(q.r2) - shrink) / L);
        margin = std::max(margin, (spec.params.rho_min - q.rho) / L);
        margin = std::max(margin, (q.rho - spec.params.rho_max) / L);
        if (q.r2 > shrink * shrink || q.rho < spec.params.rho_min ||
            q.rho > spec.params.rho_max)
            geometric_ok = false;
    }
    if (spec.psi && geometric_ok)
        margin = std::max(margin, amplification_margin(p, spec));
    return margin;
}

namespace {

// Sample set of an axis-aligned cube boundary: corners, edge midpoints, face
// centers, and an n-by-n grid on each face.
std::vector<Vec3> cube_boundary_samples(const Vec3& center, double edge, int n) {
    std::vector<Vec3> pts;
    const double h = edge / 2.0;
    if (edge <= 0.0) {
        pts.push_back(center);
        return pts;
    }
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) pts.push_back(center + h * Vec3(sx, sy, sz));
    for (int axis = 0; axis < 3; ++axis)
        for (int s1 : {-1, 1})
            for (int s2 : {-1, 1}) {
                Vec3 d = Vec3::Zero();
                d[(axis + 1) % 3] = s1;
                d[(axis + 2) % 3] = s2;
                pts.push_back(center + h * d);  // edge midpoint
            }
    for (int axis = 0; axis < 3; ++axis)
        for (int s : {-1, 1}) {
            Vec3 d = Vec3::Zero();
            d[axis] = s;
            pts.push_back(center + h * d);  // face center
        }
    const int m = std::max(n, 2);
    for (int axis = 0; axis < 3; ++axis)
        for (int s : {-1, 1})
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    Vec3 d;
                    d[axis] = double(s);
                    d[(axis + 1) % 3] = -1.0 + 2.0 * a / (m - 1);
                    d[(axis + 2) % 3] = -1.0 + 2.0 * b / (m - 1);
                    pts.push_back(center + h * d);
                }
    return pts;
}

double cube_margin(const WorkspaceSpec& spec, double c, double edge, int n) {
    const Vec3 center(c, c, c);
    double worst = -1e300;
    for (const Vec3& p : cube_boundary_samples(center, edge, n))
        worst = std::max(worst, membership_margin(p, spec));
    return worst;
}

// Coarse scan plus golden-section refinement of min_c cube_margin(c, edge).
std::pair<double, double> best_center(const WorkspaceSpec& spec, double edge, int n) {
    const double L = spec.params.L;
    const double lo = -L, hi = L;
    const int coarse = 33;
    double best_c = lo, best_g = 1e300;
    for (int i = 0; i < coarse; ++i) {
        const double c = lo + (hi - lo) * i / (coarse - 1);
        const double g = cube_margin(spec, c, edge, n);
        if (g < best_g) {
            best_g = g;
            best_c = c;
        }
    }
    const double span = (hi - lo) / (coarse - 1);
    double a = best_c - span, b = best_c + span;
    const double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = cube_margin(spec, x1, edge, n);
    double f2 = cube_margin(spec, x2, edge, n);
    for (int it = 0; it < 40; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = cube_margin(spec, x1, edge, n);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = cube_margin(spec, x2, edge, n);
        }
    }
    if (f1 < best_g) {
        best_g = f1;
        best_c = x1;
    }
    if (f2 < best_g) {
        best_g = f2;
        best_c = x2;
    }
    return {best_c, best_g};
}

}  // namespace

CubeResult largest_cube(const WorkspaceSpec& spec, int face_samples) {
    spec.validate();
    if (face_samples < 3) raise(ErrorCode::BadConfig, "face_samples must be >= 3");
    const double L = spec.params.L;

    const auto [c0, g0] = best_center(spec, 0.0, face_samples);
    if (g0 > spec.params.tol.residual)
        raise(ErrorCode::EmptyWorkspace, "no feasible point on the workspace diagonal");

    double lo = 0.0, hi = 2.0 * L;
    double lo_center = c0;
    if (best_center(spec, hi, face_samples).second <= 0.0)
        raise(ErrorCode::BadConfig, "workspace appears unbounded");

    while (hi - lo > 1e-6 * L) {
        const double mid = 0.5 * (lo + hi);
        const auto [c, g] = best_center(spec, mid, face_samples);
        if (g <= 0.0) {
            lo = mid;
            lo_center = c;
        } else {
            hi = mid;
        }
    }

    CubeResult cube;
    cube.edge = lo;
    cube.center = Vec3(lo_center, lo_center, lo_center);
    cube.axis_aligned = true;
    return cube;
}

std::vector<ConditioningRow> conditioning_map(const WorkspaceSpec& spec, const GridSpec& grid) {
    spec.validate();
    for (int a = 0; a < 3; ++a)
        if (grid.n[a] < 1) raise(ErrorCode::BadConfig, "grid resolution must be >= 1");

    const auto coord = [&](int axis, int idx) {
        if (grid.n[axis] == 1) return 0.5 * (grid.lo[axis] + grid.hi[axis]);
        return grid.lo[axis] +
               (grid.hi[axis] - grid.lo[axis]) * idx / double(grid.n[axis] - 1);
    };

    const std::size_t total =
        std::size_t(grid.n[0]) * std::size_t(grid.n[1]) * std::size_t(grid.n[2]);
    std::vector<ConditioningRow> rows(total);

    const auto eval_row = [&](std::size_t flat) {
        const int iz = int(flat % grid.n[2]);
        const int iy = int((flat / grid.n[2]) % grid.n[1]);
        const int ix = int(flat / (std::size_t(grid.n[1]) * grid.n[2]));
        ConditioningRow row;
        row.p = Vec3(coord(0, ix), coord(1, iy), coord(2, iz));
        row.member = bool(is_member(row.p, spec));
        if (row.member &&
            singularity_report(row.p, spec.params).kind == SingularityClass::Regular) {
            const Vec3 s = amplification_factors(row.p, spec.params);
            row.sigma_valid = true;
            row.sigma_min = s[0];
            row.sigma_max = s[2];
            row.kappa = s[2] / s[0];
        }
        rows[flat] = row;
    };

    // independent rows: evaluate concurrently, slots keep index order
    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), 16u);
    if (workers <= 1 || total < 1024) {
        for (std::size_t i = 0; i < total; ++i) eval_row(i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                for (std::size_t i = w; i < total; i += workers) eval_row(i);
            });
        }
        for (auto& t : pool) t.join();
    }
    return rows;
}

void write_conditioning_csv(const std::vector<ConditioningRow>& rows, std::ostream& os) {
    os << "x,y,z,sigma_min,sigma_max,kappa,member\n";
    for (const auto& row : rows) {
        os << format_shortest(row.p.x()) << ',' << format_shortest(row.p.y()) << ','
           << format_shortest(row.p.z()) << ',';
        if (row.sigma_valid)
            os << format_shortest(row.sigma_min) << ',' << format_shortest(row.sigma_max)
               << ',' << format_shortest(row.kappa);
        else
            os << ",,";
        os << ',' << (row.member ? "true" : "false") << '\n';
    }
}

}  // namespace orthohaptic
