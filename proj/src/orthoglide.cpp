#include "orthohaptic/orthoglide.hpp"

#include <cmath>

namespace orthohaptic {

namespace {

// Signed determinant of the matrix with rows d_i^T; the sign separates the
// two assembly sheets of the forward map (home sheet has det < 0).
double leg_matrix_det(const std::array<Vec3, 3>& d) {
    Mat3 a;
    for (int i = 0; i < 3; ++i) a.row(i) = d[i];
    return a.determinant();
}

std::array<Vec3, 3> leg_dirs(const Vec3& p, const PrismaticVector& rho,
                             const OrthoglideParams& params) {
    std::array<Vec3, 3> d;
    for (int i = 0; i < 3; ++i) d[i] = (p - rho[i] * params.axes[i]) / params.L;
    return d;
}

}  // namespace

void OrthoglideParams::validate() const {
    if (!(L > 0.0)) raise(ErrorCode::BadConfig, "leg length L must be positive");
    if (!(rho_min < rho_max) && rho_min != rho_max)
        raise(ErrorCode::BadConfig, "rho_min must not exceed rho_max");
    tol.validate();
    for (int i = 0; i < 3; ++i) {
        if (std::abs(axes[i].norm() - 1.0) > tol.unit)
            raise(ErrorCode::NonUnitAxis, "prismatic axis is not unit length", i + 1);
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(axes[i].dot(axes[j])) > tol.unit)
                raise(ErrorCode::BadConfig, "prismatic axes must be mutually orthogonal");
    }
}

PrismaticVector ik(const Vec3& p, const OrthoglideParams& params, bool check_limits) {
    const double L2 = params.L * params.L;
    const double pp = p.squaredNorm();
    PrismaticVector rho;
    for (int i = 0; i < 3; ++i) {
        const double xi = p.dot(params.axes[i]);
        const double r2 = pp - xi * xi;
        if (r2 > L2)
            raise(ErrorCode::OutsideCylinder,
                  "point lies outside the cylinder of leg " + std::to_string(i + 1), i + 1);
        rho[i] = xi + std::sqrt(std::max(L2 - r2, 0.0));
        if (check_limits && (rho[i] < params.rho_min || rho[i] > params.rho_max))
            raise(ErrorCode::RangeLimit,
                  "rho_" + std::to_string(i + 1) + " outside actuator range", i + 1);
    }
    return rho;
}

Vec3 fk(const PrismaticVector& rho, const OrthoglideParams& params,
        const std::optional<Vec3>& seed) {
    const double L = params.L;
    const double L2 = L * L;

    // Work in axis coordinates x_i = p.e_i. Sphere i gives
    //   t - 2 rho_i x_i + rho_i^2 = L^2   with t = |p|^2,
    // so x_i(t) = (t + a_i) / (2 rho_i), a_i = rho_i^2 - L^2, and the closure
    // sum x_i(t)^2 = t is a quadratic in t.
    int zero_count = 0;
    int zero_leg = -1;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(rho[i]) <= params.tol.singular * L) {
            ++zero_count;
            zero_leg = i;
        }
    }
    if (zero_count >= 2)
        raise(ErrorCode::BranchAmbiguity,
              "two coincident sphere centers admit a continuum of assemblies");

    auto axis_point = [&](const Vec3& x) {
        return x[0] * params.axes[0] + x[1] * params.axes[1] + x[2] * params.axes[2];
    };

    std::array<Vec3, 2> candidates;
    int n_candidates = 0;

    if (zero_count == 0) {
        double alpha = 0.0, beta = -1.0, gamma = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double a = rho[i] * rho[i] - L2;
            const double inv = 1.0 / (4.0 * rho[i] * rho[i]);
            alpha += inv;
            beta += 2.0 * a * inv;
            gamma += a * a * inv;
        }
        const double disc = beta * beta - 4.0 * alpha * gamma;
        if (disc < 0.0)
            raise(ErrorCode::NoAssembly, "the three leg spheres have no common point");
        // numerically stable quadratic roots
        const double q = -0.5 * (beta + std::copysign(std::sqrt(disc), beta));
        double t0 = q / alpha;
        double t1 = (q != 0.0) ? gamma / q : t0;
        if (t0 > t1) std::swap(t0, t1);
        for (double t : {t0, t1}) {
            if (t < 0.0) continue;
            Vec3 x;
            for (int i = 0; i < 3; ++i) x[i] = (t + rho[i] * rho[i] - L2) / (2.0 * rho[i]);
            candidates[n_candidates++] = axis_point(x);
            if (disc == 0.0) break;  // tangent spheres: single point
        }
    } else {
        // One sphere centered at the origin: its equation pins t = L^2.
        const double t = L2;
        Vec3 x = Vec3::Zero();
        double rest = t;
        for (int i = 0; i < 3; ++i) {
            if (i == zero_leg) continue;
            x[i] = (t + rho[i] * rho[i] - L2) / (2.0 * rho[i]);
            rest -= x[i] * x[i];
        }
        if (rest < 0.0)
            raise(ErrorCode::NoAssembly, "the three leg spheres have no common point");
        for (double sgn : {-1.0, 1.0}) {
            x[zero_leg] = sgn * std::sqrt(rest);
            candidates[n_candidates++] = axis_point(x);
            if (rest == 0.0) break;
        }
    }

    if (n_candidates == 0)
        raise(ErrorCode::NoAssembly, "the three leg spheres have no common point");

    // Keep candidates that actually satisfy the sphere constraints (guards
    // against cancellation in near-degenerate quadratics).
    std::array<Vec3, 2> valid;
    std::array<double, 2> dets;
    int n_valid = 0;
    for (int k = 0; k < n_candidates; ++k) {
        bool ok = true;
        for (int i = 0; i < 3; ++i) {
            const double res =
                std::abs((candidates[k] - rho[i] * params.axes[i]).norm() - L);
            if (res > params.tol.residual * L * 10.0) ok = false;
        }
        if (!ok) continue;
        valid[n_valid] = candidates[k];
        dets[n_valid] = leg_matrix_det(leg_dirs(candidates[k], rho, params));
        ++n_valid;
    }
    if (n_valid == 0)
        raise(ErrorCode::NoAssembly, "no sphere intersection satisfies the residual bound");

    if (n_valid == 1) return valid[0];

    const bool home0 = dets[0] < -params.tol.singular;
    const bool home1 = dets[1] < -params.tol.singular;
    if (home0 != home1) return home0 ? valid[0] : valid[1];

    // Both candidates sit on the fold (tangency) or neither is clearly on the
    // home sheet; a seed disambiguates, otherwise the branch is ambiguous.
    if (seed) {
        return ((valid[0] - *seed).squaredNorm() <= (valid[1] - *seed).squaredNorm())
                   ? valid[0]
                   : valid[1];
    }
    if (home0 && home1)
        raise(ErrorCode::BranchAmbiguity, "both intersection points satisfy the branch rule");
    raise(ErrorCode::BranchAmbiguity, "assembly branch undecidable at the fold");
}

LegState leg_state(const Vec3& p, const OrthoglideParams& params) {
    LegState st;
    st.rho = ik(p, params, /*check_limits=*/false);
    st.d = leg_dirs(p, st.rho, params);
    for (int i = 0; i < 3; ++i) st.c[i] = st.d[i].dot(params.axes[i]);
    return st;
}

Mat3 jacobian(const Vec3& p, const OrthoglideParams& params) {
    const LegState st = leg_state(p, params);
    Mat3 a;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(st.c[i]) <= params.tol.singular)
            raise(ErrorCode::SerialSingularity,
                  "leg " + std::to_string(i + 1) + " is orthogonal to its axis", i + 1);
        a.row(i) = st.d[i];
    }
    if (std::abs(a.determinant()) <= params.tol.singular)
        raise(ErrorCode::ParallelSingularity, "leg directions are linearly dependent");
    Mat3 b = Mat3::Zero();
    for (int i = 0; i < 3; ++i) b(i, i) = st.c[i];
    return a.partialPivLu().solve(b);
}

Vec3 amplification_factors(const Vec3& p, const OrthoglideParams& params) {
    const Mat3 j = jacobian(p, params);
    Eigen::JacobiSVD<Mat3> svd(j);
    const Vec3 s = svd.singularValues();  // descending
    return Vec3(s[2], s[1], s[0]);
}

SingularityReport singularity_report(const Vec3& p, const OrthoglideParams& params) {
    SingularityReport rep;
    const double L2 = params.L * params.L;
    const double pp = p.squaredNorm();
    for (int i = 0; i < 3; ++i) {
        const double xi = p.dot(params.axes[i]);
        if (pp - xi * xi > L2) {
            rep.kind = SingularityClass::Outside;
            return rep;
        }
    }
    const LegState st = leg_state(p, params);
    bool serial = false;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(st.c[i]) <= params.tol.singular) {
            rep.serial_legs[i] = true;
            serial = true;
        }
    }
    if (serial) {
        rep.kind = SingularityClass::Serial;
        return rep;
    }
    if (std::abs(leg_matrix_det(st.d)) <= params.tol.singular) {
        rep.kind = SingularityClass::Parallel;
        return rep;
    }
    rep.kind = SingularityClass::Regular;
    return rep;
}

}  // namespace orthohaptic
