#include "orthohaptic/sizing.hpp"

#include <doctest.h>

#include <cmath>

using namespace orthohaptic;

namespace {

OrthoglideParams unconstrained(double L) {
    OrthoglideParams params;
    params.L = L;
    params.rho_min = -1e9;
    params.rho_max = 1e9;
    return params;
}

}  // namespace

TEST_CASE("a vanishing cube is feasible with sigma near one") {
    DesignSpec spec;
    spec.required_edge = 1e-6;
    spec.psi = 2.0;
    const EvalResult rep = evaluate_design(unconstrained(1.0), spec, 3);
    CHECK(rep.feasible);
    CHECK(rep.sigma_min == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(rep.sigma_max == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("a rigid band admits no finite cube") {
    DesignSpec spec;
    spec.required_edge = 0.2;
    spec.psi = 1.0;
    const EvalResult rep = evaluate_design(unconstrained(1.0), spec, 9);
    CHECK_FALSE(rep.feasible);
    CHECK(rep.amplification_failures > 0);
}

TEST_CASE("report extrema match per-point recomputation") {
    DesignSpec spec;
    spec.required_edge = 0.4;
    spec.psi = 2.0;
    const OrthoglideParams params = unconstrained(1.0);
    const EvalResult rep = evaluate_design(params, spec, 5);
    REQUIRE(rep.feasible);

    double smin = 1e300, smax = 0.0;
    const double h = spec.required_edge / 2.0;
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            for (int c = 0; c < 5; ++c) {
                const Vec3 p = Vec3::Constant(rep.offset - h) +
                               Vec3(a, b, c) * (spec.required_edge / 4.0);
                const Vec3 s = amplification_factors(p, params);
                smin = std::min(smin, s[0]);
                smax = std::max(smax, s[2]);
            }
    CHECK(rep.sigma_min == doctest::Approx(smin).epsilon(1e-12));
    CHECK(rep.sigma_max == doctest::Approx(smax).epsilon(1e-12));
}

TEST_CASE("size_device returns a verified design") {
    DesignSpec spec;
    spec.required_edge = 0.5;
    spec.psi = 2.0;
    const DesignResult res = size_device(spec);

    CHECK(res.cube.edge == spec.required_edge);
    CHECK(res.params.L > spec.required_edge / 2.0);
    CHECK(res.sigma_max <= spec.psi + 1e-9);
    CHECK(res.sigma_min >= 1.0 / spec.psi - 1e-9);

    // independent refinement check on a finer grid
    const EvalResult fine = evaluate_design(res.params, spec, 17);
    CHECK(fine.feasible);

    // the rho range covers every cube corner
    const double h = res.cube.edge / 2.0;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) {
                const PrismaticVector rho =
                    ik(res.cube.center + h * Vec3(sx, sy, sz), res.params, false);
                CHECK(rho.minCoeff() >= res.params.rho_min - 1e-12);
                CHECK(rho.maxCoeff() <= res.params.rho_max + 1e-12);
            }
}

TEST_CASE("doubling the edge doubles the machine") {
    DesignSpec spec;
    spec.required_edge = 0.3;
    spec.psi = 2.0;
    const DesignResult a = size_device(spec);
    spec.required_edge = 0.6;
    const DesignResult b = size_device(spec);
    CHECK(b.params.L == doctest::Approx(2.0 * a.params.L).epsilon(1e-9));
}

TEST_CASE("margins widen the returned range") {
    DesignSpec spec;
    spec.required_edge = 0.4;
    spec.psi = 2.0;
    const DesignResult tight = size_device(spec);
    spec.margin = 0.05;
    const DesignResult wide = size_device(spec);
    CHECK(wide.params.rho_min == doctest::Approx(tight.params.rho_min - 0.05).epsilon(1e-9));
    CHECK(wide.params.rho_max == doctest::Approx(tight.params.rho_max + 0.05).epsilon(1e-9));
}

TEST_CASE("impossible bounds raise Infeasible") {
    DesignSpec spec;
    spec.required_edge = 0.5;
    spec.psi = 1.0 + 1e-12;
    try {
        size_device(spec, 3);
        FAIL("expected Infeasible");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Infeasible);
    }
}

TEST_CASE("spec validation") {
    DesignSpec spec;
    spec.required_edge = -1.0;
    CHECK_THROWS_AS(spec.validate(), Error);
    spec.required_edge = 0.5;
    spec.psi = 0.5;
    CHECK_THROWS_AS(spec.validate(), Error);
}
