#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nushift/kernel_space.hpp"

using namespace nushift;
using std::numbers::pi;

namespace {

std::vector<double> random_probes(const ShiftMap& map, int n, unsigned seed) {
    std::mt19937 rng(seed);
    const double margin = 1e-3 * map.length();
    std::uniform_real_distribution<double> dist(map.t_minus() + margin,
                                                map.t_plus() - margin);
    std::vector<double> ps(static_cast<std::size_t>(n));
    for (auto& p : ps) p = dist(rng);
    return ps;
}

} // namespace

TEST_CASE("constant seed evaluates to the constant everywhere") {
    const ShiftMap map(PerturbationField::sine(), 0.1);
    const auto elem = KernelElement::constant(map, 1.0, 2.5);
    for (double t : random_probes(map, 200, 5))
        CHECK(kernel_eval(map, elem, t) == 2.5);
    CHECK(kernel_eval(map, elem, 1e-6) == 2.5);
    CHECK(kernel_eval(map, elem, pi - 1e-6) == 2.5);
}

TEST_CASE("points inside the fundamental domain return the seed directly") {
    const ShiftMap map(PerturbationField::sine(), 0.1);
    const auto elem = KernelElement::step(map, 1.0, 0.0, 1.0, 0.5);
    const double t1 = elem.domain_end();
    CHECK(t1 == doctest::Approx(1.0 + 0.1 * std::sin(1.0)).epsilon(1e-15));
    const double split = 1.0 + 0.5 * (t1 - 1.0);
    for (int i = 0; i < 50; ++i) {
        const double t = 1.0 + (t1 - 1.0) * (i + 0.25) / 50.0;
        CHECK(kernel_eval(map, elem, t) == (t < split ? 0.0 : 1.0));
    }
}

TEST_CASE("orbit-walk oracle: three forward steps land on the same cell") {
    const ShiftMap map(PerturbationField::sine(), 0.1);
    const auto elem = KernelElement::step(map, 1.0, 0.0, 1.0, 0.5);
    const double t = 1.02;
    const double t3 = map.eval(map.eval(map.eval(t)));  // Φ³·1.02
    CHECK(kernel_eval(map, elem, t3) == kernel_eval(map, elem, t));
    CHECK(kernel_eval(map, elem, t) == 0.0);  // left half of the domain
}

TEST_CASE("verify_invariance is exactly zero for all seed kinds") {
    const ShiftMap map(PerturbationField::sine(), 0.1);
    const auto probes = random_probes(map, 100, 9);

    const auto c = KernelElement::constant(map, 1.0, -3.25);
    CHECK(verify_invariance(map, c, probes) == 0.0);

    const auto s = KernelElement::step(map, 1.0, 0.0, 1.0, 0.37);
    CHECK(verify_invariance(map, s, probes) == 0.0);

    const double t1 = s.domain_end();
    std::vector<double> ts, vals;
    for (int i = 0; i < 9; ++i) {
        ts.push_back(1.0 + (t1 - 1.0) * i / 9.0);
        vals.push_back(std::sin(7.0 * static_cast<double>(i)));
    }
    const auto smp = KernelElement::sampled(map, 1.0, ts, vals);
    CHECK(verify_invariance(map, smp, probes) == 0.0);
}

TEST_CASE("invariance is exact across the seam and in reversed orientation") {
    const ShiftMap fwd(PerturbationField::sine(), 0.1);
    const auto elem = KernelElement::step(fwd, 1.0, 0.0, 1.0, 0.5);
    // Probes straddling the discontinuity orbit: just beside the split and
    // the domain edges, pushed a few tiles away.
    std::vector<double> probes;
    const double t1 = elem.domain_end();
    const double split = 1.0 + 0.5 * (t1 - 1.0);
    for (double base : {split - 1e-9, split + 1e-9, 1.0 + 1e-9, t1 - 1e-9}) {
        double x = base;
        for (int k = 0; k < 6; ++k) {
            probes.push_back(x);
            x = fwd.eval(x);
        }
    }
    CHECK(verify_invariance(fwd, elem, probes) == 0.0);

    const ShiftMap rev(PerturbationField::sine(), -0.1);
    const auto relem = KernelElement::step(rev, 2.0, -1.0, 4.0, 0.5);
    CHECK(rev.eval(2.0) < 2.0);  // domain extends leftward
    CHECK(verify_invariance(rev, relem, random_probes(rev, 100, 13)) == 0.0);
}

TEST_CASE("base-point independence") {
    const ShiftMap map(PerturbationField::sine(), 0.1);
    const auto elem = KernelElement::step(map, 1.0, 0.0, 1.0, 0.5);

    // Rebuild the same extension from a shifted base point: the new seed's
    // cells are the old element's values at the new domain's break points.
    const double t0b = 1.03;
    const double t1b = map.eval(t0b);
    const double t1 = elem.domain_end();
    const double split = 1.0 + 0.5 * (t1 - 1.0);
    std::vector<double> ts;
    ts.push_back(t0b);
    for (double b : {split, t1, map.eval(split)})
        if (b > t0b && b < t1b) ts.push_back(b);
    std::sort(ts.begin(), ts.end());
    std::vector<double> vals;
    for (double t : ts) vals.push_back(kernel_eval(map, elem, t));
    const auto elem_b = KernelElement::sampled(map, t0b, ts, vals);

    for (double t : random_probes(map, 100, 21))
        CHECK(kernel_eval(map, elem_b, t) == kernel_eval(map, elem, t));
}

TEST_CASE("oscillation profiles: constant flat, step saturates at both ends") {
    const ShiftMap map(PerturbationField::sine(), 0.1);
    const std::vector<double> radii = {0.1, 0.01, 0.001};

    const auto flat = KernelElement::constant(map, 1.0, 4.0);
    for (auto endpoint : {Endpoint::Minus, Endpoint::Plus}) {
        const auto rows = oscillation_profile(map, flat, endpoint, radii);
        for (const auto& r : rows) CHECK(r.oscillation == 0.0);
    }

    const auto step = KernelElement::step(map, 1.0, 0.0, 1.0, 0.5);
    for (auto endpoint : {Endpoint::Minus, Endpoint::Plus}) {
        const auto rows = oscillation_profile(map, step, endpoint, radii);
        REQUIRE(rows.size() == 3);
        for (const auto& r : rows) {
            CHECK(r.oscillation >= 0.99);
            CHECK(r.oscillation <= 1.0);
        }
    }
}

TEST_CASE("oscillation radii validation") {
    const ShiftMap map(PerturbationField::sine(), 0.1);
    const auto elem = KernelElement::constant(map, 1.0, 0.0);
    const std::vector<double> increasing = {0.001, 0.01};
    CHECK_THROWS_AS(oscillation_profile(map, elem, Endpoint::Plus, increasing),
                    OutOfDomain);
    const std::vector<double> too_big = {1.0, 0.1};
    CHECK_THROWS_AS(oscillation_profile(map, elem, Endpoint::Plus, too_big),
                    OutOfDomain);
}

TEST_CASE("orbit walk cap raises OrbitExhausted") {
    const ShiftMap map(PerturbationField::sine(), 0.1);
    const auto elem = KernelElement::constant(map, 1.5, 1.0);
    // 0.2 needs ~20+ forward steps to reach [1.5, Φ1.5); a 3-step cap trips.
    CHECK_THROWS_AS(elem.eval(map, 0.2, 3), OrbitExhausted);
    CHECK(elem.eval(map, 0.2) == 1.0);
    CHECK_THROWS_AS(elem.eval(map, pi, 3), OutOfDomain);
    CHECK_THROWS_AS(elem.eval(map, 0.0, 3), OutOfDomain);
}
