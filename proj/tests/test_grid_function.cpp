#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>

#include "nushift/grid_function.hpp"
#include "nushift/errors.hpp"

using namespace nushift;
using std::numbers::pi;

TEST_CASE("lipschitz_norm examples") {
    const auto constant = GridFunction::from_function([](double) { return 3.5; },
                                                      0.0, pi, 101);
    CHECK(lipschitz_norm(constant) == 0.0);

    const auto linear = GridFunction::from_function([](double t) { return t; },
                                                    0.0, pi, 101);
    CHECK(linear.lipschitz_norm() == doctest::Approx(1.0).epsilon(1e-12));

    // sup|cos| oracle = 1, approached from below on a 1001-point grid.
    const auto sine = GridFunction::from_function([](double t) { return std::sin(t); },
                                                  0.0, pi, 1001);
    CHECK(sine.lipschitz_norm() == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(sine.lipschitz_norm() <= 1.0);
}

TEST_CASE("monotone cubic does not overshoot between nodes") {
    std::vector<double> xs, ys;
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> step(0.05, 0.4), val(-1.0, 1.0);
    double x = 0;
    for (int i = 0; i < 30; ++i) {
        xs.push_back(x);
        ys.push_back(val(rng));
        x += step(rng);
    }
    const MonotoneCubic mc(xs, ys);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const double lo = std::min(ys[i], ys[i + 1]);
        const double hi = std::max(ys[i], ys[i + 1]);
        for (int j = 1; j < 20; ++j) {
            const double t = xs[i] + (xs[i + 1] - xs[i]) * j / 20.0;
            const double v = mc(t);
            CHECK(v >= lo - 1e-12);
            CHECK(v <= hi + 1e-12);
        }
    }
}

TEST_CASE("csv round trip is bit exact") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> val(-5.0, 5.0);
    std::vector<double> grid, values;
    for (int i = 0; i <= 57; ++i) {
        grid.push_back(-1.0 + 2.0 * i / 57.0 + 1e-3 * val(rng) / 5.0);
        values.push_back(val(rng));
    }
    for (std::size_t i = 1; i < grid.size(); ++i)
        REQUIRE(grid[i] > grid[i - 1]);
    const GridFunction f(grid, values);

    const auto path = std::filesystem::temp_directory_path() / "nushift_rt.csv";
    f.write_csv(path.string());
    const auto g = GridFunction::read_csv(path.string());
    REQUIRE(g.size() == f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(g.node(i) == f.node(i));
        CHECK(g.value_at(i) == f.value_at(i));
    }
    std::filesystem::remove(path);
}

TEST_CASE("interpolation hits nodes exactly and rejects far extrapolation") {
    const std::vector<double> xs = {0.0, 0.5, 1.1, 2.0};
    const std::vector<double> ys = {1.0, -0.5, 2.0, 0.25};
    const GridFunction f(xs, ys);
    for (std::size_t i = 0; i < xs.size(); ++i)
        CHECK(f(xs[i]) == ys[i]);
    CHECK_THROWS_AS(f(2.5), OutOfDomain);
    CHECK_THROWS_AS(f(-1.0), OutOfDomain);
}

TEST_CASE("grid must be strictly increasing") {
    CHECK_THROWS_AS(GridFunction({0.0, 0.0, 1.0}, {1.0, 2.0, 3.0}), OutOfDomain);
    CHECK_THROWS_AS(GridFunction({0.0}, {1.0}), OutOfDomain);
}
