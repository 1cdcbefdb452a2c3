#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nushift/grid_function.hpp"
#include "nushift/shift_map.hpp"

namespace nushift {

struct PhiSpec {
    std::string kind = "sine";  // sine | scaled_sine | poly_bump | csv
    double omega = 1.0;
    double length = 0.0;              // poly_bump
    std::vector<double> q = {1.0};    // poly_bump factor coefficients
    double a = 0.0, b = 0.0;          // sine interval override (0,0 = default)
    std::string path;                 // csv
};

struct WSpec {
    std::string kind = "telescope";  // telescope | raw | csv
    std::string name = "cos";        // telescope v0 / raw generator name
    std::string path;
};

struct SeedSpec {
    std::string kind = "step";  // constant | step | csv
    double value = 1.0;
    double lo = 0.0, hi = 1.0, split = 0.5;
    std::string path;
};

/// Everything a CLI run needs, loadable from a JSON config file. Flag
/// overrides are applied after load; validate() enforces the documented
/// bounds and throws ConfigError.
struct RunConfig {
    PhiSpec phi;
    double alpha = 0.1;
    double delta = 0.1;
    int p = 3;
    int grid_points = 1001;
    double tol = 1e-10;
    WSpec w;
    std::string output_dir = "out";
    std::vector<double> alphas;  // scaling study rows (constants command)
    double t0 = 1.0;
    int k_min = 0;
    int k_max = 200;
    SeedSpec seed;
    std::vector<double> radii = {0.1, 0.01, 0.001};
    int modes = 16;
    bool plots = false;

    static RunConfig load(const std::string& path);

    void validate() const;
    PerturbationField make_field() const;
    ShiftMap make_map() const;  // includes validate()
    GridFunction make_w(const ShiftMap& map) const;
};

/// Named v0 functions for the telescoped generators and round trips.
std::function<double(double)> v0_catalog(const std::string& name, double a,
                                         double b);

} // namespace nushift
