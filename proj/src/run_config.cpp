#include "nushift/run_config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "nushift/errors.hpp"

namespace nushift {

namespace {

using nlohmann::json;

template <typename T>
void read_if(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

PhiSpec parse_phi(const json& j) {
    PhiSpec spec;
    read_if(j, "kind", spec.kind);
    read_if(j, "omega", spec.omega);
    read_if(j, "length", spec.length);
    read_if(j, "q", spec.q);
    read_if(j, "a", spec.a);
    read_if(j, "b", spec.b);
    read_if(j, "path", spec.path);
    return spec;
}

} // namespace

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    RunConfig cfg;
    try {
        if (j.contains("phi")) cfg.phi = parse_phi(j.at("phi"));
        read_if(j, "alpha", cfg.alpha);
        read_if(j, "delta", cfg.delta);
        read_if(j, "p", cfg.p);
        read_if(j, "grid_points", cfg.grid_points);
        read_if(j, "tol", cfg.tol);
        if (j.contains("w")) {
            const auto& jw = j.at("w");
            read_if(jw, "kind", cfg.w.kind);
            read_if(jw, "name", cfg.w.name);
            read_if(jw, "path", cfg.w.path);
        }
        read_if(j, "output_dir", cfg.output_dir);
        read_if(j, "alphas", cfg.alphas);
        read_if(j, "t0", cfg.t0);
        read_if(j, "k_min", cfg.k_min);
        read_if(j, "k_max", cfg.k_max);
        if (j.contains("seed")) {
            const auto& js = j.at("seed");
            read_if(js, "kind", cfg.seed.kind);
            read_if(js, "value", cfg.seed.value);
            read_if(js, "lo", cfg.seed.lo);
            read_if(js, "hi", cfg.seed.hi);
            read_if(js, "split", cfg.seed.split);
            read_if(js, "path", cfg.seed.path);
        }
        read_if(j, "radii", cfg.radii);
        read_if(j, "modes", cfg.modes);
        read_if(j, "plots", cfg.plots);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }
    return cfg;
}

void RunConfig::validate() const {
    if (grid_points < 11)
        throw ConfigError("grid_points must be >= 11");
    if (!(delta > 0.0 && delta < 0.5))
        throw ConfigError("delta must lie in (0, 0.5)");
    if (!(tol > 0.0))
        throw ConfigError("tol must be positive");
    if (p < 1)
        throw ConfigError("p must be >= 1");
    if (modes < 1 || modes > 64)
        throw ConfigError("modes must lie in 1..64");
}

PerturbationField RunConfig::make_field() const {
    if (phi.kind == "sine") {
        if (phi.a == 0.0 && phi.b == 0.0) return PerturbationField::sine();
        return PerturbationField::sine_on(phi.a, phi.b);
    }
    if (phi.kind == "scaled_sine")
        return PerturbationField::scaled_sine(phi.omega);
    if (phi.kind == "poly_bump") {
        const double len = phi.length > 0 ? phi.length : std::numbers::pi;
        return PerturbationField::poly_bump(len, phi.q);
    }
    if (phi.kind == "csv") {
        const auto g = GridFunction::read_csv(phi.path);
        return PerturbationField::sampled({g.grid().begin(), g.grid().end()},
                                          {g.values().begin(), g.values().end()});
    }
    throw ConfigError("unknown phi kind '" + phi.kind + "'");
}

ShiftMap RunConfig::make_map() const {
    validate();
    // AmplitudeTooLarge from the ShiftMap constructor carries the alpha_phi
    // diagnostic; the CLI maps it to the validation exit code.
    return ShiftMap(make_field(), alpha);
}

std::function<double(double)> v0_catalog(const std::string& name, double a,
                                         double b) {
    if (name == "identity") return [](double t) { return t; };
    if (name == "cos") return [](double t) { return std::cos(t); };
    if (name == "t2") return [](double t) { return t * t; };
    if (name == "sin3damp")
        return [a, b](double t) { return std::sin(3.0 * t) * (t - a) * (b - t); };
    if (name == "hat") {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        return [mid, half](double t) {
            return std::max(0.0, 1.0 - std::abs(t - mid) / half);
        };
    }
    throw ConfigError("unknown v0 '" + name +
                      "' (expected identity|cos|t2|sin3damp|hat)");
}

GridFunction RunConfig::make_w(const ShiftMap& map) const {
    const double a = map.t_minus();
    const double b = map.t_plus();
    if (w.kind == "telescope") {
        const auto v0 = v0_catalog(w.name, a, b);
        // The evaluator owns a copy of the map so it can outlive the caller.
        auto gen = [map, v0](double t) { return v0(map.eval(t)) - v0(t); };
        return GridFunction::from_function(gen, a, b, grid_points);
    }
    if (w.kind == "raw") {
        std::function<double(double)> gen;
        if (w.name == "zero") gen = [](double) { return 0.0; };
        else if (w.name == "one") gen = [](double) { return 1.0; };
        else if (w.name == "sin2") gen = [](double t) { return std::sin(2.0 * t); };
        else if (w.name == "alphaphi")
            gen = [map](double t) { return map.alpha() * map.field()(t); };
        else if (w.name == "hat_bump") {
            // Kinked bump supported strictly inside the interval; its corner
            // puts it genuinely outside the range of Δ_Φ.
            const double mid = 0.5 * (a + b);
            const double half = 0.5 * (b - a) - 0.3;
            gen = [mid, half](double t) {
                return std::max(0.0, 1.0 - std::abs(t - mid) / half);
            };
        }
        else
            throw ConfigError("unknown raw w '" + w.name +
                              "' (expected zero|one|sin2|alphaphi|hat_bump)");
        return GridFunction::from_function(gen, a, b, grid_points);
    }
    if (w.kind == "csv") {
        auto g = GridFunction::read_csv(w.path);
        const double slack = 1e-6 * (b - a);
        if (std::abs(g.t_front() - a) > slack || std::abs(g.t_back() - b) > slack)
            throw ConfigError("w grid does not span the field interval");
        return g;
    }
    throw ConfigError("unknown w kind '" + w.kind + "'");
}

} // namespace nushift
