#include "nushift/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

#include "nushift/constants.hpp"
#include "nushift/inverse_solver.hpp"
#include "nushift/jet_system.hpp"
#include "nushift/kernel_space.hpp"
#include "nushift/quadrature.hpp"
#include "nushift/svg.hpp"

namespace nushift {

namespace {

namespace fs = std::filesystem;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

fs::path ensure_out(const RunConfig& cfg) {
    fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
}

std::vector<double> interior_probes(const ShiftMap& map, int n) {
    std::vector<double> ps(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        ps[static_cast<std::size_t>(i)] =
            map.t_minus() + map.length() * (i + 1) / (n + 1);
    return ps;
}

// Shared driver so every subcommand maps exceptions to the same exit codes.
template <typename Fn>
int run_command(std::ostream& log, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << '\n';
    } catch (const InvalidDelta& e) {
        log << "config error: " << e.what() << '\n';
    } catch (const AmplitudeTooLarge& e) {
        log << "config error: " << e.what() << '\n';
    } catch (const UnsupportedField& e) {
        log << "config error: " << e.what() << '\n';
    } catch (const OrderUnsupported& e) {
        log << "config error: " << e.what() << '\n';
    } catch (const OutOfDomain& e) {
        log << "config error: " << e.what() << '\n';
    } catch (const DegeneratePerturbation& e) {
        log << "config error: " << e.what() << '\n';
    } catch (const InteriorZero& e) {
        log << "config error: " << e.what() << '\n';
    } catch (const EndpointMismatch& e) {
        log << "config error: " << e.what() << '\n';
    } catch (const Error& e) {
        log << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitConfig;
}

} // namespace

int cmd_constants(const RunConfig& cfg, std::ostream& log) {
    return run_command(log, [&]() {
        const auto map = cfg.make_map();
        validate_nondegeneracy(map.field(), 1e-9 * map.length());
        const auto report = compute_constants(map, cfg.delta);

        std::vector<double> grid(1001);
        for (std::size_t i = 0; i < grid.size(); ++i)
            grid[i] = map.t_minus() + map.length() * static_cast<double>(i) / 1000.0;
        const double slack = trapezoid_check(map, report, grid);

        const auto dir = ensure_out(cfg);
        std::string text = report.to_key_value();
        text += "trapezoid_slack=" + fmt(slack) + "\n";
        write_text(dir / "constants.txt", text);
        log << text;

        if (!cfg.alphas.empty()) {
            const auto rows = scaling_study(map.field(), cfg.delta, cfg.alphas);
            std::ofstream csv(dir / "scaling.csv");
            write_scaling_csv(csv, rows);
            log << "scaling table: " << (dir / "scaling.csv").string() << '\n';
            if (cfg.plots) {
                std::vector<double> xs, ys;
                for (const auto& r : rows) {
                    xs.push_back(r.alpha);
                    ys.push_back(r.alpha_K_phi);
                }
                write_line_chart_svg((dir / "scaling.svg").string(), xs, ys,
                                     "alpha * K_phi vs alpha", "alpha",
                                     "alpha*K_phi");
            }
        }
        return kExitOk;
    });
}

int cmd_solve(const RunConfig& cfg, std::ostream& log) {
    return run_command(log, [&]() {
        const auto map = cfg.make_map();
        const auto w = cfg.make_w(map);
        const auto report = compute_constants(map, cfg.delta);
        const auto probes = interior_probes(map, 32);
        const auto verdict = check_solvability(map, w, probes, cfg.tol, report);

        const auto dir = ensure_out(cfg);
        write_text(dir / "verdict.txt", verdict.to_key_value());
        log << verdict.to_key_value();
        if (!verdict.passed) {
            log << "solvability failed: spread=" << fmt(verdict.spread)
                << " endpoint values (" << fmt(verdict.endpoint_value_minus)
                << ", " << fmt(verdict.endpoint_value_plus) << ")\n";
            return kExitSolvability;
        }

        const auto sol = solve(map, w, report, cfg.tol);
        sol.v.write_csv((dir / "v.csv").string());
        std::string text = sol.to_key_value();
        text += "K_phi=" + fmt(report.K_phi) + "\n";
        write_text(dir / "solution.txt", text);
        log << text;
        if (cfg.plots)
            write_line_chart_svg((dir / "v.svg").string(), sol.v.grid(),
                                 sol.v.values(), "inverse v", "t", "v");
        return kExitOk;
    });
}

int cmd_kernel(const RunConfig& cfg, std::ostream& log) {
    return run_command(log, [&]() {
        const auto map = cfg.make_map();
        KernelElement elem = [&]() {
            if (cfg.seed.kind == "constant")
                return KernelElement::constant(map, cfg.t0, cfg.seed.value);
            if (cfg.seed.kind == "step")
                return KernelElement::step(map, cfg.t0, cfg.seed.lo, cfg.seed.hi,
                                           cfg.seed.split);
            if (cfg.seed.kind == "csv")
                return KernelElement::from_csv(map, cfg.t0, cfg.seed.path);
            throw ConfigError("unknown seed kind '" + cfg.seed.kind + "'");
        }();

        const auto dir = ensure_out(cfg);
        const auto probes = interior_probes(map, 100);
        const double inv = verify_invariance(map, elem, probes);
        log << "invariance_defect=" << fmt(inv) << '\n';

        for (auto [endpoint, name] :
             {std::pair{Endpoint::Minus, "kernel_minus.csv"},
              std::pair{Endpoint::Plus, "kernel_plus.csv"}}) {
            const auto rows = oscillation_profile(map, elem, endpoint, cfg.radii);
            std::ofstream csv(dir / name);
            write_oscillation_csv(csv, rows);
            log << name << ':';
            for (const auto& r : rows)
                log << " (" << r.radius << ", " << fmt(r.oscillation) << ')';
            log << '\n';
            if (cfg.plots) {
                std::vector<double> xs, ys;
                for (const auto& r : rows) {
                    xs.push_back(r.radius);
                    ys.push_back(r.oscillation);
                }
                fs::path svg_name(name);
                svg_name.replace_extension(".svg");
                write_line_chart_svg((dir / svg_name).string(), xs, ys,
                                     "kernel oscillation", "radius",
                                     "oscillation");
            }
        }
        return kExitOk;
    });
}

int cmd_orbit(const RunConfig& cfg, std::ostream& log) {
    return run_command(log, [&]() {
        const auto map = cfg.make_map();
        const auto orb = map.orbit(cfg.t0, cfg.k_min, cfg.k_max);
        const auto dir = ensure_out(cfg);
        std::ofstream csv(dir / "orbit.csv");
        csv << "k,t\n";
        std::vector<double> ks, ts;
        for (int k = orb.k_min; k <= orb.k_max(); ++k) {
            csv << k << ',' << fmt(orb.at(k)) << '\n';
            ks.push_back(k);
            ts.push_back(orb.at(k));
        }
        log << "orbit written: k in [" << cfg.k_min << ", " << cfg.k_max
            << "], t_last=" << fmt(ts.back()) << '\n';
        if (cfg.plots)
            write_line_chart_svg((dir / "orbit.svg").string(), ks, ts,
                                 "orbit", "k", "t");
        return kExitOk;
    });
}

int cmd_jets(const RunConfig& cfg, std::ostream& log) {
    return run_command(log, [&]() {
        const auto map = cfg.make_map();
        const auto traj = propagate(map, cfg.t0, cfg.p, cfg.k_max);
        const auto dir = ensure_out(cfg);
        std::ofstream csv(dir / "jets.csv");
        write_jet_csv(csv, traj);

        const auto report = compute_constants(map, cfg.delta);
        const auto cp = cp_bound(map, cfg.p, report);
        write_text(dir / "jet_report.txt", cp.to_key_value());
        log << cp.to_key_value();
        if (cfg.plots) {
            std::vector<double> ks, norms;
            for (std::size_t k = 0; k < traj.size(); ++k) {
                ks.push_back(static_cast<double>(k));
                norms.push_back(traj[k].jet_abs_sum());
            }
            write_line_chart_svg((dir / "jets.svg").string(), ks, norms,
                                 "|jet| along the orbit", "k", "|U_k|");
        }
        return kExitOk;
    });
}

GramSummary gram_isometry(double alpha, int modes, double tol,
                          std::vector<std::vector<double>>* matrix) {
    const double pi = std::numbers::pi;
    if (std::abs(alpha) >= 1.0)
        throw AmplitudeTooLarge("|alpha| must be < 1 for phi = sin");
    const double qtol = std::min(tol, 1e-11) / 4.0;
    std::vector<std::vector<double>> G(
        static_cast<std::size_t>(modes),
        std::vector<double>(static_cast<std::size_t>(modes), 0.0));
    auto e = [alpha](int k, double t) {
        return std::sin(k * (t + alpha * std::sin(t)));
    };
    // weight = Φ'(t); the change of variables u = t + α sin t sends the
    // integral to the classical sine orthogonality relation.
    auto weight = [alpha](double t) { return 1.0 + alpha * std::cos(t); };
    GramSummary summary;
    for (int j = 1; j <= modes; ++j) {
        for (int k = j; k <= modes; ++k) {
            const double val = adaptive_quadrature(
                [&](double t) { return e(j, t) * e(k, t) * weight(t); },
                0.0, pi, qtol);
            G[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)] = val;
            G[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)] = val;
            if (j == k)
                summary.max_diag_deviation =
                    std::max(summary.max_diag_deviation, std::abs(val - pi / 2));
            else
                summary.max_offdiag = std::max(summary.max_offdiag, std::abs(val));
        }
    }
    if (matrix) *matrix = std::move(G);
    return summary;
}

int cmd_gram(const RunConfig& cfg, std::ostream& log) {
    return run_command(log, [&]() {
        cfg.validate();
        const double pi = std::numbers::pi;
        const bool is_plain_sine =
            cfg.phi.kind == "sine" && cfg.phi.a == 0.0 &&
            (cfg.phi.b == 0.0 || std::abs(cfg.phi.b - pi) < 1e-12);
        if (!is_plain_sine)
            throw UnsupportedField(
                "the Gram demo is specific to phi = sin on [0, pi]");

        std::vector<std::vector<double>> G;
        const auto summary = gram_isometry(cfg.alpha, cfg.modes, cfg.tol, &G);

        const auto dir = ensure_out(cfg);
        std::ofstream csv(dir / "gram.csv");
        for (const auto& row : G) {
            for (std::size_t c = 0; c < row.size(); ++c)
                csv << (c ? "," : "") << fmt(row[c]);
            csv << '\n';
        }
        std::ostringstream rep;
        rep << "modes=" << cfg.modes << '\n'
            << "alpha=" << fmt(cfg.alpha) << '\n'
            << "max_offdiag=" << fmt(summary.max_offdiag) << '\n'
            << "max_diag_deviation=" << fmt(summary.max_diag_deviation) << '\n';
        write_text(dir / "gram_report.txt", rep.str());
        log << rep.str();
        return kExitOk;
    });
}

int cmd_roundtrip(const RunConfig& cfg, std::ostream& log) {
    return run_command(log, [&]() {
        if (cfg.w.kind != "telescope")
            throw ConfigError("roundtrip requires a telescope w generator");
        const auto map = cfg.make_map();
        const auto w = cfg.make_w(map);
        const auto report = compute_constants(map, cfg.delta);
        const auto verdict =
            check_solvability(map, w, interior_probes(map, 32), cfg.tol, report);
        if (!verdict.passed) {
            log << verdict.to_key_value();
            return kExitSolvability;
        }
        const auto sol = solve(map, w, report, cfg.tol);

        const auto v0 = v0_catalog(cfg.w.name, map.t_minus(), map.t_plus());
        const double offset = v0(map.t_source());
        double sup_err = 0;
        for (std::size_t i = 0; i < sol.v.size(); ++i) {
            const double expect = v0(sol.v.node(i)) - offset;
            sup_err = std::max(sup_err, std::abs(sol.v.value_at(i) - expect));
        }

        const auto dir = ensure_out(cfg);
        sol.v.write_csv((dir / "v.csv").string());
        std::ostringstream rep;
        rep << sol.to_key_value() << "v0=" << cfg.w.name << '\n'
            << "sup_error_vs_v0=" << fmt(sup_err) << '\n';
        write_text(dir / "roundtrip.txt", rep.str());
        log << rep.str();
        return kExitOk;
    });
}

} // namespace nushift
