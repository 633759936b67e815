#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "analysis.hpp"
#include "chaos_game.hpp"
#include "cloud.hpp"
#include "gallery.hpp"
#include "ifs.hpp"
#include "io.hpp"
#include "render.hpp"
#include "space.hpp"

namespace chaoscope::cli {

namespace detail {

/// A gallery entry or a config file resolved to the same shape.
struct ResolvedSystem {
    IFSSystem system;
    GalleryDefaults defaults;
    std::string model_desc = "uniform";
    std::optional<std::uint64_t> config_seed;
};

inline ResolvedSystem resolve_system(const std::string& gallery_name,
                                     const std::string& config_path) {
    if (!gallery_name.empty()) {
        GalleryEntry entry = gallery_build(gallery_name);
        return {std::move(entry.system), std::move(entry.defaults), "uniform"};
    }
    SystemConfig cfg = parse_config_file(config_path);
    ResolvedSystem rs{cfg.build_system(), GalleryDefaults{}, "uniform"};
    if (cfg.x0)
        rs.defaults.x0 = *cfg.x0;
    else {
        // No natural start for a custom system: use the space's origin.
        SpaceModel sp = rs.system.space;
        rs.defaults.x0.assign(static_cast<std::size_t>(sp.dim), 0.0);
        if (sp.kind == SpaceKind::projective2) rs.defaults.x0 = {1.0, 0.0, 0.0};
    }
    if (cfg.steps) rs.defaults.n_steps = *cfg.steps;
    if (cfg.burnin) rs.defaults.burn_in_ladder = *cfg.burnin;
    if (cfg.eps) rs.defaults.eps = *cfg.eps;
    if (cfg.tol) rs.defaults.tol = *cfg.tol;
    if (cfg.model) rs.model_desc = *cfg.model;
    rs.config_seed = cfg.seed;
    return rs;
}

inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed,
                                  const std::optional<std::uint64_t>& config_seed) {
    if (flag_seed) return *flag_seed;
    if (const char* env = std::getenv("CHAOSCOPE_SEED")) return parse_uint64(env);
    if (config_seed) return *config_seed;
    return 0;
}

inline std::vector<double> parse_coords(const std::string& s) {
    return chaoscope::detail::parse_double_list(s, ',');
}

inline PointCloud single_point_cloud(const IFSSystem& sys, const std::vector<double>& coords) {
    return PointCloud::from_points(sys.space, {canonicalize(sys.space, coords)});
}

}  // namespace detail

/// Entry point. `args` holds the arguments in natural order, program name
/// excluded. Exit codes: 0 success (and converged, where a reference makes
/// that meaningful), 1 not converged or internal failure, 2 usage or input
/// error, 3 divergence guard tripped.
inline int run(std::vector<std::string> args) {
    CLI::App app{"chaos-game attractor toolkit"};
    app.require_subcommand(1);

    // common system selection
    struct Common {
        std::string system;
        std::string config;
        std::optional<std::uint64_t> seed;
        std::optional<std::string> x0_text;
        std::optional<long long> steps;
        std::optional<std::string> model;
        std::optional<double> eps, tol;
    };

    auto add_system_flags = [](CLI::App* sub, Common& c, bool with_run_params) {
        auto* sys_opt = sub->add_option("--system", c.system, "gallery system name");
        auto* cfg_opt = sub->add_option("--config", c.config, "custom system config file");
        sys_opt->excludes(cfg_opt);
        cfg_opt->excludes(sys_opt);
        sub->add_option("--eps", c.eps, "decimation grid spacing");
        sub->add_option("--tol", c.tol, "convergence tolerance");
        if (with_run_params) {
            sub->add_option("--x0", c.x0_text, "start point, comma-separated coordinates");
            sub->add_option("--steps", c.steps, "number of chaos game steps");
            sub->add_option("--model", c.model,
                            "selection model descriptor (uniform | iid:.. | cyclic:.. | "
                            "markov:.. | decaying:..)");
            sub->add_option("--seed", c.seed, "rng seed (env CHAOSCOPE_SEED is the fallback)");
        }
    };

    Common run_c, oracle_c, basin_c;

    CLI::App* sub_run = app.add_subcommand("run", "run a chaos game and measure tail convergence");
    add_system_flags(sub_run, run_c, true);
    std::string run_reference = "none";
    std::string run_ladder_text;
    std::string run_trace_out, run_report_out;
    long long run_oracle_iters = 200;
    sub_run->add_option("--reference", run_reference,
                        "reference set: none, oracle, or a cloud file path");
    sub_run->add_option("--burnin-ladder", run_ladder_text,
                        "comma-separated strictly increasing burn-in values");
    sub_run->add_option("--trace-out", run_trace_out, "orbit trace output path");
    sub_run->add_option("--report-out", run_report_out, "report output path");
    sub_run->add_option("--oracle-max-iter", run_oracle_iters,
                        "iteration budget when --reference oracle");

    CLI::App* sub_oracle =
        app.add_subcommand("oracle", "iterate the decimated set map to a fixed point");
    add_system_flags(sub_oracle, oracle_c, false);
    std::string oracle_from, oracle_cloud_out, oracle_report_out;
    long long oracle_iters = 200;
    sub_oracle->add_option("--from-point", oracle_from, "seed point, comma-separated");
    sub_oracle->add_option("--max-iter", oracle_iters, "iteration budget");
    sub_oracle->add_option("--cloud-out", oracle_cloud_out, "attractor cloud output path");
    sub_oracle->add_option("--report-out", oracle_report_out, "report output path");

    CLI::App* sub_render = app.add_subcommand("render", "rasterize a cloud or trace file to PGM");
    std::string render_in, render_out, render_viewport;
    long long render_burnin = 0;
    int render_width = 512, render_height = 512;
    bool render_ascii = false;
    sub_render->add_option("--in", render_in, "cloud or trace file")->required();
    sub_render->add_option("--out", render_out, "output PGM path")->required();
    sub_render->add_option("--burnin", render_burnin, "burn-in prefix to drop (trace input)");
    sub_render->add_option("--width", render_width, "image width");
    sub_render->add_option("--height", render_height, "image height");
    sub_render->add_option("--viewport", render_viewport,
                           "xmin:xmax:ymin:ymax (default: autoscale to the data)");
    sub_render->add_flag("--ascii", render_ascii, "write ASCII P2 instead of binary P5");

    CLI::App* sub_basin = app.add_subcommand("basin", "classify probe points by basin membership");
    add_system_flags(sub_basin, basin_c, false);
    std::vector<std::string> basin_probes;
    std::string basin_grid, basin_reference = "oracle", basin_out;
    long long basin_kmax = 200, basin_oracle_iters = 200;
    int basin_jobs = 1;
    sub_basin->add_option("--probe", basin_probes, "probe point, comma-separated (repeatable)");
    sub_basin->add_option("--grid", basin_grid, "xmin:xmax:nx:ymin:ymax:ny probe grid (2d)");
    sub_basin->add_option("--reference", basin_reference, "oracle or a cloud file path");
    sub_basin->add_option("--k-max", basin_kmax, "iteration budget per probe");
    sub_basin->add_option("--oracle-max-iter", basin_oracle_iters,
                          "iteration budget for the oracle reference");
    sub_basin->add_option("--out", basin_out, "verdict table output path");
    sub_basin->add_option("--jobs", basin_jobs, "parallel probe workers (output order fixed)");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto need_system = [](const Common& c) {
        if (c.system.empty() && c.config.empty())
            throw std::invalid_argument("one of --system or --config is required");
    };

    try {
        if (*sub_run) {
            need_system(run_c);
            detail::ResolvedSystem rs = detail::resolve_system(run_c.system, run_c.config);
            if (run_c.x0_text) rs.defaults.x0 = detail::parse_coords(*run_c.x0_text);
            if (run_c.steps) rs.defaults.n_steps = *run_c.steps;
            if (run_c.eps) rs.defaults.eps = *run_c.eps;
            if (run_c.tol) rs.defaults.tol = *run_c.tol;
            if (run_c.model) rs.model_desc = *run_c.model;
            if (!run_ladder_text.empty()) {
                rs.defaults.burn_in_ladder.clear();
                for (auto t : chaoscope::detail::split_on(run_ladder_text, ','))
                    rs.defaults.burn_in_ladder.push_back(parse_int(t));
            }
            SelectionModel model =
                parse_model(rs.model_desc, static_cast<int>(rs.system.maps.size()));
            if (model.experimental())
                std::cerr << "warning: decaying selection model is experimental; the "
                             "fixed-floor convergence guarantee does not apply\n";
            std::uint64_t seed = detail::resolve_seed(run_c.seed, rs.config_seed);
            SpacePoint x0 = canonicalize(rs.system.space, rs.defaults.x0);
            OrbitRecord orbit =
                run_chaos_game(rs.system, x0, rs.defaults.n_steps, model, seed);
            std::string base = rs.system.name.empty() ? "custom" : rs.system.name;
            std::string trace_path =
                run_trace_out.empty() ? base + "-orbit.trace" : run_trace_out;
            write_trace_file(orbit, trace_path);
            ConvergenceReport rep;
            if (run_reference == "none") {
                rep.reference = "none";
                rep.tol = rs.defaults.tol;
            } else {
                PointCloud ref = [&] {
                    if (run_reference != "oracle") return read_cloud_file(run_reference);
                    AttractorResult oracle = deterministic_attractor(
                        rs.system, detail::single_point_cloud(rs.system, rs.defaults.x0),
                        rs.defaults.eps, rs.defaults.tol, run_oracle_iters);
                    return oracle.cloud;
                }();
                std::string label = run_reference == "oracle"
                                        ? "oracle(" + base + ",eps=" + fmt_double(rs.defaults.eps) +
                                              ",tol=" + fmt_double(rs.defaults.tol) + ")"
                                        : run_reference;
                rep = tail_convergence(orbit, ref, rs.defaults.burn_in_ladder, rs.defaults.tol,
                                       label);
            }
            std::string report_path =
                run_report_out.empty() ? base + "-run.report" : run_report_out;
            write_report_file(rep, report_path);
            std::cout << report_record(rep) << "\n";
            if (run_reference != "none" && !rep.converged) return 1;
            return 0;
        }

        if (*sub_oracle) {
            need_system(oracle_c);
            detail::ResolvedSystem rs = detail::resolve_system(oracle_c.system, oracle_c.config);
            if (oracle_c.eps) rs.defaults.eps = *oracle_c.eps;
            if (oracle_c.tol) rs.defaults.tol = *oracle_c.tol;
            std::vector<double> from = rs.defaults.x0;
            if (!oracle_from.empty()) from = detail::parse_coords(oracle_from);
            AttractorResult res =
                deterministic_attractor(rs.system, detail::single_point_cloud(rs.system, from),
                                        rs.defaults.eps, rs.defaults.tol, oracle_iters);
            std::string base = rs.system.name.empty() ? "custom" : rs.system.name;
            write_cloud_file(res.cloud,
                             oracle_cloud_out.empty() ? base + "-attractor.cloud"
                                                      : oracle_cloud_out);
            write_report_file(res.report, oracle_report_out.empty() ? base + "-oracle.report"
                                                                    : oracle_report_out);
            std::cout << report_record(res.report) << "\n";
            return 0;
        }

        if (*sub_render) {
            std::ifstream f(render_in, std::ios::binary);
            if (!f) throw parse_error(render_in + ": cannot open for reading");
            std::string first_line;
            std::getline(f, first_line);
            if (!first_line.empty() && first_line.back() == '\r') first_line.pop_back();
            f.seekg(0);
            PointCloud cloud = [&] {
                if (first_line == "chaoscope-trace 1")
                    return tail_cloud(read_trace(f, render_in), render_burnin);
                return read_cloud(f, render_in);
            }();
            Viewport vp;
            vp.width = render_width;
            vp.height = render_height;
            if (!render_viewport.empty()) {
                auto parts = chaoscope::detail::split_on(render_viewport, ':');
                if (parts.size() != 4)
                    throw std::invalid_argument("--viewport needs xmin:xmax:ymin:ymax");
                vp.autoscale = false;
                vp.xmin = parse_double(parts[0]);
                vp.xmax = parse_double(parts[1]);
                vp.ymin = parse_double(parts[2]);
                vp.ymax = parse_double(parts[3]);
            }
            RasterResult res = rasterize(cloud, vp);
            if (res.plotted == 0)
                std::cerr << "warning: no points landed in the viewport; image is blank\n";
            write_pgm(res.image, render_out, render_ascii);
            return 0;
        }

        if (*sub_basin) {
            need_system(basin_c);
            detail::ResolvedSystem rs = detail::resolve_system(basin_c.system, basin_c.config);
            if (basin_c.eps) rs.defaults.eps = *basin_c.eps;
            if (basin_c.tol) rs.defaults.tol = *basin_c.tol;
            std::vector<SpacePoint> probes;
            for (const std::string& p : basin_probes)
                probes.push_back(canonicalize(rs.system.space, detail::parse_coords(p)));
            if (!basin_grid.empty()) {
                if (rs.system.space.dim != 2)
                    throw std::invalid_argument("--grid needs a 2-coordinate space");
                auto parts = chaoscope::detail::split_on(basin_grid, ':');
                if (parts.size() != 6)
                    throw std::invalid_argument("--grid needs xmin:xmax:nx:ymin:ymax:ny");
                double gx0 = parse_double(parts[0]), gx1 = parse_double(parts[1]);
                long long nx = parse_int(parts[2]);
                double gy0 = parse_double(parts[3]), gy1 = parse_double(parts[4]);
                long long ny = parse_int(parts[5]);
                if (nx < 1 || ny < 1) throw std::invalid_argument("--grid counts must be >= 1");
                for (long long iy = 0; iy < ny; ++iy)
                    for (long long ix = 0; ix < nx; ++ix) {
                        double fx = nx == 1 ? 0.0 : static_cast<double>(ix) / (nx - 1);
                        double fy = ny == 1 ? 0.0 : static_cast<double>(iy) / (ny - 1);
                        probes.push_back(canonicalize(
                            rs.system.space, {gx0 + fx * (gx1 - gx0), gy0 + fy * (gy1 - gy0)}));
                    }
            }
            if (probes.empty())
                throw std::invalid_argument("no probes given (use --probe and/or --grid)");
            PointCloud reference = [&] {
                if (basin_reference != "oracle") return read_cloud_file(basin_reference);
                AttractorResult oracle = deterministic_attractor(
                    rs.system, detail::single_point_cloud(rs.system, rs.defaults.x0),
                    rs.defaults.eps, rs.defaults.tol, basin_oracle_iters);
                return oracle.cloud;
            }();
            if (basin_kmax < 1) throw std::invalid_argument("--k-max must be >= 1");
            std::vector<BasinVerdict> verdicts(probes.size());
            int jobs = std::max(1, std::min<int>(basin_jobs, static_cast<int>(probes.size())));
            if (jobs == 1) {
                for (std::size_t i = 0; i < probes.size(); ++i)
                    verdicts[i] = basin_probe(rs.system, probes[i], reference, basin_kmax,
                                              rs.defaults.eps, rs.defaults.tol);
            } else {
                // Slots are written independently, so output order matches
                // the sequential run no matter how the threads interleave.
                std::atomic<std::size_t> next{0};
                auto worker = [&] {
                    for (std::size_t i = next.fetch_add(1); i < probes.size();
                         i = next.fetch_add(1))
                        verdicts[i] = basin_probe(rs.system, probes[i], reference, basin_kmax,
                                                  rs.defaults.eps, rs.defaults.tol);
                };
                std::vector<std::thread> pool;
                for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
                for (std::thread& t : pool) t.join();
            }
            std::string base = rs.system.name.empty() ? "custom" : rs.system.name;
            write_basin_table_file(verdicts,
                                   basin_out.empty() ? base + "-basin.table" : basin_out);
            std::size_t attracted = 0, diverged = 0;
            for (const BasinVerdict& v : verdicts) {
                attracted += v.outcome == BasinOutcome::attracted;
                diverged += v.outcome == BasinOutcome::diverged;
            }
            std::cout << "BASIN-SUMMARY probes=" << verdicts.size() << " attracted=" << attracted
                      << " diverged=" << diverged
                      << " budget_exhausted=" << (verdicts.size() - attracted - diverged) << "\n";
            return 0;
        }
    } catch (const divergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(std::move(args));
}

}  // namespace chaoscope::cli
