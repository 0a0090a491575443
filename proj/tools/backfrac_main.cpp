#include "backfrac/errors.hpp"
#include "backfrac/forward.hpp"
#include "backfrac/harness.hpp"
#include "backfrac/measure.hpp"
#include "backfrac/mlf.hpp"
#include "backfrac/regularize.hpp"
#include "backfrac/spectral.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <tuple>

namespace {

using namespace backfrac;

struct CommonFlags {
    std::string config_path;
    std::string preset;
    double gamma = -1, T = -1, b = -1, p = -1, E = -1, tau = -1;
    std::string rule;
    std::vector<double> noise;
    bool noise_absolute = false;
    std::vector<std::uint64_t> seeds;
    long long Ni = -1, Np = -1;
    std::string out_dir;
    std::vector<double> t_samples;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "TOML experiment config");
    cmd->add_option("--preset", f.preset, "example1|example2|example3");
    cmd->add_option("--gamma", f.gamma, "fractional order in (0,1)");
    cmd->add_option("--T", f.T, "final time");
    cmd->add_option("--b", f.b, "Sobolev exponent (>= 1)");
    cmd->add_option("--p", f.p, "smoothness exponent");
    cmd->add_option("--E", f.E, "a priori bound on ||u(0)||_p (default: exact)");
    cmd->add_option("--tau", f.tau, "discrepancy factor (> 1)");
    cmd->add_option("--rule", f.rule, "apriori|aposteriori|fixed:<alpha>");
    cmd->add_option("--noise", f.noise, "noise levels (percent of ||u(T)|| unless --absolute)")
        ->delimiter(',');
    cmd->add_flag("--absolute", f.noise_absolute, "noise levels are absolute L2 norms");
    cmd->add_option("--seeds", f.seeds, "seed list")->delimiter(',');
    cmd->add_option("--Ni", f.Ni, "inverse truncation count");
    cmd->add_option("--Np", f.Np, "forward truncation count");
    cmd->add_option("--t", f.t_samples, "sample times")->delimiter(',');
    cmd->add_option("--out", f.out_dir, "output directory");
}

harness::ExperimentConfig build_config(const CommonFlags& f) {
    harness::ExperimentConfig cfg;
    if (!f.config_path.empty())
        harness::apply_config_table(config::parse_toml_file(f.config_path), cfg);
    if (!f.preset.empty()) cfg.preset = harness::preset_from_name(f.preset);
    if (f.gamma >= 0) cfg.gamma = f.gamma;
    if (f.T >= 0) cfg.T = f.T;
    if (f.b >= 0) cfg.reg.b = f.b;
    if (f.p >= 0) cfg.reg.p = f.p;
    if (f.E >= 0) cfg.reg.E = f.E;
    if (f.tau >= 0) cfg.reg.tau = f.tau;
    if (!f.rule.empty()) {
        if (f.rule == "apriori") {
            cfg.reg.rule = param::Rule::APriori;
        } else if (f.rule == "aposteriori") {
            cfg.reg.rule = param::Rule::APosteriori;
        } else if (f.rule.rfind("fixed:", 0) == 0) {
            cfg.reg.rule = param::Rule::Fixed;
            cfg.reg.fixed_alpha = std::stod(f.rule.substr(6));
        } else {
            throw config_error("unknown rule: " + f.rule);
        }
    }
    if (!f.noise.empty()) cfg.noise_levels = f.noise;
    if (f.noise_absolute) cfg.noise_absolute = true;
    if (!f.seeds.empty()) cfg.seeds = f.seeds;
    if (f.Ni >= 0) cfg.n_inv = (std::size_t)f.Ni;
    if (f.Np >= 0) cfg.n_fwd = (std::size_t)f.Np;
    if (!f.t_samples.empty()) cfg.t_samples = f.t_samples;
    if (!f.out_dir.empty()) cfg.out_dir = f.out_dir;
    return cfg;
}

std::string out_path(const harness::ExperimentConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

// long-format field rows (series,t,x,y,value)
void write_field_csv(const std::string& path, const harness::ExperimentConfig& cfg,
                     const std::vector<std::tuple<std::string, double, spectral::GridField>>& rows) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path);
    if (!out) throw config_error("cannot write " + path);
    out << "# backfrac " << harness::kVersion << " field preset=" << preset_name(cfg.preset)
        << " gamma=" << cfg.gamma << "\n";
    out << "series,t,x,y,value\n";
    char buf[160];
    for (const auto& [series, t, field] : rows) {
        const auto& g = *field.grid;
        for (std::size_t i = 0; i < field.values.size(); ++i) {
            const double x = g.dim == 1 ? g.xs[i] : g.xs[i / g.ys.size()];
            const double y = g.dim == 1 ? 0.0 : g.ys[i % g.ys.size()];
            std::snprintf(buf, sizeof buf, "%s,%.15g,%.15g,%.15g,%.15g\n", series.c_str(), t, x,
                          y, field.values[i]);
            out << buf;
        }
    }
}

int run_forward(const CommonFlags& f) {
    auto cfg = build_config(f);
    cfg.finalize();
    const auto sys = cfg.preset == harness::Preset::Example3
                         ? spectral::laplacian_2d(10, 10, cfg.grid_2d)
                         : spectral::laplacian_1d((int)std::max(cfg.n_fwd, cfg.n_inv), cfg.grid_1d);
    forward::InitialCondition u0 = cfg.preset == harness::Preset::Example1
                                       ? forward::InitialCondition::example1()
                                       : cfg.preset == harness::Preset::Example2
                                             ? forward::InitialCondition::example2()
                                             : forward::InitialCondition::example3();
    const forward::ProblemSpec spec{cfg.gamma, cfg.T, sys, u0, cfg.analytic_coeffs};
    std::vector<std::tuple<std::string, double, spectral::GridField>> rows;
    for (double t : cfg.t_samples)
        rows.emplace_back("exact", t,
                          spectral::synthesize(forward::forward_solve(spec, t, cfg.n_fwd)));
    const std::string path = out_path(cfg, "forward_fields.csv");
    write_field_csv(path, cfg, rows);
    std::cout << "wrote " << path << "\n";
    return 0;
}

int run_backward(const CommonFlags& f, bool emit_fields) {
    auto cfg = build_config(f);
    auto report = harness::run_preset(cfg);
    const std::string path = out_path(report.cfg, "backward_report.csv");
    report.write_csv_file(path);
    std::cout << "wrote " << path << "\n";
    for (const auto& s : report.summaries())
        std::cout << "noise " << s.noise_level << (report.cfg.noise_absolute ? " (abs)" : "%")
                  << ": mean e_r(0) = " << s.mean_e_r0 << "% over " << s.n_seeds << " seed(s)\n";
    if (emit_fields) {
        // plot-ready fields for the first (level, seed) pair
        const auto rec = harness::reconstruct(report.cfg, report.cfg.noise_levels.front(),
                                              report.cfg.seeds.front());
        std::vector<std::tuple<std::string, double, spectral::GridField>> rows;
        rows.emplace_back("data", report.cfg.T, rec.noisy);
        for (const auto& [t, fld] : rec.reconstruction) rows.emplace_back("reconstruction", t, fld);
        for (const auto& [t, fld] : rec.exact) rows.emplace_back("exact", t, fld);
        const std::string fpath = out_path(report.cfg, "backward_fields.csv");
        write_field_csv(fpath, report.cfg, rows);
        std::cout << "wrote " << fpath << " (alpha=" << rec.alpha << ", eps=" << rec.eps << ")\n";
    }
    return 0;
}

int run_table1(const CommonFlags& f) {
    auto cfg = build_config(f);
    auto report = harness::table1(cfg);
    const std::string path = out_path(report.cfg, "table1.csv");
    report.write_csv_file(path);
    std::cout << "wrote " << path << "\n";
    std::printf("%-8s", "noise%");
    for (const auto& s : report.summaries())
        if (s.p == 1.0) std::printf(" %8.3g", s.noise_level);
    std::printf("\n");
    for (double p : {1.0, 2.0, 3.0}) {
        std::printf("p=%-6g", p);
        for (const auto& s : report.summaries())
            if (s.p == p) std::printf(" %8.4f", s.mean_e_r0);
        std::printf("\n");
    }
    return 0;
}

int run_profile(const CommonFlags& f) {
    auto cfg = build_config(f);
    auto report = harness::profile_in_time(cfg);
    const std::string path = out_path(report.cfg, "profile.csv");
    report.write_csv_file(path);
    std::cout << "wrote " << path << "\n";
    return 0;
}

int run_rates(const CommonFlags& f) {
    auto cfg = build_config(f);
    if (cfg.noise_levels.size() < 3) cfg.noise_levels = {0.01, 0.03, 0.1, 0.3, 1.0};
    auto res = harness::rate_sweep(cfg);
    const std::string path = out_path(res.report.cfg, "rates.csv");
    res.report.write_csv_file(path);
    std::cout << "wrote " << path << "\n";
    std::printf("fitted slope of log e_r(0) vs log eps: %.6f\n", res.slope);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"backfrac: backward time-fractional diffusion by Sobolev-type regularization"};
    app.require_subcommand(1);

    CommonFlags ff, fb, ft, fp, fr;
    bool emit_fields = false;

    auto* c_forward = app.add_subcommand("forward", "solve the forward problem, emit field data");
    add_common(c_forward, ff);
    auto* c_backward = app.add_subcommand("backward", "full reconstruction pipeline");
    add_common(c_backward, fb);
    c_backward->add_flag("--emit-fields", emit_fields, "also emit reconstruction fields");
    auto* c_table1 = app.add_subcommand("table1", "p x noise grid of mean errors (a priori rule)");
    add_common(c_table1, ft);
    auto* c_profile = app.add_subcommand("profile", "e_r(t) over a time grid");
    add_common(c_profile, fp);
    auto* c_rates = app.add_subcommand("rates", "noise sweep and empirical convergence slope");
    add_common(c_rates, fr);

    // debugging aid, hidden from help
    double mg = 0, mb = 0, mz = 0;
    auto* c_mlf = app.add_subcommand("mlf-eval", "");
    c_mlf->group("");
    c_mlf->add_option("gamma", mg)->required();
    c_mlf->add_option("beta", mb)->required();
    c_mlf->add_option("z", mz)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_forward->parsed()) return run_forward(ff);
        if (c_backward->parsed()) return run_backward(fb, emit_fields);
        if (c_table1->parsed()) return run_table1(ft);
        if (c_profile->parsed()) return run_profile(fp);
        if (c_rates->parsed()) return run_rates(fr);
        if (c_mlf->parsed()) {
            std::printf("%.15g\n", backfrac::mlf::mlf_eval(mg, mb, mz));
            return 0;
        }
    } catch (const backfrac::infeasible_discrepancy& e) {
        std::cerr << "infeasible discrepancy: " << e.what() << "\n";
        return 3;
    } catch (const backfrac::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
