#include "backfrac/harness.hpp"

#include "backfrac/errors.hpp"
#include "backfrac/measure.hpp"
#include "backfrac/regularize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace backfrac::harness {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string rule_name(param::Rule r) {
    switch (r) {
        case param::Rule::APriori: return "apriori";
        case param::Rule::APosteriori: return "aposteriori";
        case param::Rule::Fixed: return "fixed";
    }
    return "?";
}

}  // namespace

std::string preset_name(Preset p) {
    switch (p) {
        case Preset::Example1: return "example1";
        case Preset::Example2: return "example2";
        case Preset::Example3: return "example3";
    }
    return "?";
}

Preset preset_from_name(const std::string& name) {
    if (name == "example1") return Preset::Example1;
    if (name == "example2") return Preset::Example2;
    if (name == "example3") return Preset::Example3;
    throw config_error("unknown preset: " + name);
}

void ExperimentConfig::finalize() {
    if (n_fwd == 0)
        n_fwd = preset == Preset::Example1 ? 3 : (preset == Preset::Example2 ? 30 : 100);
    if (n_inv == 0) n_inv = preset == Preset::Example3 ? 10 : 5;
    reg.n_inv = n_inv;
    if (!(gamma > 0.0 && gamma < 1.0)) throw config_error("gamma must lie in (0,1)");
    if (!(T > 0.0)) throw config_error("T must be positive");
    if (seeds.empty()) throw config_error("need at least one seed");
    if (noise_levels.empty()) throw config_error("need at least one noise level");
    for (double lv : noise_levels)
        if (!(lv >= 0.0)) throw config_error("noise levels must be >= 0");
    if (grid_1d < 3 || grid_2d < 3) throw config_error("grids need at least 3 nodes");
    if (std::find(t_samples.begin(), t_samples.end(), 0.0) == t_samples.end())
        t_samples.insert(t_samples.begin(), 0.0);
    std::sort(t_samples.begin(), t_samples.end());
    t_samples.erase(std::unique(t_samples.begin(), t_samples.end()), t_samples.end());
    for (double t : t_samples)
        if (!(t >= 0.0 && t <= T)) throw config_error("t samples must lie in [0,T]");
    reg.validate();
}

double RunRecord::e_r0() const {
    for (const auto& [t, e] : errors)
        if (t == 0.0) return e;
    throw std::logic_error("run record without t=0 sample");
}

namespace {

// Per-config state independent of (noise level, seed): eigensystem, exact
// initial field, u0 coefficients, clean data at T, exact solution fields at
// the sampled times.
struct RunContext {
    std::shared_ptr<const spectral::EigenSystem> sys;
    forward::InitialCondition u0;
    spectral::GridField u0_field;
    spectral::SpectralCoeffs u0_coeffs;  // first n_fwd modes
    spectral::GridField clean;           // u(T) truncated to n_fwd
    double clean_norm = 0;
    std::map<double, spectral::GridField> exact_at;  // per sampled t
};

RunContext make_context(const ExperimentConfig& cfg) {
    RunContext ctx;
    const std::size_t need = std::max(cfg.n_fwd, cfg.n_inv);
    if (cfg.preset == Preset::Example3) {
        int nm = 1;
        while ((std::size_t)nm * nm < need) ++nm;
        nm = std::max(nm, 10);
        ctx.sys = spectral::laplacian_2d(nm, nm, cfg.grid_2d);
    } else {
        ctx.sys = spectral::laplacian_1d((int)need, cfg.grid_1d);
    }
    switch (cfg.preset) {
        case Preset::Example1: ctx.u0 = forward::InitialCondition::example1(); break;
        case Preset::Example2: ctx.u0 = forward::InitialCondition::example2(); break;
        case Preset::Example3: ctx.u0 = forward::InitialCondition::example3(); break;
    }
    ctx.u0_field = ctx.u0.sample(ctx.sys);
    ctx.u0_coeffs = ctx.u0.coefficients(ctx.sys, cfg.n_fwd, !cfg.analytic_coeffs);

    const forward::ProblemSpec spec{cfg.gamma, cfg.T, ctx.sys, ctx.u0, cfg.analytic_coeffs};
    ctx.clean = spectral::synthesize(forward::forward_solve(spec, cfg.T, cfg.n_fwd));
    ctx.clean_norm = spectral::l2_norm(ctx.clean);
    for (double t : cfg.t_samples) {
        if (t == 0.0)
            ctx.exact_at.emplace(t, ctx.u0_field);
        else
            ctx.exact_at.emplace(t, spectral::synthesize(forward::forward_solve(spec, t, cfg.n_fwd)));
    }
    return ctx;
}

double choose_alpha(const ExperimentConfig& cfg, const RunContext& ctx,
                    const spectral::SpectralCoeffs& f, const spectral::GridField& noisy,
                    double eps) {
    switch (cfg.reg.rule) {
        case param::Rule::Fixed:
            return cfg.reg.fixed_alpha;
        case param::Rule::APriori: {
            param::RegConfig rc = cfg.reg;
            if (rc.E <= 0.0) rc.E = spectral::norm_p(ctx.u0_coeffs, rc.p);
            return param::alpha_apriori(eps, rc);
        }
        case param::Rule::APosteriori: {
            if (!(eps > 0.0))
                throw config_error("a posteriori rule needs a positive noise level");
            // The discrepancy ||B_alpha f - f|| lives on the full data: the
            // part of f outside the retained modes passes through B_alpha - I
            // unchanged (up to the vanishing multipliers), so it contributes
            // the alpha-independent residual r. Solve the modal equation for
            // the remaining budget sqrt((tau eps)^2 - r^2).
            const auto resolved = spectral::synthesize(f);
            double r2 = 0.0;
            for (std::size_t i = 0; i < noisy.values.size(); ++i) {
                const double d = noisy.values[i] - resolved.values[i];
                r2 += noisy.grid->weights[i] * d * d;
            }
            const double te = cfg.reg.tau * eps;
            if (te * te <= r2)
                throw infeasible_discrepancy(
                    "tau*eps = " + std::to_string(te) +
                    " does not exceed the unresolved data residual r = " +
                    std::to_string(std::sqrt(r2)) + "; increase n_inv or tau");
            return param::solve_discrepancy(f, cfg.reg.b, std::sqrt(te * te - r2));
        }
    }
    throw std::logic_error("unreachable rule");
}

RunRecord run_single(const ExperimentConfig& cfg, const RunContext& ctx, double level,
                     std::uint64_t seed) {
    const auto t0 = std::chrono::steady_clock::now();
    const double eps = cfg.noise_absolute ? level : level / 100.0 * ctx.clean_norm;

    const auto noisy = measure::add_noise(ctx.clean, {eps, seed, 0});
    const auto f = spectral::project(noisy, ctx.sys, cfg.n_inv);
    const double alpha = choose_alpha(cfg, ctx, f, noisy, eps);

    RunRecord rec;
    rec.preset = preset_name(cfg.preset);
    rec.gamma = cfg.gamma;
    rec.T = cfg.T;
    rec.b = cfg.reg.b;
    rec.p = cfg.reg.p;
    rec.tau = cfg.reg.tau;
    rec.rule = rule_name(cfg.reg.rule);
    rec.noise_level = level;
    rec.noise_absolute = cfg.noise_absolute;
    rec.eps = eps;
    rec.seed = seed;
    rec.alpha = alpha;
    for (double t : cfg.t_samples) {
        const auto v = regularize::backward_solve(f, alpha, cfg.reg.b, cfg.gamma, cfg.T, t,
                                                  cfg.n_inv);
        const auto recon = spectral::synthesize(v);
        rec.errors.emplace_back(t, measure::rel_error(ctx.exact_at.at(t), recon));
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                      .count();
    return rec;
}

}  // namespace

ExperimentReport run_preset(const ExperimentConfig& cfg_in) {
    ExperimentConfig cfg = cfg_in;
    cfg.finalize();
    RunContext ctx = make_context(cfg);
    ExperimentReport report{cfg, {}};
    for (double level : cfg.noise_levels)
        for (std::uint64_t seed : cfg.seeds) report.runs.push_back(run_single(cfg, ctx, level, seed));
    return report;
}

ExperimentReport table1(ExperimentConfig cfg) {
    cfg.reg.rule = param::Rule::APriori;
    cfg.reg.E = 0.0;  // recomputed per p
    cfg.finalize();
    RunContext ctx = make_context(cfg);
    ExperimentReport report{cfg, {}};
    for (double p : {1.0, 2.0, 3.0}) {
        ExperimentConfig c = cfg;
        c.reg.p = p;
        for (double level : cfg.noise_levels)
            for (std::uint64_t seed : cfg.seeds)
                report.runs.push_back(run_single(c, ctx, level, seed));
    }
    return report;
}

ExperimentReport profile_in_time(ExperimentConfig cfg) {
    if (cfg.t_samples.size() <= 1) {
        cfg.t_samples.clear();
        for (int i = 0; i <= 10; ++i) cfg.t_samples.push_back(cfg.T * i / 10.0);
    }
    return run_preset(cfg);
}

RateResult rate_sweep(const ExperimentConfig& cfg) {
    RateResult res;
    res.report = run_preset(cfg);
    std::vector<std::pair<double, double>> pairs;
    for (const auto& s : res.report.summaries()) pairs.emplace_back(s.eps, s.mean_e_r0);
    res.slope = measure::rate_fit(pairs);
    return res;
}

ReconstructionData reconstruct(const ExperimentConfig& cfg_in, double noise_level,
                               std::uint64_t seed) {
    ExperimentConfig cfg = cfg_in;
    cfg.finalize();
    RunContext ctx = make_context(cfg);
    ReconstructionData out;
    out.eps = cfg.noise_absolute ? noise_level : noise_level / 100.0 * ctx.clean_norm;
    out.noisy = measure::add_noise(ctx.clean, {out.eps, seed, 0});
    out.data_coeffs = spectral::project(out.noisy, ctx.sys, cfg.n_inv);
    out.alpha = choose_alpha(cfg, ctx, out.data_coeffs, out.noisy, out.eps);
    for (double t : cfg.t_samples) {
        auto v = regularize::backward_solve(out.data_coeffs, out.alpha, cfg.reg.b, cfg.gamma,
                                            cfg.T, t, cfg.n_inv);
        out.reconstruction.emplace_back(t, spectral::synthesize(v));
        out.solution_coeffs.emplace_back(t, std::move(v));
        out.exact.emplace_back(t, ctx.exact_at.at(t));
    }
    return out;
}

std::vector<SummaryRecord> ExperimentReport::summaries() const {
    // key: (p, noise level) in first-seen order
    std::vector<SummaryRecord> out;
    std::map<std::pair<double, double>, std::size_t> index;
    std::map<std::size_t, std::vector<double>> samples;
    for (const auto& r : runs) {
        const auto key = std::make_pair(r.p, r.noise_level);
        auto [it, inserted] = index.emplace(key, out.size());
        if (inserted) {
            SummaryRecord s;
            s.p = r.p;
            s.noise_level = r.noise_level;
            s.eps = r.eps;
            out.push_back(s);
        }
        samples[it->second].push_back(r.e_r0());
    }
    for (auto& [idx, vals] : samples) {
        SummaryRecord& s = out[idx];
        s.n_seeds = vals.size();
        s.mean_e_r0 = std::accumulate(vals.begin(), vals.end(), 0.0) / vals.size();
        double ss = 0.0;
        for (double v : vals) ss += (v - s.mean_e_r0) * (v - s.mean_e_r0);
        s.std_e_r0 = vals.size() > 1 ? std::sqrt(ss / (vals.size() - 1)) : 0.0;
    }
    return out;
}

void ExperimentReport::write_csv(std::ostream& out) const {
    out << "# backfrac " << kVersion << " seed-set=";
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i)
        out << (i ? "," : "") << cfg.seeds[i];
    out << "\n";
    {
        double total_ms = 0;
        for (const auto& r : runs) total_ms += r.wall_ms;
        std::time_t now = std::time(nullptr);
        char stamp[32];
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        out << "# generated: " << stamp << " wall_ms=" << fmt(total_ms) << "\n";
    }
    out << "# preset=" << preset_name(cfg.preset) << " gamma=" << fmt(cfg.gamma)
        << " T=" << fmt(cfg.T) << " rule=" << rule_name(cfg.reg.rule)
        << " noise-base=" << (cfg.noise_absolute ? "absolute" : "percent-of-uT-l2norm")
        << " rng=splitmix64 Np=" << cfg.n_fwd << " Ni=" << cfg.n_inv << "\n";
    out << "kind,preset,gamma,T,b,p,rule,tau,noise_level,eps,seed,alpha,t,e_r,e_r_std\n";
    for (const auto& r : runs)
        for (const auto& [t, e] : r.errors)
            out << "run," << r.preset << ',' << fmt(r.gamma) << ',' << fmt(r.T) << ',' << fmt(r.b)
                << ',' << fmt(r.p) << ',' << r.rule << ',' << fmt(r.tau) << ','
                << fmt(r.noise_level) << ',' << fmt(r.eps) << ',' << r.seed << ',' << fmt(r.alpha)
                << ',' << fmt(t) << ',' << fmt(e) << ",\n";
    for (const auto& s : summaries())
        out << "summary," << preset_name(cfg.preset) << ',' << fmt(cfg.gamma) << ',' << fmt(cfg.T)
            << ',' << fmt(cfg.reg.b) << ',' << fmt(s.p) << ',' << rule_name(cfg.reg.rule) << ','
            << fmt(cfg.reg.tau) << ',' << fmt(s.noise_level) << ',' << fmt(s.eps) << ",,,"
            << fmt(0.0) << ',' << fmt(s.mean_e_r0) << ',' << fmt(s.std_e_r0) << "\n";
}

void ExperimentReport::write_csv_file(const std::string& path) const {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path);
    if (!out) throw config_error("cannot write " + path);
    write_csv(out);
}

void apply_config_table(const config::Table& t, ExperimentConfig& cfg) {
    using namespace config;
    cfg.preset = preset_from_name(get_string(t, "problem", "preset", preset_name(cfg.preset)));
    cfg.gamma = get_number(t, "problem", "gamma", cfg.gamma);
    cfg.T = get_number(t, "problem", "T", cfg.T);
    cfg.grid_1d = (int)get_number(t, "problem", "grid_1d", cfg.grid_1d);
    cfg.grid_2d = (int)get_number(t, "problem", "grid_2d", cfg.grid_2d);
    cfg.n_fwd = (std::size_t)get_number(t, "problem", "Np", (double)cfg.n_fwd);
    cfg.analytic_coeffs = get_bool(t, "problem", "analytic_coeffs", cfg.analytic_coeffs);
    if (has_key(t, "problem", "t_samples"))
        cfg.t_samples = get_numbers(t, "problem", "t_samples", cfg.t_samples);

    cfg.reg.b = get_number(t, "regularization", "b", cfg.reg.b);
    cfg.reg.p = get_number(t, "regularization", "p", cfg.reg.p);
    cfg.reg.E = get_number(t, "regularization", "E", cfg.reg.E);
    cfg.reg.tau = get_number(t, "regularization", "tau", cfg.reg.tau);
    cfg.n_inv = (std::size_t)get_number(t, "regularization", "Ni", (double)cfg.n_inv);
    const std::string rule = get_string(t, "regularization", "rule", "");
    if (!rule.empty()) {
        if (rule == "apriori")
            cfg.reg.rule = param::Rule::APriori;
        else if (rule == "aposteriori")
            cfg.reg.rule = param::Rule::APosteriori;
        else if (rule == "fixed")
            cfg.reg.rule = param::Rule::Fixed;
        else
            throw config_error("unknown rule: " + rule);
    }
    cfg.reg.fixed_alpha = get_number(t, "regularization", "alpha", cfg.reg.fixed_alpha);

    if (has_key(t, "noise", "levels"))
        cfg.noise_levels = get_numbers(t, "noise", "levels", cfg.noise_levels);
    cfg.noise_absolute = get_bool(t, "noise", "absolute", cfg.noise_absolute);
    if (has_key(t, "noise", "seeds")) {
        cfg.seeds.clear();
        for (double s : get_numbers(t, "noise", "seeds", {}))
            cfg.seeds.push_back((std::uint64_t)s);
    }
    cfg.out_dir = get_string(t, "output", "dir", cfg.out_dir);
}

}  // namespace backfrac::harness
