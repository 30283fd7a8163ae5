#include "fgarch/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fgarch/errors.hpp"
#include "fgarch/estimation.hpp"
#include "fgarch/ingest.hpp"
#include "fgarch/model.hpp"
#include "fgarch/preset.hpp"
#include "fgarch/replication.hpp"
#include "fgarch/rng.hpp"

namespace fgarch {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string error_type(const std::exception& e) {
    if (dynamic_cast<const DimensionError*>(&e)) return "dimension";
    if (dynamic_cast<const RankError*>(&e)) return "rank";
    if (dynamic_cast<const ArgumentError*>(&e)) return "argument";
    if (dynamic_cast<const DataError*>(&e)) return "data";
    if (dynamic_cast<const ParseError*>(&e)) return "parse";
    if (dynamic_cast<const SingularError*>(&e)) return "singular";
    if (dynamic_cast<const ConvergenceError*>(&e)) return "convergence";
    if (dynamic_cast<const InternalError*>(&e)) return "internal";
    return "error";
}

void emit_error(const std::string& type, const std::string& message) {
    json j;
    j["error"] = {{"type", type}, {"message", message}};
    std::cerr << j.dump() << std::endl;
}

struct GlobalOpts {
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out = ".";
    int workers = 0;
    std::string config_path;
};

/// Seed precedence: --seed flag, then FGARCH_SEED, then `fallback`.
std::uint64_t effective_seed(const GlobalOpts& g, std::uint64_t fallback) {
    if (g.seed_given) return g.seed;
    if (const char* env = std::getenv("FGARCH_SEED")) return std::strtoull(env, nullptr, 10);
    return fallback;
}

fs::path out_dir(const GlobalOpts& g) {
    fs::path dir(g.out);
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open for writing: " + path.string());
    out << text;
}

/// Applies a --config JSON file on top of defaults; every key must have a
/// registered setter (unknown keys rejected), and command-line flags win.
class ConfigApplier {
public:
    explicit ConfigApplier(const CLI::App* cmd) : cmd_(cmd) {}

    void add(const std::string& key, const std::string& flag,
             const std::function<void(const json&)>& setter) {
        setters_[key] = {flag, setter};
    }

    void apply(const std::string& path) const {
        if (path.empty()) return;
        std::ifstream in(path);
        if (!in) throw DataError("cannot open config: " + path);
        json j;
        try {
            in >> j;
        } catch (const json::parse_error& e) {
            throw ParseError(std::string("config: ") + e.what());
        }
        for (const auto& [key, value] : j.items()) {
            const auto it = setters_.find(key);
            if (it == setters_.end()) throw ParseError("config: unknown key '" + key + "'");
            // command-line flags override config values
            if (cmd_->count(it->second.first) == 0) it->second.second(value);
        }
    }

private:
    const CLI::App* cmd_;
    std::map<std::string, std::pair<std::string, std::function<void(const json&)>>> setters_;
};

json curve_to_json(const Curve& c) {
    json arr = json::array();
    for (int j = 0; j < c.grid.T; ++j) arr.push_back(c.values[j]);
    return arr;
}

json kernel_to_json(const Kernel2D& K) {
    json rows = json::array();
    for (int j = 0; j < K.grid.T; ++j) {
        json row = json::array();
        for (int k = 0; k < K.grid.T; ++k) row.push_back(K.values(j, k));
        rows.push_back(row);
    }
    return rows;
}

json estimate_to_json(const MCEstimate& est) {
    json j;
    j["mean"] = est.mean;
    j["se"] = est.se;
    j["reps"] = est.reps;
    j["degenerate"] = est.degenerate;
    return j;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t pos = text.find(',', start);
        const std::string tok =
            pos == std::string::npos ? text.substr(start) : text.substr(start, pos - start);
        if (!tok.empty()) {
            try {
                out.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw ArgumentError(std::string(what) + ": bad integer '" + tok + "'");
            }
        }
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (out.empty()) throw ArgumentError(std::string(what) + ": empty list");
    return out;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const GlobalOpts& g, const std::string& preset_arg, int n_flag, int grid_flag,
                 int burnin_flag) {
    SimPreset preset = resolve_preset(preset_arg);
    if (n_flag >= 0) preset.n = n_flag;
    if (grid_flag > 0) preset.grid_T = grid_flag;
    if (burnin_flag >= 0) preset.burnin = burnin_flag;
    preset.innovation.seed = effective_seed(g, preset.innovation.seed);

    const fs::path dir = out_dir(g);
    json manifest;
    manifest["preset"] = json::parse(preset_to_json(preset));
    manifest["seed"] = preset.innovation.seed;
    manifest["n"] = preset.n;
    manifest["burnin"] = preset.burnin;
    manifest["grid_T"] = preset.grid_T;

    if (preset.n == 0) {
        write_curves_csv({}, (dir / "y.csv").string());
        write_curves_csv({}, (dir / "sigma2.csv").string());
        write_curves_csv({}, (dir / "eps.csv").string());
        write_text(dir / "manifest.json", manifest.dump(2) + "\n");
        return 0;
    }

    const FGarchSpec spec = build_spec(preset);
    const SimResult sim = simulate(spec, preset.innovation, preset.n, preset.burnin);
    write_curves_csv(sim.y, (dir / "y.csv").string());
    write_curves_csv(sim.sigma2, (dir / "sigma2.csv").string());
    write_curves_csv(sim.eps, (dir / "eps.csv").string());
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------- estimate

int cmd_estimate(const GlobalOpts& g, const std::string& data_path, const std::string& basis_name,
                 int M_flag, double c1, double c2, bool with_cov) {
    const std::vector<Curve> sample = read_curves_csv(data_path);
    if (sample.empty()) throw DataError("estimate: no curves in " + data_path);

    BasisSet basis;
    const BasisKind kind = basis_kind_from_string(basis_name);
    if (kind == BasisKind::fpca) {
        std::vector<Curve> squared;
        squared.reserve(sample.size());
        for (const Curve& c : sample)
            squared.emplace_back(c.grid, c.values.array().square().matrix());
        const BasisSet probe = fpca(squared, 1);
        const int M = M_flag > 0 ? M_flag : choose_m_by_explained_variance(probe.eigenvalues);
        basis = (M == 1) ? probe : fpca(squared, M);
    } else {
        basis = make_basis(kind, M_flag > 0 ? M_flag : 1, sample.front().grid);
    }

    const CoefSeries series = project_sample(sample, basis);
    ThetaBounds bounds;
    bounds.c1 = c1;
    bounds.c2 = c2;
    FitOptions opts;
    opts.seed = effective_seed(g, 0);
    opts.compute_cov = with_cov;
    const FitResult res = fit(series, bounds, opts);

    json j;
    const Eigen::VectorXd theta_flat = res.theta_hat.flatten();
    j["theta"] = std::vector<double>(theta_flat.begin(), theta_flat.end());
    j["d"] = std::vector<double>(res.theta_hat.d.begin(), res.theta_hat.d.end());
    json A = json::array(), B = json::array();
    for (int r = 0; r < basis.M; ++r) {
        json ra = json::array(), rb = json::array();
        for (int c = 0; c < basis.M; ++c) {
            ra.push_back(res.theta_hat.A(r, c));
            rb.push_back(res.theta_hat.B(r, c));
        }
        A.push_back(ra);
        B.push_back(rb);
    }
    j["A"] = A;
    j["B"] = B;
    j["objective"] = res.objective_value;
    j["converged"] = res.converged;
    j["n_starts_used"] = res.n_starts_used;
    j["constraint_active"] = {{"c1", res.c1_active}, {"c2", res.c2_active}};
    j["warnings"] = res.warnings;
    json bj;
    bj["kind"] = to_string(basis.kind);
    bj["M"] = basis.M;
    bj["grid_T"] = basis.grid.T;
    if (basis.eigenvalues.size() > 0) {
        double total = 0.0;
        for (int m = 0; m < basis.eigenvalues.size(); ++m)
            total += std::max(basis.eigenvalues[m], 0.0);
        json ev = json::array(), share = json::array();
        for (int m = 0; m < std::min<int>(10, basis.eigenvalues.size()); ++m) {
            ev.push_back(basis.eigenvalues[m]);
            share.push_back(total > 0 ? std::max(basis.eigenvalues[m], 0.0) / total : 0.0);
        }
        bj["eigenvalues"] = ev;
        bj["explained_share"] = share;
    }
    j["basis"] = bj;
    if (res.cov) {
        json cov = json::array();
        for (int r = 0; r < res.cov->rows(); ++r)
            for (int c = 0; c < res.cov->cols(); ++c) cov.push_back((*res.cov)(r, c));
        j["cov"] = cov;
    } else {
        j["cov"] = nullptr;
    }
    j["delta_hat"] = curve_to_json(res.delta_hat);
    j["alpha_hat"] = kernel_to_json(res.alpha_hat);
    j["beta_hat"] = kernel_to_json(res.beta_hat);

    const fs::path dir = out_dir(g);
    write_text(dir / "fit.json", j.dump(2) + "\n");
    write_curves_csv({res.delta_hat}, (dir / "delta_hat.csv").string(), {"delta_hat"});
    write_kernel_csv(res.alpha_hat, (dir / "alpha_hat.csv").string());
    write_kernel_csv(res.beta_hat, (dir / "beta_hat.csv").string());
    return 0;
}

// ---------------------------------------------------------------- diagnose

int cmd_diagnose(const GlobalOpts& g, const std::string& preset_arg, std::int64_t reps,
                 double nu, const std::string& ells_text, std::int64_t coupling_reps, int depth) {
    SimPreset preset = resolve_preset(preset_arg);
    preset.innovation.seed = effective_seed(g, preset.innovation.seed);
    const FGarchSpec spec = build_spec(preset);
    const std::vector<int> ells = parse_int_list(ells_text, "--ells");

    json j;
    j["seed"] = preset.innovation.seed;
    j["preset"] = json::parse(preset_to_json(preset));
    j["lyapunov"] = estimate_to_json(lyapunov_l2(spec, preset.innovation, reps));
    json mh = estimate_to_json(moment_norm(spec, preset.innovation, nu, reps, NormKind::hs));
    mh["nu"] = nu;
    j["moment_hs"] = mh;
    json ms = estimate_to_json(moment_norm(spec, preset.innovation, nu, reps, NormKind::sup));
    ms["nu"] = nu;
    j["moment_sup"] = ms;
    json coupling = json::array();
    for (const CouplingRow& row :
         coupling_decay(spec, preset.innovation, ells, coupling_reps, depth)) {
        coupling.push_back({{"ell", row.ell}, {"mean", row.mean}, {"se", row.se}});
    }
    j["coupling"] = coupling;
    j["coupling_depth"] = depth;

    write_text(out_dir(g) / "diagnostics.json", j.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------- fpca

int cmd_fpca(const GlobalOpts& g, const std::string& data_path, int M_flag, bool squared) {
    std::vector<Curve> sample = read_curves_csv(data_path);
    if (sample.size() < 2) throw DataError("fpca: need at least 2 curves");
    if (squared)
        for (Curve& c : sample) c.values = c.values.array().square();

    const BasisSet probe = fpca(sample, 1);
    const int M = M_flag > 0 ? M_flag : choose_m_by_explained_variance(probe.eigenvalues);
    const BasisSet basis = (M == 1) ? probe : fpca(sample, M);

    double total = 0.0;
    for (int m = 0; m < basis.eigenvalues.size(); ++m)
        total += std::max(basis.eigenvalues[m], 0.0);
    json j;
    j["M"] = M;
    j["squared"] = squared;
    json ev = json::array(), share = json::array();
    for (int m = 0; m < std::min<int>(20, basis.eigenvalues.size()); ++m) {
        ev.push_back(basis.eigenvalues[m]);
        share.push_back(total > 0 ? std::max(basis.eigenvalues[m], 0.0) / total : 0.0);
    }
    j["eigenvalues"] = ev;
    j["explained_share"] = share;

    const fs::path dir = out_dir(g);
    write_text(dir / "fpca.json", j.dump(2) + "\n");
    std::vector<std::string> labels;
    for (int m = 1; m <= M; ++m) labels.push_back("phi_" + std::to_string(m));
    write_curves_csv(basis.functions, (dir / "fpca_basis.csv").string(), labels);
    return 0;
}

// ---------------------------------------------------------------- ingest

int cmd_ingest(const GlobalOpts& g, const std::string& prices_path, int expected_length) {
    const PricesFile file = read_prices_csv(prices_path);
    const FilterDaysResult filtered = filter_days(file.days, expected_length);
    const LogReturnResult returns = prices_to_log_returns(filtered.kept);

    const fs::path dir = out_dir(g);
    write_curves_csv(returns.curves, (dir / "curves.csv").string(), returns.day_ids);

    json j;
    j["read_days"] = file.days.size() + file.dropped.size();
    j["kept"] = returns.curves.size();
    json dropped = json::array();
    for (const auto& [id, reason] : file.dropped)
        dropped.push_back({{"day", id}, {"reason", reason}});
    for (const auto& [id, reason] : filtered.dropped)
        dropped.push_back({{"day", id}, {"reason", reason}});
    for (const auto& [id, reason] : returns.rejected)
        dropped.push_back({{"day", id}, {"reason", reason}});
    j["dropped"] = dropped;
    j["expected_length"] = expected_length;
    write_text(dir / "ingest_report.json", j.dump(2) + "\n");
    return 0;
}

// ------------------------------------------------------- replicate-table1

struct Table1Reference {
    double mean_d, sd_d, mean_a, sd_a, mean_b, sd_b;
};

// Monte Carlo reference values (1000 replications) for the shipped
// simulation design, by sample size.
const std::map<int, Table1Reference> kTable1Reference = {
    {300, {0.013, 0.003, 0.420, 0.058, 0.306, 0.086}},
    {600, {0.011, 0.002, 0.412, 0.042, 0.344, 0.064}},
    {1200, {0.010, 0.001, 0.408, 0.028, 0.369, 0.045}},
};

int cmd_replicate_table1(const GlobalOpts& g, const std::string& preset_arg,
                         const std::string& n_values_text, int reps) {
    SimPreset preset = resolve_preset(preset_arg);
    const std::uint64_t seed = effective_seed(g, preset.innovation.seed);
    const std::vector<int> n_values = parse_int_list(n_values_text, "--n-values");
    const BasisSet basis = make_basis(preset.basis_kind, 1, Grid{preset.grid_T});

    std::ofstream out((out_dir(g) / "table1.csv"));
    if (!out) throw DataError("cannot open table1.csv for writing");
    out << "n,reps,failed,mean_d1,sd_d1,mean_a11,sd_a11,mean_b11,sd_b11,"
           "ref_mean_d1,ref_sd_d1,ref_mean_a11,ref_sd_a11,ref_mean_b11,ref_sd_b11\n";
    for (const int n : n_values) {
        const ReplicationRow row = replicate(preset, basis, n, reps, seed);
        out << n << ',' << row.reps << ',' << row.failed;
        const bool have_sd = row.sd.size() > 0;
        for (int k = 0; k < 3; ++k) {
            out << ',' << row.mean[k] << ',';
            if (have_sd) out << row.sd[k];
        }
        const auto ref = kTable1Reference.find(n);
        if (ref != kTable1Reference.end()) {
            const Table1Reference& t = ref->second;
            out << ',' << t.mean_d << ',' << t.sd_d << ',' << t.mean_a << ',' << t.sd_a << ','
                << t.mean_b << ',' << t.sd_b;
        } else {
            out << ",,,,,,";
        }
        out << "\n";
    }
    // population values for reference
    out << "inf,,,0.0091287092917527679,,0.4,,0.4,,,,,,,\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Functional GARCH(1,1): simulation, diagnostics, estimation, ingestion"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    auto* seed_opt = app.add_option("--seed", g.seed, "RNG seed (env FGARCH_SEED as fallback)");
    app.add_option("--out", g.out, "output directory (created if missing)");
    app.add_option("--workers", g.workers, "worker thread count (0 = library default)");

    // simulate
    auto* sim = app.add_subcommand("simulate", "simulate curves from a preset");
    std::string sim_preset = "paper_sim";
    int sim_n = -1, sim_grid = -1, sim_burnin = -1;
    std::string sim_config;
    sim->add_option("--preset", sim_preset, "preset name or JSON path");
    sim->add_option("--n", sim_n, "sample size (overrides preset)");
    sim->add_option("--grid-T", sim_grid, "grid size (overrides preset)");
    sim->add_option("--burnin", sim_burnin, "burn-in length (overrides preset)");
    sim->add_option("--config", sim_config, "JSON config file");

    // estimate
    auto* est = app.add_subcommand("estimate", "fit the volatility recursion to curves");
    std::string est_data, est_basis = "fpca", est_config;
    int est_M = 0;
    double est_c1 = 1e-6, est_c2 = 0.98;
    bool est_cov = false;
    est->add_option("--data", est_data, "curves CSV")->required();
    est->add_option("--basis", est_basis, "fpca | fourier | bspline | bump");
    est->add_option("--M", est_M, "basis size (0 = explained-variance rule)");
    est->add_option("--c1", est_c1, "lower bound on |det A|");
    est->add_option("--c2", est_c2, "Frobenius bound on B, in (0,1)");
    est->add_flag("--cov", est_cov, "compute the sandwich covariance");
    est->add_option("--config", est_config, "JSON config file");

    // diagnose
    auto* diag = app.add_subcommand("diagnose", "Monte Carlo stationarity diagnostics");
    std::string diag_preset = "paper_sim", diag_ells = "1,2,4,8,16", diag_config;
    std::int64_t diag_reps = 10000, diag_creps = 200;
    double diag_nu = 1.0;
    int diag_depth = 64;
    diag->add_option("--preset", diag_preset, "preset name or JSON path");
    diag->add_option("--reps", diag_reps, "Monte Carlo replications");
    diag->add_option("--nu", diag_nu, "moment order");
    diag->add_option("--ells", diag_ells, "comma-separated coupling lags");
    diag->add_option("--coupling-reps", diag_creps, "coupling replications");
    diag->add_option("--depth", diag_depth, "series depth for coupling");
    diag->add_option("--config", diag_config, "JSON config file");

    // fpca
    auto* fp = app.add_subcommand("fpca", "empirical eigenbasis of a curve sample");
    std::string fp_data, fp_config;
    int fp_M = 0;
    bool fp_squared = false;
    fp->add_option("--data", fp_data, "curves CSV")->required();
    fp->add_option("--M", fp_M, "component count (0 = explained-variance rule)");
    fp->add_flag("--squared", fp_squared, "analyze squared curves");
    fp->add_option("--config", fp_config, "JSON config file");

    // ingest
    auto* ing = app.add_subcommand("ingest", "intraday prices to log-return curves");
    std::string ing_prices, ing_config;
    int ing_len = 79;
    ing->add_option("--prices", ing_prices, "long prices CSV (day,slot,price)")->required();
    ing->add_option("--expected-length", ing_len, "prices per complete day (P+1)");
    ing->add_option("--config", ing_config, "JSON config file");

    // replicate-table1
    auto* rep = app.add_subcommand("replicate-table1", "simulate+fit replication study");
    std::string rep_preset = "paper_sim", rep_nvalues = "300,600,1200", rep_config;
    int rep_reps = 200;
    rep->add_option("--preset", rep_preset, "preset name or JSON path");
    rep->add_option("--n-values", rep_nvalues, "comma-separated sample sizes");
    rep->add_option("--reps", rep_reps, "replications per sample size");
    rep->add_option("--config", rep_config, "JSON config file");

    try {
        // CLI11's vector overload consumes arguments back to front
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit_error("usage", e.what());
        return 1;
    }

    try {
        g.seed_given = seed_opt->count() > 0;
#ifdef _OPENMP
        if (g.workers > 0) omp_set_num_threads(g.workers);
#endif

        if (*sim) {
            ConfigApplier cfg(sim);
            cfg.add("preset", "--preset", [&](const json& v) { sim_preset = v.get<std::string>(); });
            cfg.add("n", "--n", [&](const json& v) { sim_n = v.get<int>(); });
            cfg.add("grid_T", "--grid-T", [&](const json& v) { sim_grid = v.get<int>(); });
            cfg.add("burnin", "--burnin", [&](const json& v) { sim_burnin = v.get<int>(); });
            cfg.apply(sim_config);
            return cmd_simulate(g, sim_preset, sim_n, sim_grid, sim_burnin);
        }
        if (*est) {
            ConfigApplier cfg(est);
            cfg.add("data", "--data", [&](const json& v) { est_data = v.get<std::string>(); });
            cfg.add("basis", "--basis", [&](const json& v) { est_basis = v.get<std::string>(); });
            cfg.add("M", "--M", [&](const json& v) { est_M = v.get<int>(); });
            cfg.add("c1", "--c1", [&](const json& v) { est_c1 = v.get<double>(); });
            cfg.add("c2", "--c2", [&](const json& v) { est_c2 = v.get<double>(); });
            cfg.add("cov", "--cov", [&](const json& v) { est_cov = v.get<bool>(); });
            cfg.apply(est_config);
            return cmd_estimate(g, est_data, est_basis, est_M, est_c1, est_c2, est_cov);
        }
        if (*diag) {
            ConfigApplier cfg(diag);
            cfg.add("preset", "--preset", [&](const json& v) { diag_preset = v.get<std::string>(); });
            cfg.add("reps", "--reps", [&](const json& v) { diag_reps = v.get<std::int64_t>(); });
            cfg.add("nu", "--nu", [&](const json& v) { diag_nu = v.get<double>(); });
            cfg.add("ells", "--ells", [&](const json& v) { diag_ells = v.get<std::string>(); });
            cfg.add("coupling_reps", "--coupling-reps",
                    [&](const json& v) { diag_creps = v.get<std::int64_t>(); });
            cfg.add("depth", "--depth", [&](const json& v) { diag_depth = v.get<int>(); });
            cfg.apply(diag_config);
            return cmd_diagnose(g, diag_preset, diag_reps, diag_nu, diag_ells, diag_creps,
                                diag_depth);
        }
        if (*fp) {
            ConfigApplier cfg(fp);
            cfg.add("data", "--data", [&](const json& v) { fp_data = v.get<std::string>(); });
            cfg.add("M", "--M", [&](const json& v) { fp_M = v.get<int>(); });
            cfg.add("squared", "--squared", [&](const json& v) { fp_squared = v.get<bool>(); });
            cfg.apply(fp_config);
            return cmd_fpca(g, fp_data, fp_M, fp_squared);
        }
        if (*ing) {
            ConfigApplier cfg(ing);
            cfg.add("prices", "--prices", [&](const json& v) { ing_prices = v.get<std::string>(); });
            cfg.add("expected_length", "--expected-length",
                    [&](const json& v) { ing_len = v.get<int>(); });
            cfg.apply(ing_config);
            return cmd_ingest(g, ing_prices, ing_len);
        }
        if (*rep) {
            ConfigApplier cfg(rep);
            cfg.add("preset", "--preset", [&](const json& v) { rep_preset = v.get<std::string>(); });
            cfg.add("n_values", "--n-values",
                    [&](const json& v) { rep_nvalues = v.get<std::string>(); });
            cfg.add("reps", "--reps", [&](const json& v) { rep_reps = v.get<int>(); });
            cfg.apply(rep_config);
            return cmd_replicate_table1(g, rep_preset, rep_nvalues, rep_reps);
        }
        emit_error("usage", "no subcommand given");
        return 1;
    } catch (const std::exception& e) {
        emit_error(error_type(e), e.what());
        return 1;
    }
}

}  // namespace fgarch
