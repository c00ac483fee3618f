// sbmcav: community detection toolkit for the sparse two-community block
// model with uninformative degrees. Subcommands cover parameter
// derivation, graph/tree sampling, density-evolution analysis, phase
// diagram sweeps, and Monte Carlo experiment drivers. Output is CSV for
// grid sweeps and JSON for single-shot reports; every file starts with a
// config echo sufficient to reproduce the run.

#include <limits>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sbm/bp.hpp"
#include "sbm/density_evolution.hpp"
#include "sbm/experiments.hpp"
#include "sbm/graphs.hpp"
#include "sbm/io.hpp"
#include "sbm/model.hpp"
#include "sbm/parallel.hpp"

namespace {

constexpr int kSchemaVersion = 1;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

using Echo = std::map<std::string, std::string>;

void write_file(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << content;
}

std::string csv_header(const std::string& subcommand, const Echo& echo) {
    std::ostringstream os;
    os << "# schema_version=" << kSchemaVersion << "\n# subcommand=" << subcommand << "\n";
    for (const auto& [k, v] : echo) os << "# " << k << "=" << v << "\n";
    return os.str();
}

nlohmann::json json_config(const std::string& subcommand, const Echo& echo) {
    nlohmann::json cfg;
    cfg["subcommand"] = subcommand;
    for (const auto& [k, v] : echo) cfg[k] = v;
    return cfg;
}

std::vector<double> parse_grid(const std::string& spec) {
    double from = 0, to = 0, step = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &from, &to, &step) != 3 || step <= 0 || to < from)
        throw std::invalid_argument("grid must be start:stop:step with step > 0, got '" + spec + "'");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double v = from + i * step;
        if (v > to + step * 1e-9) break;
        grid.push_back(v);
    }
    return grid;
}

struct ParamFlags {
    double p = 0.25;
    double d = 50.0;
    std::optional<double> lambda;
    std::optional<double> a, b, c;

    sbm::ModelParams resolve() const {
        if (a || b || c) {
            if (!(a && b && c)) throw std::invalid_argument("provide all of --a --b --c or none");
            if (lambda) throw std::invalid_argument("--lambda conflicts with --a/--b/--c");
            return sbm::params_from_abc(p, d, *a, *b, *c);
        }
        return sbm::derive_params(p, d, lambda.value_or(1.0));
    }

    void add_to(CLI::App* cmd, bool with_d = true) {
        cmd->add_option("--p", p, "fraction of community-1 vertices, in (0, 1/2]")->capture_default_str();
        if (with_d) cmd->add_option("--d", d, "mean degree")->capture_default_str();
        cmd->add_option("--lambda", lambda, "signal-to-noise ratio d(1-b)^2");
        cmd->add_option("--a", a, "affinity a (with --b --c instead of --lambda)");
        cmd->add_option("--b", b, "affinity b");
        cmd->add_option("--c", c, "affinity c");
    }

    void echo_model(Echo& e, const sbm::ModelParams& m) const {
        e["p"] = fmt(m.p);
        e["d"] = fmt(m.d);
        e["lambda"] = fmt(m.lambda);
    }
};

nlohmann::json model_to_json(const sbm::ModelParams& m) {
    nlohmann::json j;
    j["p"] = m.p;
    j["d"] = m.d;
    j["lambda"] = m.lambda;
    j["epsilon"] = m.epsilon;
    j["a"] = m.a;
    j["b"] = m.b;
    j["c"] = m.c;
    j["h"] = m.h;
    return j;
}

nlohmann::json report_to_json(const sbm::mc::EstimateReport& rep) {
    nlohmann::json j;
    j["estimate"] = rep.estimate;
    j["stderr"] = rep.stderr;
    j["n_samples"] = rep.n_samples;
    j["flagged_fraction"] = rep.flagged_fraction;
    j["workers"] = rep.workers;
    if (rep.class_empty_warning) j["class_empty_warning"] = true;
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"belief propagation + density evolution for the unbalanced sparse block model"};
    app.require_subcommand(1);

    std::string output = "-";
    const auto add_output = [&output](CLI::App* cmd) {
        cmd->add_option("-o,--output", output, "output path ('-' for stdout)")->capture_default_str();
    };

    // ---- params ----
    auto* cmd_params = app.add_subcommand("params", "derive or validate model parameters");
    add_output(cmd_params);
    ParamFlags pf_params;
    pf_params.add_to(cmd_params);
    std::string params_input;
    cmd_params->add_option("--input", params_input, "read a flat JSON object {p,d,lambda} or {p,d,a,b,c}");

    // ---- sample-sbm ----
    auto* cmd_ssbm = app.add_subcommand("sample-sbm", "sample a labeled SBM graph (edge-list text output)");
    add_output(cmd_ssbm);
    ParamFlags pf_ssbm;
    pf_ssbm.add_to(cmd_ssbm);
    std::uint32_t ssbm_n = 10000;
    std::uint64_t ssbm_seed = 1;
    cmd_ssbm->add_option("--n", ssbm_n, "vertex count")->capture_default_str();
    cmd_ssbm->add_option("--seed", ssbm_seed, "master seed")->capture_default_str();

    // ---- sample-gw ----
    auto* cmd_sgw = app.add_subcommand("sample-gw", "sample a labeled Galton-Watson tree (parent-array JSON)");
    add_output(cmd_sgw);
    ParamFlags pf_sgw;
    pf_sgw.add_to(cmd_sgw);
    std::uint32_t sgw_depth = 3;
    std::uint64_t sgw_seed = 1, sgw_budget = sbm::kDefaultTreeBudget;
    cmd_sgw->add_option("--depth", sgw_depth, "truncation depth")->capture_default_str();
    cmd_sgw->add_option("--seed", sgw_seed, "master seed")->capture_default_str();
    cmd_sgw->add_option("--budget", sgw_budget, "vertex budget")->capture_default_str();

    // ---- de-iterate ----
    auto* cmd_dei = app.add_subcommand("de-iterate", "iterate mu_1 = q lambda/(p(1-p)), mu_{k+1} = G(mu_k)");
    add_output(cmd_dei);
    double dei_p = 0.25, dei_lambda = 1.0, dei_q = 0.1, dei_tol = 1e-10;
    std::uint32_t dei_max_iter = 10000;
    int dei_nodes = sbm::de::kDefaultQuadNodes;
    cmd_dei->add_option("--p", dei_p, "community fraction")->capture_default_str();
    cmd_dei->add_option("--lambda", dei_lambda, "signal-to-noise ratio")->capture_default_str();
    cmd_dei->add_option("--q", dei_q, "reveal probability")->capture_default_str();
    cmd_dei->add_option("--tol", dei_tol, "convergence tolerance")->capture_default_str();
    cmd_dei->add_option("--max-iter", dei_max_iter, "iteration cap")->capture_default_str();
    cmd_dei->add_option("--quad-nodes", dei_nodes, "Gauss-Hermite node floor")->capture_default_str();

    // ---- fixed-points ----
    auto* cmd_fp = app.add_subcommand("fixed-points", "fixed points of G with stability flags (JSON)");
    add_output(cmd_fp);
    double fp_p = 0.25, fp_lambda = 1.0;
    int fp_nodes = sbm::de::kDefaultQuadNodes, fp_grid = 2000;
    cmd_fp->add_option("--p", fp_p, "community fraction")->capture_default_str();
    cmd_fp->add_option("--lambda", fp_lambda, "signal-to-noise ratio")->capture_default_str();
    cmd_fp->add_option("--quad-nodes", fp_nodes, "Gauss-Hermite node floor")->capture_default_str();
    cmd_fp->add_option("--grid", fp_grid, "sign-scan grid points")->capture_default_str();

    // ---- spinodal ----
    auto* cmd_sp = app.add_subcommand("spinodal", "spinodal threshold lambda_sp(p) (CSV)");
    add_output(cmd_sp);
    double sp_p = 0.25, sp_tol = 1e-10;
    cmd_sp->add_option("--p", sp_p, "community fraction")->capture_default_str();
    cmd_sp->add_option("--tol", sp_tol, "minimization tolerance")->capture_default_str();

    // ---- phase-diagram ----
    auto* cmd_pd = app.add_subcommand("phase-diagram", "lambda_sp over a p grid vs the KS line (CSV)");
    add_output(cmd_pd);
    std::string pd_grid = "0.02:0.5:0.02";
    double pd_tol = 1e-10;
    unsigned pd_workers = 0;
    cmd_pd->add_option("--p-grid", pd_grid, "start:stop:step")->capture_default_str();
    cmd_pd->add_option("--tol", pd_tol, "minimization tolerance")->capture_default_str();
    cmd_pd->add_option("--workers", pd_workers, "thread count (0 = auto)")->capture_default_str();

    // ---- perf-curve ----
    auto* cmd_pc = app.add_subcommand(
        "perf-curve", "success_from_mu(alpha) and q threshold beta p(1-p)/lambda over a lambda grid (CSV)");
    add_output(cmd_pc);
    double pc_p = 0.05;
    std::string pc_grid = "0.5:1.5:0.01";
    unsigned pc_workers = 0;
    cmd_pc->add_option("--p", pc_p, "community fraction")->capture_default_str();
    cmd_pc->add_option("--lambda-grid", pc_grid, "start:stop:step")->capture_default_str();
    cmd_pc->add_option("--workers", pc_workers, "thread count (0 = auto)")->capture_default_str();

    // ---- simulate-tree ----
    auto* cmd_st = app.add_subcommand("simulate-tree", "Monte Carlo success of the optimal depth-r tree test");
    add_output(cmd_st);
    ParamFlags pf_st;
    pf_st.add_to(cmd_st);
    double st_q = 0.1;
    std::uint32_t st_depth = 2;
    std::size_t st_reps = 1000;
    std::uint64_t st_seed = 1, st_budget = sbm::kDefaultTreeBudget;
    unsigned st_workers = 0;
    cmd_st->add_option("--q", st_q, "reveal probability")->capture_default_str();
    cmd_st->add_option("--depth", st_depth, "reveal depth")->capture_default_str();
    cmd_st->add_option("--reps", st_reps, "tree replicas")->capture_default_str();
    cmd_st->add_option("--seed", st_seed, "master seed")->capture_default_str();
    cmd_st->add_option("--budget", st_budget, "per-tree vertex budget")->capture_default_str();
    cmd_st->add_option("--workers", st_workers, "thread count (0 = auto)")->capture_default_str();

    // ---- simulate-sbm ----
    auto* cmd_ss = app.add_subcommand("simulate-sbm", "Monte Carlo success of the radius-r local test on an SBM");
    add_output(cmd_ss);
    ParamFlags pf_ss;
    pf_ss.add_to(cmd_ss);
    double ss_q = 0.1;
    std::uint32_t ss_n = 10000, ss_r = 2, ss_enum_budget = sbm::bp::kDefaultEnumBudget,
                  ss_ball_budget = sbm::kDefaultBallBudget;
    std::size_t ss_reps = 1000;
    std::uint64_t ss_seed = 1;
    unsigned ss_workers = 0;
    cmd_ss->add_option("--q", ss_q, "reveal probability")->capture_default_str();
    cmd_ss->add_option("--n", ss_n, "vertex count")->capture_default_str();
    cmd_ss->add_option("--r,--radius", ss_r, "ball radius")->capture_default_str();
    cmd_ss->add_option("--reps", ss_reps, "test centers")->capture_default_str();
    cmd_ss->add_option("--seed", ss_seed, "master seed")->capture_default_str();
    cmd_ss->add_option("--enum-budget", ss_enum_budget, "exact-posterior vertex budget")->capture_default_str();
    cmd_ss->add_option("--ball-budget", ss_ball_budget, "ball vertex budget")->capture_default_str();
    cmd_ss->add_option("--workers", ss_workers, "thread count (0 = auto)")->capture_default_str();

    // ---- nishimori ----
    auto* cmd_ni = app.add_subcommand("nishimori", "population dynamics + Nishimori consistency check");
    add_output(cmd_ni);
    ParamFlags pf_ni;
    pf_ni.add_to(cmd_ni);
    double ni_q = 0.1;
    std::uint32_t ni_r = 3, ni_islands = sbm::mc::kDefaultIslands;
    std::size_t ni_pool = 100000;
    std::uint64_t ni_seed = 1;
    unsigned ni_workers = 0;
    std::string ni_dump1, ni_dump2;
    cmd_ni->add_option("--q", ni_q, "reveal probability")->capture_default_str();
    cmd_ni->add_option("--r,--radius", ni_r, "cavity generations")->capture_default_str();
    cmd_ni->add_option("--pool", ni_pool, "total pool size")->capture_default_str();
    cmd_ni->add_option("--islands", ni_islands, "independent islands")->capture_default_str();
    cmd_ni->add_option("--seed", ni_seed, "master seed")->capture_default_str();
    cmd_ni->add_option("--workers", ni_workers, "thread count (0 = auto)")->capture_default_str();
    cmd_ni->add_option("--dump-xi1", ni_dump1, "write raw xi^(1) samples, one per line");
    cmd_ni->add_option("--dump-xi2", ni_dump2, "write raw xi^(2) samples, one per line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (cmd_params->parsed()) {
        sbm::ModelParams m;
        if (!params_input.empty()) {
            std::ifstream is(params_input);
            if (!is) throw std::runtime_error("cannot open " + params_input);
            nlohmann::json j = nlohmann::json::parse(is);
            if (j.contains("lambda"))
                m = sbm::derive_params(j.at("p"), j.at("d"), j.at("lambda"));
            else
                m = sbm::params_from_abc(j.at("p"), j.at("d"), j.at("a"), j.at("b"), j.at("c"));
        } else {
            m = pf_params.resolve();
        }
        Echo e;
        pf_params.echo_model(e, m);
        nlohmann::json out;
        out["schema_version"] = kSchemaVersion;
        out["config"] = json_config("params", e);
        out["params"] = model_to_json(m);
        const auto r = sbm::transition_matrix(m);
        out["transition_matrix"] = {{r(0, 0), r(0, 1)}, {r(1, 0), r(1, 1)}};
        write_file(output, out.dump(2) + "\n");
    } else if (cmd_ssbm->parsed()) {
        const auto m = pf_ssbm.resolve();
        const auto g = sbm::sample_sbm(m, ssbm_n, ssbm_seed);
        Echo e;
        pf_ssbm.echo_model(e, m);
        e["n"] = std::to_string(ssbm_n);
        e["seed"] = std::to_string(ssbm_seed);
        std::ostringstream os;
        os << csv_header("sample-sbm", e);
        sbm::io::write_edge_list(os, g);
        write_file(output, os.str());
    } else if (cmd_sgw->parsed()) {
        const auto m = pf_sgw.resolve();
        const auto t = sbm::sample_gw(m, sgw_depth, sgw_seed, sgw_budget);
        Echo e;
        pf_sgw.echo_model(e, m);
        e["depth"] = std::to_string(sgw_depth);
        e["seed"] = std::to_string(sgw_seed);
        e["budget"] = std::to_string(sgw_budget);
        nlohmann::json out = sbm::io::tree_to_json(t);
        out["config"] = json_config("sample-gw", e);
        write_file(output, out.dump(2) + "\n");
    } else if (cmd_dei->parsed()) {
        const auto tr = sbm::de::iterate_mu(dei_q, dei_p, dei_lambda, dei_tol, dei_max_iter, dei_nodes);
        Echo e;
        e["p"] = fmt(dei_p);
        e["lambda"] = fmt(dei_lambda);
        e["q"] = fmt(dei_q);
        e["tol"] = fmt(dei_tol);
        e["max_iter"] = std::to_string(dei_max_iter);
        e["quad_nodes"] = std::to_string(dei_nodes);
        e["converged"] = tr.converged ? "true" : "false";
        e["converged_to"] = fmt(tr.converged_to);
        e["classification"] = sbm::de::to_string(tr.classification);
        std::ostringstream os;
        os << csv_header("de-iterate", e) << "k,mu_k\n";
        for (std::size_t k = 0; k < tr.mus.size(); ++k) os << (k + 1) << ',' << fmt12(tr.mus[k]) << '\n';
        write_file(output, os.str());
    } else if (cmd_fp->parsed()) {
        const auto rep = sbm::de::fixed_points(fp_p, fp_lambda, fp_nodes, fp_grid);
        Echo e;
        e["p"] = fmt(fp_p);
        e["lambda"] = fmt(fp_lambda);
        e["quad_nodes"] = std::to_string(fp_nodes);
        e["grid"] = std::to_string(fp_grid);
        nlohmann::json out;
        out["schema_version"] = kSchemaVersion;
        out["config"] = json_config("fixed-points", e);
        out["zero_stable"] = rep.zero_stable;
        out["gprime_zero"] = rep.gprime_zero;
        if (rep.beta) {
            out["beta"] = *rep.beta;
            out["gprime_beta"] = rep.gprime_beta;
        }
        if (rep.alpha) {
            out["alpha"] = *rep.alpha;
            out["gprime_alpha"] = rep.gprime_alpha;
        }
        if (rep.grid_warning) out["grid_warning"] = true;
        write_file(output, out.dump(2) + "\n");
    } else if (cmd_sp->parsed()) {
        const double v = sbm::de::spinodal(sp_p, sp_tol);
        Echo e;
        e["p"] = fmt(sp_p);
        e["tol"] = fmt(sp_tol);
        std::ostringstream os;
        os << csv_header("spinodal", e) << "p,lambda_sp\n" << fmt12(sp_p) << ',' << fmt12(v) << '\n';
        write_file(output, os.str());
    } else if (cmd_pd->parsed()) {
        const auto grid = parse_grid(pd_grid);
        for (double p : grid) sbm::validate_p(p);
        std::vector<sbm::de::PhaseRow> rows(grid.size());
        sbm::par::parallel_for(grid.size(), pd_workers, [&](std::size_t b, std::size_t end) {
            for (std::size_t i = b; i < end; ++i) rows[i] = {grid[i], sbm::de::spinodal(grid[i], pd_tol), 1.0};
        });
        Echo e;
        e["p_grid"] = pd_grid;
        e["tol"] = fmt(pd_tol);
        e["workers"] = std::to_string(sbm::par::resolve_workers(pd_workers));
        std::ostringstream os;
        os << csv_header("phase-diagram", e) << "p,lambda_sp,lambda_ks\n";
        for (const auto& r : rows)
            os << fmt12(r.p) << ',' << fmt12(r.lambda_sp) << ',' << fmt12(r.lambda_ks) << '\n';
        write_file(output, os.str());
    } else if (cmd_pc->parsed()) {
        const auto grid = parse_grid(pc_grid);
        struct Row {
            double lambda, success, qth;
        };
        std::vector<Row> rows(grid.size());
        sbm::par::parallel_for(grid.size(), pc_workers, [&](std::size_t b, std::size_t end) {
            for (std::size_t i = b; i < end; ++i) {
                const double lam = grid[i];
                const auto fp = sbm::de::fixed_points(pc_p, lam);
                const double succ = fp.alpha ? sbm::de::success_from_mu(*fp.alpha) : 0.0;
                double qth;
                if (fp.beta)
                    qth = *fp.beta * pc_p * (1.0 - pc_p) / lam;
                else if (lam > 1.0)
                    qth = 0.0;
                else
                    qth = std::numeric_limits<double>::quiet_NaN();
                rows[i] = {lam, succ, qth};
            }
        });
        Echo e;
        e["p"] = fmt(pc_p);
        e["lambda_grid"] = pc_grid;
        e["workers"] = std::to_string(sbm::par::resolve_workers(pc_workers));
        std::ostringstream os;
        os << csv_header("perf-curve", e) << "lambda,success_alpha,q_threshold\n";
        for (const auto& r : rows)
            os << fmt12(r.lambda) << ',' << fmt12(r.success) << ',' << fmt12(r.qth) << '\n';
        write_file(output, os.str());
    } else if (cmd_st->parsed()) {
        const auto m = pf_st.resolve();
        const auto rep =
            sbm::mc::estimate_psucc_tree(m, st_q, st_depth, st_reps, st_seed, st_workers, st_budget);
        Echo e;
        pf_st.echo_model(e, m);
        e["q"] = fmt(st_q);
        e["depth"] = std::to_string(st_depth);
        e["reps"] = std::to_string(st_reps);
        e["seed"] = std::to_string(st_seed);
        e["budget"] = std::to_string(st_budget);
        e["workers"] = std::to_string(sbm::par::resolve_workers(st_workers));
        nlohmann::json out;
        out["schema_version"] = kSchemaVersion;
        out["config"] = json_config("simulate-tree", e);
        out["report"] = report_to_json(rep);
        write_file(output, out.dump(2) + "\n");
    } else if (cmd_ss->parsed()) {
        const auto m = pf_ss.resolve();
        const auto rep = sbm::mc::estimate_psucc_sbm(m, ss_n, ss_q, ss_r, ss_reps, ss_seed, ss_workers,
                                                     ss_enum_budget, ss_ball_budget);
        Echo e;
        pf_ss.echo_model(e, m);
        e["q"] = fmt(ss_q);
        e["n"] = std::to_string(ss_n);
        e["r"] = std::to_string(ss_r);
        e["reps"] = std::to_string(ss_reps);
        e["seed"] = std::to_string(ss_seed);
        e["enum_budget"] = std::to_string(ss_enum_budget);
        e["ball_budget"] = std::to_string(ss_ball_budget);
        e["workers"] = std::to_string(sbm::par::resolve_workers(ss_workers));
        nlohmann::json out;
        out["schema_version"] = kSchemaVersion;
        out["config"] = json_config("simulate-sbm", e);
        out["report"] = report_to_json(rep);
        write_file(output, out.dump(2) + "\n");
    } else if (cmd_ni->parsed()) {
        const auto m = pf_ni.resolve();
        const auto pair = sbm::mc::population_dynamics(m, ni_q, ni_r, ni_pool, ni_seed, ni_islands, ni_workers);
        const auto rep = sbm::mc::nishimori_check(pair);
        const auto mean1 = sbm::mc::island_mean(pair, pair.xi1);
        const auto var1 = sbm::mc::island_variance(pair, pair.xi1);
        Echo e;
        pf_ni.echo_model(e, m);
        e["q"] = fmt(ni_q);
        e["r"] = std::to_string(ni_r);
        e["pool"] = std::to_string(ni_pool);
        e["islands"] = std::to_string(ni_islands);
        e["seed"] = std::to_string(ni_seed);
        e["workers"] = std::to_string(sbm::par::resolve_workers(ni_workers));
        nlohmann::json out;
        out["schema_version"] = kSchemaVersion;
        out["config"] = json_config("nishimori", e);
        out["xi1_mean"] = mean1.value;
        out["xi1_mean_stderr"] = mean1.stderr;
        out["xi1_variance"] = var1.value;
        out["xi1_variance_stderr"] = var1.stderr;
        out["max_abs_z"] = rep.max_abs_z;
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : rep.rows) {
            rows.push_back({{"g", row.name},
                            {"lhs", row.lhs},
                            {"rhs", row.rhs},
                            {"stderr", row.stderr},
                            {"z", row.z}});
        }
        out["battery"] = rows;
        write_file(output, out.dump(2) + "\n");
        const auto dump_pool = [](const std::string& path, const std::vector<double>& xs) {
            if (path.empty()) return;
            std::ostringstream os;
            for (double x : xs) os << fmt(x) << '\n';
            write_file(path, os.str());
        };
        dump_pool(ni_dump1, pair.xi1);
        dump_pool(ni_dump2, pair.xi2);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError&) {
        return 1; // CLI11_PARSE inside run() handles printing; defensive
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    } catch (const std::domain_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
