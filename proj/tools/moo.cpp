// Command-line front end: run optimizations from a JSON config, compute
// performance indicators, run decision making, export plot SVGs.
//
// Exit codes: 0 success, 2 user error (flags, config, malformed input files),
// 3 runtime failure (evaluation errors, I/O).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "moo/moo.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::istringstream is(csv);
    for (std::string cell; std::getline(is, cell, ',');) {
        try {
            out.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse '" + cell + "' as a number");
        }
    }
    if (out.empty()) throw std::invalid_argument("expected a comma-separated number list");
    return out;
}

std::string significant(double v, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

// --- config ------------------------------------------------------------------

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw std::invalid_argument("config: unknown key '" + where + key + "'");
    }
}

moo::SamplingKind sampling_from_name(const std::string& name) {
    if (name == "random") return moo::SamplingKind::random;
    if (name == "lhs") return moo::SamplingKind::lhs;
    throw std::invalid_argument("config: unknown sampling kind '" + name + "'");
}

moo::CrossoverKind crossover_from_name(const std::string& name) {
    if (name == "sbx") return moo::CrossoverKind::sbx;
    if (name == "sbx_bounded") return moo::CrossoverKind::sbx_bounded;
    if (name == "one_point") return moo::CrossoverKind::one_point;
    if (name == "two_point") return moo::CrossoverKind::two_point;
    if (name == "ux") return moo::CrossoverKind::ux;
    if (name == "hux") return moo::CrossoverKind::hux;
    throw std::invalid_argument("config: unknown crossover kind '" + name + "'");
}

moo::MutationKind mutation_from_name(const std::string& name) {
    if (name == "polynomial") return moo::MutationKind::polynomial;
    if (name == "bitflip") return moo::MutationKind::bitflip;
    if (name == "none") return moo::MutationKind::none;
    throw std::invalid_argument("config: unknown mutation kind '" + name + "'");
}

struct RunConfig {
    std::unique_ptr<moo::Problem> problem;
    moo::AlgorithmKind algorithm = moo::AlgorithmKind::nsga2;
    moo::AlgorithmConfig config;
    moo::TerminationCriterion termination = moo::TerminationCriterion::max_gen(40);
    moo::EvalMode mode = moo::EvalMode::vectorized();
    std::string output_dir = ".";
    bool save_history = false;
};

RunConfig parse_run_config(const json& root) {
    require_keys(root, "",
                 {"problem", "algorithm", "pop_size", "n_offsprings", "seed",
                  "eliminate_duplicates", "duplicate_tol", "operators", "termination",
                  "eval_mode", "verbose", "output_dir", "save_history", "max_evals_cap"});
    RunConfig rc;

    if (!root.contains("problem")) throw std::invalid_argument("config: missing 'problem'");
    const json& prob = root.at("problem");
    require_keys(prob, "problem.", {"name", "n_var"});
    if (!prob.contains("name")) throw std::invalid_argument("config: missing 'problem.name'");
    std::optional<std::size_t> n_var;
    if (prob.contains("n_var")) n_var = prob.at("n_var").get<std::size_t>();
    rc.problem = moo::make_problem(prob.at("name").get<std::string>(), n_var);

    rc.algorithm = moo::algorithm_from_name(root.value("algorithm", std::string("nsga2")));
    rc.config.pop_size = root.value("pop_size", std::size_t{40});
    rc.config.n_offsprings = root.value("n_offsprings", std::size_t{0});
    rc.config.seed = root.value("seed", std::uint64_t{1});
    rc.config.eliminate_duplicates = root.value("eliminate_duplicates", true);
    rc.config.duplicate_tol = root.value("duplicate_tol", 1e-16);
    rc.config.verbose = root.value("verbose", false);
    rc.config.max_evals_cap = root.value("max_evals_cap", std::uint64_t{1'000'000});
    rc.config.record_history = root.value("save_history", false);
    rc.save_history = rc.config.record_history;
    rc.output_dir = root.value("output_dir", std::string("."));

    if (root.contains("operators")) {
        const json& ops = root.at("operators");
        require_keys(ops, "operators.", {"sampling", "crossover", "mutation"});
        if (ops.contains("sampling")) {
            const json& s = ops.at("sampling");
            require_keys(s, "operators.sampling.", {"kind"});
            rc.config.operators.sampling.kind =
                sampling_from_name(s.value("kind", std::string("random")));
        }
        if (ops.contains("crossover")) {
            const json& c = ops.at("crossover");
            require_keys(c, "operators.crossover.", {"kind", "eta", "prob", "prob_per_var"});
            auto& cx = rc.config.operators.crossover;
            cx.kind = crossover_from_name(c.value("kind", std::string("sbx_bounded")));
            cx.eta = c.value("eta", cx.eta);
            cx.prob = c.value("prob", cx.prob);
            cx.prob_per_var = c.value("prob_per_var", cx.prob_per_var);
        }
        if (ops.contains("mutation")) {
            const json& m = ops.at("mutation");
            require_keys(m, "operators.mutation.", {"kind", "eta", "prob_per_var"});
            auto& mu = rc.config.operators.mutation;
            mu.kind = mutation_from_name(m.value("kind", std::string("polynomial")));
            mu.eta = m.value("eta", mu.eta);
            mu.prob_per_var = m.value("prob_per_var", mu.prob_per_var);
        }
    }

    if (root.contains("termination")) {
        const json& t = root.at("termination");
        require_keys(t, "termination.", {"kind", "n", "tol", "k"});
        const std::string kind = t.value("kind", std::string("max_gen"));
        if (kind == "max_gen") {
            rc.termination = moo::TerminationCriterion::max_gen(t.value("n", std::uint64_t{40}));
        } else if (kind == "max_evals") {
            rc.termination = moo::TerminationCriterion::max_evals(t.value("n", std::uint64_t{0}));
        } else if (kind == "x_movement") {
            rc.termination = moo::TerminationCriterion::x_movement(t.value("tol", 0.005),
                                                                   t.value("k", std::size_t{10}));
        } else if (kind == "f_movement") {
            rc.termination = moo::TerminationCriterion::f_movement(t.value("tol", 0.005),
                                                                   t.value("k", std::size_t{10}));
        } else {
            throw std::invalid_argument("config: unknown termination kind '" + kind + "'");
        }
    }

    if (root.contains("eval_mode")) {
        const json& e = root.at("eval_mode");
        require_keys(e, "eval_mode.", {"kind", "n_threads"});
        const std::string kind = e.value("kind", std::string("vectorized"));
        if (kind == "vectorized") {
            rc.mode = moo::EvalMode::vectorized();
        } else if (kind == "threaded") {
            rc.mode = moo::EvalMode::threaded(e.value("n_threads", 4u));
        } else {
            throw std::invalid_argument("config: unknown eval_mode kind '" + kind + "'");
        }
    }
    return rc;
}

// --- subcommands ---------------------------------------------------------------

int cmd_run(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open config '" + config_path + "'");
    json root;
    try {
        root = json::parse(in);
    } catch (const json::exception& e) {
        throw std::invalid_argument("config '" + config_path + "': " + e.what());
    }
    RunConfig rc;
    try {
        rc = parse_run_config(root);
    } catch (const json::exception& e) {
        throw std::invalid_argument("config '" + config_path + "': " + e.what());
    }

    const auto t0 = std::chrono::steady_clock::now();
    moo::RunResult result =
        moo::run(*rc.problem, rc.algorithm, rc.config, rc.termination, rc.mode);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    fs::create_directories(rc.output_dir);
    moo::write_file((fs::path(rc.output_dir) / "result.csv").string(),
                    moo::population_csv(result.final_population, rc.problem->n_var(),
                                        rc.problem->n_obj(), rc.problem->n_ieq()));
    if (rc.save_history) {
        const fs::path hist_dir = fs::path(rc.output_dir) / "history";
        fs::create_directories(hist_dir);
        for (std::size_t g = 0; g < result.history.size(); ++g) {
            char name[32];
            std::snprintf(name, sizeof(name), "gen_%04zu.csv", g);
            moo::write_file((hist_dir / name).string(),
                            moo::population_csv(result.history[g], rc.problem->n_var(),
                                                rc.problem->n_obj(), rc.problem->n_ieq()));
        }
    }

    json summary = {{"problem", rc.problem->name()},
                    {"algorithm", rc.algorithm == moo::AlgorithmKind::nsga2 ? "nsga2" : "ga"},
                    {"n_eval", result.n_eval},
                    {"n_gen", result.n_gen},
                    {"seed", rc.config.seed},
                    {"n_solutions", result.final.f.rows()},
                    {"wall_time_s", wall}};
    moo::write_file((fs::path(rc.output_dir) / "run.json").string(), summary.dump(2) + "\n");
    return 0;
}

int cmd_indicator(const std::string& kind, const std::string& set_path,
                  const std::string& front_path, const std::string& ref_point) {
    const moo::Matrix s = moo::objective_columns(moo::read_csv(set_path));
    double value = 0.0;
    if (kind == "hv") {
        if (ref_point.empty())
            throw std::invalid_argument("indicator: --ref-point is required for hv");
        const auto ref = parse_doubles(ref_point);
        const auto hv = moo::hypervolume_full(s, ref);
        if (hv.n_discarded > 0)
            std::cerr << "warning: " << hv.n_discarded
                      << " point(s) do not dominate the reference point and were ignored\n";
        value = hv.value;
    } else {
        if (front_path.empty())
            throw std::invalid_argument("indicator: --front is required for " + kind);
        const moo::Matrix pf = moo::objective_columns(moo::read_csv(front_path));
        if (!moo::is_mutually_nondominated(pf))
            throw std::invalid_argument("indicator: reference front '" + front_path +
                                        "' contains dominated points");
        if (kind == "gd") value = moo::gd(s, pf);
        else if (kind == "igd") value = moo::igd(s, pf);
        else if (kind == "gd_plus") value = moo::gd_plus(s, pf);
        else if (kind == "igd_plus") value = moo::igd_plus(s, pf);
        else throw std::invalid_argument("indicator: unknown kind '" + kind + "'");
    }
    std::cout << significant(value, 12) << '\n';
    return 0;
}

void write_annotated(const moo::CsvTable& table, const std::vector<std::string>& extra_names,
                     const moo::Matrix& extra, const std::string& out_path) {
    std::ostringstream os;
    for (const auto& h : table.header) os << h << ',';
    for (std::size_t j = 0; j < extra_names.size(); ++j) {
        os << extra_names[j] << (j + 1 < extra_names.size() ? "," : "");
    }
    os << '\n';
    for (std::size_t i = 0; i < table.data.rows(); ++i) {
        for (std::size_t j = 0; j < table.data.cols(); ++j)
            os << moo::format_full(table.data(i, j)) << ',';
        for (std::size_t j = 0; j < extra.cols(); ++j)
            os << moo::format_full(extra(i, j)) << (j + 1 < extra.cols() ? "," : "");
        os << '\n';
    }
    if (out_path.empty() || out_path == "-") std::cout << os.str();
    else moo::write_file(out_path, os.str());
}

int cmd_decide_pseudo_weights(const std::string& in_path, const std::string& out_path) {
    const moo::CsvTable table = moo::read_csv(in_path);
    const moo::Matrix f = moo::objective_columns(table);
    const auto result = moo::pseudo_weights(f);
    std::vector<std::string> names;
    for (std::size_t j = 0; j < f.cols(); ++j) names.push_back("w" + std::to_string(j + 1));
    write_annotated(table, names, result.weights, out_path);
    return 0;
}

int cmd_decide_tradeoff(const std::string& in_path, const std::string& out_path,
                        std::optional<std::size_t> neighbors) {
    const moo::CsvTable table = moo::read_csv(in_path);
    const moo::Matrix f = moo::objective_columns(table);
    const auto result = moo::tradeoff_metric(f, neighbors);
    moo::Matrix mu(f.rows(), 1);
    for (std::size_t i = 0; i < f.rows(); ++i) mu(i, 0) = result.mu[i];
    if (!out_path.empty()) write_annotated(table, {"mu"}, mu, out_path);
    std::cout << "selected=" << result.best << '\n';
    return 0;
}

int cmd_decide_compromise(const std::string& in_path, const std::string& method,
                          const std::string& weights, const std::string& ideal, double theta,
                          double rho) {
    const moo::Matrix f = moo::objective_columns(moo::read_csv(in_path));
    const auto w = parse_doubles(weights);
    std::vector<double> z;
    if (!ideal.empty()) z = parse_doubles(ideal);
    const std::size_t best = moo::compromise(f, moo::decomp_method_from_name(method), w, z,
                                             moo::DecompParams{theta, rho});
    std::cout << "selected=" << best << '\n';
    return 0;
}

int cmd_plot(const std::string& kind, const std::string& in_path, const std::string& out_path,
             bool normalize, const std::string& ideal, const std::string& nadir, std::size_t row,
             bool sort_rows, const std::string& highlight) {
    moo::PlotSpec spec;
    spec.kind = moo::plot_kind_from_name(kind);
    spec.f = moo::objective_columns(moo::read_csv(in_path));
    spec.normalize = normalize;
    spec.row = row;
    spec.sort_rows = sort_rows;
    if (!ideal.empty()) spec.ideal = parse_doubles(ideal);
    if (!nadir.empty()) spec.nadir = parse_doubles(nadir);
    if (!highlight.empty())
        for (double v : parse_doubles(highlight))
            spec.highlight.push_back(static_cast<std::size_t>(v));
    moo::render_svg(moo::make_geometry(spec), out_path);
    return 0;
}

int cmd_gradient(const std::string& problem_name, const std::string& at, bool constraints) {
    const auto problem = moo::make_problem(problem_name);
    const auto x = parse_doubles(at);
    if (x.size() != problem->n_var())
        throw std::invalid_argument("gradient: --at needs " + std::to_string(problem->n_var()) +
                                    " values for problem '" + problem_name + "'");
    const auto bundle = moo::gradients(*problem, x, {true, constraints});
    auto print_matrix = [](const moo::Matrix& m) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::cout << moo::format_full(m(i, j)) << (j + 1 < m.cols() ? "," : "");
            std::cout << '\n';
        }
    };
    print_matrix(bundle.dF);
    if (constraints) print_matrix(bundle.dG);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-objective optimization toolkit"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run an optimization from a JSON config");
    std::string config_path;
    run->add_option("config", config_path, "path to the JSON run config")->required();

    // problems
    auto* problems = app.add_subcommand("problems", "built-in problem catalogue");
    problems->require_subcommand(1);
    auto* plist = problems->add_subcommand("list", "list problem names");
    auto* pfront = problems->add_subcommand("front", "sample an analytic Pareto front as CSV");
    std::string front_name, front_out;
    std::size_t front_points = 500;
    pfront->add_option("--name", front_name, "problem name")->required();
    pfront->add_option("--points", front_points, "number of samples");
    pfront->add_option("--out", front_out, "output CSV path (default: stdout)");

    // gradient
    auto* gradient = app.add_subcommand("gradient", "print gradients at a point");
    std::string grad_problem, grad_at;
    bool grad_constraints = false;
    gradient->add_option("--problem", grad_problem, "problem name")->required();
    gradient->add_option("--at", grad_at, "evaluation point, comma-separated")->required();
    gradient->add_flag("--constraints", grad_constraints, "also print constraint gradients");

    // indicator
    auto* indicator = app.add_subcommand("indicator", "compute a performance indicator");
    std::string ind_kind, ind_set, ind_front, ind_ref;
    indicator->add_option("--kind", ind_kind, "gd | igd | gd_plus | igd_plus | hv")->required();
    indicator->add_option("--set", ind_set, "solution set CSV")->required();
    indicator->add_option("--front", ind_front, "reference front CSV");
    indicator->add_option("--ref-point", ind_ref, "hypervolume reference point a,b[,c]");

    // decide
    auto* decide = app.add_subcommand("decide", "multi-criteria decision making");
    decide->require_subcommand(1);
    auto* dpw = decide->add_subcommand("pseudo-weights", "append pseudo-weight columns");
    std::string dpw_in, dpw_out;
    dpw->add_option("--in", dpw_in, "result CSV")->required();
    dpw->add_option("--out", dpw_out, "annotated CSV path (default: stdout)");
    auto* dto = decide->add_subcommand("tradeoff", "high trade-off solutions");
    std::string dto_in, dto_out;
    long long dto_neighbors = -1;
    dto->add_option("--in", dto_in, "result CSV")->required();
    dto->add_option("--out", dto_out, "annotated CSV path");
    dto->add_option("--neighbors", dto_neighbors, "restrict to k nearest neighbors");
    auto* dcp = decide->add_subcommand("compromise", "compromise programming selection");
    std::string dcp_in, dcp_method = "tchebysheff", dcp_weights, dcp_ideal;
    double dcp_theta = 5.0, dcp_rho = 1e-4;
    dcp->add_option("--in", dcp_in, "result CSV")->required();
    dcp->add_option("--method", dcp_method, "weighted_sum | tchebysheff | asf | aasf | pbi");
    dcp->add_option("--weights", dcp_weights, "weight vector, comma-separated")->required();
    dcp->add_option("--ideal", dcp_ideal, "ideal point, comma-separated");
    dcp->add_option("--theta", dcp_theta, "PBI penalty");
    dcp->add_option("--rho", dcp_rho, "AASF augmentation");

    // plot
    auto* plot = app.add_subcommand("plot", "render a plot SVG from a result CSV");
    std::string plot_kind, plot_in, plot_out, plot_ideal, plot_nadir, plot_highlight;
    bool plot_normalize = false, plot_sort = false;
    std::size_t plot_row = 0;
    plot->add_option("--kind", plot_kind,
                     "scatter | scatter3d | pairwise | pcp | radviz | star | heatmap | petal | radar")
        ->required();
    plot->add_option("--in", plot_in, "result CSV")->required();
    plot->add_option("--out", plot_out, "output SVG path")->required();
    plot->add_flag("--normalize", plot_normalize, "min-max normalize objectives");
    plot->add_option("--ideal", plot_ideal, "radar ideal point");
    plot->add_option("--nadir", plot_nadir, "radar nadir point");
    plot->add_option("--row", plot_row, "solution row for petal/radar");
    plot->add_flag("--sort", plot_sort, "heatmap: sort rows lexicographically");
    plot->add_option("--highlight", plot_highlight, "row indices to highlight, comma-separated");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (*run) return cmd_run(config_path);
        if (*plist) {
            for (const auto& name : moo::problem_names()) std::cout << name << '\n';
            return 0;
        }
        if (*pfront) {
            const std::string csv = moo::front_csv(moo::analytic_front(front_name, front_points));
            if (front_out.empty() || front_out == "-") std::cout << csv;
            else moo::write_file(front_out, csv);
            return 0;
        }
        if (*gradient) return cmd_gradient(grad_problem, grad_at, grad_constraints);
        if (*indicator) return cmd_indicator(ind_kind, ind_set, ind_front, ind_ref);
        if (*dpw) return cmd_decide_pseudo_weights(dpw_in, dpw_out);
        if (*dto)
            return cmd_decide_tradeoff(
                dto_in, dto_out,
                dto_neighbors < 0 ? std::nullopt
                                  : std::optional<std::size_t>(static_cast<std::size_t>(dto_neighbors)));
        if (*dcp)
            return cmd_decide_compromise(dcp_in, dcp_method, dcp_weights, dcp_ideal, dcp_theta,
                                         dcp_rho);
        if (*plot)
            return cmd_plot(plot_kind, plot_in, plot_out, plot_normalize, plot_ideal, plot_nadir,
                            plot_row, plot_sort, plot_highlight);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
