// gmle — maximum likelihood estimation for Gaussian graphical models on
// loopless mixed graphs. Subcommands expose the pipeline stages: mle,
// score-equations, solve, ml-degree, partition, check-pd.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gmle/gmle.hpp"

namespace {

using gmle::ordered_json;
using Clock = std::chrono::steady_clock;

struct CommonArgs {
    std::string graph_path, cov_path, data_path, matrix_path, output_path;
    bool cols_are_samples = false;
    bool rows_are_samples = false;
    bool verbose = false;
    bool timestamp = false;
    std::uint64_t seed = 0x5eed2024;
    double pd_tol = 1e-9;
    double real_tol = 1e-9;
    double dedup_tol = 1e-8;
    std::uint64_t max_steps = gmle::BuchbergerOptions{}.max_steps;
};

class StageTimer {
public:
    StageTimer(bool enabled, std::string name)
        : enabled_(enabled), name_(std::move(name)), start_(Clock::now()) {}
    ~StageTimer() {
        if (!enabled_) return;
        double s = std::chrono::duration<double>(Clock::now() - start_).count();
        std::cerr << "[gmle] " << name_ << ": " << s << " s\n";
    }

private:
    bool enabled_;
    std::string name_;
    Clock::time_point start_;
};

void emit(const ordered_json& j, const CommonArgs& args) {
    ordered_json out = j;
    if (args.timestamp) {
        std::time_t now = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&now));
        out["timestamp"] = buf;
    }
    if (!args.output_path.empty()) {
        std::ofstream f(args.output_path);
        if (!f) throw gmle::input_error("cannot write output file: " + args.output_path);
        f << out.dump(2) << "\n";
    } else {
        std::cout << out.dump(2) << "\n";
    }
}

gmle::MixedGraph load_graph(const CommonArgs& args) {
    if (args.graph_path.empty()) throw gmle::input_error("--graph is required");
    return gmle::graph_from_json(gmle::load_json_file(args.graph_path));
}

// covariance given directly (--cov) or raw sample data (--data)
struct ModelInput {
    gmle::QMatrix matrix;
    bool sample_data;
    gmle::DataOrientation orientation;
};

ModelInput load_model_input(const CommonArgs& args) {
    if (!args.cov_path.empty() && !args.data_path.empty())
        throw gmle::input_error("give either --cov or --data, not both");
    if (args.cols_are_samples && args.rows_are_samples)
        throw gmle::input_error("--rows-are-samples and --cols-are-samples conflict");
    gmle::DataOrientation orient = args.cols_are_samples ? gmle::DataOrientation::ColsAreSamples
                                                         : gmle::DataOrientation::RowsAreSamples;
    if (!args.cov_path.empty())
        return {gmle::matrix_from_json(gmle::load_json_file(args.cov_path)), false, orient};
    if (!args.data_path.empty()) return {gmle::csv_from_file(args.data_path), true, orient};
    throw gmle::input_error("one of --cov or --data is required");
}

gmle::MLEOptions mle_options(const CommonArgs& args) {
    gmle::MLEOptions opts;
    opts.pd_tol_scale = args.pd_tol;
    opts.real_tol = args.real_tol;
    opts.dedup_tol = args.dedup_tol;
    opts.seed = args.seed;
    opts.buchberger.max_steps = args.max_steps;
    return opts;
}

int run_mle(const CommonArgs& args) {
    StageTimer t(args.verbose, "mle");
    gmle::MixedGraph g = load_graph(args);
    ModelInput input = load_model_input(args);
    gmle::MLEResult res = gmle::solve_mle(g, input.matrix, input.sample_data, input.orientation,
                                          mle_options(args));
    emit(gmle::mle_result_to_json(res), args);
    return 0;
}

int run_score_equations(const CommonArgs& args) {
    StageTimer t(args.verbose, "score-equations");
    gmle::MixedGraph g = load_graph(args);
    ModelInput input = load_model_input(args);
    gmle::QMatrix s = input.sample_data ? gmle::sample_covariance(input.matrix, input.orientation)
                                        : input.matrix;
    gmle::ModelRing mr = gmle::build_model_ring(g);
    gmle::ScoreOptions sopts;
    sopts.buchberger.max_steps = args.max_steps;
    gmle::ScoreSystem sys = gmle::score_equations(mr, s, sopts);
    int dim = -2;
    long deg = 0;
    if (!sys.polynomials.empty()) {
        gmle::GroebnerBasis gb = gmle::groebner(sys.polynomials, sopts.buchberger);
        dim = gmle::dimension(gb);
        deg = gmle::degree(gb);
    } else {
        dim = static_cast<int>(sys.vars.size());
        deg = 1;
    }
    emit(gmle::score_system_to_json(sys, dim, deg), args);
    return 0;
}

int run_solve(const CommonArgs& args) {
    StageTimer t(args.verbose, "solve");
    gmle::MixedGraph g = load_graph(args);
    ModelInput input = load_model_input(args);
    gmle::QMatrix s = input.sample_data ? gmle::sample_covariance(input.matrix, input.orientation)
                                        : input.matrix;
    gmle::ModelRing mr = gmle::build_model_ring(g);
    gmle::ScoreOptions score_opts;
    score_opts.buchberger.max_steps = args.max_steps;
    gmle::ScoreSystem sys = gmle::score_equations(mr, s, score_opts);
    if (sys.polynomials.empty())
        throw gmle::positive_dimension_error(static_cast<int>(sys.vars.size()), 1);
    gmle::GroebnerBasis gb = gmle::groebner(sys.polynomials, score_opts.buchberger);
    int dim = gmle::dimension(gb);
    if (dim > 0) throw gmle::positive_dimension_error(dim, gmle::degree(gb));
    gmle::SolveOptions sopts;
    sopts.seed = args.seed;
    sopts.real_tol = args.real_tol;
    sopts.dedup_tol = args.dedup_tol;
    std::vector<gmle::SolutionPoint> sols = gmle::zero_dim_solve(gb, sopts);
    ordered_json j;
    ordered_json vars = ordered_json::array();
    for (const auto& v : sys.vars) vars.push_back(v.name());
    j["variables"] = std::move(vars);
    j["dim"] = dim;
    j["degree"] = gmle::degree(gb);
    j["solutions"] = gmle::solutions_to_json(sols);
    emit(j, args);
    return 0;
}

int run_ml_degree(const CommonArgs& args) {
    StageTimer t(args.verbose, "ml-degree");
    gmle::MixedGraph g = load_graph(args);
    long d = gmle::ml_degree(g, args.seed, mle_options(args));
    ordered_json j;
    j["mlDegree"] = d;
    j["seed"] = args.seed;
    emit(j, args);
    return 0;
}

int run_partition(const CommonArgs& args) {
    StageTimer t(args.verbose, "partition");
    gmle::MixedGraph g = load_graph(args);
    emit(gmle::partition_to_json(gmle::partition_lmg(g)), args);
    return 0;
}

int run_check_pd(const CommonArgs& args) {
    StageTimer t(args.verbose, "check-pd");
    if (args.matrix_path.empty()) throw gmle::input_error("--matrix is required");
    gmle::QMatrix m = gmle::matrix_from_json(gmle::load_json_file(args.matrix_path));
    gmle::DMatrix md = gmle::to_double(m);
    double tol = gmle::pd_tolerance(md, args.pd_tol);
    bool pd = gmle::is_positive_definite(md, tol);
    ordered_json j;
    j["positiveDefinite"] = pd;
    j["tolerance"] = gmle::format_double(tol);
    emit(j, args);
    return 0;
}

void add_common_flags(CLI::App* cmd, CommonArgs& args, bool needs_graph, bool takes_data) {
    if (needs_graph)
        cmd->add_option("--graph", args.graph_path, "graph JSON file")->required();
    if (takes_data) {
        cmd->add_option("--cov", args.cov_path, "covariance matrix JSON file");
        cmd->add_option("--data", args.data_path, "sample data CSV file");
        cmd->add_flag("--rows-are-samples", args.rows_are_samples,
                      "CSV rows are observations (default)");
        cmd->add_flag("--cols-are-samples", args.cols_are_samples,
                      "CSV columns are observations");
    }
    cmd->add_option("--seed", args.seed, "random seed for generic data and the solver");
    cmd->add_option("--max-steps", args.max_steps,
                    "work budget for the exact algebra (weighted reduction steps)");
    cmd->add_option("--pd-tol", args.pd_tol, "relative positive-definiteness tolerance scale");
    cmd->add_option("--real-tol", args.real_tol, "imaginary-part tolerance for real solutions");
    cmd->add_option("--dedup-tol", args.dedup_tol, "solution deduplication tolerance");
    cmd->add_option("--output", args.output_path, "write the result JSON to this file");
    cmd->add_flag("--verbose", args.verbose, "stream stage timings to standard error");
    cmd->add_flag("--timestamp", args.timestamp, "include a timestamp field in the output");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximum likelihood estimation for Gaussian graphical models on loopless mixed graphs"};
    app.require_subcommand(1);
    CommonArgs args;

    CLI::App* mle = app.add_subcommand("mle", "compute the MLE of the covariance matrix");
    add_common_flags(mle, args, true, true);
    CLI::App* score = app.add_subcommand("score-equations", "ideal of score equations");
    add_common_flags(score, args, true, true);
    CLI::App* solve = app.add_subcommand("solve", "all complex critical points of the score system");
    add_common_flags(solve, args, true, true);
    CLI::App* mldeg = app.add_subcommand("ml-degree", "ML-degree for seeded generic data");
    add_common_flags(mldeg, args, true, false);
    CLI::App* part = app.add_subcommand("partition", "vertex partition V = U + W");
    add_common_flags(part, args, true, false);
    CLI::App* checkpd = app.add_subcommand("check-pd", "positive definiteness of a matrix");
    checkpd->add_option("--matrix", args.matrix_path, "matrix JSON file")->required();
    add_common_flags(checkpd, args, false, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(mle)) return run_mle(args);
        if (app.got_subcommand(score)) return run_score_equations(args);
        if (app.got_subcommand(solve)) return run_solve(args);
        if (app.got_subcommand(mldeg)) return run_ml_degree(args);
        if (app.got_subcommand(part)) return run_partition(args);
        if (app.got_subcommand(checkpd)) return run_check_pd(args);
        std::cerr << "no subcommand given\n";
        return 1;
    } catch (const gmle::positive_dimension_error& e) {
        ordered_json j;
        j["error"] = "positive-dimensional";
        j["dim"] = e.dim;
        j["degree"] = e.deg;
        j["message"] = e.what();
        std::cout << j.dump(2) << "\n";
        return 2;
    } catch (const gmle::ordering_error& e) {
        ordered_json j;
        j["error"] = "ordering";
        j["edge"] = {e.from, e.to};
        j["message"] = e.what();
        std::cout << j.dump(2) << "\n";
        return 2;
    } catch (const gmle::partition_error& e) {
        ordered_json j;
        j["error"] = "partition-infeasible";
        j["message"] = e.what();
        std::cout << j.dump(2) << "\n";
        return 2;
    } catch (const gmle::resource_error& e) {
        ordered_json j;
        j["error"] = "budget-exceeded";
        j["message"] = e.what();
        std::cout << j.dump(2) << "\n";
        return 2;
    } catch (const gmle::input_error& e) {
        ordered_json j;
        j["error"] = "malformed-input";
        j["message"] = e.what();
        std::cout << j.dump(2) << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        ordered_json j;
        j["error"] = "internal";
        j["message"] = e.what();
        std::cout << j.dump(2) << "\n";
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
