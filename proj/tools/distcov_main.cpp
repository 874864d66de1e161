// Command-line surface: statistics, independence tests, applied tests and the
// simulation harness, with machine-readable JSON output.
//
// Exit codes: 0 success, 1 usage error, 2 data error. Errors go to standard
// error as a JSON object.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "distcov/applications.hpp"
#include "distcov/core/dcov.hpp"
#include "distcov/core/metrics.hpp"
#include "distcov/errors.hpp"
#include "distcov/inference.hpp"
#include "distcov/io/csv.hpp"
#include "distcov/parallel.hpp"
#include "distcov/simlab.hpp"
#include "distcov/version.hpp"

using nlohmann::json;

namespace {

struct DataOptions {
    std::string input;
    std::string x_cols;
    std::string y_cols;
    std::string metric = "euclidean";
    std::string x_dist;
    std::string y_dist;
};

struct TestOptions {
    std::string method = "permutation";
    std::string statistic = "nV2_over_T2";
    std::string tail = "upper";
    long replicates = 999;
    std::uint64_t seed = 0;
    double alpha = 0.05;
};

struct OutputOptions {
    std::string path; // empty = stdout
    int threads = 0;
};

struct LoadedPair {
    Eigen::MatrixXd dx;
    Eigen::MatrixXd dy;
    Eigen::Index n{0};
    std::optional<Eigen::Index> p;
    std::optional<Eigen::Index> q;
};

void add_data_options(CLI::App* cmd, DataOptions& opts, bool allow_precomputed = true) {
    cmd->add_option("--input", opts.input, "CSV file with a header row");
    cmd->add_option("--x-cols", opts.x_cols, "comma-separated X column names");
    cmd->add_option("--y-cols", opts.y_cols, "comma-separated Y column names");
    if (allow_precomputed) {
        cmd->add_option("--metric", opts.metric, "euclidean, discrete or precomputed")
            ->check(CLI::IsMember({"euclidean", "discrete", "precomputed"}));
        cmd->add_option("--x-dist", opts.x_dist, "square no-header CSV of X distances");
        cmd->add_option("--y-dist", opts.y_dist, "square no-header CSV of Y distances");
    }
}

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--output", opts.path, "write output here instead of stdout");
    cmd->add_option("--threads", opts.threads, "cap worker threads (default: DISTCOV_THREADS or all cores)");
}

void require_usage(bool condition, const std::string& message) {
    if (!condition) throw CLI::ValidationError(message);
}

std::uint64_t resolve_seed(std::uint64_t requested) {
    if (requested != 0) return requested;
    // Seed 0 asks for entropy; the drawn seed is echoed in the output so the
    // run can be reproduced.
    std::random_device device;
    std::uint64_t seed = (static_cast<std::uint64_t>(device()) << 32) ^ device();
    if (seed == 0) seed = 1;
    return seed;
}

LoadedPair load_pair(const DataOptions& opts) {
    LoadedPair pair;
    if (opts.metric == "precomputed") {
        require_usage(!opts.x_dist.empty() && !opts.y_dist.empty(),
                      "--metric precomputed needs --x-dist and --y-dist");
        pair.dx = distcov::validate_distance_matrix(distcov::io::read_square_matrix_csv(opts.x_dist));
        pair.dy = distcov::validate_distance_matrix(distcov::io::read_square_matrix_csv(opts.y_dist));
        if (pair.dx.rows() != pair.dy.rows())
            throw distcov::DataError(distcov::DataError::Kind::SampleSizeMismatch,
                                     "precomputed matrices have different orders");
        pair.n = pair.dx.rows();
        return pair;
    }

    require_usage(!opts.input.empty(), "--input is required");
    const auto x_names = distcov::io::split_selector(opts.x_cols);
    const auto y_names = distcov::io::split_selector(opts.y_cols);
    require_usage(!x_names.empty() && !y_names.empty(), "--x-cols and --y-cols are required");
    for (const auto& name : x_names)
        for (const auto& other : y_names)
            require_usage(name != other, "--x-cols and --y-cols must be disjoint");

    const bool categorical = opts.metric == "discrete";
    const auto [x, y] = distcov::io::ingest_csv(opts.input, x_names, y_names, categorical);
    if (categorical) {
        pair.dx = distcov::discrete_distances(x.labels);
        pair.dy = distcov::discrete_distances(y.labels);
    } else {
        pair.dx = distcov::euclidean_distances(x.numeric);
        pair.dy = distcov::euclidean_distances(y.numeric);
        pair.p = x.dim();
        pair.q = y.dim();
    }
    pair.n = x.n();
    return pair;
}

json statistics_block(const distcov::DcovEstimatesXd& v, const distcov::UnbiasedEstimatesXd& u) {
    return json{{"vn2", v.vn2},   {"dvar_x", v.dvar_x}, {"dvar_y", v.dvar_y}, {"rn2", v.rn2},
                {"t2", v.t2},     {"un", u.un_xy},      {"cn", u.cn}};
}

json test_block(const distcov::TestResult& t) {
    return json{{"method", distcov::to_string(t.method)},
                {"statistic_name", distcov::to_string(t.statistic_name)},
                {"statistic_value", t.statistic_value},
                {"p_value", t.p_value},
                {"replicates", t.replicates},
                {"seed", t.seed}};
}

json base_document(const std::string& subcommand, const LoadedPair& pair) {
    json doc;
    doc["version"] = distcov::kVersion;
    doc["subcommand"] = subcommand;
    doc["n"] = pair.n;
    doc["p"] = pair.p ? json(*pair.p) : json(nullptr);
    doc["q"] = pair.q ? json(*pair.q) : json(nullptr);
    doc["warnings"] = json::array();
    return doc;
}

void emit(const json& doc, const OutputOptions& out, double elapsed_ms) {
    json copy = doc;
    copy["timing_ms"] = elapsed_ms;
    if (out.path.empty()) {
        std::cout << copy.dump(2) << "\n";
    } else {
        std::ofstream file(out.path, std::ios::binary);
        if (!file)
            throw distcov::DataError(distcov::DataError::Kind::MissingFile,
                                     "cannot write output file: " + out.path);
        file << copy.dump(2) << "\n";
    }
}

void emit_lines(const std::vector<json>& rows, bool csv_format, const OutputOptions& out) {
    std::ostream* stream = &std::cout;
    std::ofstream file;
    if (!out.path.empty()) {
        file.open(out.path, std::ios::binary);
        if (!file)
            throw distcov::DataError(distcov::DataError::Kind::MissingFile,
                                     "cannot write output file: " + out.path);
        stream = &file;
    }
    if (!csv_format) {
        for (const auto& row : rows) *stream << row.dump() << "\n";
        return;
    }
    const std::vector<std::string> columns{"kind",   "label",  "n",      "reps", "estimate",
                                           "std_error", "target", "z_score", "seed"};
    for (std::size_t i = 0; i < columns.size(); ++i)
        *stream << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            const auto& cell = row.at(columns[i]);
            if (!cell.is_null()) {
                if (cell.is_string())
                    *stream << cell.get<std::string>();
                else
                    *stream << cell.dump();
            }
            *stream << (i + 1 < columns.size() ? "," : "\n");
        }
    }
}

distcov::Statistic parse_statistic(const std::string& name) {
    if (name == "nV2_over_T2") return distcov::Statistic::nV2_over_T2;
    if (name == "nCn") return distcov::Statistic::nCn;
    if (name == "Cn") return distcov::Statistic::Cn;
    if (name == "Vn2") return distcov::Statistic::Vn2;
    throw CLI::ValidationError("unknown statistic: " + name);
}

void add_highdim_warnings(json& doc, Eigen::Index n, const std::optional<Eigen::Index>& p,
                          const std::optional<Eigen::Index>& q) {
    if (n < 20)
        doc["warnings"].push_back("n < 20: the normal reference assumes moderately large n");
    if (p && q && static_cast<double>(*p + *q) / static_cast<double>(n) < 5.0)
        doc["warnings"].push_back(
            "(p+q)/n < 5: the normal reference assumes high dimension relative to n");
}

int run_dcov(const DataOptions& data, const OutputOptions& out) {
    const auto start = std::chrono::steady_clock::now();
    const LoadedPair pair = load_pair(data);
    const auto ax = distcov::double_center(pair.dx);
    const auto by = distcov::double_center(pair.dy);
    json doc = base_document("dcov", pair);
    doc["statistics"] = statistics_block(distcov::dcov_estimates(ax, by),
                                         distcov::corrected_dcor(ax, by));
    const auto elapsed = std::chrono::duration<double, std::milli>(
        std::chrono::steady_clock::now() - start);
    emit(doc, out, elapsed.count());
    return 0;
}

int run_test(const DataOptions& data, const TestOptions& test, const OutputOptions& out) {
    const auto start = std::chrono::steady_clock::now();
    const LoadedPair pair = load_pair(data);
    const auto ax = distcov::double_center(pair.dx);
    const auto by = distcov::double_center(pair.dy);
    const auto estimates = distcov::dcov_estimates(ax, by);
    const auto unbiased = distcov::corrected_dcor(ax, by);

    json doc = base_document("test", pair);
    doc["statistics"] = statistics_block(estimates, unbiased);

    if (test.method == "highdim") {
        const auto tail =
            test.tail == "two_sided" ? distcov::Tail::two_sided : distcov::Tail::upper;
        doc["test"] = test_block(distcov::highdim_test(unbiased.cn, pair.n, tail));
        add_highdim_warnings(doc, pair.n, pair.p, pair.q);
    } else {
        distcov::PermutationPlan plan;
        plan.replicates = test.replicates;
        plan.seed = resolve_seed(test.seed);
        plan.statistic = parse_statistic(test.statistic);
        doc["test"] = test_block(distcov::permutation_test(ax, by, plan));
    }
    const auto elapsed = std::chrono::duration<double, std::milli>(
        std::chrono::steady_clock::now() - start);
    emit(doc, out, elapsed.count());
    return 0;
}

int run_nonlin(const DataOptions& data, const TestOptions& test, const OutputOptions& out) {
    const auto start = std::chrono::steady_clock::now();
    require_usage(!data.input.empty(), "--input is required");
    const auto x_names = distcov::io::split_selector(data.x_cols);
    const auto y_names = distcov::io::split_selector(data.y_cols);
    require_usage(!x_names.empty() && !y_names.empty(), "--x-cols and --y-cols are required");
    for (const auto& name : x_names)
        for (const auto& other : y_names)
            require_usage(name != other, "--x-cols and --y-cols must be disjoint");

    const auto [x, y] = distcov::io::ingest_csv(data.input, x_names, y_names, false);

    distcov::PermutationPlan plan;
    plan.replicates = test.replicates;
    plan.seed = resolve_seed(test.seed);
    plan.statistic = parse_statistic(test.statistic);
    const auto result = distcov::nonlinearity_test(x.numeric, y.numeric, plan);

    const auto fit = distcov::fit_least_squares(x.numeric, y.numeric);
    const auto ax = distcov::double_center(distcov::euclidean_distances(x.numeric));
    const auto ae = distcov::double_center(distcov::euclidean_distances(fit.residuals));

    LoadedPair pair;
    pair.n = x.n();
    pair.p = x.dim();
    pair.q = y.dim();
    json doc = base_document("nonlin", pair);
    doc["statistics"] = statistics_block(distcov::dcov_estimates(ax, ae),
                                         distcov::corrected_dcor(ax, ae));
    doc["test"] = test_block(result);
    if (result.p_value == 1.0 && result.statistic_value == 0.0)
        doc["warnings"].push_back(
            "degenerate residual or regressor distances: statistic fixed at 0 with p = 1");
    const auto elapsed = std::chrono::duration<double, std::milli>(
        std::chrono::steady_clock::now() - start);
    emit(doc, out, elapsed.count());
    return 0;
}

int run_serial(const std::string& input, const std::string& cols, long max_lag,
               const TestOptions& test, const OutputOptions& out) {
    const auto start = std::chrono::steady_clock::now();
    require_usage(!input.empty(), "--input is required");
    const auto names = distcov::io::split_selector(cols);
    require_usage(!names.empty(), "--cols is required");
    require_usage(max_lag >= 1, "--max-lag must be >= 1");

    // Reuse the pair reader with X = Y = the series columns; only X is kept.
    const auto [series, ignored] = distcov::io::ingest_csv(input, names, names, false);
    (void)ignored;

    distcov::PermutationPlan plan;
    plan.replicates = test.replicates;
    plan.seed = resolve_seed(test.seed);
    plan.statistic = parse_statistic(test.statistic);
    const auto results = distcov::serial_dcor(series.numeric, max_lag, plan);

    LoadedPair pair;
    pair.n = series.n();
    pair.p = series.dim();
    json doc = base_document("serial", pair);
    doc["serial"] = json::array();
    for (const auto& row : results) {
        doc["serial"].push_back(json{{"lag", row.lag},
                                     {"effective_n", row.effective_n},
                                     {"dcor", row.dcor},
                                     {"p_value", row.p_value},
                                     {"replicates", row.replicates}});
    }
    doc["warnings"].push_back(
        "serial p-values are approximate: overlapping pairs are not i.i.d.");
    const auto elapsed = std::chrono::duration<double, std::milli>(
        std::chrono::steady_clock::now() - start);
    emit(doc, out, elapsed.count());
    return 0;
}

struct SimOptions {
    std::string kind;
    std::string generator = "bernoulli";
    std::string format = "jsonl";
    long n = 100;
    long reps = 1000;
    long k = 1;
    std::string m_values = "2,3,4,5,6";
    long p = 30;
    long q = 30;
    std::uint64_t seed = 0;
};

json sim_row(const std::string& kind, const std::string& label, long n, long reps,
             double estimate, std::optional<double> std_error, std::optional<double> target,
             std::optional<double> z_score, std::uint64_t seed) {
    return json{{"kind", kind},
                {"label", label},
                {"n", n},
                {"reps", reps},
                {"estimate", estimate},
                {"std_error", std_error ? json(*std_error) : json(nullptr)},
                {"target", target ? json(*target) : json(nullptr)},
                {"z_score", z_score ? json(*z_score) : json(nullptr)},
                {"seed", seed}};
}

int run_sim(const SimOptions& sim, const OutputOptions& out) {
    const std::uint64_t seed = resolve_seed(sim.seed);
    std::vector<json> rows;

    if (sim.kind == "vn2_expectation") {
        const auto spec = sim.generator == "normal" ? distcov::OracleSpec::std_normal()
                                                    : distcov::OracleSpec::bernoulli_half();
        const auto report =
            distcov::mc_vn2_expectation(spec, sim.n, sim.reps, seed, out.threads);
        rows.push_back(sim_row(sim.kind, report.label, sim.n, sim.reps, report.estimate,
                               report.std_error, report.target, report.z_score, seed));
    } else if (sim.kind == "trig_sweep") {
        std::vector<int> ms;
        for (const auto& token : distcov::io::split_selector(sim.m_values))
            ms.push_back(std::stoi(token));
        require_usage(!ms.empty(), "--m-values must name at least one frequency");
        const auto reports = distcov::trig_dcor_sweep(static_cast<int>(sim.k), ms, sim.n,
                                                      sim.reps, seed, out.threads);
        for (const auto& report : reports)
            rows.push_back(sim_row(sim.kind, report.label, sim.n, sim.reps, report.estimate,
                                   report.std_error, report.target, report.z_score, seed));
    } else if (sim.kind == "cauchy_limit") {
        const double ks = distcov::sn_cauchy_check(sim.n, sim.reps, seed, out.threads);
        rows.push_back(sim_row(sim.kind, "ks_vs_cauchy_half", sim.n, sim.reps, ks,
                               std::nullopt, std::nullopt, std::nullopt, seed));
    } else if (sim.kind == "highdim_null") {
        const double ks = distcov::highdim_null_distribution(sim.p, sim.q, sim.n, sim.reps,
                                                             seed, out.threads);
        rows.push_back(sim_row(sim.kind, "ks_ncn_vs_normal_var2", sim.n, sim.reps, ks,
                               std::nullopt, std::nullopt, std::nullopt, seed));
    } else {
        throw CLI::ValidationError("unknown --kind: " + sim.kind);
    }

    emit_lines(rows, sim.format == "csv", out);
    return 0;
}

json error_json(const std::string& kind, const std::string& name, const std::string& message) {
    return json{{"error", json{{"kind", kind}, {"name", name}, {"message", message}}}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"distance covariance statistics, independence tests and simulations"};
    app.require_subcommand(1);

    DataOptions data;
    TestOptions test;
    OutputOptions out;
    std::string serial_input, serial_cols;
    long serial_max_lag = 5;
    SimOptions sim;

    auto* dcov_cmd = app.add_subcommand("dcov", "distance covariance/correlation statistics");
    add_data_options(dcov_cmd, data);
    add_output_options(dcov_cmd, out);

    auto* test_cmd = app.add_subcommand("test", "independence test");
    add_data_options(test_cmd, data);
    add_output_options(test_cmd, out);
    test_cmd->add_option("--method", test.method, "permutation or highdim")
        ->check(CLI::IsMember({"permutation", "highdim"}));
    test_cmd->add_option("--statistic", test.statistic, "permuted statistic")
        ->check(CLI::IsMember({"nV2_over_T2", "nCn", "Cn", "Vn2"}));
    test_cmd->add_option("--tail", test.tail, "tail for the highdim method")
        ->check(CLI::IsMember({"upper", "two_sided"}));
    test_cmd->add_option("--replicates", test.replicates)->check(CLI::PositiveNumber);
    test_cmd->add_option("--seed", test.seed, "0 draws a seed from entropy and echoes it");
    test_cmd->add_option("--alpha", test.alpha)->check(CLI::Range(0.0, 1.0));

    auto* nonlin_cmd = app.add_subcommand("nonlin", "distance-covariance test of nonlinearity");
    add_data_options(nonlin_cmd, data, false);
    add_output_options(nonlin_cmd, out);
    nonlin_cmd->add_option("--statistic", test.statistic)
        ->check(CLI::IsMember({"nV2_over_T2", "nCn", "Cn", "Vn2"}));
    nonlin_cmd->add_option("--replicates", test.replicates)->check(CLI::PositiveNumber);
    nonlin_cmd->add_option("--seed", test.seed);
    nonlin_cmd->add_option("--alpha", test.alpha)->check(CLI::Range(0.0, 1.0));

    auto* serial_cmd = app.add_subcommand("serial", "serial distance correlation by lag");
    serial_cmd->add_option("--input", serial_input, "CSV file with a header row");
    serial_cmd->add_option("--cols", serial_cols, "series columns");
    serial_cmd->add_option("--max-lag", serial_max_lag)->check(CLI::PositiveNumber);
    serial_cmd->add_option("--replicates", test.replicates)->check(CLI::PositiveNumber);
    serial_cmd->add_option("--seed", test.seed);
    add_output_options(serial_cmd, out);

    auto* sim_cmd = app.add_subcommand("sim", "Monte Carlo verification runs");
    sim_cmd->add_option("--kind", sim.kind, "vn2_expectation, trig_sweep, cauchy_limit, highdim_null")
        ->required()
        ->check(CLI::IsMember({"vn2_expectation", "trig_sweep", "cauchy_limit", "highdim_null"}));
    sim_cmd->add_option("--generator", sim.generator)->check(CLI::IsMember({"bernoulli", "normal"}));
    sim_cmd->add_option("--n", sim.n)->check(CLI::PositiveNumber);
    sim_cmd->add_option("--reps", sim.reps)->check(CLI::PositiveNumber);
    sim_cmd->add_option("--k", sim.k)->check(CLI::PositiveNumber);
    sim_cmd->add_option("--m-values", sim.m_values, "comma-separated frequencies");
    sim_cmd->add_option("--p", sim.p)->check(CLI::PositiveNumber);
    sim_cmd->add_option("--q", sim.q)->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", sim.seed);
    sim_cmd->add_option("--format", sim.format)->check(CLI::IsMember({"jsonl", "csv"}));
    add_output_options(sim_cmd, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << error_json("usage", "parse", e.what()).dump() << "\n";
        return 1;
    }

    if (out.threads > 0) distcov::set_default_threads(out.threads);

    try {
        if (app.got_subcommand(dcov_cmd)) return run_dcov(data, out);
        if (app.got_subcommand(test_cmd)) return run_test(data, test, out);
        if (app.got_subcommand(nonlin_cmd)) return run_nonlin(data, test, out);
        if (app.got_subcommand(serial_cmd))
            return run_serial(serial_input, serial_cols, serial_max_lag, test, out);
        if (app.got_subcommand(sim_cmd)) return run_sim(sim, out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << error_json("usage", "validation", e.what()).dump() << "\n";
        return 1;
    } catch (const distcov::DataError& e) {
        std::cerr << error_json("data", e.kind_name(), e.what()).dump() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << error_json("data", "domain", e.what()).dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << error_json("internal", "exception", e.what()).dump() << "\n";
        return 2;
    }
    return 1;
}
