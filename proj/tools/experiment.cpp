#include "experiment.hpp"

#include <fmt/format.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "zipfopt/io.hpp"

namespace zipfopt::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

ordered_json config_json(const OptimizerConfig& c) {
    return ordered_json{
        {"model", std::string(1, to_char(c.model))},
        {"vs", c.forms},
        {"vr", c.meanings},
        {"lambda", c.lambda},
        {"mutation_prob", c.effective_mutation_prob()},
        {"max_steps", c.max_steps},
        {"stall_window", c.effective_stall_window()},
        {"seed", c.seed},
        {"init_density", c.init_density},
        {"log_base", std::string(to_string(c.log_base))},
        {"strict_descent", c.strict_descent},
    };
}

ordered_json measures_json(const MeasureSet& ms, double lambda) {
    return ordered_json{
        {"h_s", ms.h_s},
        {"h_s_given_r", ms.h_s_given_r},
        {"i_sr", ms.i_sr},
        {"lambda", lambda},
        {"omega_energy", omega_energy(ms, EnergyParams(lambda))},
    };
}

ordered_json read_json(const fs::path& file) {
    try {
        return ordered_json::parse(read_text(file));
    } catch (const ordered_json::exception& e) {
        throw IoError(fmt::format("{}: {}", file.string(), e.what()));
    }
}

AssociationMatrix read_matrix(const fs::path& file) {
    std::istringstream in(read_text(file));
    try {
        return read_edge_list(in);
    } catch (const ParseError& e) {
        throw IoError(fmt::format("{}: {}", file.string(), e.what()));
    }
}

// Law report row recomputed from a run directory's metadata and matrix.
std::string analyze_run(const fs::path& dir) {
    const auto meta = read_json(dir / "metadata.json");
    try {
        const auto& cfg = meta.at("config");
        const ModelKind model = model_from_char(cfg.at("model").get<std::string>().at(0));
        const double lambda = cfg.at("lambda").get<double>();
        const auto matrix = read_matrix(dir / "matrix.edges");
        if (matrix.forms() != cfg.at("vs").get<std::size_t>() ||
            matrix.meanings() != cfg.at("vr").get<std::size_t>()) {
            throw IoError(dir.string() + ": matrix size disagrees with metadata");
        }
        if (!is_valid(matrix, model)) throw IoError(dir.string() + ": stored matrix is invalid for its model");
        return law_report_csv_row(law_report(meta.at("run_id").get<std::string>(), lambda, matrix, model));
    } catch (const ordered_json::exception& e) {
        throw IoError(fmt::format("{}: malformed metadata: {}", dir.string(), e.what()));
    } catch (const std::invalid_argument& e) {
        throw IoError(fmt::format("{}: {}", dir.string(), e.what()));
    }
}

std::string hostname() {
    char buf[256] = {};
    if (gethostname(buf, sizeof buf - 1) != 0) return "unknown";
    return buf;
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

void write_text(const fs::path& file, const std::string& contents) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + file.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw IoError("failed writing " + file.string());
}

std::string read_text(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot read " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_atomically(const fs::path& target, const std::function<void(const fs::path&)>& populate) {
    const fs::path abs = fs::absolute(target);
    const fs::path staging = abs.parent_path() / (abs.filename().string() + ".staging");
    std::error_code ec;
    try {
        fs::create_directories(abs.parent_path());
        fs::remove_all(staging);
        fs::create_directory(staging);
        populate(staging);
        write_text(staging / "run.log", fmt::format("written {} on {} pid {}\n", timestamp(), hostname(), getpid()));
        fs::remove_all(abs);
        fs::rename(staging, abs);
    } catch (const fs::filesystem_error& e) {
        fs::remove_all(staging, ec);
        throw IoError(e.what());
    } catch (...) {
        fs::remove_all(staging, ec);
        throw;
    }
}

LawReport run_law_report(const std::string& run_id, const RunRecord& record) {
    return law_report(run_id, record.config.lambda, record.terminal, record.config.model);
}

void write_run_files(const fs::path& dir, const std::string& run_id, const RunRecord& record, bool with_trace,
                     bool with_laws) {
    ordered_json meta{
        {"kind", "run"},
        {"run_id", run_id},
        {"config", config_json(record.config)},
        {"result",
         {{"steps", record.steps},
          {"accepted", record.accepted},
          {"stalled", record.stalled},
          {"omega", record.omega},
          {"lexicon_size", observable_forms(record.measures)},
          {"links", record.terminal.links()}}},
        {"measures", measures_json(record.measures, record.config.lambda)},
    };
    write_text(dir / "metadata.json", meta.dump(2) + "\n");

    std::ostringstream edges;
    write_edge_list(edges, record.terminal);
    write_text(dir / "matrix.edges", edges.str());

    if (with_trace) {
        std::ostringstream trace;
        write_trace_csv(trace, record.trace);
        write_text(dir / "trace.csv", trace.str());
    }
    if (with_laws) {
        write_text(dir / "laws.csv",
                   law_report_csv_header() + "\n" + law_report_csv_row(run_law_report(run_id, record)) + "\n");
    }
}

std::string run_id_for(std::size_t lambda_index, std::size_t replica) {
    return fmt::format("l{:03}_r{:03}", lambda_index, replica);
}

std::string aggregate_csv(const SweepResult& result) {
    std::string out = "lambda,replica,L,rho,alpha,gamma,delta,omega_terminal\n";
    for (const auto& run : result.runs) {
        const auto rep = run_law_report(run_id_for(run.lambda_index, run.replica), run.record);
        auto exponent = [](const std::optional<LogLogFit>& f) {
            return format_number(f ? std::optional<double>(f->exponent) : std::nullopt);
        };
        out += fmt::format("{},{},{},{},{},{},{},{}\n", format_number(result.lambda_grid[run.lambda_index]),
                           run.replica, run.lexicon_size, format_number(rep.correlation.rho),
                           exponent(rep.fit.alpha), exponent(rep.fit.gamma), exponent(rep.fit.delta),
                           format_number(run.record.omega));
    }
    return out;
}

void write_sweep_files(const fs::path& dir, const SweepConfig& config, const SweepResult& result,
                       bool with_traces) {
    Transition transition;
    if (result.lambda_grid.size() >= 3) transition = detect_transition(result);
    ordered_json base = config_json(config.base);
    base.erase("lambda");
    base.erase("seed");
    ordered_json meta{
        {"kind", "sweep"},
        {"config", base},
        {"lambda_grid", result.lambda_grid},
        {"replicas", config.replicas},
        {"master_seed", config.master_seed},
        {"mean_lexicon_size", result.mean_lexicon_sizes()},
    };
    meta["transition"] = {{"found", transition.found},
                          {"lambda", transition.found ? ordered_json(transition.lambda) : ordered_json()},
                          {"jump", transition.jump}};
    write_text(dir / "metadata.json", meta.dump(2) + "\n");
    write_text(dir / "aggregate.csv", aggregate_csv(result));

    std::string laws = law_report_csv_header() + "\n";
    fs::create_directory(dir / "runs");
    for (const auto& run : result.runs) {
        const auto id = run_id_for(run.lambda_index, run.replica);
        const auto run_dir = dir / "runs" / id;
        fs::create_directory(run_dir);
        write_run_files(run_dir, id, run.record, with_traces, false);
        laws += law_report_csv_row(run_law_report(id, run.record)) + "\n";
    }
    write_text(dir / "laws.csv", laws);
}

void write_minima_files(const fs::path& dir, const MinimaReport& r) {
    ordered_json minimizers = ordered_json::array();
    fs::create_directory(dir / "minimizers");
    for (std::size_t k = 0; k < r.minimizers.size(); ++k) {
        const auto name = fmt::format("m{:05}.edges", k);
        std::ostringstream edges;
        write_edge_list(edges, r.minimizers[k]);
        write_text(dir / "minimizers" / name, edges.str());
        const auto& p = r.properties[k];
        minimizers.push_back({{"file", "minimizers/" + name},
                              {"bits", r.minimizer_bits[k]},
                              {"observable_forms", p.observable_forms},
                              {"single_form", p.single_form},
                              {"meaning_degrees_at_most_one", p.meaning_degrees_at_most_one},
                              {"meaning_degrees_all_one", p.meaning_degrees_all_one},
                              {"equal_observable_degrees", p.equal_observable_degrees},
                              {"equal_observable_probabilities", p.equal_observable_probabilities},
                              {"weak_law_defined", p.weak_law == Definability::Defined}});
    }
    ordered_json meta{
        {"kind", "minima"},
        {"vs", r.forms},
        {"vr", r.meanings},
        {"model", std::string(1, to_char(r.model))},
        {"lambda", r.lambda},
        {"log_base", std::string(to_string(r.log_base))},
        {"min_omega", r.min_omega},
        {"evaluated", r.evaluated},
        {"minimizer_count", r.minimizers.size()},
        {"flags",
         {{"all_single_form", r.all_single_form},
          {"all_meaning_degrees_at_most_one", r.all_meaning_degrees_at_most_one},
          {"all_meaning_degrees_one", r.all_meaning_degrees_one},
          {"all_equal_observable_degrees", r.all_equal_observable_degrees},
          {"all_equal_observable_probabilities", r.all_equal_observable_probabilities},
          {"all_equal_degrees_or_probabilities", r.all_equal_degrees_or_probabilities},
          {"all_weak_law_undefined", r.all_weak_law_undefined},
          {"any_weak_law_defined", r.any_weak_law_defined}}},
        {"minimizers", minimizers},
    };
    write_text(dir / "report.json", meta.dump(2) + "\n");
}

std::string analyze_directory(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError(dir.string() + " is not a directory");
    const auto meta = read_json(dir / "metadata.json");
    const std::string kind = meta.value("kind", "");
    std::string out = law_report_csv_header() + "\n";
    if (kind == "run") {
        out += analyze_run(dir) + "\n";
        return out;
    }
    if (kind != "sweep") throw IoError(dir.string() + ": unknown experiment kind '" + kind + "'");
    std::vector<fs::path> runs;
    for (const auto& e : fs::directory_iterator(dir / "runs")) {
        if (e.is_directory()) runs.push_back(e.path());
    }
    std::sort(runs.begin(), runs.end());
    if (runs.empty()) throw IoError(dir.string() + ": sweep holds no runs");
    for (const auto& r : runs) out += analyze_run(r) + "\n";
    return out;
}

std::string stored_law_csv(const fs::path& dir) { return read_text(dir / "laws.csv"); }

}  // namespace zipfopt::cli
