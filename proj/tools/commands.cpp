#include "commands.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <string_view>

#include "experiment.hpp"
#include "zipfopt/io.hpp"
#include "zipfopt/optimizer.hpp"
#include "zipfopt/oracle.hpp"

namespace zipfopt::cli {

namespace fs = std::filesystem;

namespace {

struct CommonFlags {
    std::string model = "B";
    std::size_t vs = 10;
    std::size_t vr = 10;
    double lambda = 0.4;
    std::uint64_t seed = 1;
    std::string out;
    std::string log_base = "2";
    std::size_t max_steps = 1'000'000;
    std::size_t stall_window = 0;
    double mutation_prob = 0.0;
    double init_density = 0.5;
    bool strict = false;
    CLI::Option* stall_opt = nullptr;
    CLI::Option* mutation_opt = nullptr;
};

void add_model_flags(CLI::App& app, CommonFlags& f) {
    app.add_option("--model", f.model, "Meaning prior: A (degree-proportional) or B (uniform)")
        ->check(CLI::IsMember({"A", "B"}))
        ->capture_default_str();
    app.add_option("--vs", f.vs, "Number of forms V_S")->capture_default_str();
    app.add_option("--vr", f.vr, "Number of meanings V_R")->capture_default_str();
    app.add_option("--log-base", f.log_base, "Entropy units: 2 (bits) or e (nats)")
        ->check(CLI::IsMember({"2", "e"}))
        ->capture_default_str();
}

void add_optimizer_flags(CLI::App& app, CommonFlags& f) {
    add_model_flags(app, f);
    app.add_option("--max-steps", f.max_steps, "Iteration cap")->capture_default_str();
    f.stall_opt = app.add_option("--stall-window", f.stall_window,
                                 "Consecutive rejections before stopping (default 10*V_S*V_R)");
    f.mutation_opt = app.add_option("--mutation-prob", f.mutation_prob,
                                    "Per-cell flip probability per step (default 1/(V_S*V_R))");
    app.add_option("--init-density", f.init_density, "Link density of the random start")->capture_default_str();
    app.add_flag("--strict", f.strict, "Accept only strictly lower energy");
}

OptimizerConfig optimizer_config(const CommonFlags& f) {
    OptimizerConfig c;
    c.model = model_from_char(f.model.at(0));
    c.forms = f.vs;
    c.meanings = f.vr;
    c.lambda = f.lambda;
    c.seed = f.seed;
    c.max_steps = f.max_steps;
    if (f.stall_opt && f.stall_opt->count() > 0) c.stall_window = f.stall_window;
    if (f.mutation_opt && f.mutation_opt->count() > 0) c.mutation_prob = f.mutation_prob;
    c.init_density = f.init_density;
    c.log_base = log_base_from_string(f.log_base);
    c.strict_descent = f.strict;
    return c;
}

void require_out(const std::string& out) {
    if (out.empty()) throw std::invalid_argument("--out is required");
}

int cmd_minimize(const CommonFlags& f, std::ostream& out) {
    const auto config = optimizer_config(f);
    config.validate();
    require_out(f.out);
    const auto record = minimize(config);
    write_atomically(f.out, [&](const fs::path& dir) { write_run_files(dir, "run", record, true, true); });
    out << fmt::format("minimize: steps={} accepted={} omega={} L={} -> {}\n", record.steps, record.accepted,
                       format_number(record.omega), observable_forms(record.measures), f.out);
    return kExitOk;
}

struct SweepFlags {
    double lambda_min = 0.05;
    double lambda_max = 0.95;
    std::size_t lambda_steps = 19;
    std::size_t replicas = 10;
    std::size_t threads = 0;
    bool traces = false;
};

int cmd_sweep(const CommonFlags& f, const SweepFlags& s, std::ostream& out) {
    SweepConfig config;
    config.base = optimizer_config(f);
    config.lambda_grid = linear_grid(s.lambda_min, s.lambda_max, s.lambda_steps);
    config.replicas = s.replicas;
    config.master_seed = f.seed;
    config.threads = s.threads;
    config.validate();
    require_out(f.out);
    const auto result = sweep(config);
    write_atomically(f.out, [&](const fs::path& dir) { write_sweep_files(dir, config, result, s.traces); });
    out << fmt::format("sweep: {} runs -> {}\n", result.runs.size(), f.out);
    if (config.lambda_grid.size() >= 3) {
        const auto t = detect_transition(result);
        if (t.found) out << fmt::format("transition estimate: lambda={} (jump {})\n", t.lambda, t.jump);
        else out << "transition estimate: none (flat lexicon-size curve)\n";
    }
    return kExitOk;
}

int cmd_enumerate(const CommonFlags& f, std::ostream& out) {
    if (!(f.lambda >= 0.0 && f.lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
    if (f.vs == 0 || f.vr == 0) throw std::invalid_argument("vs and vr must be positive");
    if (f.vs * f.vr > kMaxEnumerationCells) {
        throw std::invalid_argument(fmt::format("enumeration limited to {} cells, got {}", kMaxEnumerationCells,
                                                f.vs * f.vr));
    }
    require_out(f.out);
    const auto report = enumerate_minima(f.vs, f.vr, model_from_char(f.model.at(0)), f.lambda,
                                         log_base_from_string(f.log_base));
    write_atomically(f.out, [&](const fs::path& dir) { write_minima_files(dir, report); });
    out << fmt::format("enumerate: {} valid configurations, {} minimizers, min omega={}\n", report.evaluated,
                       report.minimizers.size(), format_number(report.min_omega));
    out << fmt::format("  single_form={} omega_le_1={} omega_eq_1={} equal_deg_or_prob={} weak_law_undefined={}\n",
                       report.all_single_form, report.all_meaning_degrees_at_most_one,
                       report.all_meaning_degrees_one, report.all_equal_degrees_or_probabilities,
                       report.all_weak_law_undefined);
    return kExitOk;
}

int cmd_analyze(const std::string& dir, const std::string& csv_out, std::ostream& out, std::ostream& err) {
    const auto csv = analyze_directory(dir);
    out << csv;
    if (!csv_out.empty()) write_text(csv_out, csv);
    if (csv != stored_law_csv(dir)) {
        err << "analyze: recomputed law report differs from " << (fs::path(dir) / "laws.csv").string() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

constexpr const char* kConfigHelp =
    "Flat 'key = value' file; keys are flag names without the leading dashes. "
    "Flags given on the command line win.";

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// Replaces "--config FILE" with the flags the file sets, placed before the
// remaining arguments and skipping any key also given on the command line.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> rest;
    std::string file;
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (args[k] == "--config") {
            if (k + 1 >= args.size()) throw std::invalid_argument("--config needs a file");
            file = args[++k];
        } else if (args[k].rfind("--config=", 0) == 0) {
            file = args[k].substr(9);
        } else {
            rest.push_back(args[k]);
        }
    }
    if (file.empty()) return rest;
    if (rest.empty()) throw std::invalid_argument("--config must follow a subcommand");

    auto given = [&](const std::string& flag) {
        return std::any_of(rest.begin(), rest.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
    };
    std::vector<std::string> out{rest.front()};
    std::istringstream text(read_text(file));
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(text, line)) {
        ++lineno;
        const auto body = trim(line.substr(0, line.find('#')));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(fmt::format("{}:{}: expected 'key = value'", file, lineno));
        }
        const auto key = trim(std::string_view(body).substr(0, eq));
        auto value = trim(std::string_view(body).substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (key.empty() || key == "config") {
            throw std::invalid_argument(fmt::format("{}:{}: bad key '{}'", file, lineno, key));
        }
        const auto flag = "--" + key;
        if (given(flag)) continue;
        if (value == "true") {
            out.push_back(flag);
        } else if (value != "false") {
            out.push_back(flag);
            out.push_back(value);
        }
    }
    out.insert(out.end(), rest.begin() + 1, rest.end());
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> expanded;
    try {
        expanded = expand_config(args);
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return kExitIo;
    }
    std::string config_file;

    CLI::App app{"Zipfian communication-model optimizer and analysis toolkit", "zipfopt"};
    app.require_subcommand(1);

    CommonFlags mf;
    auto* minimize_cmd = app.add_subcommand("minimize", "Zero-temperature Monte Carlo run at one lambda");
    minimize_cmd->add_option("--config", config_file, kConfigHelp);
    add_optimizer_flags(*minimize_cmd, mf);
    minimize_cmd->add_option("--lambda", mf.lambda, "Trade-off lambda in [0,1]")->capture_default_str();
    minimize_cmd->add_option("--seed", mf.seed, "Random seed")->capture_default_str();
    minimize_cmd->add_option("--out", mf.out, "Run directory");

    CommonFlags sf;
    SweepFlags sw;
    auto* sweep_cmd = app.add_subcommand("sweep", "Replicated minimizations over a lambda grid");
    sweep_cmd->add_option("--config", config_file, kConfigHelp);
    add_optimizer_flags(*sweep_cmd, sf);
    sweep_cmd->add_option("--seed", sf.seed, "Master seed; per-run seeds derive from it")->capture_default_str();
    sweep_cmd->add_option("--out", sf.out, "Sweep directory");
    sweep_cmd->add_option("--lambda-min", sw.lambda_min, "First grid value")->capture_default_str();
    sweep_cmd->add_option("--lambda-max", sw.lambda_max, "Last grid value")->capture_default_str();
    sweep_cmd->add_option("--lambda-steps", sw.lambda_steps, "Number of grid values")->capture_default_str();
    sweep_cmd->add_option("--replicas", sw.replicas, "Runs per grid value")->capture_default_str();
    sweep_cmd->add_option("--threads", sw.threads, "Worker threads (0 = all cores)")->capture_default_str();
    sweep_cmd->add_flag("--write-traces", sw.traces, "Also write trace.csv for every run");

    CommonFlags ef;
    ef.vs = 2;
    ef.vr = 2;
    ef.lambda = 0.5;
    auto* enumerate_cmd = app.add_subcommand("enumerate", "Exhaustive global minima of Omega at small sizes");
    enumerate_cmd->add_option("--config", config_file, kConfigHelp);
    add_model_flags(*enumerate_cmd, ef);
    enumerate_cmd->add_option("--lambda", ef.lambda, "Trade-off lambda in [0,1]")->capture_default_str();
    enumerate_cmd->add_option("--out", ef.out, "Report directory");

    std::string analyze_dir;
    std::string analyze_out;
    auto* analyze_cmd = app.add_subcommand("analyze", "Recompute law statistics from a run or sweep directory");
    analyze_cmd->add_option("dir", analyze_dir, "Run or sweep directory")->required();
    analyze_cmd->add_option("--out", analyze_out, "Also write the CSV to this file");

    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitConfig;
    }

    try {
        if (*minimize_cmd) return cmd_minimize(mf, out);
        if (*sweep_cmd) return cmd_sweep(sf, sw, out);
        if (*enumerate_cmd) return cmd_enumerate(ef, out);
        return cmd_analyze(analyze_dir, analyze_out, out, err);
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        err << "io error: " << e.what() << "\n";
        return kExitIo;
    }
}

}  // namespace zipfopt::cli
