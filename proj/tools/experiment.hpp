#pragma once

#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zipfopt/laws.hpp"
#include "zipfopt/optimizer.hpp"
#include "zipfopt/oracle.hpp"

namespace zipfopt::cli {

/// Failure reading or writing an experiment directory.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Populates a fresh directory, then moves it to `target`, replacing any
/// previous contents. On failure the staging directory is removed and target
/// is left untouched.
void write_atomically(const std::filesystem::path& target,
                      const std::function<void(const std::filesystem::path&)>& populate);

void write_text(const std::filesystem::path& file, const std::string& contents);
std::string read_text(const std::filesystem::path& file);

/// Law report for a run's terminal state.
LawReport run_law_report(const std::string& run_id, const RunRecord& record);

/// metadata.json, matrix.edges, optional trace.csv and laws.csv for one run,
/// written into an existing directory.
void write_run_files(const std::filesystem::path& dir, const std::string& run_id, const RunRecord& record,
                     bool with_trace, bool with_laws);

std::string run_id_for(std::size_t lambda_index, std::size_t replica);

/// Aggregate rows: lambda,replica,L,rho,alpha,gamma,delta,omega_terminal.
std::string aggregate_csv(const SweepResult& result);

void write_sweep_files(const std::filesystem::path& dir, const SweepConfig& config, const SweepResult& result,
                       bool with_traces);

void write_minima_files(const std::filesystem::path& dir, const MinimaReport& report);

/// Recomputes the law report CSV (header plus rows) from the matrices stored in
/// a run or sweep directory. Throws IoError on missing or corrupt files.
std::string analyze_directory(const std::filesystem::path& dir);

/// The laws.csv stored at run time in a run or sweep directory.
std::string stored_law_csv(const std::filesystem::path& dir);

}  // namespace zipfopt::cli
