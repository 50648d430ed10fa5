#pragma once

// Experiment runner behind the `qfe` executable. Every subcommand produces a
// table plus a summary {command, params, pass, metrics}.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qfe/model.hpp"

namespace qfe::cli {

inline constexpr std::uint64_t kDefaultSeed = 20080415;
inline constexpr const char* kSeedEnvVar = "QFE_SEED";

enum class OutputFormat { Csv, Json };
enum class EllipsoidKind { Polynomial, Exponential };

struct ExperimentConfig {
  EllipsoidKind kind = EllipsoidKind::Polynomial;
  double alpha = 1.0;
  double beta = 1.0;
  double r = 1.0;
  double radius = 1.0;
  double gamma = 1.0;
  std::vector<double> epsilons;
  std::size_t replicates = 20000;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 1;
  std::string out;
  OutputFormat format = OutputFormat::Csv;

  // Pass/fail thresholds; each command has its own defaults.
  std::optional<double> tolerance;
  std::optional<double> lower;
  std::optional<double> upper;

  // mc-validate: optional one-column CSV signal replacing the worst case.
  std::string signal_path;

  // lemma-check
  std::string lemma = "both";
  double lemma_a = 1.0;
  double lemma_b = 1.0;
  double lemma_r = 0.5;
  double lemma_s = 1.0;
  std::vector<double> lemma_n = {10, 100, 1000, 10000};
  std::vector<double> lemma_v = {10, 20, 30};

  Ellipsoid ellipsoid() const;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"risk-curve",  "rate-check", "constant-check",
                                                 "lemma-check", "mc-validate", "grid-check",
                                                 "dump-extremal"};
  return names;
}

// Reads an INI-style file: top-level `key = value` lines apply to every
// command, a `[command]` section overrides them for that command.
void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path,
                       const std::string& command);

// Throws DomainError on an invalid config for `command`.
void validate(const ExperimentConfig& config, const std::string& command);

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct CommandResult {
  std::string command;
  nlohmann::json params;
  bool pass = true;
  nlohmann::json metrics;
  Table table;
};

CommandResult run_command(const std::string& command, const ExperimentConfig& config);

// %.17g
std::string format_double(double value);
std::string render_csv(const Table& table);
nlohmann::json summary_json(const CommandResult& result);
// Summary plus "columns" and "rows".
nlohmann::json document_json(const CommandResult& result);

// Writes the table in the configured format to config.out (or `stdout_sink`).
// For CSV output the summary goes to `<out>.json`, or after the table when
// writing to `stdout_sink`.
void write_result(const CommandResult& result, const ExperimentConfig& config,
                  std::ostream& stdout_sink);

// Full command line entry point. Exit codes: 0 success, 1 check failed,
// 2 configuration error, 3 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qfe::cli
