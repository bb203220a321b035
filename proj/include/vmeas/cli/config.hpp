#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "vmeas/execution.hpp"
#include "vmeas/magnitude.hpp"
#include "vmeas/rational.hpp"
#include "vmeas/serialize.hpp"

namespace vmeas::cli {

/// Bad config or flags; the message names the line or field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string command;
  /// Empty when the run has no config file.
  std::string config_path;
  io::Json document = io::Json::object();
  std::string out;
  std::optional<std::uint64_t> seed;
  Rational tol = Rational(1, 10000);
  int k_max = 20;
  std::optional<Norm> norm;
  int quadrature = 8;
  std::string suite;
  bool patch = false;
  Execution execution = Execution::Serial;

  /// Throws ConfigError naming `what` when no seed was given.
  std::uint64_t require_seed(const std::string& what) const;
  /// document[key], loading {"file": path} references relative to the config.
  std::optional<io::Json> section(const std::string& key) const;
  /// Effective knobs and the document, for the report.
  io::Json echo() const;
};

/// Parses JSON text, reporting syntax errors by line and column.
io::Json parse_document(const std::string& text, const std::string& source);
io::Json read_document(const std::string& path);

/// Reads the knobs (seed, tol, kmax, norm, quadrature, suite, patch, out,
/// parallel) from the document; flags applied afterwards take precedence.
void apply_document(ExperimentConfig& config);
/// Range checks on the knobs.
void validate(const ExperimentConfig& config);

}  // namespace vmeas::cli
