#include "vmeas/cli/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace vmeas::cli {

namespace {

std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

io::Json resolve(const io::Json& j, const std::string& base_dir, const std::string& key) {
  if (!j.is_object() || j.size() != 1 || !j.contains("file")) return j;
  if (!j["file"].is_string()) throw ConfigError(key + ".file: expected a path");
  std::filesystem::path p = j["file"].get<std::string>();
  if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
  if (!std::filesystem::exists(p)) throw ConfigError(key + ".file: cannot resolve " + p.string());
  return read_document(p.string());
}

}  // namespace

io::Json parse_document(const std::string& text, const std::string& source) {
  try {
    return io::Json::parse(text);
  } catch (const io::Json::parse_error& e) {
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ConfigError(source + ": " + location(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + what);
  }
}

io::Json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path);
}

std::uint64_t ExperimentConfig::require_seed(const std::string& what) const {
  if (!seed) throw ConfigError(what + " is randomized: give --seed or a \"seed\" field");
  return *seed;
}

std::optional<io::Json> ExperimentConfig::section(const std::string& key) const {
  auto it = document.find(key);
  if (it == document.end()) return std::nullopt;
  const std::string dir =
      config_path.empty() ? std::string() : std::filesystem::path(config_path).parent_path().string();
  return resolve(*it, dir, key);
}

io::Json ExperimentConfig::echo() const {
  io::Json j{{"command", command},
             {"tol", to_string(tol)},
             {"kmax", k_max},
             {"quadrature", quadrature},
             {"patch", patch},
             {"parallel", execution == Execution::Parallel}};
  j["seed"] = seed ? io::Json(*seed) : io::Json(nullptr);
  j["norm"] = norm ? io::Json(std::string(norm_name(*norm))) : io::Json(nullptr);
  if (!suite.empty()) j["suite"] = suite;
  if (!config_path.empty()) j["config"] = config_path;
  j["document"] = document;
  return j;
}

void apply_document(ExperimentConfig& c) {
  const io::Json& d = c.document;
  if (!d.is_object()) throw ConfigError("config: the document must be a JSON object");
  auto integer = [&](const char* key) -> std::optional<std::int64_t> {
    if (!d.contains(key)) return std::nullopt;
    if (!d[key].is_number_integer()) throw ConfigError(std::string(key) + ": expected an integer");
    return d[key].get<std::int64_t>();
  };
  auto text = [&](const char* key) -> std::optional<std::string> {
    if (!d.contains(key)) return std::nullopt;
    if (!d[key].is_string()) throw ConfigError(std::string(key) + ": expected a string");
    return d[key].get<std::string>();
  };
  auto flag = [&](const char* key) -> std::optional<bool> {
    if (!d.contains(key)) return std::nullopt;
    if (!d[key].is_boolean()) throw ConfigError(std::string(key) + ": expected true or false");
    return d[key].get<bool>();
  };
  if (d.contains("command")) {
    auto cmd = text("command");
    if (*cmd != c.command) throw ConfigError("command: config is for '" + *cmd + "', not '" + c.command + "'");
  }
  if (auto s = integer("seed")) {
    if (*s < 0) throw ConfigError("seed: must be nonnegative");
    c.seed = static_cast<std::uint64_t>(*s);
  }
  if (d.contains("tol")) {
    try {
      c.tol = io::rational_from(d["tol"], "tol");
    } catch (const io::FormatError& e) {
      throw ConfigError(e.what());
    }
  }
  if (auto k = integer("kmax")) c.k_max = static_cast<int>(*k);
  if (auto q = integer("quadrature")) c.quadrature = static_cast<int>(*q);
  if (auto n = text("norm")) {
    try {
      c.norm = parse_norm(*n);
    } catch (const std::exception&) {
      throw ConfigError("norm: expected l1 or l2, got '" + *n + "'");
    }
  }
  if (auto s = text("suite")) c.suite = *s;
  if (auto o = text("out")) c.out = *o;
  if (auto p = flag("patch")) c.patch = *p;
  if (auto p = flag("parallel")) c.execution = *p ? Execution::Parallel : Execution::Serial;
}

void validate(const ExperimentConfig& c) {
  if (c.tol <= 0) throw ConfigError("tol: must be positive");
  if (c.k_max < 4 || c.k_max > 60) throw ConfigError("kmax: must lie in [4, 60]");
  if (c.quadrature < 1 || c.quadrature > 64) throw ConfigError("quadrature: must lie in [1, 64]");
}

}  // namespace vmeas::cli
