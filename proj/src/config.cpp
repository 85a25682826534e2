#include "collide/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace collide {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& what) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": malformed number '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument(what + ": malformed number '" + text + "'");
  return v;
}

long long parse_integer(const std::string& text, const std::string& what) {
  size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": malformed integer '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument(what + ": malformed integer '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

}  // namespace

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown output format '" + text + "' (expected csv|json)");
}

CliConfig::CliConfig() {
  sweep.nbar_grid = default_nbar_grid();
  sweep.gamma_tau_grid = default_gamma_tau_grid();
}

std::vector<double> parse_grid(const std::string& text) {
  const auto parts = split(trim(text), ':');
  if (parts.size() == 4) {
    const double start = parse_double(parts[0], "grid start");
    const double stop = parse_double(parts[1], "grid stop");
    const long long count = parse_integer(parts[2], "grid count");
    if (count < 1 || count > 100000) throw std::invalid_argument("grid count out of range");
    if (parts[3] != "log" && parts[3] != "lin") {
      throw std::invalid_argument("grid spacing must be log or lin");
    }
    return make_grid(start, stop, static_cast<int>(count), parts[3] == "log");
  }
  if (parts.size() == 1) {
    std::vector<double> out;
    for (const auto& item : split(parts[0], ',')) out.push_back(parse_double(item, "grid value"));
    return out;
  }
  throw std::invalid_argument("grid must be start:stop:count:log|lin or a comma list");
}

std::map<std::string, std::string> read_kv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_setting(CliConfig& config, const std::string& key, const std::string& value) {
  SweepConfig& s = config.sweep;
  if (key == "nbar_grid") {
    s.nbar_grid = parse_grid(value);
  } else if (key == "gamma_tau_grid") {
    s.gamma_tau_grid = parse_grid(value);
  } else if (key == "interaction") {
    s.interaction = parse_interaction(value);
  } else if (key == "block") {
    s.block = parse_block(value);
  } else if (key == "n_measured") {
    s.n_measured = static_cast<int>(parse_integer(value, key));
  } else if (key == "quantities") {
    s.quantities.clear();
    for (const auto& q : split(value, ',')) s.quantities.push_back(parse_quantity(q));
  } else if (key == "g_tau_sa") {
    s.g_tau_sa = parse_double(value, key);
  } else if (key == "output") {
    config.output_path = value;
  } else if (key == "format") {
    config.format = parse_format(value);
  } else if (key == "seed") {
    const long long seed = parse_integer(value, key);
    if (seed < 0) throw std::invalid_argument("seed must be >= 0");
    s.optimizer.seed = static_cast<std::uint64_t>(seed);
  } else if (key == "fd_step") {
    const double h = parse_double(value, key);
    if (!(h > 0.0)) throw std::invalid_argument("fd_step must be > 0");
    s.optimizer.fd_step = h;
  } else if (key == "threads") {
    const long long t = parse_integer(value, key);
    if (t < 1 || t > 1024) throw std::invalid_argument("threads must be in 1..1024");
    config.threads = static_cast<int>(t);
  } else {
    throw std::invalid_argument("unknown setting '" + key + "'");
  }
}

int effective_threads(const CliConfig& config) {
  if (config.threads) return *config.threads;
  if (const char* env = std::getenv("COLLIDE_QFI_THREADS")) {
    try {
      const long long t = parse_integer(trim(env), "COLLIDE_QFI_THREADS");
      if (t >= 1 && t <= 1024) return static_cast<int>(t);
    } catch (const std::invalid_argument&) {
    }
  }
  return 1;
}

}  // namespace collide
