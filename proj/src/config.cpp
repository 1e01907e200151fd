#include "invlim/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace invlim {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string join(const std::vector<Rational>& v) {
  std::string out;
  for (const auto& r : v) out += (out.empty() ? "" : ",") + r.str();
  return out;
}

const std::vector<std::string> kCommands{"verify",     "search",          "bracket", "smale-verify",
                                         "conjugacy",  "falsify-example2", "replay"};
const std::vector<std::string> kSystems{"fullshift2", "golden", "sft", "solenoid", "example2", "gasket"};

bool is_shift(const std::string& s) { return s == "fullshift2" || s == "golden" || s == "sft"; }

}  // namespace

ConfigError::ConfigError(std::string field, const std::string& message, int line)
    : std::invalid_argument((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + "field '" + field +
                            "': " + message),
      field_(std::move(field)),
      line_(line) {}

ConfigFile ConfigFile::parse(std::string_view text) {
  ConfigFile f;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::string s = trim(raw);
    if (s.empty()) continue;
    auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(s, "expected 'key = value'", line);
    std::string key = trim(std::string_view(s).substr(0, eq));
    if (key.empty()) throw ConfigError("", "empty key", line);
    f.entries_.push_back({key, trim(std::string_view(s).substr(eq + 1)), line});
  }
  return f;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool ConfigFile::has(std::string_view key) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.key == key; });
}

std::optional<std::string> ConfigFile::get(std::string_view key) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->key == key) return it->value;
  return std::nullopt;
}

std::vector<ConfigFile::Entry> ConfigFile::all(std::string_view key) const {
  std::vector<Entry> out;
  for (const auto& e : entries_)
    if (e.key == key) out.push_back(e);
  return out;
}

void ConfigFile::set(std::string key, std::string value) { entries_.push_back({std::move(key), std::move(value), 0}); }

Rational parse_rational_field(std::string_view field, std::string_view text, int line) {
  try {
    return Rational::parse(trim(text));
  } catch (const std::exception&) {
    throw ConfigError(std::string(field), "'" + std::string(text) + "' is not a rational p/q", line);
  }
}

std::int64_t parse_int_field(std::string_view field, std::string_view text, int line) {
  const std::string s = trim(text);
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw ConfigError(std::string(field), "'" + std::string(text) + "' is not an integer", line);
  return v;
}

std::vector<std::string> split_csv(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    std::string item = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<Rational> parse_rational_list(std::string_view field, std::string_view text, int line) {
  std::vector<Rational> out;
  for (const auto& item : split_csv(text)) out.push_back(parse_rational_field(field, item, line));
  if (out.empty()) throw ConfigError(std::string(field), "empty list", line);
  return out;
}

EdgeShiftSpec SystemConfig::shift_spec() const {
  if (name == "fullshift2") return EdgeShiftSpec::full_shift(2);
  if (name == "golden") return EdgeShiftSpec::golden_mean();
  if (name != "sft") throw ConfigError("system", "'" + name + "' is not a shift of finite type");
  if (adjacency.empty()) throw ConfigError("adjacency", "missing for system sft");
  AdjacencyMatrix m;
  for (const auto& row : adjacency) {
    std::vector<std::uint8_t> r;
    for (char ch : row) {
      if (ch == '0' || ch == '1') r.push_back(static_cast<std::uint8_t>(ch - '0'));
      else if (ch != ' ' && ch != ',' && ch != '\t') throw ConfigError("adjacency", "row '" + row + "' must contain only 0 and 1");
    }
    m.push_back(std::move(r));
  }
  Alphabet ab = Alphabet::digits(m.size());
  if (!alphabet.empty()) {
    try {
      ab = Alphabet::parse(alphabet);
    } catch (const std::exception& e) {
      throw ConfigError("alphabet", e.what());
    }
  }
  try {
    return EdgeShiftSpec(ab, std::move(m));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("adjacency", e.what());
  }
}

GasketLabelTable SystemConfig::gasket_table() const {
  if (gasket_labels.empty()) return GasketLabelTable::standard();
  if (gasket_labels.size() != kGasketComponents)
    throw ConfigError("gasket-labels", "expected " + std::to_string(kGasketComponents) + " rows, got " +
                                           std::to_string(gasket_labels.size()));
  std::array<std::array<char, 3>, kGasketComponents> labels{};
  for (std::size_t c = 0; c < gasket_labels.size(); ++c) {
    auto items = split_csv(gasket_labels[c]);
    if (items.size() != 3) throw ConfigError("gasket-labels", "row " + std::to_string(c + 1) + " needs three labels");
    for (std::size_t k = 0; k < 3; ++k) {
      if (items[k].size() != 1 || items[k][0] < 'A' || items[k][0] > 'C')
        throw ConfigError("gasket-labels", "row " + std::to_string(c + 1) + ": labels are A, B or C");
      labels[c][k] = items[k][0];
    }
  }
  try {
    return GasketLabelTable::from_labels(labels);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("gasket-labels", e.what());
  }
}

std::vector<std::pair<std::string, std::string>> SystemConfig::keys() const {
  std::vector<std::pair<std::string, std::string>> out{{"system", name}};
  if (!alphabet.empty()) out.emplace_back("alphabet", alphabet);
  for (const auto& r : adjacency) out.emplace_back("adjacency", r);
  for (const auto& r : gasket_labels) out.emplace_back("gasket-labels", r);
  return out;
}

SystemConfig read_system_config(const ConfigFile& file) {
  SystemConfig s;
  auto name = file.get("system");
  if (!name) throw ConfigError("system", "missing");
  if (std::find(kSystems.begin(), kSystems.end(), *name) == kSystems.end())
    throw ConfigError("system", "unknown system '" + *name + "'", file.all("system").back().line);
  s.name = *name;
  if (auto a = file.get("alphabet")) s.alphabet = *a;
  for (const auto& e : file.all("adjacency")) s.adjacency.push_back(e.value);
  for (const auto& e : file.all("gasket-labels")) s.gasket_labels.push_back(e.value);
  if (s.name == "sft") s.shift_spec();
  else if (!s.adjacency.empty() || !s.alphabet.empty())
    throw ConfigError("adjacency", "only system sft takes a matrix");
  if (s.name == "gasket") s.gasket_table();
  else if (!s.gasket_labels.empty()) throw ConfigError("gasket-labels", "only system gasket takes labels");
  return s;
}

AxiomConstants default_constants(const std::string& system) {
  if (system == "solenoid") return {Rational(1, 243), 2, Rational(1, 2)};
  if (system == "gasket") return {Rational(1, 8), 1, Rational(1, 2)};
  return {Rational(1, 4), 1, Rational(1, 2)};
}

Rational default_resolution(const std::string& system) {
  if (system == "solenoid") return Rational(1, 729);
  if (system == "gasket") return Rational(1, 16);
  return Rational(1, 256);
}

namespace {

std::vector<Rational> default_betas(const std::string& system) {
  if (system == "solenoid") return {Rational(1, 10), Rational(1, 27), Rational(1, 81), Rational(1, 243)};
  if (system == "gasket") return {Rational(1, 4), Rational(1, 8), Rational(1, 16)};
  return {Rational(1, 2), Rational(1, 4), Rational(1, 8)};
}

const std::vector<std::string> kRunKeys{
    "command", "system", "alphabet", "adjacency", "gasket-labels", "axiom",  "beta",  "K",      "gamma",
    "resolution", "depth", "depth-cap", "samples", "seed",        "jobs",   "format", "K-min", "K-max",
    "gammas", "betas", "x",  "y",        "N",       "witness-file"};

}  // namespace

RunConfig RunConfig::from(const ConfigFile& file) {
  for (const auto& e : file.entries())
    if (std::find(kRunKeys.begin(), kRunKeys.end(), e.key) == kRunKeys.end())
      throw ConfigError(e.key, "unknown key", e.line);
  RunConfig rc;
  auto line_of = [&](const char* key) { return file.all(key).empty() ? 0 : file.all(key).back().line; };
  auto cmd = file.get("command");
  if (!cmd || cmd->empty()) throw ConfigError("command", "missing");
  if (std::find(kCommands.begin(), kCommands.end(), *cmd) == kCommands.end())
    throw ConfigError("command", "unknown command '" + *cmd + "'", line_of("command"));
  rc.command = *cmd;

  auto int_key = [&](const char* key, auto& dst, std::int64_t lo) {
    if (auto v = file.get(key)) {
      auto n = parse_int_field(key, *v, line_of(key));
      if (n < lo) throw ConfigError(key, "must be >= " + std::to_string(lo), line_of(key));
      dst = static_cast<std::remove_reference_t<decltype(dst)>>(n);
    }
  };
  int_key("jobs", rc.jobs, 1);
  int_key("seed", rc.seed, 0);
  if (auto f = file.get("format")) {
    if (*f != "jsonl" && *f != "csv") throw ConfigError("format", "expected jsonl or csv", line_of("format"));
    rc.format = *f;
  }

  if (rc.command == "replay") {
    auto w = file.get("witness-file");
    if (!w || w->empty()) throw ConfigError("witness-file", "missing");
    rc.witness_file = *w;
    return rc;
  }

  if (rc.command == "falsify-example2") {
    rc.system.name = "example2";
    if (file.has("system") && file.get("system") != "example2")
      throw ConfigError("system", "falsify-example2 runs on example2 only", line_of("system"));
  } else if (rc.command == "conjugacy") {
    rc.system = file.has("system") ? read_system_config(file) : SystemConfig{"fullshift2", {}, {}, {}};
    if (!is_shift(rc.system.name)) throw ConfigError("system", "conjugacy needs a shift of finite type");
  } else {
    rc.system = read_system_config(file);
  }
  const std::string& sys = rc.system.name;

  rc.constants = default_constants(sys);
  if (auto v = file.get("beta")) rc.constants.beta = parse_rational_field("beta", *v, line_of("beta"));
  int_key("K", rc.constants.K, 1);
  if (auto v = file.get("gamma")) rc.constants.gamma = parse_rational_field("gamma", *v, line_of("gamma"));
  try {
    rc.constants.validate();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    throw ConfigError(msg.find("beta") != std::string::npos ? "beta" : msg.find("gamma") != std::string::npos ? "gamma" : "K", msg);
  }

  rc.resolution = default_resolution(sys);
  if (auto v = file.get("resolution")) {
    rc.resolution = parse_rational_field("resolution", *v, line_of("resolution"));
    if (rc.resolution.sign() <= 0) throw ConfigError("resolution", "must be positive", line_of("resolution"));
  }

  if (rc.command == "verify") {
    if (auto a = file.get("axiom")) {
      if (*a != "1" && *a != "2" && *a != "both") throw ConfigError("axiom", "expected 1, 2 or both", line_of("axiom"));
      rc.axiom = *a;
    }
  }
  if (rc.command == "search") {
    int_key("K-min", rc.K_min, 1);
    int_key("K-max", rc.K_max, 1);
    if (rc.K_max < rc.K_min) throw ConfigError("K-max", "must be >= K-min", line_of("K-max"));
    rc.gammas = {Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(3, 4)};
    if (auto v = file.get("gammas")) rc.gammas = parse_rational_list("gammas", *v, line_of("gammas"));
    rc.betas = default_betas(sys);
    if (auto v = file.get("betas")) rc.betas = parse_rational_list("betas", *v, line_of("betas"));
  }

  const bool shift = is_shift(sys) || sys == "example2";
  if (rc.command == "bracket") {
    rc.depth = 10;
    auto x = file.get("x"), y = file.get("y");
    if (!x || x->empty()) throw ConfigError("x", "missing");
    if (!y || y->empty()) throw ConfigError("y", "missing");
    rc.x = *x;
    rc.y = *y;
  }
  if (rc.command == "smale-verify") {
    if (sys == "example2") throw ConfigError("system", "smale-verify has no unstable-pair sampler for example2");
    rc.samples = 200;
    rc.depth = shift ? 16 : sys == "solenoid" ? 24 : 12;
    rc.depth_cap = shift ? 40 : sys == "solenoid" ? 48 : 35;
  }
  if (rc.command == "conjugacy") {
    rc.samples = 100;
    rc.depth = 8;
  }
  int_key("depth", rc.depth, 0);
  int_key("depth-cap", rc.depth_cap, 0);
  int_key("samples", rc.samples, 1);
  if (rc.command == "smale-verify" && rc.depth_cap < rc.depth)
    throw ConfigError("depth-cap", "must be >= depth", line_of("depth-cap"));
  if (rc.command == "falsify-example2") {
    rc.N = 2 * rc.constants.K;
    int_key("N", rc.N, 1);
    if (rc.N < 2 * rc.constants.K) throw ConfigError("N", "must be >= 2K", line_of("N"));
  }
  return rc;
}

std::string RunConfig::serialize() const {
  std::ostringstream out;
  auto put = [&](const std::string& k, const std::string& v) { out << k << " = " << v << "\n"; };
  put("command", command);
  put("seed", std::to_string(seed));
  put("jobs", std::to_string(jobs));
  put("format", format);
  if (command == "replay") {
    put("witness-file", witness_file);
    return out.str();
  }
  if (command != "falsify-example2")
    for (const auto& [k, v] : system.keys()) put(k, v);
  put("beta", constants.beta.str());
  put("K", std::to_string(constants.K));
  put("gamma", constants.gamma.str());
  put("resolution", resolution.str());
  if (command == "verify") put("axiom", axiom);
  if (command == "search") {
    put("K-min", std::to_string(K_min));
    put("K-max", std::to_string(K_max));
    put("gammas", join(gammas));
    put("betas", join(betas));
  }
  if (command == "bracket") {
    put("x", x);
    put("y", y);
  }
  if (command == "bracket" || command == "smale-verify" || command == "conjugacy") put("depth", std::to_string(depth));
  if (command == "smale-verify") put("depth-cap", std::to_string(depth_cap));
  if (command == "smale-verify" || command == "conjugacy") put("samples", std::to_string(samples));
  if (command == "falsify-example2") put("N", std::to_string(N));
  return out.str();
}

}  // namespace invlim
