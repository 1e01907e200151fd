#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "invlim/gasket.hpp"
#include "invlim/rational.hpp"
#include "invlim/shift.hpp"
#include "invlim/system.hpp"

namespace invlim {

/// Malformed configuration. field() names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message, int line = 0);
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

/// "key = value" lines; '#' starts a comment; keys may repeat (matrix rows).
class ConfigFile {
 public:
  struct Entry {
    std::string key, value;
    int line = 0;
  };

  static ConfigFile parse(std::string_view text);
  static ConfigFile load(const std::string& path);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  bool has(std::string_view key) const;
  /// The last value of key.
  std::optional<std::string> get(std::string_view key) const;
  std::vector<Entry> all(std::string_view key) const;
  void set(std::string key, std::string value);

 private:
  std::vector<Entry> entries_;
};

Rational parse_rational_field(std::string_view field, std::string_view text, int line = 0);
std::int64_t parse_int_field(std::string_view field, std::string_view text, int line = 0);
std::vector<std::string> split_csv(std::string_view text);
std::vector<Rational> parse_rational_list(std::string_view field, std::string_view text, int line = 0);

/// Which system to build and, for the configurable ones, its data.
///
/// name: fullshift2, golden, sft, solenoid, example2, gasket. "sft" needs an
/// adjacency matrix; gasket_labels (six rows "A,B,C" for Y1..Y6, corners top,
/// left, right) replaces the default gasket table.
struct SystemConfig {
  std::string name;
  std::string alphabet;                 // csv, sft only; digits by default
  std::vector<std::string> adjacency;   // rows "1 1" or "1,1"
  std::vector<std::string> gasket_labels;

  EdgeShiftSpec shift_spec() const;
  GasketLabelTable gasket_table() const;
  /// Keys of this config in a fixed order.
  std::vector<std::pair<std::string, std::string>> keys() const;
  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

/// Reads system, alphabet, adjacency and gasket-labels keys.
SystemConfig read_system_config(const ConfigFile& file);

/// Constants used when a run gives none.
AxiomConstants default_constants(const std::string& system);
/// Net resolution used when a run gives none.
Rational default_resolution(const std::string& system);

/// Everything a report depends on. Serialized configs reproduce reports.
struct RunConfig {
  std::string command;
  SystemConfig system;
  std::string axiom = "both";  // verify: 1, 2 or both
  AxiomConstants constants;
  Rational resolution;
  int depth = 0;       // 0: command default
  int depth_cap = 0;   // 0: command default
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string format = "jsonl";  // or csv
  int K_min = 1, K_max = 3;
  std::vector<Rational> gammas, betas;
  std::string x, y;    // bracket threads
  int N = 2;           // falsify-example2
  std::string witness_file;

  /// "key = value" text; RunConfig::from(ConfigFile::parse(text)) gives back *this.
  std::string serialize() const;
  static RunConfig from(const ConfigFile& file);
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

}  // namespace invlim
