#pragma once

#include <map>
#include <string>
#include <vector>

#include "adw/jsonio.hpp"

namespace adw {

// Batch experiment runner behind the CLI: parses validated flag maps,
// dispatches to the module operations, persists JSON-lines run records and
// the measured-constant ledger, and replays stored configs.

struct RunConfig {
  std::string subcommand;
  std::map<std::string, std::string> flags;
  long precision_bits = 256;
  std::string out_dir;
  unsigned long seed = 1;
  bool json_stdout = false;

  Json to_json() const;
  static RunConfig from_json(const Json& j);
  std::string flag(const std::string& key, const std::string& fallback = "") const;
  bool has_flag(const std::string& key) const;
};

struct RunRecord {
  RunConfig config;
  std::vector<Json> records;    // one JSON object per line
  std::vector<Json> constants;  // measured-constant ledger entries
  Json summary;
};

RunRecord run(const RunConfig& config);

// Directory layout: config.json, records.jsonl, constants.jsonl,
// summary.json (+ plot.csv / plot.svg from emit_plots).
void persist(const RunRecord& rec, const std::string& dir);
RunRecord load_run(const std::string& dir);

// Re-run the stored config and compare all exact fields bit-identically
// (interval fields are enclosure-checked only).  Throws ConfigError with
// the first mismatch path on failure; returns the fresh record.
RunRecord replay_run(const std::string& dir);

// CSV + SVG emission for grid series; single-point records get CSV only.
struct PlotOutcome {
  bool emitted = false;
  std::string note;
};
PlotOutcome emit_plots(const RunRecord& rec, const std::string& dir);

// Grid syntax "start:factor:count" with rational start/factor.
std::vector<Rat> parse_grid(const std::string& text);

}  // namespace adw
