#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "synshift/cleaning.hpp"
#include "synshift/corpus.hpp"
#include "synshift/distribution.hpp"
#include "synshift/regen.hpp"
#include "synshift/syntax_metrics.hpp"

namespace synshift {

/// One input corpus: a JSON-Lines article file plus its optional parse sidecar.
struct CorpusSpec {
  Domain domain = Domain::wikipedia;
  Source source = Source::human;
  std::string model_name;
  std::filesystem::path articles;
  std::optional<std::filesystem::path> parses;

  /// "<domain>_<source>", used in output file names.
  std::string key() const;
};

struct RegenJob {
  RegenConfig config;
  std::filesystem::path input;
  std::filesystem::path checkpoint_dir;     // defaults to <output>/checkpoint
  std::optional<std::filesystem::path> output;  // defaults to <output>/regenerated_<domain>.jsonl
  std::string token_env = "SYNSHIFT_API_KEY";
};

struct RunConfig {
  std::vector<CorpusSpec> corpora;
  CleaningPolicy cleaning;
  SignatureThresholds thresholds;
  YngveVariant yngve_variant = YngveVariant::right_siblings;
  std::optional<double> bin_width;  // empty = automatic
  std::optional<std::filesystem::path> familiar_words;
  std::filesystem::path output_dir = "out";
  /// Directories or files with sample CSVs for `compare`; empty = output_dir.
  std::vector<std::filesystem::path> compare_inputs;
  std::size_t threads = 1;
  std::optional<RegenJob> regen;
  bool resume = false;
};

/// Reads an INI document. Sections: [output], [cleaning], [metrics],
/// [signatures], [readability], [compare], [regen] and one
/// [corpus.<domain>.<source>] per corpus. Relative paths resolve against the
/// config file's directory. Throws ConfigError on unknown sections or keys and
/// on malformed values.
RunConfig load_run_config(const std::filesystem::path& path);

/// Parses INI text; `base_dir` anchors relative paths.
RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir);

/// Throws ConfigError when a referenced input path does not exist.
void check_inputs_exist(const RunConfig& config);

}  // namespace synshift
