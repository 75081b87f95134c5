#pragma once

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "synshift/distribution.hpp"
#include "synshift/regen.hpp"
#include "synshift/run_config.hpp"

namespace synshift {

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(std::string_view value);
/// Splits CSV text into rows; handles quoted fields, including embedded newlines.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

enum class SampleScope { sentence, article };
std::string_view to_string(SampleScope s);

/// The sample scope whose distribution is compared for `metric`: article means
/// for depth, Yngve and readability; individual sentences otherwise.
SampleScope comparison_scope(Metric metric);

/// One (metric, domain, source) sample set read back from analyze output.
struct SampleCell {
  Metric metric = Metric::dep_tags;
  Domain domain = Domain::wikipedia;
  Source source = Source::human;
  std::vector<double> values;
  std::vector<std::string> article_ids;  // parallel to values
  std::filesystem::path origin;
};

/// Reads `samples_*.csv` and `readability_*.csv` files from the given files or
/// directories, keeping rows in each metric's comparison scope. Cells come back
/// ordered by metric, domain and source. Throws ValidationError when two files
/// supply the same cell.
std::vector<SampleCell> read_sample_cells(const std::vector<std::filesystem::path>& inputs);

/// Runs `fn(i)` for i in [0, n) on up to `threads` workers. The first exception
/// thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

/// Regenerates the configured corpus. `transport` overrides the HTTP client
/// (tests); `cancel` stops new requests. Throws EndpointError when every
/// attempted article failed.
RegenRunReport cmd_regenerate(const RunConfig& config, std::ostream& log, Transport* transport = nullptr,
                              const std::atomic<bool>* cancel = nullptr);

/// Readability scores, cleaned syntactic samples, cleaned corpus copies and a
/// per-article run log for every configured corpus.
void cmd_analyze(const RunConfig& config, std::ostream& log);

/// Distribution summaries, signatures, schematic, histograms and descriptive
/// statistics from the sample files of a previous analyze run.
void cmd_compare(const RunConfig& config, std::ostream& log);

/// Descriptive statistics of the configured corpora after cleaning.
void cmd_stats(const RunConfig& config, std::ostream& log);

}  // namespace synshift
