#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "synshift/corpus.hpp"
#include "synshift/syntax_metrics.hpp"

namespace synshift {

/// Count, mean, second central moment, min and max; merges by Chan's update so
/// sharded accumulation agrees with a sequential pass.
class MomentAccumulator {
 public:
  void add(double x);
  void merge(const MomentAccumulator& other);

  std::size_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  /// Population variance (n denominator).
  double variance() const noexcept { return n_ ? m2_ / static_cast<double>(n_) : 0.0; }
  double stddev() const;
  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }

 private:
  std::size_t n_ = 0;
  double mean_ = 0;
  double m2_ = 0;
  double min_ = 0;
  double max_ = 0;
};

struct HistogramBin {
  double left = 0;
  std::size_t count = 0;

  friend bool operator==(const HistogramBin&, const HistogramBin&) = default;
};

/// Uniform-width bin counts anchored at `origin`; bin k covers
/// [origin + k*width, origin + (k+1)*width).
class HistogramAccumulator {
 public:
  HistogramAccumulator(double origin, double width);

  void add(double x);
  /// Both accumulators must share origin and width.
  void merge(const HistogramAccumulator& other);

  /// Contiguous bins from the lowest to the highest occupied one, empty bins included.
  std::vector<HistogramBin> bins() const;
  double width() const noexcept { return width_; }

 private:
  double origin_;
  double width_;
  std::map<std::int64_t, std::size_t> counts_;
};

/// Freedman-Diaconis width 2*IQR*n^(-1/3). Integer-valued samples get a whole
/// width of at least 1; a zero IQR falls back to range/ceil(sqrt(n)).
double auto_bin_width(std::span<const double> samples);

struct DistributionSummary {
  Metric metric = Metric::dep_tags;
  Domain domain = Domain::wikipedia;
  Source source = Source::human;
  std::string model_name;
  std::size_t n = 0;
  double mean = 0;
  double stddev = 0;  // population
  double min = 0;
  double max = 0;
  double bin_width = 0;
  std::vector<HistogramBin> histogram;
  double tail_index = 0;
};

/// Moments and histogram of `samples`. Bins start at the minimum; the maximum
/// falls in the last bin. Throws InsufficientDataError for fewer than 2 samples
/// and ContractError for a non-positive width.
DistributionSummary summarize(std::span<const double> samples, std::optional<double> bin_width = std::nullopt);

/// Right-tail mass of a standard normal beyond two standard deviations.
inline constexpr double kNormalTailBaseline = 0.02275;

struct TailReport {
  double tail_mass = 0;
  double normal_baseline = kNormalTailBaseline;
  double tail_index = 0;
  bool long_tail_present = false;
};

/// Fraction of samples strictly above mean + 2*stddev, relative to the normal
/// baseline. A zero stddev yields index 0 and no tail.
TailReport tail_report(std::span<const double> samples, const DistributionSummary& summary,
                       double present_threshold = 1.5);

struct SignatureThresholds {
  double flat_effect = 0.1;    // |d| below this is "no mean shift"
  double narrow_ratio = 0.9;   // rho below this is narrowing
  double wide_ratio = 1.1;     // rho above this is widening
  double tail_present = 1.5;   // tail index above this marks a long tail
  double tail_reduced = 0.75;  // model index at or below this share of the human one is "reduced"
};

enum class MeanShift { up, down, flat };
enum class VarianceShift { narrower, wider, flat };
enum class TailVerdict { reduced, comparable, not_applicable };

std::string_view symbol(MeanShift s);
std::string_view symbol(VarianceShift s);
std::string_view symbol(TailVerdict v);

struct DistributionCell {
  DistributionSummary summary;
  TailReport tail;
};

/// Summary plus tail report of one sample set, labelled with its cell.
DistributionCell summarize_cell(std::span<const double> samples, Metric metric, Domain domain, Source source,
                                const SignatureThresholds& thresholds = {},
                                std::optional<double> bin_width = std::nullopt);

struct SignatureReport {
  Metric metric = Metric::dep_tags;
  Domain domain = Domain::wikipedia;
  std::string model_name;
  MeanShift mean_shift = MeanShift::flat;
  double effect_size = 0;  // d
  VarianceShift variance_shift = VarianceShift::flat;
  double sd_ratio = 1;  // rho = sd_model / sd_human
  TailVerdict tail_verdict = TailVerdict::not_applicable;
  double tail_index_human = 0;
  double tail_index_model = 0;
  std::size_t n_human = 0;
  std::size_t n_model = 0;
};

/// Mean shift by d = (mu_m - mu_h) / sqrt((sd_h^2 + sd_m^2) / 2), spread by
/// rho = sd_m / sd_h, and long-tail reduction by tail index. Throws
/// ContractError when the two cells differ in metric or domain.
SignatureReport classify_signatures(const DistributionCell& human, const DistributionCell& model,
                                    const SignatureThresholds& thresholds = {});

struct DescriptiveStats {
  std::size_t articles = 0;
  std::size_t sentences = 0;
  std::size_t words = 0;
  double sentences_per_article = 0;
  double words_per_sentence = 0;
  double words_per_article = 0;
};

/// Streams per-article sentence lengths; articles without sentences are not counted.
class DescriptiveStatsAccumulator {
 public:
  void add_article(std::span<const std::size_t> sentence_lengths);
  void merge(const DescriptiveStatsAccumulator& other);
  /// Throws InsufficientDataError when no article was counted.
  DescriptiveStats result() const;

 private:
  std::size_t articles_ = 0;
  std::size_t sentences_ = 0;
  std::size_t words_ = 0;
};

/// Statistics over a cleaned corpus; failed parses are not counted.
DescriptiveStats descriptive_stats(const std::vector<Article>& corpus);

/// Rounds half away from zero to one decimal place ("21.25" -> "21.3").
std::string format_one_decimal(double value);

std::string_view display_name(Metric m);
std::string_view display_name(Domain d);

struct SchematicDocument {
  std::string csv;
  std::string text;
};

/// Renders signature reports as a grid ordered by metric (Flesch-Kincaid,
/// Dependency, Depth, Yngve, Constituency, then the remaining metrics) and by
/// domain (news, wiki, ELI5). Throws ValidationError on a repeated cell.
SchematicDocument emit_schematic(std::span<const SignatureReport> reports);

}  // namespace synshift
