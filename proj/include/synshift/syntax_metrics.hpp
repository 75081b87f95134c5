#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "synshift/corpus.hpp"
#include "synshift/error.hpp"

namespace synshift {

/// Every measured quantity. The first five are per-sentence syntactic metrics;
/// the rest are article-level readability scores.
enum class Metric {
  dep_tags,
  depth,
  yngve,
  const_labels,
  sent_length,
  fk_grade,
  fk_ease,
  gunning_fog,
  linsear_write,
  spache,
};

inline constexpr Metric kSyntaxMetrics[] = {Metric::dep_tags, Metric::depth, Metric::yngve, Metric::const_labels,
                                            Metric::sent_length};
inline constexpr Metric kReadabilityMetrics[] = {Metric::fk_grade, Metric::fk_ease, Metric::gunning_fog,
                                                 Metric::linsear_write, Metric::spache};

std::string_view to_string(Metric m);
/// Throws ValidationError on an unknown name.
Metric parse_metric(std::string_view name);
bool needs_tree(Metric m);

/// Which Yngve formulation to use. `right_siblings` sums right-sibling counts
/// along each root-to-leaf path; `left_branch_edges` counts path nodes that have
/// any right sibling.
enum class YngveVariant { right_siblings, left_branch_edges };

/// Trees deeper than this (in edges) are rejected as metric failures.
inline constexpr std::size_t kMaxTreeDepth = 10000;

/// Raised when a metric cannot be computed for a sentence.
class MetricFailure : public Error {
 public:
  explicit MetricFailure(const std::string& what) : Error(ErrorKind::data, what) {}
};

struct MetricSample {
  Metric metric = Metric::dep_tags;
  double value = 0;
  std::string article_id;
  std::optional<std::size_t> sentence_index;  // empty for article-level samples
  Domain domain = Domain::wikipedia;
  Source source = Source::human;
};

std::size_t unique_dep_tags(const SentenceRecord& sentence);
/// Edges on the longest root-to-leaf path.
std::size_t parse_depth(const ConstTree& tree);
/// Mean over leaves of the per-leaf Yngve depth.
double yngve_score(const ConstTree& tree, YngveVariant variant = YngveVariant::right_siblings);
/// Distinct labels over non-leaf nodes, preterminals included.
std::size_t unique_const_labels(const ConstTree& tree);
std::size_t sentence_length(const SentenceRecord& sentence);

/// One metric for one sentence, or nullopt when it cannot be computed (failed
/// parse, missing tree, tree too deep). Readability metrics are not sentence
/// metrics and raise ContractError.
std::optional<double> sentence_metric(const SentenceRecord& sentence, Metric metric,
                                      YngveVariant variant = YngveVariant::right_siblings);

struct SentenceResult {
  std::size_t sentence_index = 0;
  std::optional<double> value;  // empty on failure
};

enum class ExclusionReason { none, no_sentences, failed_sentence, zero_score };
std::string_view to_string(ExclusionReason r);

struct AggregateOutcome {
  std::optional<MetricSample> sample;
  ExclusionReason reason = ExclusionReason::none;
};

/// Article mean of one metric. The article is excluded when it has no results,
/// when any sentence failed, or (with `drop_zero_scores`) when a depth or Yngve
/// mean is zero.
AggregateOutcome article_aggregate(const Article& article, Metric metric, std::span<const SentenceResult> results,
                                   bool drop_zero_scores);

struct ArticleMetrics {
  std::vector<MetricSample> sentence_samples;  // successful sentences only
  std::vector<MetricSample> article_samples;
  std::vector<std::pair<Metric, ExclusionReason>> exclusions;
};

/// All syntactic metrics of an already-cleaned article.
ArticleMetrics compute_article_metrics(const Article& article, YngveVariant variant, bool drop_zero_scores);

}  // namespace synshift
