#include "synshift/syntax_metrics.hpp"

#include <algorithm>
#include <unordered_set>

namespace synshift {

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::dep_tags: return "dep_tags";
    case Metric::depth: return "depth";
    case Metric::yngve: return "yngve";
    case Metric::const_labels: return "const_labels";
    case Metric::sent_length: return "sent_length";
    case Metric::fk_grade: return "fk_grade";
    case Metric::fk_ease: return "fk_ease";
    case Metric::gunning_fog: return "gunning_fog";
    case Metric::linsear_write: return "linsear_write";
    case Metric::spache: return "spache";
  }
  return "?";
}

Metric parse_metric(std::string_view name) {
  for (Metric m : kSyntaxMetrics) {
    if (to_string(m) == name) return m;
  }
  for (Metric m : kReadabilityMetrics) {
    if (to_string(m) == name) return m;
  }
  throw ValidationError("unknown metric '" + std::string(name) + "'");
}

bool needs_tree(Metric m) { return m == Metric::depth || m == Metric::yngve || m == Metric::const_labels; }

std::string_view to_string(ExclusionReason r) {
  switch (r) {
    case ExclusionReason::none: return "none";
    case ExclusionReason::no_sentences: return "no_sentences";
    case ExclusionReason::failed_sentence: return "failed_sentence";
    case ExclusionReason::zero_score: return "zero_score";
  }
  return "?";
}

namespace {

void require_parsed(const SentenceRecord& s) {
  if (s.parse_failed || s.tokens.empty()) throw ContractError("metric requested for an unparsed sentence");
}

void require_tree(const ConstTree& tree) {
  if (tree.empty()) throw ContractError("metric requested for an empty tree");
}

void check_depth(std::size_t depth) {
  if (depth > kMaxTreeDepth) throw MetricFailure("tree deeper than " + std::to_string(kMaxTreeDepth));
}

}  // namespace

std::size_t unique_dep_tags(const SentenceRecord& sentence) {
  require_parsed(sentence);
  std::unordered_set<std::string_view> tags;
  for (const auto& t : sentence.tokens) tags.insert(t.deprel);
  return tags.size();
}

std::size_t parse_depth(const ConstTree& tree) {
  require_tree(tree);
  std::size_t deepest = 0;
  std::vector<std::pair<ConstTree::NodeId, std::size_t>> stack{{tree.root(), 0}};
  while (!stack.empty()) {
    auto [id, depth] = stack.back();
    stack.pop_back();
    check_depth(depth);
    const auto& node = tree.node(id);
    if (node.leaf) {
      deepest = std::max(deepest, depth);
      continue;
    }
    if (node.children.empty()) throw ContractError("constituent without children");
    for (auto child : node.children) stack.emplace_back(child, depth + 1);
  }
  return deepest;
}

double yngve_score(const ConstTree& tree, YngveVariant variant) {
  require_tree(tree);
  struct Frame {
    ConstTree::NodeId id;
    std::size_t depth;
    std::size_t score;
  };
  std::size_t leaves = 0;
  std::size_t total = 0;
  std::vector<Frame> stack{{tree.root(), 0, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    check_depth(f.depth);
    const auto& node = tree.node(f.id);
    if (node.leaf) {
      ++leaves;
      total += f.score;
      continue;
    }
    std::size_t n = node.children.size();
    if (n == 0) throw ContractError("constituent without children");
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t right_siblings = n - 1 - i;
      std::size_t step = variant == YngveVariant::right_siblings ? right_siblings : (right_siblings > 0 ? 1 : 0);
      stack.push_back({node.children[i], f.depth + 1, f.score + step});
    }
  }
  return static_cast<double>(total) / static_cast<double>(leaves);
}

std::size_t unique_const_labels(const ConstTree& tree) {
  require_tree(tree);
  std::unordered_set<std::string_view> labels;
  std::vector<std::pair<ConstTree::NodeId, std::size_t>> stack{{tree.root(), 0}};
  while (!stack.empty()) {
    auto [id, depth] = stack.back();
    stack.pop_back();
    check_depth(depth);
    const auto& node = tree.node(id);
    if (node.leaf) continue;
    labels.insert(node.label);
    for (auto child : node.children) stack.emplace_back(child, depth + 1);
  }
  return labels.size();
}

std::size_t sentence_length(const SentenceRecord& sentence) {
  require_parsed(sentence);
  return sentence.tokens.size();
}

std::optional<double> sentence_metric(const SentenceRecord& sentence, Metric metric, YngveVariant variant) {
  if (sentence.parse_failed || sentence.tokens.empty()) return std::nullopt;
  if (needs_tree(metric) && (!sentence.tree || sentence.tree->empty())) return std::nullopt;
  try {
    switch (metric) {
      case Metric::dep_tags: return static_cast<double>(unique_dep_tags(sentence));
      case Metric::depth: return static_cast<double>(parse_depth(*sentence.tree));
      case Metric::yngve: return yngve_score(*sentence.tree, variant);
      case Metric::const_labels: return static_cast<double>(unique_const_labels(*sentence.tree));
      case Metric::sent_length: return static_cast<double>(sentence_length(sentence));
      default: break;
    }
  } catch (const MetricFailure&) {
    return std::nullopt;
  }
  throw ContractError(std::string(to_string(metric)) + " is not a sentence metric");
}

AggregateOutcome article_aggregate(const Article& article, Metric metric, std::span<const SentenceResult> results,
                                   bool drop_zero_scores) {
  if (results.empty()) return {std::nullopt, ExclusionReason::no_sentences};
  double sum = 0;
  for (const auto& r : results) {
    if (!r.value) return {std::nullopt, ExclusionReason::failed_sentence};
    sum += *r.value;
  }
  double mean = sum / static_cast<double>(results.size());
  if (drop_zero_scores && (metric == Metric::depth || metric == Metric::yngve) && mean == 0.0) {
    return {std::nullopt, ExclusionReason::zero_score};
  }
  return {MetricSample{metric, mean, article.id, std::nullopt, article.domain, article.source}, ExclusionReason::none};
}

ArticleMetrics compute_article_metrics(const Article& article, YngveVariant variant, bool drop_zero_scores) {
  ArticleMetrics out;
  std::vector<SentenceResult> results;
  results.reserve(article.sentences.size());
  for (Metric metric : kSyntaxMetrics) {
    results.clear();
    for (const auto& s : article.sentences) {
      auto value = sentence_metric(s, metric, variant);
      results.push_back({s.index, value});
      if (value) out.sentence_samples.push_back({metric, *value, article.id, s.index, article.domain, article.source});
    }
    auto agg = article_aggregate(article, metric, results, drop_zero_scores);
    if (agg.sample) {
      out.article_samples.push_back(std::move(*agg.sample));
    } else {
      out.exclusions.emplace_back(metric, agg.reason);
    }
  }
  return out;
}

}  // namespace synshift
