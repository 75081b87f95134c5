#pragma once

#include <cstddef>
#include <vector>

#include "synshift/corpus.hpp"

namespace synshift {

/// Sentence filters applied identically to human and regenerated corpora.
struct CleaningPolicy {
  std::size_t min_words = 3;
  std::size_t max_words = 500;
  bool require_verb_or_aux = true;
  /// Consumed by article aggregation: zero depth/Yngve aggregates are excluded.
  bool drop_zero_scores = true;
  /// Master switch; false reproduces the uncleaned ablation.
  bool enabled = true;

  /// Throws ConfigError unless 1 <= min_words <= max_words.
  void validate() const;
};

enum class RemovalReason { none, length, pos };

struct SentenceVerdict {
  bool keep = true;
  RemovalReason reason = RemovalReason::none;
};

struct CleaningReport {
  std::size_t sentences_in = 0;
  std::size_t sentences_removed_length = 0;
  std::size_t sentences_removed_pos = 0;
  std::size_t articles_emptied = 0;

  CleaningReport& operator+=(const CleaningReport& other);
  friend bool operator==(const CleaningReport&, const CleaningReport&) = default;
};

/// Number of syntactic words (dependency tokens, punctuation included).
/// Throws ContractError for failed or token-less sentences.
std::size_t sentence_word_count(const SentenceRecord& sentence);

/// Length filter first, then the verb/auxiliary filter; bounds are inclusive.
SentenceVerdict keep_sentence(const SentenceRecord& sentence, const CleaningPolicy& policy);

/// Removes filtered sentences from one article in place. Sentences flagged
/// parse_failed pass through untouched so that article-level exclusion still
/// sees them.
CleaningReport clean_article(Article& article, const CleaningPolicy& policy);

struct CleanedCorpus {
  std::vector<Article> articles;
  CleaningReport report;
};

CleanedCorpus clean_corpus(std::vector<Article> articles, const CleaningPolicy& policy);

}  // namespace synshift
