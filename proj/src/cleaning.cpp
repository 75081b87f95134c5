#include "synshift/cleaning.hpp"

#include <algorithm>

#include "synshift/error.hpp"

namespace synshift {

void CleaningPolicy::validate() const {
  if (min_words < 1 || min_words > max_words) {
    throw ConfigError("cleaning bounds must satisfy 1 <= min_words <= max_words (got " + std::to_string(min_words) +
                      ", " + std::to_string(max_words) + ")");
  }
}

CleaningReport& CleaningReport::operator+=(const CleaningReport& other) {
  sentences_in += other.sentences_in;
  sentences_removed_length += other.sentences_removed_length;
  sentences_removed_pos += other.sentences_removed_pos;
  articles_emptied += other.articles_emptied;
  return *this;
}

std::size_t sentence_word_count(const SentenceRecord& sentence) {
  if (sentence.parse_failed) throw ContractError("word count requested for a failed parse");
  if (sentence.tokens.empty()) throw ContractError("sentence has no tokens");
  return sentence.tokens.size();
}

SentenceVerdict keep_sentence(const SentenceRecord& sentence, const CleaningPolicy& policy) {
  std::size_t words = sentence_word_count(sentence);
  if (!policy.enabled) return {};
  if (words < policy.min_words || words > policy.max_words) return {false, RemovalReason::length};
  if (policy.require_verb_or_aux) {
    bool has_verb = std::any_of(sentence.tokens.begin(), sentence.tokens.end(),
                                [](const DepToken& t) { return t.upos == "VERB" || t.upos == "AUX"; });
    if (!has_verb) return {false, RemovalReason::pos};
  }
  return {};
}

CleaningReport clean_article(Article& article, const CleaningPolicy& policy) {
  CleaningReport report;
  report.sentences_in = article.sentences.size();
  if (!policy.enabled) return report;

  std::vector<SentenceRecord> kept;
  kept.reserve(article.sentences.size());
  for (auto& s : article.sentences) {
    if (s.parse_failed) {
      kept.push_back(std::move(s));
      continue;
    }
    auto verdict = keep_sentence(s, policy);
    switch (verdict.reason) {
      case RemovalReason::none: kept.push_back(std::move(s)); break;
      case RemovalReason::length: ++report.sentences_removed_length; break;
      case RemovalReason::pos: ++report.sentences_removed_pos; break;
    }
  }
  if (kept.empty() && !article.sentences.empty()) {
    article.emptied = true;
    report.articles_emptied = 1;
  }
  article.sentences = std::move(kept);
  return report;
}

CleanedCorpus clean_corpus(std::vector<Article> articles, const CleaningPolicy& policy) {
  policy.validate();
  CleanedCorpus out;
  for (auto& a : articles) out.report += clean_article(a, policy);
  out.articles = std::move(articles);
  return out;
}

}  // namespace synshift
