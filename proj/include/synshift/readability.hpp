#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "synshift/corpus.hpp"

namespace synshift {

struct TextCounts {
  std::size_t words = 0;
  std::size_t sentences = 0;
  std::size_t syllables = 0;

  friend bool operator==(const TextCounts&, const TextCounts&) = default;
};

/// Vowel-group syllable estimate over the ASCII letters of `word`.
///
/// Counts maximal runs of a/e/i/o/u (and y anywhere but the first letter), drops
/// one for a silent final "e" (an "e" following a consonant) unless the word
/// ends in consonant + "le", and floors the result at 1. Returns nullopt when
/// the word has no letters; such words are left out of syllable totals.
std::optional<std::size_t> count_syllables(std::string_view word);

/// Word tokens and sentence count of raw text.
struct TokenizedText {
  std::vector<std::string> words;
  std::size_t sentences = 0;
};

/// Words are maximal runs of letters, digits and apostrophes containing at least
/// one letter or digit. A sentence ends at a run of . ! ? following at least one
/// word; trailing words without a terminator form one more sentence.
TokenizedText tokenize_text(std::string_view text);

/// (words, sentences, syllables) of raw text. Throws ContractError when the text
/// has no words.
TextCounts text_counts(std::string_view text);

double fk_grade(const TextCounts& c);
double fk_ease(const TextCounts& c);
/// `complex_words` = words of three or more syllables.
double gunning_fog(const TextCounts& c, std::size_t complex_words);
/// `easy` = words of at most two syllables, `hard` = three or more.
double linsear_write(std::size_t easy, std::size_t hard, std::size_t sentences);

/// Case-folded set of words familiar to young readers, used by Spache.
class FamiliarWordList {
 public:
  FamiliarWordList() = default;
  explicit FamiliarWordList(std::vector<std::string> words, std::string source = {});

  /// One word per line; `#` starts a comment.
  static FamiliarWordList load(const std::filesystem::path& path);

  bool contains(std::string_view word) const;
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::string& source_path() const noexcept { return source_; }

 private:
  std::unordered_set<std::string> entries_;
  std::string source_;
};

/// `difficult` = word tokens absent from `list`. Throws ConfigError on an empty list.
double spache(const TextCounts& c, std::size_t difficult, const FamiliarWordList& list);

struct ReadabilityScores {
  double fk_grade = 0;
  double fk_ease = 0;
  double gunning_fog = 0;
  double linsear_write = 0;
  std::optional<double> spache;  // present when a familiar-word list was supplied
  std::size_t words = 0;
  std::size_t sentences = 0;
  std::size_t syllables = 0;
};

/// Articles of at most this many words are not scored.
inline constexpr std::size_t kReadabilityMinExclusiveWords = 100;

struct ReadabilityOutcome {
  std::optional<ReadabilityScores> scores;
  std::string skip_reason;  // set when scores is empty
};

/// Scores the raw (uncleaned) article text. `list` may be null, in which case
/// Spache is left unset.
ReadabilityOutcome score_article(const Article& article, const FamiliarWordList* list);

}  // namespace synshift
