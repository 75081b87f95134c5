#include "synshift/readability.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "synshift/error.hpp"

namespace synshift {

namespace {

bool ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool ascii_alnum(char c) { return ascii_alpha(c) || (c >= '0' && c <= '9'); }
char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

// Decodes one UTF-8 sequence at `pos`. Returns the code point (or U+FFFD for
// an invalid byte) and its length in bytes.
std::pair<char32_t, std::size_t> decode_utf8(std::string_view s, std::size_t pos) {
  auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) return {b0, 1};
  std::size_t len = (b0 >= 0xF0 && b0 < 0xF8) ? 4 : (b0 >= 0xE0) ? 3 : (b0 >= 0xC0) ? 2 : 0;
  if (len == 0 || pos + len > s.size()) return {0xFFFD, 1};
  char32_t cp = b0 & (0xFF >> (len + 1));
  for (std::size_t i = 1; i < len; ++i) {
    auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) return {0xFFFD, 1};
    cp = (cp << 6) | (b & 0x3F);
  }
  return {cp, len};
}

enum class CharClass { letter_or_digit, apostrophe, terminator, other };

CharClass classify(char32_t cp) {
  if (cp < 0x80) {
    char c = static_cast<char>(cp);
    if (ascii_alnum(c)) return CharClass::letter_or_digit;
    if (c == '\'') return CharClass::apostrophe;
    if (c == '.' || c == '!' || c == '?') return CharClass::terminator;
    return CharClass::other;
  }
  if (cp == 0x2019) return CharClass::apostrophe;
  // Latin-1 symbols, general punctuation through misc symbols, CJK punctuation.
  if (cp <= 0xBF || cp == 0xD7 || cp == 0xF7 || (cp >= 0x2000 && cp <= 0x2BFF) || (cp >= 0x3000 && cp <= 0x303F) ||
      cp == 0xFFFD) {
    return CharClass::other;
  }
  return CharClass::letter_or_digit;
}

bool is_vowel(const std::string& letters, std::size_t i) {
  switch (letters[i]) {
    case 'a': case 'e': case 'i': case 'o': case 'u': return true;
    case 'y': return i > 0;
    default: return false;
  }
}

std::string fold(std::string_view word) {
  std::string out;
  out.reserve(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) {
    // Typographic apostrophe (U+2019) folds to ASCII.
    if (word.compare(i, 3, "\xE2\x80\x99") == 0) {
      out += '\'';
      i += 2;
      continue;
    }
    out += ascii_lower(word[i]);
  }
  auto first = out.find_first_not_of('\'');
  if (first == std::string::npos) return {};
  auto last = out.find_last_not_of('\'');
  return out.substr(first, last - first + 1);
}

void require_counts(const TextCounts& c) {
  if (c.words == 0 || c.sentences == 0) throw ContractError("readability needs at least one word and one sentence");
}

}  // namespace

std::optional<std::size_t> count_syllables(std::string_view word) {
  std::string letters;
  for (char c : word) {
    if (ascii_alpha(c)) letters += ascii_lower(c);
  }
  if (letters.empty()) return std::nullopt;

  std::size_t groups = 0;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (is_vowel(letters, i) && (i == 0 || !is_vowel(letters, i - 1))) ++groups;
  }
  std::size_t n = letters.size();
  if (n >= 2 && letters[n - 1] == 'e' && !is_vowel(letters, n - 2)) {
    bool consonant_le = n >= 3 && letters[n - 2] == 'l' && !is_vowel(letters, n - 3);
    if (!consonant_le && groups > 0) --groups;
  }
  return std::max<std::size_t>(groups, 1);
}

TokenizedText tokenize_text(std::string_view text) {
  TokenizedText out;
  std::string current;
  bool current_has_alnum = false;
  std::size_t words_since_end = 0;

  auto flush = [&] {
    if (current_has_alnum) {
      out.words.push_back(std::move(current));
      ++words_since_end;
    }
    current.clear();
    current_has_alnum = false;
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    auto [cp, len] = decode_utf8(text, pos);
    switch (classify(cp)) {
      case CharClass::letter_or_digit:
        current.append(text.substr(pos, len));
        current_has_alnum = true;
        break;
      case CharClass::apostrophe:
        current.append(text.substr(pos, len));
        break;
      case CharClass::terminator:
        flush();
        if (words_since_end > 0) {
          ++out.sentences;
          words_since_end = 0;
        }
        break;
      case CharClass::other:
        flush();
        break;
    }
    pos += len;
  }
  flush();
  if (words_since_end > 0) ++out.sentences;
  return out;
}

TextCounts text_counts(std::string_view text) {
  auto tokenized = tokenize_text(text);
  if (tokenized.words.empty()) throw ContractError("text contains no words");
  TextCounts c;
  c.words = tokenized.words.size();
  c.sentences = tokenized.sentences;
  for (const auto& w : tokenized.words) c.syllables += count_syllables(w).value_or(0);
  return c;
}

double fk_grade(const TextCounts& c) {
  require_counts(c);
  double wps = static_cast<double>(c.words) / static_cast<double>(c.sentences);
  double spw = static_cast<double>(c.syllables) / static_cast<double>(c.words);
  return 0.39 * wps + 11.8 * spw - 15.59;
}

double fk_ease(const TextCounts& c) {
  require_counts(c);
  double wps = static_cast<double>(c.words) / static_cast<double>(c.sentences);
  double spw = static_cast<double>(c.syllables) / static_cast<double>(c.words);
  return 206.835 - 1.015 * wps - 84.6 * spw;
}

double gunning_fog(const TextCounts& c, std::size_t complex_words) {
  require_counts(c);
  if (complex_words > c.words) throw ContractError("more complex words than words");
  double wps = static_cast<double>(c.words) / static_cast<double>(c.sentences);
  double pct = 100.0 * static_cast<double>(complex_words) / static_cast<double>(c.words);
  return 0.4 * (wps + pct);
}

double linsear_write(std::size_t easy, std::size_t hard, std::size_t sentences) {
  if (sentences == 0) throw ContractError("Linsear Write needs at least one sentence");
  double r = (static_cast<double>(easy) + 3.0 * static_cast<double>(hard)) / static_cast<double>(sentences);
  return r > 20.0 ? r / 2.0 : (r - 2.0) / 2.0;
}

FamiliarWordList::FamiliarWordList(std::vector<std::string> words, std::string source) : source_(std::move(source)) {
  for (const auto& w : words) {
    auto f = fold(w);
    if (!f.empty()) entries_.insert(std::move(f));
  }
}

FamiliarWordList FamiliarWordList::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open familiar-word list " + path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    words.push_back(line.substr(first, last - first + 1));
  }
  return FamiliarWordList(std::move(words), path.string());
}

bool FamiliarWordList::contains(std::string_view word) const { return entries_.count(fold(word)) > 0; }

double spache(const TextCounts& c, std::size_t difficult, const FamiliarWordList& list) {
  if (list.empty()) throw ConfigError("Spache needs a non-empty familiar-word list");
  require_counts(c);
  if (difficult > c.words) throw ContractError("more difficult words than words");
  double wps = static_cast<double>(c.words) / static_cast<double>(c.sentences);
  double pct = 100.0 * static_cast<double>(difficult) / static_cast<double>(c.words);
  return 0.141 * wps + 0.086 * pct + 0.839;
}

ReadabilityOutcome score_article(const Article& article, const FamiliarWordList* list) {
  auto tokenized = tokenize_text(article.text);
  if (tokenized.words.empty()) return {std::nullopt, "empty"};
  if (tokenized.words.size() <= kReadabilityMinExclusiveWords) return {std::nullopt, "too_short"};

  TextCounts c;
  c.words = tokenized.words.size();
  c.sentences = tokenized.sentences;
  std::size_t easy = 0, hard = 0, difficult = 0;
  for (const auto& w : tokenized.words) {
    if (auto syl = count_syllables(w)) {
      c.syllables += *syl;
      (*syl >= 3 ? hard : easy) += 1;
    }
    if (list && !list->contains(w)) ++difficult;
  }

  ReadabilityScores s;
  s.fk_grade = fk_grade(c);
  s.fk_ease = fk_ease(c);
  s.gunning_fog = gunning_fog(c, hard);
  s.linsear_write = linsear_write(easy, hard, c.sentences);
  if (list) s.spache = spache(c, difficult, *list);
  s.words = c.words;
  s.sentences = c.sentences;
  s.syllables = c.syllables;
  return {s, {}};
}

}  // namespace synshift
