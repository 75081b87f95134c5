#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "synshift/tree.hpp"

namespace synshift {

enum class Domain { wikipedia, ccnews, eli5 };
enum class Source { human, model };

std::string_view to_string(Domain d);
std::string_view to_string(Source s);
/// Throws ValidationError on an unknown name.
Domain parse_domain(std::string_view name);
Source parse_source(std::string_view name);

struct DepToken {
  std::string form;
  std::string upos;
  std::string deprel;
  /// 0-based index of the head token; empty for the root.
  std::optional<std::size_t> head;

  bool is_root() const noexcept { return !head.has_value(); }
};

struct SentenceRecord {
  std::size_t index = 0;
  std::vector<DepToken> tokens;
  std::optional<ConstTree> tree;  // absent when constituency parsing failed
  bool parse_failed = false;
};

struct Article {
  std::string id;
  Domain domain = Domain::wikipedia;
  Source source = Source::human;
  std::string model_name;  // non-empty iff source == model
  std::string title;
  std::string text;
  std::vector<SentenceRecord> sentences;
  /// Set by cleaning when every sentence was removed.
  bool emptied = false;
};

struct CorpusManifest {
  std::string corpus_id;
  Domain domain = Domain::wikipedia;
  Source source = Source::human;
  std::string model_name;
  std::size_t article_count = 0;
  std::string created_at;  // ISO-8601 UTC
  bool cleaning_applied = false;
};

/// Parses one 10-column dependency block (one token per line). Comment lines,
/// blank lines, multi-word-token ranges (`3-4`) and empty nodes (`5.1`) are
/// skipped. Throws ParseError carrying the 1-based line number.
std::vector<DepToken> read_dependency_block(std::string_view block);

/// Writes tokens back as a 10-column block; columns not kept in DepToken are `_`.
std::string write_dependency_block(const std::vector<DepToken>& tokens);

/// Streams Article records from a JSON-Lines file in file order.
class ArticleReader {
 public:
  ArticleReader(const std::filesystem::path& path, Domain expected_domain);

  /// Next article, or nullopt at end of file. Throws LoadError on a malformed
  /// line and ValidationError on a domain mismatch or duplicate id.
  std::optional<Article> next();

  std::size_t line() const noexcept { return line_; }

 private:
  std::ifstream in_;
  Domain expected_;
  std::size_t line_ = 0;
  std::unordered_set<std::string> seen_ids_;
};

std::vector<Article> read_articles(const std::filesystem::path& path, Domain expected_domain);
void write_articles(const std::filesystem::path& path, const std::vector<Article>& articles);

/// Fills `sentences` of each article from a parse sidecar file. Every record must
/// name a known article; a tree whose leaf count differs from the token count is
/// a load error.
void attach_parses(const std::filesystem::path& sidecar, std::vector<Article>& articles);
void write_parses(const std::filesystem::path& sidecar, const std::vector<Article>& articles);

CorpusManifest read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const CorpusManifest& manifest);
/// Checks article_count against the number of records in `articles_path`.
void validate_manifest(const CorpusManifest& manifest, const std::filesystem::path& articles_path);

/// Current time as ISO-8601 UTC with second resolution.
std::string utc_timestamp();

}  // namespace synshift
