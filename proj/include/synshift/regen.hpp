#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "synshift/corpus.hpp"

namespace synshift {

/// Wire shape of the OpenAI-compatible endpoint.
enum class ApiStyle { chat, completion };

/// Words of source text included in the prompt: 256 for Wikipedia, 180 for
/// CCNews, none for ELI5 (title only).
std::size_t default_word_budget(Domain domain);

struct RegenConfig {
  std::string endpoint_url;  // full URL, e.g. http://localhost:8000/v1/chat/completions
  std::string model_name;
  double temperature = 1.0;
  std::size_t max_output_tokens = 2048;
  std::size_t parallelism = 1;
  Domain domain = Domain::wikipedia;
  std::optional<std::size_t> word_budget_override;
  ApiStyle api_style = ApiStyle::chat;
  std::string auth_token;  // sent as a bearer token when non-empty
  std::size_t max_attempts = 5;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::seconds request_timeout{300};

  std::size_t word_budget() const { return word_budget_override.value_or(default_word_budget(domain)); }
  /// Throws ConfigError on a missing endpoint or model, negative temperature,
  /// zero parallelism or zero attempts.
  void validate() const;
};

/// First `n` whitespace-delimited words joined by single spaces.
std::string truncate_words(std::string_view text, std::size_t n);

struct PromptSkip {
  std::string reason;
};

/// Fills the domain's prompt template for `article`. Articles lacking the title
/// or text the template needs are skipped with a reason. Throws ContractError
/// when the article and config domains differ.
std::variant<std::string, PromptSkip> build_prompt(const Article& article, const RegenConfig& config);

enum class RegenStatus { ok, failed, skipped };
std::string_view to_string(RegenStatus s);

struct RegenRecord {
  std::string article_id;
  std::string prompt;
  std::string completion;
  std::string model_name;
  std::string request_time;
  std::string finish_reason;
  RegenStatus status = RegenStatus::ok;
  std::size_t attempts = 0;
  std::string error;
};

std::string record_to_json(const RegenRecord& record);
/// Throws ValidationError on malformed input.
RegenRecord record_from_json(std::string_view line);

struct HttpResponse {
  int status = 0;  // 0 when no HTTP response was received
  std::string body;
  std::string error;
};

/// Sends one JSON request body to the endpoint. Implementations must be safe to
/// call from several threads at once.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse post_json(const std::string& body) = 0;
};

std::unique_ptr<Transport> make_http_transport(const RegenConfig& config);

/// Request body for one prompt in the configured wire shape.
std::string request_body(const std::string& prompt, const RegenConfig& config);

struct Completion {
  std::string text;
  std::string finish_reason;
};

/// Extracts the first choice's text; nullopt when the body is not a usable response.
std::optional<Completion> parse_completion(std::string_view body, ApiStyle style);

/// Append-only JSON-Lines log of RegenRecords in `dir/checkpoint.jsonl`.
class Checkpoint {
 public:
  explicit Checkpoint(const std::filesystem::path& dir);

  /// Latest record per article id. A truncated final line (interrupted write) is ignored.
  std::unordered_map<std::string, RegenRecord> load() const;
  /// Serialized across threads; each record is flushed before returning.
  void append(const RegenRecord& record);

  const std::filesystem::path& file() const noexcept { return file_; }
  bool exists_nonempty() const;

 private:
  std::filesystem::path file_;
  std::mutex mutex_;
};

struct RegenRunReport {
  std::size_t input = 0;
  std::size_t resumed = 0;    // already complete in the checkpoint
  std::size_t generated = 0;  // completed in this run
  std::size_t skipped = 0;
  std::size_t failed = 0;
  std::size_t requests = 0;  // HTTP attempts issued in this run
  bool cancelled = false;
};

struct RegenResult {
  std::vector<RegenRecord> records;  // ordered by article id
  RegenRunReport report;
};

/// Regenerates every article not already completed in the checkpoint. Transport
/// errors, 429 and 5xx responses are retried with exponential backoff up to
/// max_attempts; other failures become failure records. Setting `cancel`
/// stops new work and leaves a consistent checkpoint.
RegenResult regenerate_corpus(const std::vector<Article>& articles, const RegenConfig& config, Checkpoint& checkpoint,
                              Transport& transport, const std::atomic<bool>* cancel = nullptr);

/// Model-source articles built from the successful records, ordered by id.
std::vector<Article> regenerated_articles(const std::vector<Article>& sources, const std::vector<RegenRecord>& records,
                                          const RegenConfig& config);

}  // namespace synshift
