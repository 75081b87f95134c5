#include "synshift/regen.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "synshift/error.hpp"

namespace synshift {

using nlohmann::json;

std::size_t default_word_budget(Domain domain) {
  switch (domain) {
    case Domain::wikipedia: return 256;
    case Domain::ccnews: return 180;
    case Domain::eli5: return 0;
  }
  return 0;
}

void RegenConfig::validate() const {
  if (endpoint_url.empty()) throw ConfigError("regeneration needs an endpoint URL");
  if (endpoint_url.rfind("http://", 0) != 0 && endpoint_url.rfind("https://", 0) != 0) {
    throw ConfigError("endpoint URL must start with http:// or https://");
  }
  if (model_name.empty()) throw ConfigError("regeneration needs a model name");
  if (!(temperature >= 0)) throw ConfigError("temperature must be non-negative");
  if (parallelism == 0) throw ConfigError("parallelism must be at least 1");
  if (max_attempts == 0) throw ConfigError("max_attempts must be at least 1");
  if (max_output_tokens == 0) throw ConfigError("max_output_tokens must be at least 1");
}

std::string truncate_words(std::string_view text, std::size_t n) {
  if (n == 0) throw ContractError("word budget must be at least 1");
  std::string out;
  std::size_t taken = 0;
  std::size_t pos = 0;
  auto space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (taken < n) {
    while (pos < text.size() && space(text[pos])) ++pos;
    if (pos == text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !space(text[end])) ++end;
    if (taken > 0) out += ' ';
    out.append(text.substr(pos, end - pos));
    ++taken;
    pos = end;
  }
  return out;
}

namespace {

constexpr std::string_view kWikipediaTemplate =
    "Generate a Wikipedia article on the topic of {topic}. \n"
    "Use the following first paragraph from the original Wikipedia article as a starting point:\n"
    "\n"
    "{first_paragraph}\n"
    "\n"
    "Now, expand upon the provided paragraph by providing additional details, \n"
    "historical context, notable events, key figures, and any relevant subtopics. \n"
    "Aim for a well-structured and informative Wikipedia style article with a minimum length of 700 words. \n"
    "Ensure that the content is factually accurate, well-written, and on Wikipedia writing style.\n";

constexpr std::string_view kNewsTemplate =
    "Generate a news article on the topic of {title}.\n"
    "Use the following first paragraph from the original news article as a starting point:\n"
    "\n"
    "{first_paragraph}\n"
    "\n"
    "Now, expand upon the provided paragraph by providing additional details, context, notable events, key "
    "figures, and any relevant discussions. Aim for a well-structured and informative news style article with a "
    "minimum length of 500 words. Ensure that the content is factually accurate, well-written, and on news writing "
    "style.\n";

constexpr std::string_view kEli5Template =
    "Generate a reddit reply to this thread {title}.\n"
    "\n"
    "Aim for an Explain Like I'm Five style reply with a minimum length of 100 words. Ensure that the content is "
    "factually accurate, well-written, and on Explain like I'm Five writing style.\n";

// Single pass, so placeholder-like text inside a value is never re-expanded.
std::string fill(std::string_view tmpl, const std::map<std::string_view, std::string_view>& values) {
  std::string out;
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    auto open = tmpl.find('{', pos);
    if (open == std::string_view::npos) break;
    auto close = tmpl.find('}', open);
    out.append(tmpl.substr(pos, open - pos));
    auto it = values.find(tmpl.substr(open + 1, close - open - 1));
    if (it == values.end()) throw ContractError("unfilled template placeholder");
    out.append(it->second);
    pos = close + 1;
  }
  out.append(tmpl.substr(pos));
  return out;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

std::variant<std::string, PromptSkip> build_prompt(const Article& article, const RegenConfig& config) {
  if (article.domain != config.domain) {
    throw ContractError("article '" + article.id + "' is " + std::string(to_string(article.domain)) +
                        " but the regeneration config is " + std::string(to_string(config.domain)));
  }
  if (blank(article.title)) return PromptSkip{"missing title"};

  switch (article.domain) {
    case Domain::wikipedia:
    case Domain::ccnews: {
      std::string paragraph = truncate_words(article.text, std::max<std::size_t>(config.word_budget(), 1));
      if (paragraph.empty()) return PromptSkip{"missing text"};
      if (article.domain == Domain::wikipedia) {
        return fill(kWikipediaTemplate, {{"topic", article.title}, {"first_paragraph", paragraph}});
      }
      return fill(kNewsTemplate, {{"title", article.title}, {"first_paragraph", paragraph}});
    }
    case Domain::eli5:
      return fill(kEli5Template, {{"title", article.title}});
  }
  throw ContractError("unknown domain");
}

std::string_view to_string(RegenStatus s) {
  switch (s) {
    case RegenStatus::ok: return "ok";
    case RegenStatus::failed: return "failed";
    case RegenStatus::skipped: return "skipped";
  }
  return "?";
}

std::string record_to_json(const RegenRecord& r) {
  json j;
  j["article_id"] = r.article_id;
  j["prompt"] = r.prompt;
  j["completion"] = r.completion;
  j["model_name"] = r.model_name;
  j["request_time"] = r.request_time;
  j["finish_reason"] = r.finish_reason;
  j["status"] = to_string(r.status);
  j["attempts"] = r.attempts;
  if (!r.error.empty()) j["error"] = r.error;
  return j.dump();
}

RegenRecord record_from_json(std::string_view line) {
  try {
    json j = json::parse(line);
    RegenRecord r;
    r.article_id = j.at("article_id").get<std::string>();
    r.prompt = j.at("prompt").get<std::string>();
    r.completion = j.value("completion", std::string());
    r.model_name = j.value("model_name", std::string());
    r.request_time = j.value("request_time", std::string());
    r.finish_reason = j.value("finish_reason", std::string());
    auto status = j.at("status").get<std::string>();
    if (status == "ok") {
      r.status = RegenStatus::ok;
    } else if (status == "failed") {
      r.status = RegenStatus::failed;
    } else if (status == "skipped") {
      r.status = RegenStatus::skipped;
    } else {
      throw ValidationError("unknown status '" + status + "'");
    }
    r.attempts = j.value("attempts", std::size_t{0});
    r.error = j.value("error", std::string());
    return r;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed regeneration record: ") + e.what());
  }
}

namespace {

class HttpTransport : public Transport {
 public:
  explicit HttpTransport(const RegenConfig& config) : timeout_(config.request_timeout), token_(config.auth_token) {
    const auto& url = config.endpoint_url;
    auto scheme_end = url.find("://");
    auto slash = url.find('/', scheme_end + 3);
    base_ = url.substr(0, slash);
    path_ = slash == std::string::npos ? "/" : url.substr(slash);
  }

  HttpResponse post_json(const std::string& body) override {
    // One client per call: httplib clients are not shared across threads.
    httplib::Client client(base_);
    client.set_connection_timeout(std::chrono::seconds(10));
    client.set_read_timeout(timeout_);
    client.set_write_timeout(timeout_);
    httplib::Headers headers;
    if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) return {0, {}, httplib::to_string(res.error())};
    return {res->status, res->body, {}};
  }

 private:
  std::string base_;
  std::string path_;
  std::chrono::seconds timeout_;
  std::string token_;
};

std::string now_iso() { return utc_timestamp(); }

bool retryable(const HttpResponse& r) { return r.status == 0 || r.status == 429 || r.status >= 500; }

}  // namespace

std::unique_ptr<Transport> make_http_transport(const RegenConfig& config) {
  config.validate();
  return std::make_unique<HttpTransport>(config);
}

std::string request_body(const std::string& prompt, const RegenConfig& config) {
  json j;
  j["model"] = config.model_name;
  j["temperature"] = config.temperature;
  j["max_tokens"] = config.max_output_tokens;
  if (config.api_style == ApiStyle::chat) {
    j["messages"] = json::array({{{"role", "user"}, {"content", prompt}}});
  } else {
    j["prompt"] = prompt;
  }
  return j.dump();
}

std::optional<Completion> parse_completion(std::string_view body, ApiStyle style) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  auto choices = j.find("choices");
  if (choices == j.end() || !choices->is_array() || choices->empty()) return std::nullopt;
  const auto& first = (*choices)[0];
  if (!first.is_object()) return std::nullopt;

  Completion c;
  const json* text = nullptr;
  if (style == ApiStyle::chat) {
    auto msg = first.find("message");
    if (msg != first.end() && msg->is_object()) {
      auto content = msg->find("content");
      if (content != msg->end()) text = &*content;
    }
  } else {
    auto t = first.find("text");
    if (t != first.end()) text = &*t;
  }
  if (!text || !text->is_string()) return std::nullopt;
  c.text = text->get<std::string>();
  auto finish = first.find("finish_reason");
  if (finish != first.end() && finish->is_string()) c.finish_reason = finish->get<std::string>();
  return c;
}

Checkpoint::Checkpoint(const std::filesystem::path& dir) : file_(dir / "checkpoint.jsonl") {
  std::filesystem::create_directories(dir);
}

bool Checkpoint::exists_nonempty() const {
  std::error_code ec;
  return std::filesystem::exists(file_, ec) && std::filesystem::file_size(file_, ec) > 0;
}

std::unordered_map<std::string, RegenRecord> Checkpoint::load() const {
  std::unordered_map<std::string, RegenRecord> out;
  std::ifstream in(file_, std::ios::binary);
  if (!in) return out;
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!blank(line)) lines.push_back(std::move(line));
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      auto r = record_from_json(lines[i]);
      out.insert_or_assign(r.article_id, std::move(r));
    } catch (const ValidationError& e) {
      if (i + 1 == lines.size()) break;  // interrupted final write
      throw LoadError(i + 1, std::string(file_.string()) + ": " + e.what());
    }
  }
  return out;
}

void Checkpoint::append(const RegenRecord& record) {
  std::lock_guard lock(mutex_);
  std::ofstream out(file_, std::ios::binary | std::ios::app);
  if (!out) throw ValidationError("cannot append to " + file_.string());
  out << record_to_json(record) << '\n';
  out.flush();
}

RegenResult regenerate_corpus(const std::vector<Article>& articles, const RegenConfig& config, Checkpoint& checkpoint,
                              Transport& transport, const std::atomic<bool>* cancel) {
  config.validate();
  RegenResult result;
  result.report.input = articles.size();
  auto done = checkpoint.load();

  std::vector<RegenRecord> records;
  std::vector<std::pair<const Article*, std::string>> pending;  // article, prompt
  for (const auto& a : articles) {
    auto prompt = build_prompt(a, config);
    if (auto* skip = std::get_if<PromptSkip>(&prompt)) {
      RegenRecord r;
      r.article_id = a.id;
      r.model_name = config.model_name;
      r.status = RegenStatus::skipped;
      r.error = skip->reason;
      records.push_back(std::move(r));
      ++result.report.skipped;
      continue;
    }
    auto it = done.find(a.id);
    if (it != done.end() && it->second.status == RegenStatus::ok) {
      records.push_back(it->second);
      ++result.report.resumed;
      continue;
    }
    pending.emplace_back(&a, std::move(std::get<std::string>(prompt)));
  }

  std::vector<std::optional<RegenRecord>> produced(pending.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> requests{0};
  auto cancelled = [&] { return cancel && cancel->load(); };

  auto worker = [&] {
    while (!cancelled()) {
      std::size_t i = next.fetch_add(1);
      if (i >= pending.size()) return;
      const auto& [article, prompt] = pending[i];
      RegenRecord r;
      r.article_id = article->id;
      r.prompt = prompt;
      r.model_name = config.model_name;
      r.request_time = now_iso();
      std::string body = request_body(prompt, config);
      auto backoff = config.initial_backoff;
      for (std::size_t attempt = 1; attempt <= config.max_attempts; ++attempt) {
        r.attempts = attempt;
        ++requests;
        auto response = transport.post_json(body);
        if (response.status == 200) {
          if (auto completion = parse_completion(response.body, config.api_style)) {
            r.status = RegenStatus::ok;
            r.completion = std::move(completion->text);
            r.finish_reason = std::move(completion->finish_reason);
            r.error.clear();
          } else {
            r.status = RegenStatus::failed;
            r.error = "malformed endpoint response";
          }
          break;
        }
        r.status = RegenStatus::failed;
        r.error = response.status == 0 ? "transport error: " + response.error
                                       : "HTTP " + std::to_string(response.status);
        if (!retryable(response) || attempt == config.max_attempts) break;
        std::this_thread::sleep_for(backoff);
        backoff *= 2;
      }
      checkpoint.append(r);
      produced[i] = std::move(r);
    }
  };

  {
    std::vector<std::jthread> pool;
    std::size_t threads = std::min(config.parallelism, std::max<std::size_t>(pending.size(), 1));
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  result.report.requests = requests.load();
  for (auto& p : produced) {
    if (!p) {
      result.report.cancelled = true;
      continue;
    }
    (p->status == RegenStatus::ok ? result.report.generated : result.report.failed) += 1;
    records.push_back(std::move(*p));
  }
  std::sort(records.begin(), records.end(),
            [](const RegenRecord& a, const RegenRecord& b) { return a.article_id < b.article_id; });
  result.records = std::move(records);
  return result;
}

std::vector<Article> regenerated_articles(const std::vector<Article>& sources, const std::vector<RegenRecord>& records,
                                          const RegenConfig& config) {
  std::unordered_map<std::string_view, const Article*> by_id;
  for (const auto& a : sources) by_id.emplace(a.id, &a);
  std::vector<Article> out;
  for (const auto& r : records) {
    if (r.status != RegenStatus::ok) continue;
    auto it = by_id.find(r.article_id);
    if (it == by_id.end()) continue;
    Article a;
    a.id = r.article_id;
    a.domain = config.domain;
    a.source = Source::model;
    a.model_name = config.model_name;
    a.title = it->second->title;
    a.text = r.completion;
    out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end(), [](const Article& a, const Article& b) { return a.id < b.id; });
  return out;
}

}  // namespace synshift
