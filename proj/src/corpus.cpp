#include "synshift/corpus.hpp"

#include <algorithm>
#include <ctime>
#include <unordered_map>

#include <json.hpp>

#include "synshift/error.hpp"

namespace synshift {

using nlohmann::json;

std::string_view to_string(Domain d) {
  switch (d) {
    case Domain::wikipedia: return "wikipedia";
    case Domain::ccnews: return "ccnews";
    case Domain::eli5: return "eli5";
  }
  return "?";
}

std::string_view to_string(Source s) { return s == Source::human ? "human" : "model"; }

Domain parse_domain(std::string_view name) {
  if (name == "wikipedia") return Domain::wikipedia;
  if (name == "ccnews") return Domain::ccnews;
  if (name == "eli5") return Domain::eli5;
  throw ValidationError("unknown domain '" + std::string(name) + "'");
}

Source parse_source(std::string_view name) {
  if (name == "human") return Source::human;
  if (name == "model") return Source::model;
  throw ValidationError("unknown source '" + std::string(name) + "'");
}

namespace {

std::string required_string(const json& j, const char* key, std::size_t line) {
  auto it = j.find(key);
  if (it == j.end()) throw LoadError(line, std::string("missing field \"") + key + "\"");
  if (!it->is_string()) throw LoadError(line, std::string("field \"") + key + "\" must be a string");
  return it->get<std::string>();
}

std::string optional_string(const json& j, const char* key, std::size_t line) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_string()) throw LoadError(line, std::string("field \"") + key + "\" must be a string");
  return it->get<std::string>();
}

json parse_line(const std::string& text, std::size_t line) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw LoadError(line, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw LoadError(line, "record is not a JSON object");
  return j;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write " + path.string());
  return out;
}

}  // namespace

ArticleReader::ArticleReader(const std::filesystem::path& path, Domain expected_domain)
    : in_(open_input(path)), expected_(expected_domain) {}

std::optional<Article> ArticleReader::next() {
  std::string text;
  while (std::getline(in_, text)) {
    ++line_;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (blank(text)) continue;

    json j = parse_line(text, line_);
    Article a;
    a.id = required_string(j, "id", line_);
    if (a.id.empty()) throw LoadError(line_, "empty article id");
    std::string domain = required_string(j, "domain", line_);
    std::string source = required_string(j, "source", line_);
    a.text = required_string(j, "text", line_);
    a.title = optional_string(j, "title", line_);
    a.model_name = optional_string(j, "model_name", line_);
    try {
      a.domain = parse_domain(domain);
      a.source = parse_source(source);
    } catch (const ValidationError& e) {
      throw LoadError(line_, e.what());
    }
    if (a.domain != expected_) {
      throw ValidationError("line " + std::to_string(line_) + ": article '" + a.id + "' has domain " + domain +
                            ", expected " + std::string(to_string(expected_)));
    }
    if (a.source == Source::model && a.model_name.empty()) {
      throw ValidationError("line " + std::to_string(line_) + ": model article '" + a.id + "' lacks model_name");
    }
    if (!seen_ids_.insert(a.id).second) {
      throw ValidationError("line " + std::to_string(line_) + ": duplicate article id '" + a.id + "'");
    }
    return a;
  }
  return std::nullopt;
}

std::vector<Article> read_articles(const std::filesystem::path& path, Domain expected_domain) {
  ArticleReader reader(path, expected_domain);
  std::vector<Article> out;
  while (auto a = reader.next()) out.push_back(std::move(*a));
  return out;
}

void write_articles(const std::filesystem::path& path, const std::vector<Article>& articles) {
  auto out = open_output(path);
  for (const auto& a : articles) {
    json j;
    j["id"] = a.id;
    j["domain"] = to_string(a.domain);
    j["source"] = to_string(a.source);
    if (!a.model_name.empty()) j["model_name"] = a.model_name;
    if (!a.title.empty()) j["title"] = a.title;
    j["text"] = a.text;
    out << j.dump() << '\n';
  }
}

void attach_parses(const std::filesystem::path& sidecar, std::vector<Article>& articles) {
  std::unordered_map<std::string, Article*> by_id;
  for (auto& a : articles) by_id.emplace(a.id, &a);

  auto in = open_input(sidecar);
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (blank(text)) continue;
    json j = parse_line(text, line);

    std::string article_id = required_string(j, "article_id", line);
    auto idx = j.find("sentence_index");
    if (idx == j.end() || !idx->is_number_unsigned()) {
      throw LoadError(line, "field \"sentence_index\" must be a non-negative integer");
    }
    auto failed = j.find("parse_failed");
    if (failed != j.end() && !failed->is_boolean()) throw LoadError(line, "field \"parse_failed\" must be a boolean");

    auto target = by_id.find(article_id);
    if (target == by_id.end()) throw LoadError(line, "parse for unknown article '" + article_id + "'");

    SentenceRecord s;
    s.index = idx->get<std::size_t>();
    s.parse_failed = failed != j.end() && failed->get<bool>();
    if (!s.parse_failed) {
      std::string conllu = required_string(j, "conllu", line);
      std::string tree = optional_string(j, "tree", line);
      try {
        s.tokens = read_dependency_block(conllu);
        if (!blank(tree)) s.tree = read_bracketed_tree(tree);
      } catch (const ParseError& e) {
        throw LoadError(line, e.what());
      }
      if (s.tree && s.tree->leaf_count() != s.tokens.size()) {
        throw LoadError(line, "tree has " + std::to_string(s.tree->leaf_count()) + " leaves but the dependency block has " +
                                  std::to_string(s.tokens.size()) + " tokens");
      }
    }
    target->second->sentences.push_back(std::move(s));
  }

  for (auto& a : articles) {
    auto& ss = a.sentences;
    std::stable_sort(ss.begin(), ss.end(), [](const auto& x, const auto& y) { return x.index < y.index; });
    auto dup = std::adjacent_find(ss.begin(), ss.end(), [](const auto& x, const auto& y) { return x.index == y.index; });
    if (dup != ss.end()) {
      throw ValidationError("article '" + a.id + "' has two parses for sentence " + std::to_string(dup->index));
    }
  }
}

void write_parses(const std::filesystem::path& sidecar, const std::vector<Article>& articles) {
  auto out = open_output(sidecar);
  for (const auto& a : articles) {
    for (const auto& s : a.sentences) {
      json j;
      j["article_id"] = a.id;
      j["sentence_index"] = s.index;
      j["conllu"] = s.parse_failed ? std::string() : write_dependency_block(s.tokens);
      j["tree"] = s.tree ? to_bracketed(*s.tree) : std::string();
      j["parse_failed"] = s.parse_failed;
      out << j.dump() << '\n';
    }
  }
}

CorpusManifest read_manifest(const std::filesystem::path& path) {
  auto in = open_input(path);
  json j;
  try {
    j = json::parse(in);
    CorpusManifest m;
    m.corpus_id = j.at("corpus_id").get<std::string>();
    m.domain = parse_domain(j.at("domain").get<std::string>());
    m.source = parse_source(j.at("source").get<std::string>());
    m.model_name = j.value("model_name", std::string());
    m.article_count = j.at("article_count").get<std::size_t>();
    m.created_at = j.at("created_at").get<std::string>();
    m.cleaning_applied = j.at("cleaning_applied").get<bool>();
    return m;
  } catch (const json::exception& e) {
    throw ValidationError("manifest " + path.string() + ": " + e.what());
  }
}

void write_manifest(const std::filesystem::path& path, const CorpusManifest& m) {
  json j;
  j["corpus_id"] = m.corpus_id;
  j["domain"] = to_string(m.domain);
  j["source"] = to_string(m.source);
  if (!m.model_name.empty()) j["model_name"] = m.model_name;
  j["article_count"] = m.article_count;
  j["created_at"] = m.created_at;
  j["cleaning_applied"] = m.cleaning_applied;
  auto out = open_output(path);
  out << j.dump(2) << '\n';
}

void validate_manifest(const CorpusManifest& manifest, const std::filesystem::path& articles_path) {
  ArticleReader reader(articles_path, manifest.domain);
  std::size_t n = 0;
  while (reader.next()) ++n;
  if (n != manifest.article_count) {
    throw ValidationError("manifest for " + manifest.corpus_id + " declares " + std::to_string(manifest.article_count) +
                          " articles but " + articles_path.string() + " holds " + std::to_string(n));
  }
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace synshift
