#include "synshift/pipeline.hpp"

#include <fmt/format.h>
#include <sys/stat.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <thread>

#include "synshift/cleaning.hpp"
#include "synshift/error.hpp"
#include "synshift/readability.hpp"

namespace synshift {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// ---- CSV -------------------------------------------------------------------

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool row_open = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    row_open = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      row_open = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw ParseError(text.size(), "unterminated quoted CSV field");
  if (row_open) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(0, "cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  return out;
}

void write_file(const fs::path& path, std::string_view content) {
  auto out = open_out(path);
  out << content;
  if (!out) throw ConfigError("failed writing " + path.string());
}

std::string real(double x) { return fmt::format("{}", x); }

std::string optional_real(const std::optional<double>& x) { return x ? real(*x) : std::string(); }

/// Modification time of `path` as ISO-8601 UTC; stable across reruns.
std::string file_timestamp(const fs::path& path) {
  struct stat st {};
  if (::stat(path.c_str(), &st) != 0) return utc_timestamp();
  std::tm tm{};
  gmtime_r(&st.st_mtime, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void prepare_output(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + config.output_dir.string() + ": " + ec.message());
}

std::string cell_name(Metric m, Domain d, Source s) {
  return fmt::format("{}_{}_{}", to_string(m), to_string(d), to_string(s));
}

}  // namespace

// ---- concurrency ---------------------------------------------------------

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr first;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        while (!stop.load()) {
          std::size_t i = next.fetch_add(1);
          if (i >= n) return;
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!first) first = std::current_exception();
            stop = true;
          }
        }
      });
    }
  }
  if (first) std::rethrow_exception(first);
}

// ---- sample cells ------------------------------------------------------

std::string_view to_string(SampleScope s) { return s == SampleScope::sentence ? "sentence" : "article"; }

SampleScope comparison_scope(Metric metric) {
  switch (metric) {
    case Metric::dep_tags:
    case Metric::const_labels:
    case Metric::sent_length: return SampleScope::sentence;
    default: return SampleScope::article;
  }
}

namespace {

struct CellKey {
  Metric metric;
  Domain domain;
  Source source;
  auto operator<=>(const CellKey&) const = default;
};

class CellCollector {
 public:
  void add(const CellKey& key, double value, const std::string& article_id, const fs::path& origin) {
    auto [it, inserted] = cells_.try_emplace(key);
    SampleCell& cell = it->second;
    if (inserted) {
      cell.metric = key.metric;
      cell.domain = key.domain;
      cell.source = key.source;
      cell.origin = origin;
    } else if (cell.origin != origin) {
      throw ValidationError("duplicate cell " + cell_name(key.metric, key.domain, key.source) + " in " +
                            cell.origin.string() + " and " + origin.string());
    }
    cell.values.push_back(value);
    cell.article_ids.push_back(article_id);
  }

  std::vector<SampleCell> take() {
    std::vector<SampleCell> out;
    for (auto& [key, cell] : cells_) out.push_back(std::move(cell));
    return out;
  }

 private:
  std::map<CellKey, SampleCell> cells_;
};

double parse_real(const std::string& s, const fs::path& file, std::size_t line) {
  double v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(v)) {
    throw LoadError(line, file.string() + ": '" + s + "' is not a finite number");
  }
  return v;
}

std::map<std::string, std::size_t> header_index(const std::vector<std::string>& header,
                                                std::initializer_list<const char*> required, const fs::path& file) {
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < header.size(); ++i) idx[header[i]] = i;
  for (const char* name : required) {
    if (!idx.contains(name)) throw LoadError(1, file.string() + ": missing column '" + name + "'");
  }
  return idx;
}

void read_samples_file(const fs::path& file, CellCollector& cells) {
  auto rows = parse_csv(read_file(file));
  if (rows.empty()) return;
  auto col = header_index(rows[0], {"metric", "scope", "article_id", "value", "domain", "source"}, file);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != rows[0].size()) throw LoadError(r + 1, file.string() + ": wrong number of fields");
    CellKey key{};
    try {
      key = {parse_metric(row[col["metric"]]), parse_domain(row[col["domain"]]), parse_source(row[col["source"]])};
    } catch (const ValidationError& e) {
      throw LoadError(r + 1, file.string() + ": " + e.what());
    }
    if (row[col["scope"]] != to_string(comparison_scope(key.metric))) continue;
    cells.add(key, parse_real(row[col["value"]], file, r + 1), row[col["article_id"]], file);
  }
}

void read_readability_file(const fs::path& file, CellCollector& cells) {
  auto rows = parse_csv(read_file(file));
  if (rows.empty()) return;
  auto col = header_index(rows[0], {"article_id", "domain", "source"}, file);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != rows[0].size()) throw LoadError(r + 1, file.string() + ": wrong number of fields");
    Domain domain;
    Source source;
    try {
      domain = parse_domain(row[col["domain"]]);
      source = parse_source(row[col["source"]]);
    } catch (const ValidationError& e) {
      throw LoadError(r + 1, file.string() + ": " + e.what());
    }
    for (Metric m : kReadabilityMetrics) {
      auto it = col.find(std::string(to_string(m)));
      if (it == col.end() || row[it->second].empty()) continue;
      cells.add({m, domain, source}, parse_real(row[it->second], file, r + 1), row[col["article_id"]], file);
    }
  }
}

bool is_sample_file(const fs::path& p) {
  auto name = p.filename().string();
  return p.extension() == ".csv" && (name.starts_with("samples_") || name.starts_with("readability_"));
}

}  // namespace

std::vector<SampleCell> read_sample_cells(const std::vector<fs::path>& inputs) {
  std::vector<fs::path> files;
  for (const auto& input : inputs) {
    if (fs::is_directory(input)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(input)) {
        if (entry.is_regular_file() && is_sample_file(entry.path())) found.push_back(entry.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(input)) {
      files.push_back(input);
    } else {
      throw ConfigError("sample input not found: " + input.string());
    }
  }
  CellCollector cells;
  for (const auto& f : files) {
    if (f.filename().string().starts_with("readability_")) read_readability_file(f, cells);
    else read_samples_file(f, cells);
  }
  return cells.take();
}

// ---- regenerate -------------------------------------------------------------

RegenRunReport cmd_regenerate(const RunConfig& config, std::ostream& log, Transport* transport,
                              const std::atomic<bool>* cancel) {
  if (!config.regen) throw ConfigError("regenerate needs a [regen] section");
  RegenJob job = *config.regen;
  job.config.validate();
  if (job.input.empty()) throw ConfigError("[regen] input is not set");
  if (!job.token_env.empty()) {
    if (const char* token = std::getenv(job.token_env.c_str())) job.config.auth_token = token;
  }

  if (!fs::exists(job.input)) throw ConfigError("regeneration input not found: " + job.input.string());
  fs::path checkpoint_dir = job.checkpoint_dir.empty() ? config.output_dir / "checkpoint" : job.checkpoint_dir;
  fs::path output = job.output.value_or(config.output_dir /
                                        fmt::format("regenerated_{}.jsonl", to_string(job.config.domain)));
  Checkpoint checkpoint(checkpoint_dir);
  if (checkpoint.exists_nonempty() && !config.resume) {
    throw ConfigError("checkpoint " + checkpoint.file().string() + " exists; pass --resume to continue it");
  }

  prepare_output(config);
  std::error_code ec;
  fs::create_directories(checkpoint_dir, ec);
  if (ec) throw ConfigError("cannot create checkpoint directory " + checkpoint_dir.string());
  if (output.has_parent_path()) fs::create_directories(output.parent_path(), ec);

  auto sources = read_articles(job.input, job.config.domain);
  std::unique_ptr<Transport> http;
  if (!transport) {
    http = make_http_transport(job.config);
    transport = http.get();
  }
  log << fmt::format("regenerating {} {} articles with {}\n", sources.size(), to_string(job.config.domain),
                     job.config.model_name);

  auto result = regenerate_corpus(sources, job.config, checkpoint, *transport, cancel);
  const auto& rep = result.report;
  log << fmt::format("input {} resumed {} generated {} skipped {} failed {} requests {}{}\n", rep.input, rep.resumed,
                     rep.generated, rep.skipped, rep.failed, rep.requests, rep.cancelled ? " (interrupted)" : "");
  if (rep.cancelled) return rep;

  auto articles = regenerated_articles(sources, result.records, job.config);
  write_articles(output, articles);
  CorpusManifest manifest;
  manifest.corpus_id = fmt::format("{}_model_{}", to_string(job.config.domain), job.config.model_name);
  manifest.domain = job.config.domain;
  manifest.source = Source::model;
  manifest.model_name = job.config.model_name;
  manifest.article_count = articles.size();
  manifest.created_at = utc_timestamp();
  fs::path manifest_path = output;
  manifest_path.replace_extension(".manifest.json");
  write_manifest(manifest_path, manifest);

  std::string table = "article_id,status,attempts,error\n";
  for (const auto& r : result.records) {
    table += fmt::format("{},{},{},{}\n", csv_field(r.article_id), to_string(r.status), r.attempts, csv_field(r.error));
  }
  write_file(config.output_dir / "regen_log.csv", table);
  json report{{"input", rep.input},         {"resumed", rep.resumed}, {"generated", rep.generated},
              {"skipped", rep.skipped},     {"failed", rep.failed},   {"requests", rep.requests},
              {"articles_written", articles.size()}};
  write_file(config.output_dir / "regen_report.json", report.dump(2) + "\n");

  if (rep.failed > 0 && rep.generated == 0 && rep.resumed == 0) {
    throw EndpointError(fmt::format("no article regenerated; {} requests failed, see regen_log.csv", rep.failed));
  }
  return rep;
}

// ---- analyze ----------------------------------------------------------------

namespace {

struct ArticleOutcome {
  ReadabilityOutcome readability;
  std::size_t sentences_in = 0;
  CleaningReport cleaning;
  ArticleMetrics metrics;
};

std::vector<Article> load_parsed_corpus(const CorpusSpec& spec) {
  if (!spec.parses) throw ConfigError("corpus " + spec.key() + " has no parse sidecar configured");
  if (!fs::exists(*spec.parses)) throw ConfigError("parse sidecar for corpus " + spec.key() + " not found: " + spec.parses->string());
  auto articles = read_articles(spec.articles, spec.domain);
  for (const auto& a : articles) {
    if (a.source != spec.source) {
      throw ValidationError(fmt::format("article {} in corpus {} has source {}", a.id, spec.key(), to_string(a.source)));
    }
  }
  attach_parses(*spec.parses, articles);
  return articles;
}

std::string status_of(Metric metric, const ArticleMetrics& m) {
  for (const auto& [em, reason] : m.exclusions) {
    if (em == metric) return "excluded:" + std::string(to_string(reason));
  }
  return "scored";
}

void analyze_corpus(const CorpusSpec& spec, const RunConfig& config, const FamiliarWordList* words, std::ostream& log,
                    json& report) {
  auto articles = load_parsed_corpus(spec);
  const auto& policy = config.cleaning;
  const bool drop_zero = policy.enabled && policy.drop_zero_scores;

  std::vector<ArticleOutcome> outcomes(articles.size());
  parallel_for(articles.size(), config.threads, [&](std::size_t i) {
    auto& o = outcomes[i];
    o.readability = score_article(articles[i], words);
    o.sentences_in = articles[i].sentences.size();
    o.cleaning = clean_article(articles[i], policy);
    o.metrics = compute_article_metrics(articles[i], config.yngve_variant, drop_zero);
  });

  const std::string key = spec.key();
  const std::string domain(to_string(spec.domain));
  const std::string source(to_string(spec.source));

  std::string readability = "article_id,domain,source,fk_grade,fk_ease,gunning_fog,linsear_write,spache,words,sentences,syllables\n";
  std::map<std::string, std::size_t> skips;
  std::size_t scored = 0;
  for (std::size_t i = 0; i < articles.size(); ++i) {
    const auto& r = outcomes[i].readability;
    if (!r.scores) {
      ++skips[r.skip_reason];
      continue;
    }
    ++scored;
    const auto& s = *r.scores;
    readability += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", csv_field(articles[i].id), domain, source,
                               real(s.fk_grade), real(s.fk_ease), real(s.gunning_fog), real(s.linsear_write),
                               optional_real(s.spache), s.words, s.sentences, s.syllables);
  }
  write_file(config.output_dir / fmt::format("readability_{}.csv", key), readability);

  json metric_counts = json::object();
  std::string jsonl;
  for (Metric metric : kSyntaxMetrics) {
    std::string csv = "metric,scope,article_id,sentence_index,value,domain,source\n";
    std::size_t sentence_rows = 0;
    std::size_t article_rows = 0;
    std::map<std::string, std::size_t> excluded;
    for (std::size_t i = 0; i < articles.size(); ++i) {
      const auto& m = outcomes[i].metrics;
      for (const auto& s : m.sentence_samples) {
        if (s.metric != metric) continue;
        ++sentence_rows;
        csv += fmt::format("{},sentence,{},{},{},{},{}\n", to_string(metric), csv_field(s.article_id),
                           *s.sentence_index, real(s.value), domain, source);
        jsonl += json{{"metric", to_string(metric)}, {"scope", "sentence"}, {"article_id", s.article_id},
                      {"sentence_index", *s.sentence_index}, {"value", s.value}, {"domain", domain}, {"source", source}}
                     .dump() + "\n";
      }
      bool found = false;
      for (const auto& s : m.article_samples) {
        if (s.metric != metric) continue;
        found = true;
        ++article_rows;
        csv += fmt::format("{},article,{},,{},{},{}\n", to_string(metric), csv_field(s.article_id), real(s.value),
                           domain, source);
        jsonl += json{{"metric", to_string(metric)}, {"scope", "article"}, {"article_id", s.article_id},
                      {"sentence_index", nullptr}, {"value", s.value}, {"domain", domain}, {"source", source}}
                     .dump() + "\n";
      }
      if (!found) ++excluded[status_of(metric, m).substr(std::string_view("excluded:").size())];
    }
    write_file(config.output_dir / fmt::format("samples_{}_{}.csv", to_string(metric), key), csv);
    metric_counts[std::string(to_string(metric))] = {
        {"sentence_rows", sentence_rows}, {"article_rows", article_rows}, {"articles_excluded", excluded}};
  }
  write_file(config.output_dir / fmt::format("samples_{}.jsonl", key), jsonl);

  std::string run_log = "article_id,readability,sentences_in,sentences_kept,emptied";
  for (Metric metric : kSyntaxMetrics) run_log += fmt::format(",{}", to_string(metric));
  run_log += "\n";
  CleaningReport cleaning;
  for (std::size_t i = 0; i < articles.size(); ++i) {
    const auto& o = outcomes[i];
    cleaning += o.cleaning;
    std::string read_status = o.readability.scores ? "scored" : "skipped:" + o.readability.skip_reason;
    run_log += fmt::format("{},{},{},{},{}", csv_field(articles[i].id), read_status, o.sentences_in,
                           articles[i].sentences.size(), articles[i].emptied ? "true" : "false");
    for (Metric metric : kSyntaxMetrics) run_log += "," + status_of(metric, o.metrics);
    run_log += "\n";
  }
  write_file(config.output_dir / fmt::format("analyze_log_{}.csv", key), run_log);

  write_articles(config.output_dir / fmt::format("cleaned_{}.jsonl", key), articles);
  write_parses(config.output_dir / fmt::format("cleaned_{}.parses.jsonl", key), articles);
  CorpusManifest manifest;
  manifest.corpus_id = spec.model_name.empty() ? key : key + "_" + spec.model_name;
  manifest.domain = spec.domain;
  manifest.source = spec.source;
  manifest.model_name = spec.model_name;
  manifest.article_count = articles.size();
  manifest.created_at = file_timestamp(spec.articles);
  manifest.cleaning_applied = policy.enabled;
  write_manifest(config.output_dir / fmt::format("cleaned_{}.manifest.json", key), manifest);

  report[key] = {{"articles", articles.size()},
                 {"readability_scored", scored},
                 {"readability_skipped", skips},
                 {"cleaning",
                  {{"enabled", policy.enabled},
                   {"sentences_in", cleaning.sentences_in},
                   {"removed_length", cleaning.sentences_removed_length},
                   {"removed_pos", cleaning.sentences_removed_pos},
                   {"articles_emptied", cleaning.articles_emptied}}},
                 {"metrics", metric_counts}};
  log << fmt::format("{}: {} articles, readability {} scored / {} skipped, {} of {} sentences kept\n", key,
                     articles.size(), scored, articles.size() - scored,
                     cleaning.sentences_in - cleaning.sentences_removed_length - cleaning.sentences_removed_pos,
                     cleaning.sentences_in);
}

}  // namespace

void cmd_analyze(const RunConfig& config, std::ostream& log) {
  if (config.corpora.empty()) throw ConfigError("no [corpus.<domain>.<source>] sections configured");
  check_inputs_exist(config);
  for (const auto& spec : config.corpora) {
    if (!spec.parses) throw ConfigError("corpus " + spec.key() + " has no parse sidecar configured");
  }
  std::optional<FamiliarWordList> words;
  if (config.familiar_words) words = FamiliarWordList::load(*config.familiar_words);
  prepare_output(config);

  json report = json::object();
  for (const auto& spec : config.corpora) analyze_corpus(spec, config, words ? &*words : nullptr, log, report);
  write_file(config.output_dir / "analyze_report.json", report.dump(2) + "\n");
}

// ---- compare / stats ---------------------------------------------------------

namespace {

std::string stats_header() {
  return "domain,source,articles,sentences,words,sentences_per_article,words_per_sentence,words_per_article\n";
}

std::string stats_row(Domain d, Source s, const DescriptiveStats& st) {
  return fmt::format("{},{},{},{},{},{},{},{}\n", to_string(d), to_string(s), st.articles, st.sentences, st.words,
                     format_one_decimal(st.sentences_per_article), format_one_decimal(st.words_per_sentence),
                     format_one_decimal(st.words_per_article));
}

std::string model_name_for(const RunConfig& config, Domain domain) {
  for (const auto& spec : config.corpora) {
    if (spec.domain == domain && spec.source == Source::model) return spec.model_name;
  }
  return {};
}

double normal_density(double x, double mean, double sd) {
  constexpr double kInvSqrt2Pi = 0.3989422804014327;
  double z = (x - mean) / sd;
  return kInvSqrt2Pi / sd * std::exp(-0.5 * z * z);
}

}  // namespace

void cmd_compare(const RunConfig& config, std::ostream& log) {
  auto inputs = config.compare_inputs.empty() ? std::vector<fs::path>{config.output_dir} : config.compare_inputs;
  auto cells = read_sample_cells(inputs);
  if (cells.empty()) throw InsufficientDataError("no sample files found");
  prepare_output(config);

  std::map<CellKey, DistributionCell> summaries;
  json summary_json = json::array();
  for (const auto& cell : cells) {
    CellKey key{cell.metric, cell.domain, cell.source};
    std::string name = cell_name(cell.metric, cell.domain, cell.source);
    DistributionCell dc;
    try {
      dc = summarize_cell(cell.values, cell.metric, cell.domain, cell.source, config.thresholds, config.bin_width);
    } catch (const InsufficientDataError& e) {
      log << "warning: " << name << ": " << e.what() << "; cell skipped\n";
      continue;
    }
    if (cell.source == Source::model) dc.summary.model_name = model_name_for(config, cell.domain);
    const auto& s = dc.summary;
    json bins = json::array();
    std::string hist = "bin_left,count,normal_density\n";
    for (const auto& b : s.histogram) {
      bins.push_back({{"left", b.left}, {"count", b.count}});
      double center = b.left + s.bin_width / 2;
      hist += fmt::format("{},{},{}\n", real(b.left), b.count,
                          s.stddev > 0 ? real(normal_density(center, s.mean, s.stddev)) : std::string());
    }
    write_file(config.output_dir / fmt::format("histogram_{}.csv", name), hist);
    summary_json.push_back({{"metric", to_string(s.metric)},
                            {"scope", to_string(comparison_scope(s.metric))},
                            {"domain", to_string(s.domain)},
                            {"source", to_string(s.source)},
                            {"model_name", s.model_name},
                            {"n", s.n},
                            {"mean", s.mean},
                            {"std", s.stddev},
                            {"min", s.min},
                            {"max", s.max},
                            {"bin_width", s.bin_width},
                            {"tail_mass", dc.tail.tail_mass},
                            {"tail_index", dc.tail.tail_index},
                            {"long_tail_present", dc.tail.long_tail_present},
                            {"histogram", bins}});
    summaries.emplace(key, std::move(dc));
  }
  write_file(config.output_dir / "summaries.json", summary_json.dump(2) + "\n");

  std::vector<SignatureReport> signatures;
  for (const auto& [key, model] : summaries) {
    if (key.source != Source::model) continue;
    auto human = summaries.find({key.metric, key.domain, Source::human});
    if (human == summaries.end()) {
      log << "warning: no human cell for " << cell_name(key.metric, key.domain, key.source) << "; cell skipped\n";
      continue;
    }
    signatures.push_back(classify_signatures(human->second, model, config.thresholds));
  }
  auto doc = emit_schematic(signatures);
  write_file(config.output_dir / "signatures.csv", doc.csv);
  write_file(config.output_dir / "schematic.txt", doc.text);

  std::string stats = stats_header();
  for (const auto& cell : cells) {
    if (cell.metric != Metric::sent_length) continue;
    DescriptiveStatsAccumulator acc;
    std::vector<std::size_t> lengths;
    for (std::size_t i = 0; i < cell.values.size(); ++i) {
      if (i > 0 && cell.article_ids[i] != cell.article_ids[i - 1]) {
        acc.add_article(lengths);
        lengths.clear();
      }
      lengths.push_back(static_cast<std::size_t>(cell.values[i]));
    }
    acc.add_article(lengths);
    stats += stats_row(cell.domain, cell.source, acc.result());
  }
  write_file(config.output_dir / "descriptive_stats.csv", stats);
  log << fmt::format("{} cells summarized, {} signatures\n", summaries.size(), signatures.size());
}

void cmd_stats(const RunConfig& config, std::ostream& log) {
  if (config.corpora.empty()) throw ConfigError("no [corpus.<domain>.<source>] sections configured");
  check_inputs_exist(config);
  prepare_output(config);
  std::string stats = stats_header();
  for (const auto& spec : config.corpora) {
    auto articles = load_parsed_corpus(spec);
    auto cleaned = clean_corpus(std::move(articles), config.cleaning);
    auto st = descriptive_stats(cleaned.articles);
    stats += stats_row(spec.domain, spec.source, st);
    log << fmt::format("{}: A={} S={} W={}\n", spec.key(), st.articles, st.sentences, st.words);
  }
  write_file(config.output_dir / "descriptive_stats.csv", stats);
}

}  // namespace synshift
