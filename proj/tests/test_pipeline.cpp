#include <doctest.h>

#include <json.hpp>

#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "synshift/error.hpp"
#include "synshift/pipeline.hpp"

using namespace synshift;
namespace fs = std::filesystem;

namespace {

// Writes `articles` and their parses under `dir` and returns the matching
// corpus section.
std::string corpus_section(const fixture::TempDir& dir, const std::vector<Article>& articles, const std::string& key,
                           Domain d, Source s) {
  write_articles(dir / (key + ".jsonl"), articles);
  write_parses(dir / (key + ".parses.jsonl"), articles);
  std::string section = "[corpus." + std::string(to_string(d)) + "." + std::string(to_string(s)) + "]\n";
  section += "articles = " + key + ".jsonl\nparses = " + key + ".parses.jsonl\n";
  if (s == Source::model) section += "model_name = test-model\n";
  return section;
}

Article parsed_article(const std::string& id, std::vector<std::size_t> lengths, const std::string& verb = "VERB",
                       Source source = Source::human) {
  auto a = fixture::article(id, Domain::wikipedia, source);
  a.title = "Title " + id;
  a.text = fixture::words(120);
  for (std::size_t i = 0; i < lengths.size(); ++i) a.sentences.push_back(fixture::sentence(i, lengths[i], verb));
  return a;
}

RunConfig config_in(const fixture::TempDir& dir, const std::string& ini) {
  fixture::write(dir / "run.ini", ini);
  return load_run_config(dir / "run.ini");
}

std::vector<std::vector<std::string>> csv_rows(const fs::path& p) { return parse_csv(fixture::read(p)); }

std::string samples_csv(Metric m, const std::string& scope, Domain d, Source s, const std::vector<double>& values) {
  std::string csv = "metric,scope,article_id,sentence_index,value,domain,source\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    csv += std::string(to_string(m)) + "," + scope + ",a" + std::to_string(i) + "," +
           (scope == "sentence" ? "0" : "") + "," + std::to_string(values[i]) + "," + std::string(to_string(d)) +
           "," + std::string(to_string(s)) + "\n";
  }
  return csv;
}

}  // namespace

TEST_CASE("CSV quoting round trip") {
  std::vector<std::string> fields{"plain", "with,comma", "with \"quote\"", "two\nlines", ""};
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) line += (i ? "," : "") + csv_field(fields[i]);
  auto rows = parse_csv(line + "\nx,y\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == fields);
  CHECK(rows[1] == std::vector<std::string>{"x", "y"});
  CHECK(csv_field("plain") == "plain");
  CHECK_THROWS_AS(parse_csv("\"open"), ParseError);
}

TEST_CASE("run config: every section") {
  fixture::TempDir dir;
  fixture::write(dir / "words.txt", "the\n");
  auto c = config_in(dir,
                     "[output]\ndir = results\nthreads = 4\n"
                     "[cleaning]\nenabled = no\nmin_words = 5\nmax_words = 50\ndrop_zero_scores = false\n"
                     "[metrics]\nyngve_variant = left_branch_edges\nbin_width = 0.5\n"
                     "[signatures]\nflat_effect = 0.2\ntail_reduced = 0.5\n"
                     "[readability]\nfamiliar_words = words.txt\n"
                     "[compare]\ninputs = a, b\n"
                     "[regen]\nendpoint_url = http://x/v1/chat/completions\nmodel_name = m\ndomain = ccnews\n"
                     "input = in.jsonl\napi_style = completion\nparallelism = 8\n"
                     "[corpus.ccnews.model]\narticles = m.jsonl\nmodel_name = m\n");
  CHECK(c.output_dir == dir.path() / "results");
  CHECK(c.threads == 4);
  CHECK_FALSE(c.cleaning.enabled);
  CHECK(c.cleaning.min_words == 5);
  CHECK(c.cleaning.max_words == 50);
  CHECK_FALSE(c.cleaning.drop_zero_scores);
  CHECK(c.yngve_variant == YngveVariant::left_branch_edges);
  CHECK(c.bin_width == 0.5);
  CHECK(c.thresholds.flat_effect == 0.2);
  CHECK(c.thresholds.tail_reduced == 0.5);
  CHECK(c.familiar_words == dir.path() / "words.txt");
  REQUIRE(c.compare_inputs.size() == 2);
  CHECK(c.compare_inputs[1] == dir.path() / "b");
  REQUIRE(c.regen.has_value());
  CHECK(c.regen->config.domain == Domain::ccnews);
  CHECK(c.regen->config.api_style == ApiStyle::completion);
  CHECK(c.regen->config.parallelism == 8);
  CHECK(c.regen->input == dir.path() / "in.jsonl");
  REQUIRE(c.corpora.size() == 1);
  CHECK(c.corpora[0].key() == "ccnews_model");
  CHECK(c.corpora[0].model_name == "m");
  CHECK_FALSE(c.corpora[0].parses.has_value());
}

TEST_CASE("run config: errors") {
  auto bad = [](const std::string& ini) { CHECK_THROWS_AS(parse_run_config(ini, "."), ConfigError); };
  bad("[nope]\nx = 1\n");
  bad("[cleaning]\ncolour = red\n");
  bad("[cleaning]\nenabled = maybe\n");
  bad("[cleaning]\nmin_words = -3\n");
  bad("[metrics]\nyngve_variant = sideways\n");
  bad("[output]\nthreads = 0\n");
  bad("[corpus.wikipedia]\narticles = a.jsonl\n");
  bad("[corpus.mars.human]\narticles = a.jsonl\n");
  bad("[corpus.wikipedia.model]\narticles = a.jsonl\n");
  bad("[corpus.wikipedia.human]\nparses = p.jsonl\n");
  CHECK_NOTHROW(parse_run_config("[cleaning]\nenabled = 1\n", "."));
  CHECK_THROWS_AS(load_run_config("/nonexistent/run.ini"), ConfigError);
}

TEST_CASE("comparison scopes") {
  CHECK(comparison_scope(Metric::depth) == SampleScope::article);
  CHECK(comparison_scope(Metric::yngve) == SampleScope::article);
  CHECK(comparison_scope(Metric::fk_grade) == SampleScope::article);
  CHECK(comparison_scope(Metric::dep_tags) == SampleScope::sentence);
  CHECK(comparison_scope(Metric::const_labels) == SampleScope::sentence);
  CHECK(comparison_scope(Metric::sent_length) == SampleScope::sentence);
}

TEST_CASE("parallel_for covers every index and rethrows") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 8, [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(parallel_for(100, 4,
                               [](std::size_t i) {
                                 if (i == 37) throw ValidationError("boom");
                               }),
                  ValidationError);
}

TEST_CASE("analyze: five articles give reconciled sample files") {
  fixture::TempDir dir;
  std::vector<Article> arts;
  for (int i = 0; i < 5; ++i) arts.push_back(parsed_article("a" + std::to_string(i), {4, 6, 2, 8}));
  arts[4].sentences.push_back(fixture::sentence(4, 5, ""));
  auto c = config_in(dir, "[output]\ndir = out\n" + corpus_section(dir, arts, "wiki", Domain::wikipedia, Source::human));
  std::ostringstream log;
  cmd_analyze(c, log);
  auto out = dir / "out";

  for (Metric m : kSyntaxMetrics) {
    CAPTURE(to_string(m));
    auto rows = csv_rows(out / ("samples_" + std::string(to_string(m)) + "_wikipedia_human.csv"));
    REQUIRE(rows.size() == 1 + 15 + 5);  // header, 3 kept sentences per article, 5 article means
    std::size_t sentence_rows = 0;
    for (std::size_t r = 1; r < rows.size(); ++r) sentence_rows += rows[r][1] == "sentence";
    CHECK(sentence_rows == 15);
  }
  auto length = csv_rows(out / "samples_sent_length_wikipedia_human.csv");
  CHECK(length[1] == std::vector<std::string>{"sent_length", "sentence", "a0", "0", "4", "wikipedia", "human"});

  auto readability = csv_rows(out / "readability_wikipedia_human.csv");
  CHECK(readability.size() == 6);
  auto log_rows = csv_rows(out / "analyze_log_wikipedia_human.csv");
  REQUIRE(log_rows.size() == 6);
  CHECK(log_rows[5][2] == "5");
  CHECK(log_rows[5][3] == "3");

  auto report = nlohmann::json::parse(fixture::read(out / "analyze_report.json"));
  CHECK(report["wikipedia_human"]["cleaning"]["removed_length"] == 5);
  CHECK(report["wikipedia_human"]["cleaning"]["removed_pos"] == 1);
  CHECK(report["wikipedia_human"]["readability_scored"] == 5);

  auto cleaned = read_articles(out / "cleaned_wikipedia_human.jsonl", Domain::wikipedia);
  attach_parses(out / "cleaned_wikipedia_human.parses.jsonl", cleaned);
  CHECK(cleaned.size() == 5);
  CHECK(cleaned[0].sentences.size() == 3);
  auto manifest = read_manifest(out / "cleaned_wikipedia_human.manifest.json");
  CHECK(manifest.cleaning_applied);
  CHECK(manifest.article_count == 5);
}

TEST_CASE("analyze: a verbless corpus yields empty syntax samples but keeps readability") {
  fixture::TempDir dir;
  std::vector<Article> arts{parsed_article("a", {5, 6}, ""), parsed_article("b", {7}, "")};
  auto c = config_in(dir, "[output]\ndir = out\n" + corpus_section(dir, arts, "wiki", Domain::wikipedia, Source::human));
  std::ostringstream log;
  cmd_analyze(c, log);
  for (Metric m : kSyntaxMetrics) {
    CHECK(csv_rows(dir / "out" / ("samples_" + std::string(to_string(m)) + "_wikipedia_human.csv")).size() == 1);
  }
  CHECK(csv_rows(dir / "out" / "readability_wikipedia_human.csv").size() == 3);
  auto log_rows = csv_rows(dir / "out" / "analyze_log_wikipedia_human.csv");
  CHECK(log_rows[1][4] == "true");
  CHECK(log_rows[1][5] == "excluded:no_sentences");
}

TEST_CASE("analyze: --no-clean keeps every sentence") {
  fixture::TempDir dir;
  std::vector<Article> arts{parsed_article("a", {1, 2, 600}, ""), parsed_article("b", {4})};
  auto c = config_in(dir, "[output]\ndir = out\n" + corpus_section(dir, arts, "wiki", Domain::wikipedia, Source::human));
  c.cleaning.enabled = false;
  std::ostringstream log;
  cmd_analyze(c, log);
  auto rows = csv_rows(dir / "out" / "samples_sent_length_wikipedia_human.csv");
  CHECK(rows.size() == 1 + 4 + 2);
  CHECK_FALSE(read_manifest(dir / "out" / "cleaned_wikipedia_human.manifest.json").cleaning_applied);
}

TEST_CASE("analyze: missing sidecar is a configuration error") {
  fixture::TempDir dir;
  std::vector<Article> arts{parsed_article("a", {4})};
  write_articles(dir / "a.jsonl", arts);
  auto c = config_in(dir, "[corpus.wikipedia.human]\narticles = a.jsonl\n");
  std::ostringstream log;
  CHECK_THROWS_AS(cmd_analyze(c, log), ConfigError);
  c = config_in(dir, "[corpus.wikipedia.human]\narticles = a.jsonl\nparses = gone.jsonl\n");
  CHECK_THROWS_AS(cmd_analyze(c, log), ConfigError);
}

TEST_CASE("analyze then compare reruns are byte-identical") {
  fixture::TempDir dir;
  std::vector<Article> human, model;
  std::mt19937 rng(4);
  for (int i = 0; i < 40; ++i) {
    std::vector<std::size_t> h, m;
    for (int k = 0; k < 6; ++k) {
      h.push_back(std::uniform_int_distribution<std::size_t>(3, 40)(rng));
      m.push_back(std::uniform_int_distribution<std::size_t>(15, 25)(rng));
    }
    human.push_back(parsed_article("h" + std::to_string(i), h));
    model.push_back(parsed_article("m" + std::to_string(i), m, "VERB", Source::model));
  }
  std::string corpora = corpus_section(dir, human, "wh", Domain::wikipedia, Source::human) +
                        corpus_section(dir, model, "wm", Domain::wikipedia, Source::model);
  auto first = config_in(dir, "[output]\ndir = one\nthreads = 3\n" + corpora);
  auto second = config_in(dir, "[output]\ndir = two\n" + corpora);
  std::ostringstream log;
  for (const auto* c : {&first, &second}) {
    cmd_analyze(*c, log);
    cmd_compare(*c, log);
  }
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(dir / "one")) {
    CAPTURE(entry.path().filename());
    CHECK(fixture::read(entry.path()) == fixture::read(dir / "two" / entry.path().filename()));
    ++compared;
  }
  CHECK(compared > 20);
  auto schematic = fixture::read(dir / "one" / "schematic.txt");
  CHECK(schematic.find("Length") != std::string::npos);
  auto stats = csv_rows(dir / "one" / "descriptive_stats.csv");
  REQUIRE(stats.size() == 3);
  CHECK(stats[1][0] == "wikipedia");
  CHECK(stats[1][2] == "40");
}

TEST_CASE("compare: synthetic up, narrower, reduced tail") {
  fixture::TempDir dir;
  std::mt19937_64 rng(8);
  std::lognormal_distribution<double> ln(1.0, 0.6);
  std::vector<double> h(20000), m(20000);
  for (auto& x : h) x = ln(rng);
  double mean = 0;
  for (double x : h) mean += x;
  mean /= static_cast<double>(h.size());
  std::normal_distribution<double> nd(mean + 1.0, 0.8);
  for (auto& x : m) x = nd(rng);
  fs::create_directories(dir / "in");
  fixture::write(dir / "in" / "samples_yngve_eli5_human.csv", samples_csv(Metric::yngve, "article", Domain::eli5,
                                                                           Source::human, h));
  fixture::write(dir / "in" / "samples_yngve_eli5_model.csv", samples_csv(Metric::yngve, "article", Domain::eli5,
                                                                           Source::model, m));
  auto c = config_in(dir, "[output]\ndir = out\n[compare]\ninputs = in\n");
  std::ostringstream log;
  cmd_compare(c, log);
  auto sig = csv_rows(dir / "out" / "signatures.csv");
  REQUIRE(sig.size() == 2);
  CHECK(sig[1][0] == "yngve");
  CHECK(sig[1][2] == "↗");
  CHECK(sig[1][4] == "↘");
  CHECK(sig[1][6] == "reduced");
  CHECK(fixture::read(dir / "out" / "schematic.txt") ==
        "Type   Domain  μ  σ  Long Tail\n"
        "Yngve  ELI5    ↗  ↘  reduced\n");
  auto hist = csv_rows(dir / "out" / "histogram_yngve_eli5_human.csv");
  std::size_t total = 0;
  for (std::size_t r = 1; r < hist.size(); ++r) total += std::stoul(hist[r][1]);
  CHECK(total == h.size());
}

TEST_CASE("compare: human-only input and sentence-scope rows") {
  fixture::TempDir dir;
  fs::create_directories(dir / "in");
  fixture::write(dir / "in" / "samples_depth_eli5_human.csv",
                 samples_csv(Metric::depth, "article", Domain::eli5, Source::human, {2, 3, 4}) +
                     "depth,sentence,a0,0,99,eli5,human\n");
  auto c = config_in(dir, "[output]\ndir = out\n[compare]\ninputs = in\n");
  std::ostringstream log;
  cmd_compare(c, log);
  CHECK(fixture::lines(fixture::read(dir / "out" / "signatures.csv")).size() == 1);
  CHECK(fixture::read(dir / "out" / "schematic.txt") == "Type  Domain  μ  σ  Long Tail\n");
  auto summaries = nlohmann::json::parse(fixture::read(dir / "out" / "summaries.json"));
  REQUIRE(summaries.size() == 1);
  CHECK(summaries[0]["n"] == 3);
  CHECK(summaries[0]["mean"] == 3.0);
}

TEST_CASE("compare: the same cell in two files is an error") {
  fixture::TempDir dir;
  fs::create_directories(dir / "x");
  fs::create_directories(dir / "y");
  auto csv = samples_csv(Metric::depth, "article", Domain::eli5, Source::human, {1, 2});
  fixture::write(dir / "x" / "samples_depth_eli5_human.csv", csv);
  fixture::write(dir / "y" / "samples_depth_eli5_human.csv", csv);
  CHECK_THROWS_AS(read_sample_cells({dir / "x", dir / "y"}), ValidationError);
  auto c = config_in(dir, "[output]\ndir = out\n");
  std::ostringstream log;
  CHECK_THROWS_AS(cmd_compare(c, log), ConfigError);
}

TEST_CASE("stats: cleaned descriptive statistics") {
  fixture::TempDir dir;
  std::vector<Article> arts{parsed_article("a", {20, 20, 20, 1}), parsed_article("b", {25})};
  auto c = config_in(dir, "[output]\ndir = out\n" + corpus_section(dir, arts, "wiki", Domain::wikipedia, Source::human));
  std::ostringstream log;
  cmd_stats(c, log);
  auto rows = csv_rows(dir / "out" / "descriptive_stats.csv");
  REQUIRE(rows.size() == 2);
  CHECK(rows[1] == std::vector<std::string>{"wikipedia", "human", "2", "4", "85", "2.0", "21.3", "42.5"});
}

namespace {

class EchoTransport : public Transport {
 public:
  std::atomic<int> calls{0};
  HttpResponse post_json(const std::string&) override {
    ++calls;
    return {200, R"({"choices":[{"message":{"content":"Generated text."},"finish_reason":"stop"}]})", {}};
  }
};

}  // namespace

TEST_CASE("regenerate command with a scripted transport") {
  fixture::TempDir dir;
  std::vector<Article> src;
  for (int i = 0; i < 3; ++i) {
    auto a = fixture::article("q" + std::to_string(i), Domain::eli5);
    a.title = "Why " + std::to_string(i) + "?";
    src.push_back(a);
  }
  write_articles(dir / "eli5.jsonl", src);
  std::string ini = "[output]\ndir = out\n[regen]\nendpoint_url = http://127.0.0.1:1/v1/chat/completions\n"
                    "model_name = test-model\ndomain = eli5\ninput = eli5.jsonl\n";
  auto c = config_in(dir, ini);
  EchoTransport t;
  std::ostringstream log;
  auto rep = cmd_regenerate(c, log, &t);
  CHECK(rep.generated == 3);
  CHECK(t.calls == 3);
  auto out = read_articles(dir / "out" / "regenerated_eli5.jsonl", Domain::eli5);
  REQUIRE(out.size() == 3);
  CHECK(out[0].source == Source::model);
  CHECK(out[0].model_name == "test-model");
  CHECK(out[0].text == "Generated text.");
  CHECK(read_manifest(dir / "out" / "regenerated_eli5.manifest.json").article_count == 3);
  CHECK(csv_rows(dir / "out" / "regen_log.csv").size() == 4);

  CHECK_THROWS_AS(cmd_regenerate(c, log, &t), ConfigError);
  c.resume = true;
  rep = cmd_regenerate(c, log, &t);
  CHECK(rep.resumed == 3);
  CHECK(t.calls == 3);
}

TEST_CASE("regenerate command: missing endpoint fails before any request") {
  fixture::TempDir dir;
  write_articles(dir / "eli5.jsonl", {fixture::article("q", Domain::eli5)});
  auto c = config_in(dir, "[regen]\nmodel_name = m\ndomain = eli5\ninput = eli5.jsonl\n");
  EchoTransport t;
  std::ostringstream log;
  CHECK_THROWS_AS(cmd_regenerate(c, log, &t), ConfigError);
  CHECK(t.calls == 0);
  c = config_in(dir, "[output]\ndir = out\n");
  CHECK_THROWS_AS(cmd_regenerate(c, log, &t), ConfigError);
}
