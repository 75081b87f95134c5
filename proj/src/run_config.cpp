#include "synshift/run_config.hpp"

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "synshift/error.hpp"

namespace synshift {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

std::string CorpusSpec::key() const { return std::string(to_string(domain)) + "_" + std::string(to_string(source)); }

namespace {

struct Field {
  std::string section;
  std::string key;
  std::string value;

  std::string where() const { return "[" + section + "] " + key; }
};

[[noreturn]] void bad_value(const Field& f, const std::string& expected) {
  throw ConfigError(f.where() + ": expected " + expected + ", got '" + f.value + "'");
}

std::size_t as_size(const Field& f) {
  std::size_t v = 0;
  auto [end, ec] = std::from_chars(f.value.data(), f.value.data() + f.value.size(), v);
  if (ec != std::errc{} || end != f.value.data() + f.value.size()) bad_value(f, "a non-negative integer");
  return v;
}

double as_double(const Field& f) {
  std::istringstream in(f.value);
  in.imbue(std::locale::classic());
  double v = 0;
  in >> v;
  if (!in || !in.eof()) bad_value(f, "a number");
  return v;
}

bool as_bool(const Field& f) {
  if (f.value == "true" || f.value == "yes" || f.value == "1") return true;
  if (f.value == "false" || f.value == "no" || f.value == "0") return false;
  bad_value(f, "true or false");
}

fs::path as_path(const Field& f, const fs::path& base) {
  if (f.value.empty()) bad_value(f, "a path");
  fs::path p(f.value);
  return p.is_absolute() ? p : base / p;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    boost::algorithm::trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void read_output(const Field& f, RunConfig& c, const fs::path& base) {
  if (f.key == "dir") c.output_dir = as_path(f, base);
  else if (f.key == "threads") c.threads = as_size(f);
  else throw ConfigError("unknown key " + f.where());
}

void read_cleaning(const Field& f, CleaningPolicy& p) {
  if (f.key == "enabled") p.enabled = as_bool(f);
  else if (f.key == "min_words") p.min_words = as_size(f);
  else if (f.key == "max_words") p.max_words = as_size(f);
  else if (f.key == "require_verb_or_aux") p.require_verb_or_aux = as_bool(f);
  else if (f.key == "drop_zero_scores") p.drop_zero_scores = as_bool(f);
  else throw ConfigError("unknown key " + f.where());
}

void read_metrics(const Field& f, RunConfig& c) {
  if (f.key == "yngve_variant") {
    if (f.value == "right_siblings") c.yngve_variant = YngveVariant::right_siblings;
    else if (f.value == "left_branch_edges") c.yngve_variant = YngveVariant::left_branch_edges;
    else bad_value(f, "right_siblings or left_branch_edges");
  } else if (f.key == "bin_width") {
    if (f.value == "auto") {
      c.bin_width.reset();
    } else {
      double w = as_double(f);
      if (!(w > 0)) bad_value(f, "a positive width or 'auto'");
      c.bin_width = w;
    }
  } else {
    throw ConfigError("unknown key " + f.where());
  }
}

void read_signatures(const Field& f, SignatureThresholds& t) {
  if (f.key == "flat_effect") t.flat_effect = as_double(f);
  else if (f.key == "narrow_ratio") t.narrow_ratio = as_double(f);
  else if (f.key == "wide_ratio") t.wide_ratio = as_double(f);
  else if (f.key == "tail_present") t.tail_present = as_double(f);
  else if (f.key == "tail_reduced") t.tail_reduced = as_double(f);
  else throw ConfigError("unknown key " + f.where());
}

void read_regen(const Field& f, RegenJob& job, const fs::path& base) {
  auto& r = job.config;
  if (f.key == "endpoint_url") r.endpoint_url = f.value;
  else if (f.key == "model_name") r.model_name = f.value;
  else if (f.key == "temperature") r.temperature = as_double(f);
  else if (f.key == "max_output_tokens") r.max_output_tokens = as_size(f);
  else if (f.key == "parallelism") r.parallelism = as_size(f);
  else if (f.key == "max_attempts") r.max_attempts = as_size(f);
  else if (f.key == "initial_backoff_ms") r.initial_backoff = std::chrono::milliseconds(as_size(f));
  else if (f.key == "request_timeout_s") r.request_timeout = std::chrono::seconds(as_size(f));
  else if (f.key == "word_budget") r.word_budget_override = as_size(f);
  else if (f.key == "token_env") job.token_env = f.value;
  else if (f.key == "input") job.input = as_path(f, base);
  else if (f.key == "checkpoint") job.checkpoint_dir = as_path(f, base);
  else if (f.key == "output") job.output = as_path(f, base);
  else if (f.key == "domain") {
    try {
      r.domain = parse_domain(f.value);
    } catch (const ValidationError&) {
      bad_value(f, "wikipedia, ccnews or eli5");
    }
  } else if (f.key == "api_style") {
    if (f.value == "chat") r.api_style = ApiStyle::chat;
    else if (f.value == "completion") r.api_style = ApiStyle::completion;
    else bad_value(f, "chat or completion");
  } else {
    throw ConfigError("unknown key " + f.where());
  }
}

CorpusSpec corpus_section(const std::string& name, const pt::ptree& body, const fs::path& base) {
  // corpus.<domain>.<source>
  auto first = name.find('.');
  auto second = name.find('.', first + 1);
  if (second == std::string::npos || name.find('.', second + 1) != std::string::npos) {
    throw ConfigError("corpus section must be named [corpus.<domain>.<source>], got [" + name + "]");
  }
  CorpusSpec spec;
  try {
    spec.domain = parse_domain(name.substr(first + 1, second - first - 1));
    spec.source = parse_source(name.substr(second + 1));
  } catch (const ValidationError& e) {
    throw ConfigError("[" + name + "]: " + e.what());
  }
  for (const auto& [key, child] : body) {
    Field f{name, key, child.data()};
    if (key == "articles") spec.articles = as_path(f, base);
    else if (key == "parses") spec.parses = as_path(f, base);
    else if (key == "model_name") spec.model_name = f.value;
    else throw ConfigError("unknown key " + f.where());
  }
  if (spec.articles.empty()) throw ConfigError("[" + name + "] needs an 'articles' path");
  if (spec.source == Source::model && spec.model_name.empty()) {
    throw ConfigError("[" + name + "] needs a 'model_name'");
  }
  return spec;
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const fs::path& base_dir) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }

  RunConfig c;
  for (const auto& [section, body] : tree) {
    if (section.rfind("corpus.", 0) == 0) {
      c.corpora.push_back(corpus_section(section, body, base_dir));
      continue;
    }
    if (body.empty() && !body.data().empty()) throw ConfigError("key '" + section + "' outside any section");
    static const std::set<std::string> known{"output",      "cleaning", "metrics", "signatures",
                                             "readability", "compare",  "regen"};
    if (!known.contains(section)) throw ConfigError("unknown section [" + section + "]");
    if (section == "regen" && !c.regen) c.regen.emplace();
    for (const auto& [key, child] : body) {
      Field f{section, key, child.data()};
      if (section == "output") read_output(f, c, base_dir);
      else if (section == "cleaning") read_cleaning(f, c.cleaning);
      else if (section == "metrics") read_metrics(f, c);
      else if (section == "signatures") read_signatures(f, c.thresholds);
      else if (section == "readability" && key == "familiar_words") c.familiar_words = as_path(f, base_dir);
      else if (section == "compare" && key == "inputs") {
        for (const auto& item : split_list(f.value)) c.compare_inputs.push_back(as_path({section, key, item}, base_dir));
      } else if (section == "regen") read_regen(f, *c.regen, base_dir);
      else throw ConfigError("unknown key " + f.where());
    }
  }

  if (c.threads == 0) throw ConfigError("[output] threads must be at least 1");
  c.cleaning.validate();
  return c;
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str(), path.parent_path());
}

void check_inputs_exist(const RunConfig& config) {
  auto require = [](const fs::path& p, const std::string& what) {
    if (!fs::exists(p)) throw ConfigError(what + " not found: " + p.string());
  };
  for (const auto& spec : config.corpora) {
    require(spec.articles, "articles for corpus " + spec.key());
    if (spec.parses) require(*spec.parses, "parse sidecar for corpus " + spec.key());
  }
  if (config.familiar_words) require(*config.familiar_words, "familiar-word list");
}

}  // namespace synshift
