// Command-line driver: regenerate, analyze, compare and stats over one config file.

#include <CLI11.hpp>
#include <atomic>
#include <csignal>
#include <iostream>
#include <optional>

#include "synshift/error.hpp"
#include "synshift/pipeline.hpp"
#include "synshift/run_config.hpp"

namespace {

std::atomic<bool> g_cancel{false};

extern "C" void on_sigint(int) { g_cancel = true; }

struct Overrides {
  std::string config;
  std::string out;
  bool no_clean = false;
  std::optional<std::size_t> threads;
  std::optional<std::size_t> min_words;
  std::optional<std::size_t> max_words;
  std::vector<std::string> inputs;
  bool resume = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("-c,--config", o.config, "INI run configuration")->required()->check(CLI::ExistingFile);
  cmd->add_option("-o,--out", o.out, "output directory (overrides [output] dir)");
  cmd->add_flag("--no-clean", o.no_clean, "skip sentence cleaning (ablation run)");
  cmd->add_option("-j,--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
}

synshift::RunConfig resolve(const Overrides& o) {
  auto config = synshift::load_run_config(o.config);
  if (!o.out.empty()) config.output_dir = o.out;
  if (o.no_clean) config.cleaning.enabled = false;
  if (o.threads) {
    config.threads = *o.threads;
    if (config.regen) config.regen->config.parallelism = *o.threads;
  }
  if (o.min_words) config.cleaning.min_words = *o.min_words;
  if (o.max_words) config.cleaning.max_words = *o.max_words;
  for (const auto& in : o.inputs) config.compare_inputs.emplace_back(in);
  config.resume = o.resume;
  config.cleaning.validate();
  return config;
}

int exit_code(synshift::ErrorKind kind) {
  switch (kind) {
    case synshift::ErrorKind::usage: return 1;
    case synshift::ErrorKind::data: return 2;
    case synshift::ErrorKind::endpoint: return 3;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Syntactic distribution-shift analysis of human and regenerated corpora"};
  app.require_subcommand(1);
  Overrides o;

  auto* regenerate = app.add_subcommand("regenerate", "regenerate a corpus through a completion endpoint");
  add_common(regenerate, o);
  regenerate->add_flag("--resume", o.resume, "continue from an existing checkpoint");

  auto* analyze = app.add_subcommand("analyze", "readability scores and syntactic metric samples");
  add_common(analyze, o);
  analyze->add_option("--min-words", o.min_words, "shortest kept sentence");
  analyze->add_option("--max-words", o.max_words, "longest kept sentence");

  auto* compare = app.add_subcommand("compare", "distribution summaries and shift signatures");
  add_common(compare, o);
  compare->add_option("--in", o.inputs, "sample files or directories (default: output directory)");

  auto* stats = app.add_subcommand("stats", "descriptive corpus statistics");
  add_common(stats, o);
  stats->add_option("--min-words", o.min_words, "shortest kept sentence");
  stats->add_option("--max-words", o.max_words, "longest kept sentence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    auto config = resolve(o);
    if (regenerate->parsed()) {
      std::signal(SIGINT, on_sigint);
      auto report = synshift::cmd_regenerate(config, std::cerr, nullptr, &g_cancel);
      if (report.cancelled) {
        std::cerr << "interrupted; rerun with --resume to continue\n";
        return 130;
      }
    } else if (analyze->parsed()) {
      synshift::cmd_analyze(config, std::cerr);
    } else if (compare->parsed()) {
      synshift::cmd_compare(config, std::cerr);
    } else if (stats->parsed()) {
      synshift::cmd_stats(config, std::cerr);
    }
  } catch (const synshift::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
