#include "synshift/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <fmt/format.h>

#include "synshift/error.hpp"

namespace synshift {

void MomentAccumulator::add(double x) {
  if (n_ == 0) {
    min_ = max_ = x;
  } else {
    min_ = std::min(min_, x);
    max_ = std::max(max_, x);
  }
  ++n_;
  double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  double na = static_cast<double>(n_);
  double nb = static_cast<double>(other.n_);
  double n = na + nb;
  double delta = other.mean_ - mean_;
  mean_ += delta * nb / n;
  m2_ += other.m2_ + delta * delta * na * nb / n;
  n_ += other.n_;
  min_ = std::min(min_, other.min_);
  max_ = std::max(max_, other.max_);
}

double MomentAccumulator::stddev() const { return std::sqrt(variance()); }

HistogramAccumulator::HistogramAccumulator(double origin, double width) : origin_(origin), width_(width) {
  if (!(width > 0) || !std::isfinite(width)) throw ContractError("bin width must be positive and finite");
}

void HistogramAccumulator::add(double x) {
  auto k = static_cast<std::int64_t>(std::floor((x - origin_) / width_));
  ++counts_[k];
}

void HistogramAccumulator::merge(const HistogramAccumulator& other) {
  if (other.origin_ != origin_ || other.width_ != width_) throw ContractError("histograms have different binning");
  for (const auto& [k, c] : other.counts_) counts_[k] += c;
}

std::vector<HistogramBin> HistogramAccumulator::bins() const {
  std::vector<HistogramBin> out;
  if (counts_.empty()) return out;
  std::int64_t lo = counts_.begin()->first;
  std::int64_t hi = counts_.rbegin()->first;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t k = lo; k <= hi; ++k) {
    auto it = counts_.find(k);
    out.push_back({origin_ + static_cast<double>(k) * width_, it == counts_.end() ? 0 : it->second});
  }
  return out;
}

namespace {

constexpr std::size_t kMaxBins = 10000;

bool all_integral(std::span<const double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return x == std::floor(x); });
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  double h = static_cast<double>(sorted.size() - 1) * p;
  auto lo = static_cast<std::size_t>(std::floor(h));
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double auto_bin_width(std::span<const double> samples) {
  if (samples.empty()) throw InsufficientDataError("no samples to bin");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  double n = static_cast<double>(sorted.size());
  double range = sorted.back() - sorted.front();
  double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  double width = 2.0 * iqr / std::cbrt(n);
  if (!(width > 0)) width = range > 0 ? range / std::ceil(std::sqrt(n)) : 1.0;
  if (range / width > static_cast<double>(kMaxBins)) width = range / static_cast<double>(kMaxBins);
  if (all_integral(samples)) width = std::max(1.0, std::ceil(width));
  return width;
}

DistributionSummary summarize(std::span<const double> samples, std::optional<double> bin_width) {
  if (samples.size() < 2) throw InsufficientDataError("at least two samples are needed, got " + std::to_string(samples.size()));
  for (double x : samples) {
    if (!std::isfinite(x)) throw ContractError("non-finite sample");
  }
  if (bin_width && !(*bin_width > 0 && std::isfinite(*bin_width))) throw ContractError("bin width must be positive");

  MomentAccumulator moments;
  for (double x : samples) moments.add(x);

  DistributionSummary s;
  s.n = moments.count();
  s.mean = moments.mean();
  s.stddev = moments.stddev();
  s.min = moments.min();
  s.max = moments.max();
  s.bin_width = bin_width ? *bin_width : auto_bin_width(samples);

  HistogramAccumulator hist(s.min, s.bin_width);
  for (double x : samples) hist.add(x);
  s.histogram = hist.bins();
  return s;
}

TailReport tail_report(std::span<const double> samples, const DistributionSummary& summary, double present_threshold) {
  TailReport r;
  if (summary.stddev == 0 || samples.empty()) return r;
  double threshold = summary.mean + 2.0 * summary.stddev;
  auto above = std::count_if(samples.begin(), samples.end(), [&](double x) { return x > threshold; });
  r.tail_mass = static_cast<double>(above) / static_cast<double>(samples.size());
  r.tail_index = r.tail_mass / r.normal_baseline;
  r.long_tail_present = r.tail_index > present_threshold;
  return r;
}

std::string_view symbol(MeanShift s) {
  switch (s) {
    case MeanShift::up: return "↗";
    case MeanShift::down: return "↘";
    case MeanShift::flat: return "≈";
  }
  return "?";
}

std::string_view symbol(VarianceShift s) {
  switch (s) {
    case VarianceShift::wider: return "↗";
    case VarianceShift::narrower: return "↘";
    case VarianceShift::flat: return "≈";
  }
  return "?";
}

std::string_view symbol(TailVerdict v) {
  switch (v) {
    case TailVerdict::reduced: return "reduced";
    case TailVerdict::comparable: return "≈";
    case TailVerdict::not_applicable: return "n/a";
  }
  return "?";
}

DistributionCell summarize_cell(std::span<const double> samples, Metric metric, Domain domain, Source source,
                                const SignatureThresholds& thresholds, std::optional<double> bin_width) {
  DistributionCell cell{summarize(samples, bin_width), {}};
  cell.summary.metric = metric;
  cell.summary.domain = domain;
  cell.summary.source = source;
  cell.tail = tail_report(samples, cell.summary, thresholds.tail_present);
  cell.summary.tail_index = cell.tail.tail_index;
  return cell;
}

SignatureReport classify_signatures(const DistributionCell& human, const DistributionCell& model,
                                    const SignatureThresholds& t) {
  const auto& h = human.summary;
  const auto& m = model.summary;
  if (h.metric != m.metric || h.domain != m.domain) {
    throw ContractError("cannot compare " + std::string(to_string(h.metric)) + "/" + std::string(to_string(h.domain)) +
                        " with " + std::string(to_string(m.metric)) + "/" + std::string(to_string(m.domain)));
  }
  if (h.n < 2 || m.n < 2) throw InsufficientDataError("both cells need at least two samples");

  constexpr double inf = std::numeric_limits<double>::infinity();
  SignatureReport r;
  r.metric = h.metric;
  r.domain = h.domain;
  r.model_name = m.model_name;
  r.n_human = h.n;
  r.n_model = m.n;

  double diff = m.mean - h.mean;
  double pooled = std::sqrt((h.stddev * h.stddev + m.stddev * m.stddev) / 2.0);
  r.effect_size = pooled > 0 ? diff / pooled : (diff == 0 ? 0.0 : std::copysign(inf, diff));
  if (std::abs(r.effect_size) < t.flat_effect) {
    r.mean_shift = MeanShift::flat;
  } else {
    r.mean_shift = r.effect_size > 0 ? MeanShift::up : MeanShift::down;
  }

  r.sd_ratio = h.stddev > 0 ? m.stddev / h.stddev : (m.stddev == 0 ? 1.0 : inf);
  if (r.sd_ratio < t.narrow_ratio) {
    r.variance_shift = VarianceShift::narrower;
  } else if (r.sd_ratio > t.wide_ratio) {
    r.variance_shift = VarianceShift::wider;
  } else {
    r.variance_shift = VarianceShift::flat;
  }

  r.tail_index_human = human.tail.tail_index;
  r.tail_index_model = model.tail.tail_index;
  if (!human.tail.long_tail_present) {
    r.tail_verdict = TailVerdict::not_applicable;
  } else if (!model.tail.long_tail_present || r.tail_index_model <= t.tail_reduced * r.tail_index_human) {
    r.tail_verdict = TailVerdict::reduced;
  } else {
    r.tail_verdict = TailVerdict::comparable;
  }
  return r;
}

void DescriptiveStatsAccumulator::add_article(std::span<const std::size_t> sentence_lengths) {
  if (sentence_lengths.empty()) return;
  ++articles_;
  sentences_ += sentence_lengths.size();
  for (auto w : sentence_lengths) words_ += w;
}

void DescriptiveStatsAccumulator::merge(const DescriptiveStatsAccumulator& other) {
  articles_ += other.articles_;
  sentences_ += other.sentences_;
  words_ += other.words_;
}

DescriptiveStats DescriptiveStatsAccumulator::result() const {
  if (articles_ == 0) throw InsufficientDataError("descriptive statistics need at least one article");
  DescriptiveStats s;
  s.articles = articles_;
  s.sentences = sentences_;
  s.words = words_;
  s.sentences_per_article = static_cast<double>(sentences_) / static_cast<double>(articles_);
  s.words_per_sentence = static_cast<double>(words_) / static_cast<double>(sentences_);
  s.words_per_article = static_cast<double>(words_) / static_cast<double>(articles_);
  return s;
}

DescriptiveStats descriptive_stats(const std::vector<Article>& corpus) {
  DescriptiveStatsAccumulator acc;
  std::vector<std::size_t> lengths;
  for (const auto& a : corpus) {
    lengths.clear();
    for (const auto& s : a.sentences) {
      if (!s.parse_failed && !s.tokens.empty()) lengths.push_back(s.tokens.size());
    }
    acc.add_article(lengths);
  }
  return acc.result();
}

std::string format_one_decimal(double value) {
  double r = std::round(value * 10.0) / 10.0;
  if (r == 0) r = 0;  // no "-0.0"
  return fmt::format("{:.1f}", r);
}

std::string_view display_name(Metric m) {
  switch (m) {
    case Metric::fk_grade: return "Flesch-Kincaid";
    case Metric::dep_tags: return "Dependency";
    case Metric::depth: return "Depth";
    case Metric::yngve: return "Yngve";
    case Metric::const_labels: return "Constituency";
    case Metric::sent_length: return "Sentence Length";
    case Metric::fk_ease: return "Reading Ease";
    case Metric::gunning_fog: return "Gunning-Fog";
    case Metric::linsear_write: return "Linsear Write";
    case Metric::spache: return "Spache";
  }
  return "?";
}

std::string_view display_name(Domain d) {
  switch (d) {
    case Domain::ccnews: return "news";
    case Domain::wikipedia: return "wiki";
    case Domain::eli5: return "ELI5";
  }
  return "?";
}

namespace {

int metric_rank(Metric m) {
  constexpr Metric order[] = {Metric::fk_grade, Metric::dep_tags,   Metric::depth,       Metric::yngve,
                              Metric::const_labels, Metric::sent_length, Metric::fk_ease, Metric::gunning_fog,
                              Metric::linsear_write, Metric::spache};
  return static_cast<int>(std::find(std::begin(order), std::end(order), m) - std::begin(order));
}

int domain_rank(Domain d) {
  switch (d) {
    case Domain::ccnews: return 0;
    case Domain::wikipedia: return 1;
    case Domain::eli5: return 2;
  }
  return 3;
}

std::size_t display_width(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80 ? 1 : 0;
  return n;
}

void pad_to(std::string& out, std::string_view cell, std::size_t width) {
  out += cell;
  out.append(width - display_width(cell), ' ');
}

std::string format_real(double x) { return fmt::format("{:.6f}", x); }

}  // namespace

SchematicDocument emit_schematic(std::span<const SignatureReport> reports) {
  std::vector<const SignatureReport*> rows;
  std::set<std::pair<int, int>> seen;
  for (const auto& r : reports) {
    if (!seen.emplace(metric_rank(r.metric), domain_rank(r.domain)).second) {
      throw ValidationError("duplicate signature cell " + std::string(to_string(r.metric)) + "/" +
                            std::string(to_string(r.domain)));
    }
    rows.push_back(&r);
  }
  std::sort(rows.begin(), rows.end(), [](const SignatureReport* a, const SignatureReport* b) {
    return std::pair(metric_rank(a->metric), domain_rank(a->domain)) <
           std::pair(metric_rank(b->metric), domain_rank(b->domain));
  });

  SchematicDocument doc;
  doc.csv = "metric,domain,mean_shift,effect_size,variance_shift,sd_ratio,long_tail,tail_index_human,"
            "tail_index_model,n_human,n_model\n";
  for (const auto* r : rows) {
    doc.csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", to_string(r->metric), to_string(r->domain),
                           symbol(r->mean_shift), format_real(r->effect_size), symbol(r->variance_shift),
                           format_real(r->sd_ratio), symbol(r->tail_verdict), format_real(r->tail_index_human),
                           format_real(r->tail_index_model), r->n_human, r->n_model);
  }

  std::size_t type_width = display_width("Type");
  for (const auto* r : rows) type_width = std::max(type_width, display_width(display_name(r->metric)));
  constexpr std::size_t gap = 2;
  const std::size_t domain_width = display_width("Domain");

  auto line = [&](std::string_view type, std::string_view domain, std::string_view mu, std::string_view sigma,
                  std::string_view tail) {
    std::string out;
    pad_to(out, type, type_width + gap);
    pad_to(out, domain, domain_width + gap);
    pad_to(out, mu, 1 + gap);
    pad_to(out, sigma, 1 + gap);
    out += tail;
    out += '\n';
    return out;
  };

  doc.text = line("Type", "Domain", "μ", "σ", "Long Tail");
  const SignatureReport* previous = nullptr;
  for (const auto* r : rows) {
    bool first_of_group = previous == nullptr || previous->metric != r->metric;
    doc.text += line(first_of_group ? display_name(r->metric) : "", display_name(r->domain), symbol(r->mean_shift),
                     symbol(r->variance_shift), symbol(r->tail_verdict));
    previous = r;
  }
  return doc;
}

}  // namespace synshift
