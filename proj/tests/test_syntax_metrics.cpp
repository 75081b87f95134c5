#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "synshift/syntax_metrics.hpp"

using namespace synshift;
using doctest::Approx;

namespace {

SentenceRecord with_deprels(std::vector<std::string> rels) {
  SentenceRecord s;
  for (std::size_t i = 0; i < rels.size(); ++i) {
    DepToken t{"w", "NOUN", rels[i], std::nullopt};
    if (rels[i] != "root") t.head = 0;
    s.tokens.push_back(t);
  }
  return s;
}

const char* kCat = "(S (NP (DT the) (NN cat)) (VP (VBD sat)))";

}  // namespace

TEST_CASE("unique dependency tags") {
  CHECK(unique_dep_tags(with_deprels({"nsubj", "root", "obj", "obj"})) == 3);
  CHECK(unique_dep_tags(with_deprels({"root"})) == 1);
  CHECK(unique_dep_tags(with_deprels({"det", "nsubj", "root", "det", "obj", "punct"})) == 5);
  CHECK_THROWS_AS(unique_dep_tags(SentenceRecord{}), ContractError);
}

TEST_CASE("parse depth") {
  CHECK(parse_depth(read_bracketed_tree("(X w)")) == 1);
  CHECK(parse_depth(read_bracketed_tree(kCat)) == 3);
  for (std::size_t k = 1; k <= 20; ++k) {
    // k nested constituents, each over one leaf (plus the innermost leaf).
    CHECK(parse_depth(oracle::to_const(oracle::right_chain(k))) == k);
  }
  CHECK_THROWS_AS(parse_depth(ConstTree{}), ContractError);
}

TEST_CASE("Yngve score") {
  CHECK(yngve_score(read_bracketed_tree("(X w)")) == 0.0);
  CHECK(yngve_score(read_bracketed_tree("(S a (X b c))")) == Approx(2.0 / 3.0));
  CHECK(yngve_score(read_bracketed_tree("(S (X a b) c)")) == Approx(1.0));
  // Edge variant counts a branch once however many right siblings it has.
  CHECK(yngve_score(read_bracketed_tree("(S a b c)"), YngveVariant::right_siblings) == Approx(1.0));
  CHECK(yngve_score(read_bracketed_tree("(S a b c)"), YngveVariant::left_branch_edges) == Approx(2.0 / 3.0));
}

TEST_CASE("Yngve closed forms on chains") {
  for (std::size_t n = 1; n <= 50; ++n) {
    CAPTURE(n);
    double left = yngve_score(oracle::to_const(oracle::left_chain(n)));
    double right = yngve_score(oracle::to_const(oracle::right_chain(n)));
    CHECK(left == Approx((n - 1) / 2.0).epsilon(1e-12));
    CHECK(right == Approx(static_cast<double>(n - 1) / static_cast<double>(n)).epsilon(1e-12));
  }
}

TEST_CASE("unique constituency labels") {
  CHECK(unique_const_labels(read_bracketed_tree("(X w)")) == 1);
  CHECK(unique_const_labels(read_bracketed_tree(kCat)) == 6);
  CHECK(unique_const_labels(read_bracketed_tree("(S (NP (NN a)) (NP (NN b)))")) == 3);
}

TEST_CASE("sentence length") {
  CHECK(sentence_length(fixture::sentence(0, 3)) == 3);
  CHECK(sentence_length(fixture::sentence(0, 500)) == 500);
  CHECK(sentence_length(fixture::sentence(0, 24)) == 24);
  CHECK_THROWS_AS(sentence_length(SentenceRecord{}), ContractError);
}

TEST_CASE("sentence metrics match a tree and block parsed from text") {
  SentenceRecord s;
  s.tokens = read_dependency_block(
      "1\tthe\tthe\tDET\t_\t_\t2\tdet\t_\t_\n2\tcat\tcat\tNOUN\t_\t_\t3\tnsubj\t_\t_\n3\tsat\tsit\tVERB\t_\t_\t0\troot\t_\t_\n");
  s.tree = read_bracketed_tree(kCat);
  CHECK(sentence_metric(s, Metric::sent_length) == 3.0);
  CHECK(sentence_metric(s, Metric::dep_tags) == 3.0);
  CHECK(sentence_metric(s, Metric::depth) == 3.0);
  CHECK(sentence_metric(s, Metric::const_labels) == 6.0);
  CHECK(*sentence_metric(s, Metric::yngve) == Approx(1.0));  // the:2, cat:1, sat:0
  CHECK_THROWS_AS(sentence_metric(s, Metric::fk_grade), ContractError);

  s.tree.reset();
  CHECK_FALSE(sentence_metric(s, Metric::depth).has_value());
  CHECK(sentence_metric(s, Metric::dep_tags) == 3.0);
  s.parse_failed = true;
  CHECK_FALSE(sentence_metric(s, Metric::dep_tags).has_value());
}

TEST_CASE("overly deep trees are metric failures, not crashes") {
  auto tree = ConstTree::with_root("X");
  ConstTree::NodeId at = tree.root();
  for (std::size_t i = 0; i < kMaxTreeDepth + 5; ++i) at = tree.add_constituent(at, "X");
  tree.add_leaf(at, "w");
  CHECK_THROWS_AS(parse_depth(tree), MetricFailure);
  SentenceRecord s = fixture::sentence(0, 1);
  s.tree = tree;
  CHECK_FALSE(sentence_metric(s, Metric::yngve).has_value());
}

TEST_CASE("article aggregation") {
  auto a = fixture::article("a");
  std::vector<SentenceResult> depth{{0, 2.0}, {1, 4.0}};
  auto agg = article_aggregate(a, Metric::depth, depth, true);
  REQUIRE(agg.sample.has_value());
  CHECK(agg.sample->value == 3.0);
  CHECK_FALSE(agg.sample->sentence_index.has_value());

  std::vector<SentenceResult> failed{{0, 2.0}, {1, std::nullopt}};
  CHECK(article_aggregate(a, Metric::depth, failed, true).reason == ExclusionReason::failed_sentence);

  std::vector<SentenceResult> zero{{0, 0.0}, {1, 0.0}};
  CHECK(article_aggregate(a, Metric::yngve, zero, true).reason == ExclusionReason::zero_score);
  CHECK(article_aggregate(a, Metric::yngve, zero, false).sample.has_value());
  // Zero filtering applies only to depth and Yngve.
  CHECK(article_aggregate(a, Metric::dep_tags, zero, true).sample.has_value());

  CHECK(article_aggregate(a, Metric::depth, {}, true).reason == ExclusionReason::no_sentences);
}

TEST_CASE("compute_article_metrics covers every syntactic metric") {
  auto a = fixture::article("a");
  a.sentences = {fixture::sentence(0, 4), fixture::sentence(1, 6)};
  auto m = compute_article_metrics(a, YngveVariant::right_siblings, true);
  CHECK(m.sentence_samples.size() == 10);
  CHECK(m.article_samples.size() == 5);
  CHECK(m.exclusions.empty());

  a.sentences.push_back(SentenceRecord{2, {}, std::nullopt, true});
  m = compute_article_metrics(a, YngveVariant::right_siblings, true);
  CHECK(m.sentence_samples.size() == 10);
  CHECK(m.article_samples.empty());
  CHECK(m.exclusions.size() == 5);
}

TEST_CASE("metric names round trip") {
  for (Metric m : kSyntaxMetrics) CHECK(parse_metric(to_string(m)) == m);
  for (Metric m : kReadabilityMetrics) CHECK(parse_metric(to_string(m)) == m);
  CHECK_THROWS_AS(parse_metric("nope"), ValidationError);
}

TEST_CASE("property: metrics agree with the brute-force path enumerator") {
  oracle::TreeGenerator gen(2024);
  for (int i = 0; i < 500; ++i) {
    auto ref = gen.next(50, 5);
    auto tree = oracle::to_const(ref);
    CHECK(parse_depth(tree) == oracle::depth(ref));
    CHECK(yngve_score(tree) == Approx(oracle::yngve(ref)).epsilon(1e-12));
    CHECK(yngve_score(tree, YngveVariant::left_branch_edges) == Approx(oracle::yngve(ref, true)).epsilon(1e-12));
    CHECK(unique_const_labels(tree) == oracle::label_count(ref));
  }
}
