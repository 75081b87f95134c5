#pragma once
// Reference implementations used to cross-check the library. They favour the
// most literal formulation (recursion, explicit path lists, two passes) over
// speed, and share no code with src/.

#include <cmath>
#include <cstddef>
#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "synshift/tree.hpp"

namespace oracle {

struct RefTree {
  std::string label;  // empty for a leaf
  std::string token;
  std::vector<RefTree> children;

  bool leaf() const { return label.empty(); }
};

inline RefTree leaf(std::string token) { return RefTree{"", std::move(token), {}}; }
inline RefTree node(std::string label, std::vector<RefTree> kids) { return RefTree{std::move(label), "", std::move(kids)}; }

inline void to_const(const RefTree& t, synshift::ConstTree& out, synshift::ConstTree::NodeId parent) {
  for (const auto& c : t.children) {
    if (c.leaf()) {
      out.add_leaf(parent, c.token);
    } else {
      to_const(c, out, out.add_constituent(parent, c.label));
    }
  }
}

inline synshift::ConstTree to_const(const RefTree& t) {
  synshift::ConstTree out = synshift::ConstTree::with_root(t.label);
  to_const(t, out, out.root());
  return out;
}

inline std::string bracket(const RefTree& t) {
  if (t.leaf()) return t.token;
  std::string s = "(" + t.label;
  for (const auto& c : t.children) s += " " + bracket(c);
  return s + ")";
}

// A root-to-leaf path as the list of (child position, sibling count) steps.
using Path = std::vector<std::pair<std::size_t, std::size_t>>;

inline void paths(const RefTree& t, Path& prefix, std::vector<Path>& out) {
  if (t.leaf()) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    prefix.emplace_back(i, t.children.size());
    paths(t.children[i], prefix, out);
    prefix.pop_back();
  }
}

inline std::vector<Path> paths(const RefTree& t) {
  std::vector<Path> out;
  Path prefix;
  paths(t, prefix, out);
  return out;
}

inline std::size_t depth(const RefTree& t) {
  std::size_t best = 0;
  for (const auto& p : paths(t)) best = std::max(best, p.size());
  return best;
}

// Yngve: each leaf scores the number of right siblings summed over its path.
inline double yngve(const RefTree& t, bool edge_variant = false) {
  auto ps = paths(t);
  double total = 0;
  for (const auto& p : ps) {
    for (auto [pos, n] : p) {
      std::size_t right = n - 1 - pos;
      total += edge_variant ? (right > 0 ? 1.0 : 0.0) : static_cast<double>(right);
    }
  }
  return total / static_cast<double>(ps.size());
}

inline void labels(const RefTree& t, std::set<std::string>& out) {
  if (t.leaf()) return;
  out.insert(t.label);
  for (const auto& c : t.children) labels(c, out);
}

inline std::size_t label_count(const RefTree& t) {
  std::set<std::string> s;
  labels(t, s);
  return s.size();
}

inline std::size_t leaf_count(const RefTree& t) {
  if (t.leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : t.children) n += leaf_count(c);
  return n;
}

// Random constituency tree with at most `max_leaves` leaves and arity in [1, max_arity].
class TreeGenerator {
 public:
  explicit TreeGenerator(std::uint64_t seed) : rng_(seed) {}

  RefTree next(std::size_t max_leaves, std::size_t max_arity) {
    std::size_t leaves = std::uniform_int_distribution<std::size_t>(1, max_leaves)(rng_);
    counter_ = 0;
    return build(leaves, max_arity, 0);
  }

 private:
  RefTree build(std::size_t leaves, std::size_t max_arity, int level) {
    static const char* kLabels[] = {"S", "NP", "VP", "PP", "ADJP", "SBAR", "DT", "NN", "VB", "IN"};
    std::string label = kLabels[std::uniform_int_distribution<int>(0, 9)(rng_)];
    // Occasionally wrap a single child to produce unary chains.
    if (leaves == 1 || (level > 0 && std::bernoulli_distribution(0.15)(rng_))) {
      if (leaves == 1 && std::bernoulli_distribution(0.6)(rng_)) {
        return node(label, {leaf("w" + std::to_string(counter_++))});
      }
      if (leaves == 1) return node(label, {build(1, max_arity, level + 1)});
      return node(label, {build(leaves, max_arity, level + 1)});
    }
    std::size_t arity = std::uniform_int_distribution<std::size_t>(2, std::min(max_arity, leaves))(rng_);
    // Split `leaves` into `arity` positive parts.
    std::vector<std::size_t> cuts;
    std::vector<std::size_t> all(leaves - 1);
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i + 1;
    std::shuffle(all.begin(), all.end(), rng_);
    cuts.assign(all.begin(), all.begin() + static_cast<long>(arity - 1));
    std::sort(cuts.begin(), cuts.end());
    std::vector<RefTree> kids;
    std::size_t prev = 0;
    cuts.push_back(leaves);
    for (auto c : cuts) {
      std::size_t part = c - prev;
      prev = c;
      if (part == 1 && std::bernoulli_distribution(0.5)(rng_)) {
        kids.push_back(leaf("w" + std::to_string(counter_++)));
      } else {
        kids.push_back(build(part, max_arity, level + 1));
      }
    }
    return node(label, std::move(kids));
  }

  std::mt19937_64 rng_;
  std::size_t counter_ = 0;
};

// Right-branching chain (X w0 (X w1 (X w2 ... (X w_{n-1})))).
inline RefTree right_chain(std::size_t n) {
  RefTree t = node("X", {leaf("w" + std::to_string(n - 1))});
  for (std::size_t i = n - 1; i-- > 0;) t = node("X", {leaf("w" + std::to_string(i)), std::move(t)});
  return t;
}

// Left-branching chain (X (X (X w0) w1) ... w_{n-1}).
inline RefTree left_chain(std::size_t n) {
  RefTree t = node("X", {leaf("w0")});
  for (std::size_t i = 1; i < n; ++i) t = node("X", {std::move(t), leaf("w" + std::to_string(i))});
  return t;
}

// Two-pass population mean and standard deviation.
struct Moments {
  double mean = 0;
  double sd = 0;
};

inline Moments two_pass(const std::vector<double>& xs) {
  double sum = 0;
  for (double x : xs) sum += x;
  double mean = sum / static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size()))};
}

// Standard normal upper tail.
inline double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace oracle
