#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace synshift {

/// Constituency tree stored as a flat node arena.
///
/// Leaves are separate nodes carrying the surface token; every other node is a
/// labeled constituent with at least one child (preterminals included). The
/// flat layout keeps traversal and destruction non-recursive, so pathologically
/// deep parses cannot exhaust the stack.
class ConstTree {
 public:
  using NodeId = std::uint32_t;

  struct Node {
    std::string label;  // empty for leaves
    std::string token;  // set for leaves only
    std::vector<NodeId> children;
    bool leaf = false;
  };

  ConstTree() = default;

  /// Starts a tree whose root constituent is `label`.
  static ConstTree with_root(std::string label);

  NodeId add_constituent(NodeId parent, std::string label);
  NodeId add_leaf(NodeId parent, std::string token);
  void set_label(NodeId id, std::string label);

  bool empty() const noexcept { return nodes_.empty(); }
  std::size_t size() const noexcept { return nodes_.size(); }
  NodeId root() const noexcept { return 0; }
  const Node& node(NodeId id) const { return nodes_.at(id); }

  std::size_t leaf_count() const;
  /// Leaf tokens in left-to-right order.
  std::vector<std::string_view> leaves() const;

  /// Copies the subtree rooted at `id` into a standalone tree.
  ConstTree subtree(NodeId id) const;

  /// Structural equality: same shape, labels and tokens (node storage order is ignored).
  friend bool operator==(const ConstTree& a, const ConstTree& b);

 private:
  std::vector<Node> nodes_;
};

/// Reads labeled bracket notation such as `(S (NP (DT the) (NN cat)) (VP (VBD sat)))`.
/// An unlabeled outer wrapper `( (S ...) )` is removed. Throws ParseError with a
/// character offset on unbalanced input, empty or unlabeled constituents, or
/// trailing content.
ConstTree read_bracketed_tree(std::string_view text);

/// Inverse of read_bracketed_tree for trees whose labels and tokens contain no
/// whitespace or parentheses.
std::string to_bracketed(const ConstTree& tree);

}  // namespace synshift
