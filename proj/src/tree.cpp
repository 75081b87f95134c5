#include "synshift/tree.hpp"

#include <cctype>
#include <utility>

#include "synshift/error.hpp"

namespace synshift {

ConstTree ConstTree::with_root(std::string label) {
  ConstTree tree;
  tree.nodes_.push_back(Node{std::move(label), {}, {}, false});
  return tree;
}

ConstTree::NodeId ConstTree::add_constituent(NodeId parent, std::string label) {
  if (nodes_.at(parent).leaf) throw ContractError("cannot attach a child to a leaf");
  auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(Node{std::move(label), {}, {}, false});
  nodes_[parent].children.push_back(id);
  return id;
}

ConstTree::NodeId ConstTree::add_leaf(NodeId parent, std::string token) {
  if (nodes_.at(parent).leaf) throw ContractError("cannot attach a child to a leaf");
  auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(Node{{}, std::move(token), {}, true});
  nodes_[parent].children.push_back(id);
  return id;
}

void ConstTree::set_label(NodeId id, std::string label) {
  if (nodes_.at(id).leaf) throw ContractError("leaves carry tokens, not labels");
  nodes_[id].label = std::move(label);
}

std::size_t ConstTree::leaf_count() const {
  std::size_t n = 0;
  for (const auto& node : nodes_) n += node.leaf ? 1 : 0;
  return n;
}

std::vector<std::string_view> ConstTree::leaves() const {
  std::vector<std::string_view> out;
  if (empty()) return out;
  std::vector<NodeId> stack{root()};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    const Node& n = nodes_[id];
    if (n.leaf) {
      out.push_back(n.token);
      continue;
    }
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

ConstTree ConstTree::subtree(NodeId id) const {
  ConstTree out;
  const Node& top = nodes_.at(id);
  if (top.leaf) throw ContractError("subtree root must be a constituent");
  out.nodes_.push_back(Node{top.label, {}, {}, false});
  // (source node, destination parent)
  std::vector<std::pair<NodeId, NodeId>> stack;
  for (auto it = top.children.rbegin(); it != top.children.rend(); ++it) stack.emplace_back(*it, 0);
  while (!stack.empty()) {
    auto [src, dst_parent] = stack.back();
    stack.pop_back();
    const Node& n = nodes_[src];
    if (n.leaf) {
      out.add_leaf(dst_parent, n.token);
      continue;
    }
    NodeId dst = out.add_constituent(dst_parent, n.label);
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.emplace_back(*it, dst);
  }
  return out;
}

bool operator==(const ConstTree& a, const ConstTree& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  std::vector<std::pair<ConstTree::NodeId, ConstTree::NodeId>> stack{{a.root(), b.root()}};
  while (!stack.empty()) {
    auto [x, y] = stack.back();
    stack.pop_back();
    const auto& nx = a.nodes_[x];
    const auto& ny = b.nodes_[y];
    if (nx.leaf != ny.leaf || nx.label != ny.label || nx.token != ny.token ||
        nx.children.size() != ny.children.size()) {
      return false;
    }
    for (std::size_t i = 0; i < nx.children.size(); ++i) stack.emplace_back(nx.children[i], ny.children[i]);
  }
  return true;
}

namespace {

bool is_delim(char c) {
  return c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c));
}

}  // namespace

ConstTree read_bracketed_tree(std::string_view text) {
  ConstTree tree;
  std::vector<ConstTree::NodeId> open;
  std::vector<std::size_t> open_offsets;
  bool expect_label = false;
  bool closed = false;  // the outermost bracket has been closed

  std::size_t pos = 0;
  while (pos < text.size()) {
    char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    if (closed) throw ParseError(pos, "trailing content after tree");

    if (c == '(') {
      if (open.empty()) {
        tree = ConstTree::with_root("");
        open.push_back(tree.root());
      } else {
        if (expect_label) {
          // An unlabeled node is only legal as the outer wrapper.
          if (open.size() > 1) throw ParseError(open_offsets.back(), "unlabeled constituent");
        }
        open.push_back(tree.add_constituent(open.back(), ""));
      }
      open_offsets.push_back(pos);
      expect_label = true;
      ++pos;
      continue;
    }

    if (c == ')') {
      if (open.empty()) throw ParseError(pos, "unbalanced ')'");
      const auto& node = tree.node(open.back());
      if (node.children.empty()) throw ParseError(open_offsets.back(), "empty constituent");
      if (node.label.empty() && open.size() > 1) throw ParseError(open_offsets.back(), "unlabeled constituent");
      open.pop_back();
      open_offsets.pop_back();
      expect_label = false;
      if (open.empty()) closed = true;
      ++pos;
      continue;
    }

    std::size_t start = pos;
    while (pos < text.size() && !is_delim(text[pos])) ++pos;
    std::string atom(text.substr(start, pos - start));
    if (open.empty()) throw ParseError(start, "token outside brackets");
    if (expect_label) {
      tree.set_label(open.back(), std::move(atom));
      expect_label = false;
    } else {
      tree.add_leaf(open.back(), std::move(atom));
    }
  }

  if (!open.empty()) throw ParseError(text.size(), "unbalanced '(' at end of input");
  if (tree.empty()) throw ParseError(0, "empty input");

  const auto& root = tree.node(tree.root());
  if (root.label.empty()) {
    if (root.children.size() == 1 && !tree.node(root.children.front()).leaf) {
      return tree.subtree(root.children.front());
    }
    throw ParseError(0, "unlabeled constituent");
  }
  return tree;
}

std::string to_bracketed(const ConstTree& tree) {
  std::string out;
  if (tree.empty()) return out;
  // (node, next child index)
  std::vector<std::pair<ConstTree::NodeId, std::size_t>> stack{{tree.root(), 0}};
  out += '(';
  out += tree.node(tree.root()).label;
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    const auto& node = tree.node(id);
    if (next == node.children.size()) {
      out += ')';
      stack.pop_back();
      continue;
    }
    const auto& child = tree.node(node.children[next++]);
    out += ' ';
    if (child.leaf) {
      out += child.token;
    } else {
      out += '(';
      out += child.label;
      stack.emplace_back(node.children[next - 1], 0);
    }
  }
  return out;
}

}  // namespace synshift
