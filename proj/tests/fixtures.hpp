#pragma once
// Small builders for articles, sentences and scratch directories.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "synshift/corpus.hpp"
#include "synshift/tree.hpp"

namespace fixture {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "synshift-test-XXXXXX").string();
    if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline void write(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

inline std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Sentence of `words` tokens. The first token carries `verb_tag` unless it is
// empty, in which case every token is a NOUN. Heads chain to the first token,
// and the tree is flat: (S (T w0) (T w1) ...).
inline synshift::SentenceRecord sentence(std::size_t index, std::size_t words, const std::string& verb_tag = "VERB") {
  synshift::SentenceRecord s;
  s.index = index;
  auto tree = synshift::ConstTree::with_root("S");
  for (std::size_t i = 0; i < words; ++i) {
    synshift::DepToken t;
    t.form = "w" + std::to_string(i);
    t.upos = (i == 0 && !verb_tag.empty()) ? verb_tag : "NOUN";
    t.deprel = i == 0 ? "root" : (i % 2 ? "obj" : "nmod");
    if (i > 0) t.head = 0;
    s.tokens.push_back(t);
    tree.add_leaf(tree.add_constituent(tree.root(), t.upos), t.form);
  }
  if (words > 0) s.tree = std::move(tree);
  return s;
}

inline synshift::Article article(std::string id, synshift::Domain d = synshift::Domain::wikipedia,
                                 synshift::Source s = synshift::Source::human) {
  synshift::Article a;
  a.id = std::move(id);
  a.domain = d;
  a.source = s;
  if (s == synshift::Source::model) a.model_name = "test-model";
  a.title = "Title " + a.id;
  return a;
}

// `n` space-separated copies of `word`, ending in a period.
inline std::string words(std::size_t n, const std::string& word = "cat") {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += word;
  }
  return out + ".";
}

}  // namespace fixture
