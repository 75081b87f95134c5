#include <charconv>
#include <unordered_map>

#include "synshift/corpus.hpp"
#include "synshift/error.hpp"

namespace synshift {

namespace {

std::vector<std::string_view> split_columns(std::string_view line) {
  std::vector<std::string_view> cols;
  if (line.find('\t') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      auto tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    return cols;
  }
  // Space-separated fallback for hand-written blocks.
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ')) ++pos;
    if (pos == line.size()) break;
    auto end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    cols.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return cols;
}

std::optional<std::size_t> parse_index(std::string_view s) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

}  // namespace

std::vector<DepToken> read_dependency_block(std::string_view block) {
  struct Pending {
    DepToken token;
    std::size_t head_id;
    std::size_t line;
  };
  std::vector<Pending> pending;
  std::unordered_map<std::size_t, std::size_t> position_of_id;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= block.size()) {
    auto nl = block.find('\n', start);
    std::string_view line = block.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = (nl == std::string_view::npos) ? block.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    auto cols = split_columns(line);
    if (cols.size() != 10) {
      throw ParseError(line_no, "expected 10 columns, found " + std::to_string(cols.size()));
    }
    std::string_view id = cols[0];
    if (id.find('-') != std::string_view::npos || id.find('.') != std::string_view::npos) continue;

    auto index = parse_index(id);
    if (!index || *index == 0) throw ParseError(line_no, "invalid token index '" + std::string(id) + "'");
    auto head = parse_index(cols[6]);
    if (!head) throw ParseError(line_no, "non-integer head '" + std::string(cols[6]) + "'");
    if (*head == *index) throw ParseError(line_no, "token is its own head");
    if (!position_of_id.emplace(*index, pending.size()).second) {
      throw ParseError(line_no, "duplicate token index " + std::to_string(*index));
    }
    pending.push_back(Pending{DepToken{std::string(cols[1]), std::string(cols[3]), std::string(cols[7]), std::nullopt},
                              *head, line_no});
  }

  std::vector<DepToken> tokens;
  tokens.reserve(pending.size());
  std::size_t roots = 0;
  for (auto& p : pending) {
    if (p.head_id == 0) {
      if (++roots > 1) throw ParseError(p.line, "more than one root token");
    } else {
      auto it = position_of_id.find(p.head_id);
      if (it == position_of_id.end()) {
        throw ParseError(p.line, "head " + std::to_string(p.head_id) + " is not a token of this sentence");
      }
      p.token.head = it->second;
    }
    tokens.push_back(std::move(p.token));
  }
  if (roots == 0) throw ParseError(line_no, "no root token");
  return tokens;
}

std::string write_dependency_block(const std::vector<DepToken>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& t = tokens[i];
    std::size_t head = t.head ? *t.head + 1 : 0;
    out += std::to_string(i + 1) + '\t' + t.form + "\t_\t" + t.upos + "\t_\t_\t" + std::to_string(head) + '\t' +
           t.deprel + "\t_\t_\n";
  }
  return out;
}

}  // namespace synshift
