#include "line_act/spec_file.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "line_act/error.hpp"
#include "line_act/gallery.hpp"
#include "line_act/homeo_text.hpp"

namespace lineact {

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
  }
  return out;
}

long token_integer(const Token& t, int line) {
  try {
    std::size_t used = 0;
    const long v = std::stol(t.text, &used);
    if (used == t.text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("expected an integer, found '" + t.text + "'", line, t.column);
}

Presentation parse_group(const std::vector<Token>& tokens, int line) {
  if (tokens.size() < 2) throw ParseError("missing group family", line, tokens.front().column + 6);
  const std::string& family = tokens[1].text;
  try {
    if (family == "free" || family == "abelian") {
      if (tokens.size() != 3) throw ParseError("expected: group " + family + " <rank>", line, tokens[1].column);
      const long r = token_integer(tokens[2], line);
      if (r <= 0) throw ParseError("rank must be positive", line, tokens[2].column);
      return family == "free" ? Presentation::free(static_cast<unsigned>(r))
                              : Presentation::free_abelian(static_cast<unsigned>(r));
    }
    if (family == "bs") {
      if (tokens.size() != 4) throw ParseError("expected: group bs 1 <n>", line, tokens[1].column);
      if (token_integer(tokens[2], line) != 1) {
        throw ParseError("only BS(1, n) groups are supported", line, tokens[2].column);
      }
      const long n = token_integer(tokens[3], line);
      if (n == 0) throw ParseError("n must be nonzero", line, tokens[3].column);
      return Presentation::baumslag_solitar(n);
    }
    if (family == "ladder") {
      std::vector<int> name;
      for (std::size_t i = 2; i < tokens.size(); ++i) {
        const long v = token_integer(tokens[i], line);
        if (v != 1 && v != -1) throw ParseError("ladder entries must be 1 or -1", line, tokens[i].column);
        name.push_back(static_cast<int>(v));
      }
      return Presentation::ladder(std::move(name));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), line, tokens[1].column);
  }
  throw ParseError("unknown group family '" + family + "'", line, tokens[1].column);
}

}  // namespace

Action parse_action_spec(std::string_view text, const std::string& name) {
  std::optional<Presentation> group;
  std::vector<std::string> labels;
  std::vector<HomeoExpr> images;
  int line_no = 0;
  std::size_t pos = 0;
  int last_line = 1;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    const auto hash = raw.find('#');
    const std::string_view line = hash == std::string_view::npos ? raw : raw.substr(0, hash);
    const std::vector<Token> tokens = split_tokens(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    last_line = line_no;
    if (tokens[0].text == "group") {
      if (group) throw ParseError("duplicate group header", line_no, tokens[0].column);
      group = parse_group(tokens, line_no);
    } else if (tokens[0].text == "gen") {
      if (!group) throw ParseError("generator declared before the group header", line_no, tokens[0].column);
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) throw ParseError("expected 'gen <name> = <expression>'", line_no, tokens[0].column);
      const std::vector<Token> lhs = split_tokens(line.substr(0, eq));
      if (lhs.size() != 2) throw ParseError("expected a single generator name", line_no, tokens[0].column);
      const std::string& label = lhs[1].text;
      for (char c : label) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
          throw ParseError("invalid generator name '" + label + "'", line_no, lhs[1].column);
        }
      }
      for (const auto& l : labels) {
        if (l == label) throw ParseError("duplicate generator '" + label + "'", line_no, lhs[1].column);
      }
      if (labels.size() >= group->rank()) {
        throw ParseError("more generators than the group's rank " + std::to_string(group->rank()), line_no,
                         lhs[1].column);
      }
      labels.push_back(label);
      images.push_back(parse_homeo(line.substr(eq + 1), line_no, static_cast<int>(eq) + 2));
    } else {
      throw ParseError("unknown directive '" + tokens[0].text + "'", line_no, tokens[0].column);
    }
    if (end == text.size()) break;
  }
  if (!group) throw ParseError("missing group header", 1, 1);
  if (labels.size() != group->rank()) {
    throw ParseError("expected " + std::to_string(group->rank()) + " generators, found " +
                         std::to_string(labels.size()),
                     last_line, 1);
  }
  return Action(group->with_labels(std::move(labels)), std::move(images), name);
}

Action load_action_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadParameter, "cannot open action file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_action_spec(buffer.str(), path);
}

Action load_action(const std::string& source) {
  if (source.rfind("gallery:", 0) == 0) return gallery_from_id(source);
  return load_action_spec(source);
}

}  // namespace lineact
