#include "line_act/homeo_text.hpp"

#include <cctype>
#include <string>

#include "line_act/error.hpp"

namespace lineact {

namespace {

class Parser {
 public:
  Parser(std::string_view text, int line, int first_column)
      : text_(text), line_(line), first_column_(first_column) {}

  HomeoExpr parse_all() {
    HomeoExpr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, first_column_ + static_cast<int>(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected an expression name");
    return std::string(text_.substr(start, pos_ - start));
  }

  // Raw argument text up to the next top-level ',' or ')'.
  std::string_view raw_argument() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')') ++pos_;
    if (start == pos_) fail("expected an argument");
    std::string_view arg = text_.substr(start, pos_ - start);
    while (!arg.empty() && std::isspace(static_cast<unsigned char>(arg.back()))) arg.remove_suffix(1);
    arg_start_ = start;
    return arg;
  }

  RealNum number() {
    const std::string_view arg = raw_argument();
    try {
      return RealNum::parse(arg);
    } catch (const Error& e) {
      pos_ = arg_start_;
      fail("invalid number '" + std::string(arg) + "'");
    }
  }

  long integer() {
    const std::string_view arg = raw_argument();
    try {
      std::size_t used = 0;
      const long v = std::stol(std::string(arg), &used);
      if (used == arg.size()) return v;
    } catch (const std::exception&) {
    }
    pos_ = arg_start_;
    fail("invalid integer '" + std::string(arg) + "'");
  }

  HomeoExpr expr() {
    skip_space();
    const std::size_t name_pos = pos_;
    const std::string name = identifier();
    auto guarded = [&](auto&& build) -> HomeoExpr {
      try {
        return build();
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        pos_ = name_pos;
        fail(e.what());
      }
    };
    if (name == "identity" || name == "id") return HomeoExpr::identity();
    if (name == "affine") {
      expect('(');
      RealNum a = number();
      expect(',');
      RealNum b = number();
      expect(')');
      return guarded([&] { return HomeoExpr::affine(a, b); });
    }
    if (name == "oddpower") {
      expect('(');
      const long p = integer();
      expect(',');
      const std::string dir = identifier();
      if (dir != "fwd" && dir != "forward" && dir != "root") fail("direction must be fwd or root");
      expect(')');
      if (p < 0) fail("power must be positive");
      return guarded([&] { return HomeoExpr::odd_power(static_cast<unsigned>(p), dir == "root"); });
    }
    if (name == "ladder" || name == "unitpowerladder") {
      expect('(');
      const long k = integer();
      expect(',');
      const long s = integer();
      expect(')');
      return guarded([&] { return HomeoExpr::ladder(k, static_cast<int>(s)); });
    }
    if (name == "bconj") {
      expect('(');
      HomeoExpr inner = expr();
      expect(')');
      return HomeoExpr::bounded_conjugate(std::move(inner));
    }
    if (name == "inverse") {
      expect('(');
      HomeoExpr inner = expr();
      expect(')');
      return HomeoExpr::inverse_node(std::move(inner));
    }
    if (name == "compose") {
      expect('(');
      std::vector<HomeoExpr> parts;
      parts.push_back(expr());
      while (accept(',')) parts.push_back(expr());
      expect(')');
      return HomeoExpr::compose(std::move(parts));
    }
    pos_ = name_pos;
    fail("unknown expression '" + name + "'");
  }

  std::string_view text_;
  int line_;
  int first_column_;
  std::size_t pos_ = 0;
  std::size_t arg_start_ = 0;
};

}  // namespace

HomeoExpr parse_homeo(std::string_view text, int line, int first_column) {
  return Parser(text, line, first_column).parse_all();
}

}  // namespace lineact
