#include "contnum/sexpr.hpp"

#include <cctype>

#include "contnum/error.hpp"

namespace contnum {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr read_top() {
    skip_space();
    SExpr e = read();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input after expression");
    return e;
  }

 private:
  SExpr read() {
    skip_space();
    if (pos_ == text_.size()) fail("unexpected end of input");
    const std::size_t start = pos_;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      SExpr list;
      list.kind = SExpr::Kind::List;
      list.offset = start;
      for (;;) {
        skip_space();
        if (pos_ == text_.size()) fail("unterminated list", start);
        if (text_[pos_] == ')') {
          ++pos_;
          return list;
        }
        list.items.push_back(read());
      }
    }
    if (c == ')') fail("unexpected ')'");
    if (c == '"') return read_string();

    SExpr atom;
    atom.kind = SExpr::Kind::Symbol;
    atom.offset = start;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')' && text_[pos_] != '"') {
      ++pos_;
    }
    atom.text = std::string(text_.substr(start, pos_ - start));
    return atom;
  }

  SExpr read_string() {
    SExpr s;
    s.kind = SExpr::Kind::String;
    s.offset = pos_;
    ++pos_;
    for (;;) {
      if (pos_ == text_.size()) fail("unterminated string", s.offset);
      const char c = text_[pos_++];
      if (c == '"') return s;
      if (c == '\\') {
        if (pos_ == text_.size()) fail("dangling escape");
        const char e = text_[pos_++];
        if (e != '"' && e != '\\') fail("unknown escape", pos_ - 2);
        s.text.push_back(e);
      } else {
        s.text.push_back(c);
      }
    }
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }
  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw Error(ErrorCode::Syntax, what, at);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SExpr parse_sexpr(std::string_view text) { return Reader(text).read_top(); }

std::string quote_string(std::string_view raw) {
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string to_string(const SExpr& e) {
  switch (e.kind) {
    case SExpr::Kind::Symbol: return e.text;
    case SExpr::Kind::String: return quote_string(e.text);
    case SExpr::Kind::List: {
      std::string out = "(";
      for (std::size_t i = 0; i < e.items.size(); ++i) {
        if (i > 0) out += " ";
        out += to_string(e.items[i]);
      }
      return out + ")";
    }
  }
  return {};
}

}  // namespace contnum
