#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace contnum {

/// Minimal s-expression tree shared by the formula-code, real-source and
/// recipe grammars. Atoms are symbols or double-quoted strings (with \" and
/// \\ escapes); every node remembers the byte offset it started at.
struct SExpr {
  enum class Kind { Symbol, String, List };

  Kind kind = Kind::List;
  std::string text;
  std::vector<SExpr> items;
  std::size_t offset = 0;

  bool is_symbol() const { return kind == Kind::Symbol; }
  bool is_symbol(std::string_view s) const { return kind == Kind::Symbol && text == s; }
  bool is_string() const { return kind == Kind::String; }
  bool is_list() const { return kind == Kind::List; }
  /// List whose first element is the given symbol.
  bool is_form(std::string_view head) const { return is_list() && !items.empty() && items[0].is_symbol(head); }
};

/// Parses exactly one expression; anything but whitespace after it is an error.
SExpr parse_sexpr(std::string_view text);

/// Double-quoted string literal with escapes, the inverse of the reader.
std::string quote_string(std::string_view raw);

std::string to_string(const SExpr& e);

}  // namespace contnum
