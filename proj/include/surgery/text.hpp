#pragma once

// Line-oriented tokenizer shared by the lattice dataset format and the
// surgery-script language.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace surgery {

/// Error with a 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);

  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }
  [[nodiscard]] const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

enum class TokenKind { Ident, Number, String, Punct, Range, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  int line = 0;
  int column = 0;
  /// True when no whitespace separates this token from the previous one.
  bool glued = false;
};

/// One logical line: its tokens (comments stripped) and the raw text.
struct SourceLine {
  int number = 0;
  std::string raw;
  std::vector<Token> tokens;
};

/// Splits text into non-empty lines of tokens. Identifiers are
/// [A-Za-z_][A-Za-z0-9_']*; ".." is a range token; '#' starts a comment.
std::vector<SourceLine> tokenize(std::string_view text);

/// Sequential reader over one line's tokens.
class TokenCursor {
 public:
  explicit TokenCursor(const SourceLine& line);

  [[nodiscard]] const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  [[nodiscard]] bool at_end() const;
  [[nodiscard]] bool peek_punct(std::string_view p) const;
  bool accept_punct(std::string_view p);
  void expect_punct(std::string_view p);
  std::string expect_ident(std::string_view what);
  [[nodiscard]] ParseError error(const std::string& message) const;
  [[nodiscard]] ParseError error_at(const Token& token, const std::string& message) const;
  void expect_end();
  [[nodiscard]] int line_number() const { return line_->number; }

  /// key=value lookahead: IDENT '=' .
  [[nodiscard]] bool at_keyword_arg() const;

  /// Reads "-2", "+3", "17".
  long expect_signed_int();
  /// Reads "(-18, -19, -2^14, -3)" as expanded weights.
  std::vector<int> expect_weight_tuple();
  /// Reads "[a, b, c]".
  std::vector<std::string> expect_ident_list();

 private:
  const SourceLine* line_;
  std::size_t pos_ = 0;
  Token end_;
};

/// Expands "E1".."E24" into E1, ..., E24. Both names must share a
/// non-numeric prefix and end in decimal indices with first <= last.
std::vector<std::string> expand_name_range(const std::string& first, const std::string& last);

}  // namespace surgery
