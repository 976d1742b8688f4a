#include "surgery/text.hpp"

#include <cctype>

namespace surgery {

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

}  // namespace

std::vector<SourceLine> tokenize(std::string_view text) {
  std::vector<SourceLine> lines;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    ++number;
    std::string_view raw = text.substr(start, stop - start);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    SourceLine line{number, std::string(raw), {}};
    std::size_t i = 0;
    bool glued = false;
    while (i < raw.size()) {
      const char c = raw[i];
      const int column = static_cast<int>(i) + 1;
      if (c == '#') break;
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        glued = false;
        continue;
      }
      Token tok{TokenKind::Punct, "", number, column, glued};
      if (ident_start(c)) {
        std::size_t j = i;
        while (j < raw.size() && ident_char(raw[j])) ++j;
        tok.kind = TokenKind::Ident;
        tok.text = std::string(raw.substr(i, j - i));
        i = j;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < raw.size() && std::isdigit(static_cast<unsigned char>(raw[j]))) ++j;
        tok.kind = TokenKind::Number;
        tok.text = std::string(raw.substr(i, j - i));
        i = j;
      } else if (c == '"') {
        std::size_t j = i + 1;
        while (j < raw.size() && raw[j] != '"') ++j;
        if (j >= raw.size()) throw ParseError(number, column, "unterminated string");
        tok.kind = TokenKind::String;
        tok.text = std::string(raw.substr(i + 1, j - i - 1));
        i = j + 1;
      } else if (c == '.' && i + 1 < raw.size() && raw[i + 1] == '.') {
        tok.kind = TokenKind::Range;
        tok.text = "..";
        i += 2;
      } else if (std::string_view("()[],=+-*^:/").find(c) != std::string_view::npos) {
        tok.text = std::string(1, c);
        ++i;
      } else {
        throw ParseError(number, column, std::string("unexpected character '") + c + "'");
      }
      line.tokens.push_back(std::move(tok));
      glued = true;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (stop == text.size()) break;
    start = stop + 1;
  }
  return lines;
}

TokenCursor::TokenCursor(const SourceLine& line) : line_(&line) {
  end_.kind = TokenKind::End;
  end_.line = line.number;
  end_.column = static_cast<int>(line.raw.size()) + 1;
}

const Token& TokenCursor::peek(std::size_t ahead) const {
  return pos_ + ahead < line_->tokens.size() ? line_->tokens[pos_ + ahead] : end_;
}

const Token& TokenCursor::next() {
  const Token& t = peek();
  if (pos_ < line_->tokens.size()) ++pos_;
  return t;
}

bool TokenCursor::at_end() const { return pos_ >= line_->tokens.size(); }

bool TokenCursor::peek_punct(std::string_view p) const {
  const Token& t = peek();
  return (t.kind == TokenKind::Punct || t.kind == TokenKind::Range) && t.text == p;
}

bool TokenCursor::accept_punct(std::string_view p) {
  if (!peek_punct(p)) return false;
  next();
  return true;
}

void TokenCursor::expect_punct(std::string_view p) {
  if (!accept_punct(p)) {
    const Token& t = peek();
    throw error_at(t, "expected '" + std::string(p) + "'" + (t.kind == TokenKind::End ? " at end of line" : ", found '" + t.text + "'"));
  }
}

std::string TokenCursor::expect_ident(std::string_view what) {
  const Token& t = peek();
  if (t.kind != TokenKind::Ident) {
    throw error_at(t, "expected " + std::string(what) + (t.kind == TokenKind::End ? "" : ", found '" + t.text + "'"));
  }
  return next().text;
}

ParseError TokenCursor::error(const std::string& message) const { return error_at(peek(), message); }

ParseError TokenCursor::error_at(const Token& token, const std::string& message) const {
  return ParseError(token.line, token.column, message);
}

void TokenCursor::expect_end() {
  if (!at_end()) throw error("unexpected '" + peek().text + "'");
}

bool TokenCursor::at_keyword_arg() const {
  return peek().kind == TokenKind::Ident && peek(1).kind == TokenKind::Punct && peek(1).text == "=";
}

long TokenCursor::expect_signed_int() {
  bool negative = false;
  if (accept_punct("-")) {
    negative = true;
  } else {
    accept_punct("+");
  }
  const Token& t = peek();
  if (t.kind != TokenKind::Number) throw error_at(t, "expected an integer");
  next();
  long v = 0;
  try {
    v = std::stol(t.text);
  } catch (const std::out_of_range&) {
    throw error_at(t, "integer out of range");
  }
  return negative ? -v : v;
}

std::vector<int> TokenCursor::expect_weight_tuple() {
  expect_punct("(");
  std::vector<int> out;
  for (;;) {
    const long value = expect_signed_int();
    long repeat = 1;
    if (accept_punct("^")) {
      const Token& at = peek();
      repeat = expect_signed_int();
      if (repeat < 1 || repeat > 100000) throw error_at(at, "repeat count out of range");
    }
    for (long r = 0; r < repeat; ++r) out.push_back(static_cast<int>(value));
    if (accept_punct(",")) continue;
    expect_punct(")");
    return out;
  }
}

std::vector<std::string> TokenCursor::expect_ident_list() {
  expect_punct("[");
  std::vector<std::string> out;
  if (accept_punct("]")) return out;
  for (;;) {
    out.push_back(expect_ident("a name"));
    if (accept_punct(",")) continue;
    expect_punct("]");
    return out;
  }
}

std::vector<std::string> expand_name_range(const std::string& first, const std::string& last) {
  auto split = [](const std::string& s) {
    std::size_t cut = s.size();
    while (cut > 0 && std::isdigit(static_cast<unsigned char>(s[cut - 1]))) --cut;
    return std::make_pair(s.substr(0, cut), s.substr(cut));
  };
  const auto [p1, n1] = split(first);
  const auto [p2, n2] = split(last);
  if (p1.empty() || n1.empty() || n2.empty() || p1 != p2) {
    throw std::invalid_argument("bad name range " + first + ".." + last);
  }
  const int a = std::stoi(n1);
  const int b = std::stoi(n2);
  if (a > b || b - a > 100000) throw std::invalid_argument("bad name range " + first + ".." + last);
  std::vector<std::string> out;
  for (int i = a; i <= b; ++i) out.push_back(p1 + std::to_string(i));
  return out;
}

}  // namespace surgery
