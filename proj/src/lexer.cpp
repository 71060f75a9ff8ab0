#include "txconflict/errors.hpp"
#include "txconflict/token.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <charconv>
#include <string>

namespace txconflict {

namespace {

constexpr std::string_view kReserved[] = {
    "abstract", "anonymous", "as", "assembly", "break", "calldata", "catch", "constant",
    "constructor", "continue", "contract", "delete", "do", "else", "emit", "enum",
    "event", "external", "fallback", "false", "for", "function", "if", "immutable", "import",
    "indexed", "interface", "internal", "is", "library", "mapping", "memory", "modifier", "new",
    "override", "payable", "pragma", "private", "public", "pure", "receive", "return",
    "returns", "revert", "storage", "struct", "true", "try", "type", "unchecked", "using",
    "view", "virtual", "while", "address", "bool", "string", "byte", "bytes", "int", "uint",
    "fixed", "ufixed", "var", "after", "case", "default"};

// Longest operators first so that maximal munch works by linear scan.
constexpr std::string_view kOperators[] = {
    ">>>=", ">>>", "<<=", ">>=", "**", "++", "--", "+=", "-=", "*=", "/=", "%=", "|=",
    "&=",   "^=",  "==",  "!=",  "<=", ">=", "&&", "||", "<<", ">>", "=>", "->", "+",
    "-",    "*",   "/",   "%",   "=",  "<",  ">",  "!",  "~",  "&",  "|",  "^"};

bool is_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
}

bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_hex_digit(char c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  TokenStream run() {
    TokenStream out;
    while (true) {
      skip_trivia();
      if (at_end()) break;
      const int line = line_;
      const int col = col_;
      const char c = peek();
      Token tok;
      if (is_ident_start(c)) {
        tok = identifier();
      } else if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
        tok = number();
      } else if (c == '"' || c == '\'') {
        tok = string_literal();
      } else if (std::string_view("(){}[];,.?:").find(c) != std::string_view::npos) {
        advance();
        tok = Token{TokenKind::Punct, std::string(1, c), 0, 0};
      } else {
        tok = op(line, col);
      }
      tok.line = line;
      tok.column = col;
      const bool pragma = tok.is_keyword("pragma");
      out.push_back(std::move(tok));
      if (pragma) out.push_back(pragma_text());
    }
    return out;
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  [[noreturn]] void fail(const std::string& msg, int line, int col) const {
    throw LexError(msg + " at " + std::to_string(line) + ":" + std::to_string(col), line, col);
  }

  void skip_trivia() {
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        const int line = line_;
        const int col = col_;
        advance();
        advance();
        while (true) {
          if (at_end()) fail("unterminated block comment", line, col);
          if (peek() == '*' && peek(1) == '/') {
            advance();
            advance();
            break;
          }
          advance();
        }
      } else {
        break;
      }
    }
  }

  Token identifier() {
    std::string text;
    while (!at_end() && is_ident_char(peek())) text += advance();
    const auto kind = is_keyword(text) ? TokenKind::Keyword : TokenKind::Identifier;
    return Token{kind, std::move(text), 0, 0};
  }

  Token number() {
    std::string text;
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      text += advance();
      text += advance();
      while (!at_end() && (is_hex_digit(peek()) || peek() == '_')) text += advance();
    } else {
      while (!at_end() && (is_digit(peek()) || peek() == '_')) text += advance();
      if (peek() == '.' && is_digit(peek(1))) {
        text += advance();
        while (!at_end() && (is_digit(peek()) || peek() == '_')) text += advance();
      }
      if ((peek() == 'e' || peek() == 'E') &&
          (is_digit(peek(1)) || (peek(1) == '-' && is_digit(peek(2))))) {
        text += advance();
        if (peek() == '-') text += advance();
        while (!at_end() && is_digit(peek())) text += advance();
      }
    }
    return Token{TokenKind::Number, std::move(text), 0, 0};
  }

  Token string_literal() {
    const int line = line_;
    const int col = col_;
    const char quote = advance();
    std::string text(1, quote);
    while (true) {
      if (at_end() || peek() == '\n') fail("unterminated string literal", line, col);
      const char c = advance();
      text += c;
      if (c == '\\') {
        if (at_end()) fail("unterminated string literal", line, col);
        text += advance();
      } else if (c == quote) {
        break;
      }
    }
    return Token{TokenKind::String, std::move(text), 0, 0};
  }

  Token op(int line, int col) {
    for (const auto candidate : kOperators) {
      if (src_.substr(pos_, candidate.size()) == candidate) {
        for (std::size_t i = 0; i < candidate.size(); ++i) advance();
        return Token{TokenKind::Operator, std::string(candidate), 0, 0};
      }
    }
    const auto byte = static_cast<unsigned char>(peek());
    fail("illegal character (byte " + std::to_string(byte) + ")", line, col);
  }

  Token pragma_text() {
    skip_trivia();
    const int line = line_;
    const int col = col_;
    std::string text;
    while (true) {
      if (at_end()) fail("unterminated pragma directive", line, col);
      if (peek() == ';') break;
      text += advance();
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
    if (text.empty()) fail("empty pragma directive", line, col);
    return Token{TokenKind::PragmaText, std::move(text), line, col};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Number: return "number";
    case TokenKind::String: return "string";
    case TokenKind::Operator: return "operator";
    case TokenKind::Punct: return "punct";
    case TokenKind::PragmaText: return "pragma-text";
  }
  return "?";
}

bool is_elementary_type(std::string_view word) {
  if (word == "address" || word == "bool" || word == "string" || word == "byte" ||
      word == "bytes" || word == "int" || word == "uint" || word == "fixed" || word == "ufixed") {
    return true;
  }
  auto sized = [&](std::string_view prefix, int lo, int hi, int step) {
    if (word.size() <= prefix.size() || word.substr(0, prefix.size()) != prefix) return false;
    const auto digits = word.substr(prefix.size());
    if (!is_digits(digits) || digits.front() == '0') return false;
    int n = 0;
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (res.ec != std::errc{}) return false;
    return n >= lo && n <= hi && n % step == 0;
  };
  return sized("uint", 8, 256, 8) || sized("int", 8, 256, 8) || sized("bytes", 1, 32, 1);
}

bool is_keyword(std::string_view word) {
  return is_elementary_type(word) ||
         std::find(std::begin(kReserved), std::end(kReserved), word) != std::end(kReserved);
}

TokenStream tokenize(std::string_view source) { return Lexer(source).run(); }

std::string join_tokens(const TokenStream& tokens) {
  std::string out;
  for (const auto& tok : tokens) {
    if (!out.empty()) out += ' ';
    out += tok.text;
  }
  return out;
}

}  // namespace txconflict
