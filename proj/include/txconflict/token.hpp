#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace txconflict {

enum class TokenKind {
  Identifier,
  Keyword,
  Number,
  String,
  Operator,
  Punct,
  /// Everything between `pragma <name>` and the closing `;`, kept verbatim.
  PragmaText,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::Punct;
  std::string text;
  int line = 0;
  int column = 0;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
  bool is_punct(std::string_view t) const { return is(TokenKind::Punct, t); }
  bool is_op(std::string_view t) const { return is(TokenKind::Operator, t); }

  // Positions are not part of a token's identity.
  friend bool operator==(const Token& a, const Token& b) {
    return a.kind == b.kind && a.text == b.text;
  }
};

using TokenStream = std::vector<Token>;

/// True for reserved words and elementary type names (`uint256`, `bytes32`, ...).
bool is_keyword(std::string_view word);

/// True for elementary type names only.
bool is_elementary_type(std::string_view word);

/// Splits Solidity source into classified tokens. Comments and whitespace are
/// dropped. Throws LexError on unterminated strings/comments and on bytes that
/// cannot start a token.
TokenStream tokenize(std::string_view source);

/// Joins tokens with single spaces; re-tokenizing the result reproduces the
/// same stream.
std::string join_tokens(const TokenStream& tokens);

}  // namespace txconflict
