#ifndef POLYSIZE_LEXER_H
#define POLYSIZE_LEXER_H

#include <string>
#include <string_view>
#include <vector>

#include "polysize/errors.h"

namespace polysize {

enum class TokenKind {
  kIdent,
  kInt,
  kKeyword,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kComma,
  kColon,
  kEquals,
  kArrow,
  kBar,
  kPlus,
  kMinus,
  kStar,
  kSlash,
  kCaret,
  kEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  SourcePos pos;

  bool is(TokenKind k) const { return kind == k; }
  bool is_keyword(std::string_view word) const {
    return kind == TokenKind::kKeyword && text == word;
  }
};

struct LexOptions {
  // Allows '$' inside identifiers. Only generated code (desugaring, inhabitant
  // synthesis) uses such names.
  bool allow_reserved_names = false;
};

// "--" starts a line comment.
std::vector<Token> tokenize(std::string_view source, LexOptions options = {});

bool is_keyword(std::string_view word);

}  // namespace polysize

#endif  // POLYSIZE_LEXER_H
