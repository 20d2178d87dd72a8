#include "polysize/lexer.h"

#include <array>
#include <cctype>

namespace polysize {

namespace {

constexpr std::array<std::string_view, 14> kKeywords = {
    "letfun", "letextern", "let", "in",  "if",  "then", "else",
    "match",  "with",      "nil", "cons", "main", "div", "mod",
};

bool ident_start(char c, bool reserved) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
         (reserved && c == '$');
}

bool ident_char(char c, bool reserved) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
         c == '\'' || (reserved && c == '$');
}

}  // namespace

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords)
    if (k == word) return true;
  return false;
}

std::vector<Token> tokenize(std::string_view src, LexOptions options) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto push = [&](TokenKind kind, std::size_t len) {
    out.push_back(Token{kind, std::string(src.substr(i, len)), {line, col}});
    advance(len);
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (ident_start(c, options.allow_reserved_names)) {
      std::size_t j = i + 1;
      while (j < src.size() && ident_char(src[j], options.allow_reserved_names))
        ++j;
      std::string_view word = src.substr(i, j - i);
      push(is_keyword(word) ? TokenKind::kKeyword : TokenKind::kIdent, j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      push(TokenKind::kInt, j - i);
      continue;
    }
    switch (c) {
      case '(': push(TokenKind::kLParen, 1); continue;
      case ')': push(TokenKind::kRParen, 1); continue;
      case '[': push(TokenKind::kLBracket, 1); continue;
      case ']': push(TokenKind::kRBracket, 1); continue;
      case ',': push(TokenKind::kComma, 1); continue;
      case ':': push(TokenKind::kColon, 1); continue;
      case '=': push(TokenKind::kEquals, 1); continue;
      case '|': push(TokenKind::kBar, 1); continue;
      case '+': push(TokenKind::kPlus, 1); continue;
      case '*': push(TokenKind::kStar, 1); continue;
      case '/': push(TokenKind::kSlash, 1); continue;
      case '^': push(TokenKind::kCaret, 1); continue;
      case '-':
        if (i + 1 < src.size() && src[i + 1] == '>') {
          push(TokenKind::kArrow, 2);
        } else {
          push(TokenKind::kMinus, 1);
        }
        continue;
      default:
        break;
    }
    throw SyntaxError({line, col},
                      std::string("unexpected character '") + c + "'");
  }
  out.push_back(Token{TokenKind::kEnd, "", {line, col}});
  return out;
}

}  // namespace polysize
