#ifndef POLYSIZE_PARSER_H
#define POLYSIZE_PARSER_H

#include <string_view>

#include "polysize/ast.h"
#include "polysize/lexer.h"

namespace polysize {

// Surface syntax:
//   program  := { annot | letfun | letextern } [ "main" "=" expr | expr ]
//   annot    := id ":" ftype            (must precede the definition it names)
//   letfun   := "letfun" id "(" id {"," id} ")" "=" expr "in"
//   letextern:= "letextern" id "(" id {"," id} ")" "in"
//   expr     := "let" id "=" expr "in" expr
//             | "if" expr "then" expr "else" expr
//             | "match" expr "with" ["|"] "nil" "->" expr
//                                    "|" "cons" "(" id "," id ")" "->" expr
//             | "letfun" id "(" ids ")" [":" ftype] "=" expr "in" expr
//             | "letextern" id "(" ids ")" [":" ftype] "in" expr
//             | arith
//   arith    := term { ("+" | "-") term }
//   term     := atom { ("div" | "mod") atom }
//   atom     := int | "-" int | "nil" | "cons" "(" expr "," expr ")"
//             | id "(" [expr {"," expr}] ")" | id | "(" expr ")"
//             | "[" [expr {"," expr}] "]"
// The final "in" of the last top-level definition may be omitted.
Program parse_program(std::string_view text, LexOptions options = {});
ExprPtr parse_expr(std::string_view text, LexOptions options = {});

}  // namespace polysize

#endif  // POLYSIZE_PARSER_H
