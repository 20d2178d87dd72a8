#include "polysize/parser.h"

#include <charconv>
#include <set>
#include <utility>

namespace polysize {

namespace {

std::string describe(const Token& t) {
  if (t.is(TokenKind::kEnd)) return "end of input";
  return "'" + t.text + "'";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(idx_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  Token next() {
    Token t = peek();
    if (idx_ < toks_.size() - 1) ++idx_;
    return t;
  }
  bool at(TokenKind k) const { return peek().is(k); }
  bool at_kw(std::string_view w) const { return peek().is_keyword(w); }
  bool accept(TokenKind k) {
    if (!at(k)) return false;
    next();
    return true;
  }
  bool accept_kw(std::string_view w) {
    if (!at_kw(w)) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw SyntaxError(peek().pos, "unexpected " + describe(peek()),
                      std::move(expected));
  }
  Token expect(TokenKind k, const char* what) {
    if (!at(k)) fail({what});
    return next();
  }
  void expect_kw(std::string_view w) {
    if (!at_kw(w)) fail({"'" + std::string(w) + "'"});
    next();
  }
  std::string ident() { return expect(TokenKind::kIdent, "identifier").text; }

  std::vector<std::string> params() {
    expect(TokenKind::kLParen, "'('");
    std::vector<std::string> out;
    std::set<std::string> seen;
    do {
      SourcePos pos = peek().pos;
      std::string p = ident();
      if (!seen.insert(p).second)
        throw SyntaxError(pos, "duplicate parameter '" + p + "'");
      out.push_back(std::move(p));
    } while (accept(TokenKind::kComma));
    expect(TokenKind::kRParen, "')'");
    return out;
  }

  // ---- size polynomials and types ----

  Polynomial poly() {
    Polynomial out = poly_term();
    while (at(TokenKind::kPlus) || at(TokenKind::kMinus)) {
      bool minus = next().is(TokenKind::kMinus);
      Polynomial t = poly_term();
      out = minus ? out - t : out + t;
    }
    return out;
  }

  Polynomial poly_term() {
    Polynomial out = poly_factor();
    while (at(TokenKind::kStar) || at(TokenKind::kSlash)) {
      bool div = next().is(TokenKind::kSlash);
      SourcePos pos = peek().pos;
      Polynomial f = poly_factor();
      if (!div) {
        out = out * f;
        continue;
      }
      auto c = f.as_constant();
      if (!c || *c == 0)
        throw SyntaxError(pos, "size expressions divide only by nonzero "
                               "constants");
      out = out * Polynomial::constant(1 / *c);
    }
    return out;
  }

  Polynomial poly_factor() {
    if (accept(TokenKind::kMinus)) return -poly_factor();
    Polynomial base;
    if (at(TokenKind::kInt)) {
      base = Polynomial::constant(Rational(next().text));
    } else if (at(TokenKind::kIdent)) {
      base = Polynomial::variable(next().text);
    } else if (accept(TokenKind::kLParen)) {
      base = poly();
      expect(TokenKind::kRParen, "')'");
    } else {
      fail({"integer", "size variable", "'('"});
    }
    if (accept(TokenKind::kCaret)) {
      Token e = expect(TokenKind::kInt, "exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(e.text)));
    }
    return base;
  }

  SizedType type() {
    if (at(TokenKind::kIdent) && peek().text == "L" &&
        peek(1).is(TokenKind::kLParen)) {
      next();
      next();
      SizedType elem = type();
      expect(TokenKind::kComma, "','");
      Polynomial size = poly();
      expect(TokenKind::kRParen, "')'");
      return SizedType::list(std::move(elem), std::move(size));
    }
    if (at(TokenKind::kIdent)) {
      std::string name = next().text;
      if (name == "Int") return SizedType::integer();
      return SizedType::var(std::move(name));
    }
    fail({"'Int'", "type variable", "'L('"});
  }

  FirstOrderType ftype() {
    FirstOrderType out;
    if (!at(TokenKind::kArrow)) {
      out.params.push_back(type());
      while (accept(TokenKind::kStar)) out.params.push_back(type());
    }
    expect(TokenKind::kArrow, "'->'");
    out.result = type();
    return out;
  }

  // ---- expressions ----

  ExprPtr expr() {
    SourcePos pos = peek().pos;
    if (accept_kw("let")) {
      std::string x = ident();
      expect(TokenKind::kEquals, "'='");
      ExprPtr bound = expr();
      expect_kw("in");
      ExprPtr body = expr();
      return make_expr(Let{std::move(x), bound, body}, pos);
    }
    if (accept_kw("if")) {
      ExprPtr c = expr();
      expect_kw("then");
      ExprPtr t = expr();
      expect_kw("else");
      ExprPtr e = expr();
      return make_expr(If{c, t, e}, pos);
    }
    if (accept_kw("match")) {
      ExprPtr s = expr();
      expect_kw("with");
      accept(TokenKind::kBar);
      expect_kw("nil");
      expect(TokenKind::kArrow, "'->'");
      ExprPtr nil_branch = expr();
      expect(TokenKind::kBar, "'|'");
      expect_kw("cons");
      expect(TokenKind::kLParen, "'('");
      std::string hd = ident();
      expect(TokenKind::kComma, "','");
      std::string tl = ident();
      expect(TokenKind::kRParen, "')'");
      if (hd == tl)
        throw SyntaxError(pos, "match binders must be distinct");
      expect(TokenKind::kArrow, "'->'");
      ExprPtr cons_branch = expr();
      return make_expr(Match{s, std::move(hd), std::move(tl), nil_branch,
                             cons_branch},
                       pos);
    }
    if (accept_kw("letfun")) {
      auto def = std::make_shared<FunDef>();
      def->pos = pos;
      def->name = ident();
      def->params = params();
      if (accept(TokenKind::kColon)) def->declared_type = ftype();
      expect(TokenKind::kEquals, "'='");
      def->body = expr();
      expect_kw("in");
      ExprPtr body = expr();
      return make_expr(LetFun{def, body}, pos);
    }
    if (accept_kw("letextern")) {
      ExternDecl decl;
      decl.pos = pos;
      decl.name = ident();
      decl.params = params();
      if (accept(TokenKind::kColon)) decl.type = ftype();
      expect_kw("in");
      ExprPtr body = expr();
      return make_expr(LetExtern{std::move(decl), body}, pos);
    }
    return arith();
  }

  ExprPtr arith() {
    ExprPtr lhs = term();
    while (at(TokenKind::kPlus) || at(TokenKind::kMinus)) {
      Token op = next();
      ExprPtr rhs = term();
      lhs = make_expr(BinOp{op.is(TokenKind::kPlus) ? BinOpKind::kAdd
                                                    : BinOpKind::kSub,
                            lhs, rhs},
                      op.pos);
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = atom();
    while (at_kw("div") || at_kw("mod")) {
      Token op = next();
      ExprPtr rhs = atom();
      lhs = make_expr(
          BinOp{op.text == "div" ? BinOpKind::kDiv : BinOpKind::kMod, lhs,
                rhs},
          op.pos);
    }
    return lhs;
  }

  ExprPtr int_literal(bool negative, SourcePos pos) {
    Token t = expect(TokenKind::kInt, "integer");
    std::string digits = (negative ? "-" : "") + t.text;
    std::int64_t v = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
      throw SyntaxError(pos, "integer literal out of range");
    return make_expr(IntConst{v}, pos);
  }

  ExprPtr atom() {
    SourcePos pos = peek().pos;
    if (at(TokenKind::kInt)) return int_literal(false, pos);
    if (at(TokenKind::kMinus) && peek(1).is(TokenKind::kInt)) {
      next();
      return int_literal(true, pos);
    }
    if (accept_kw("nil")) return make_expr(Nil{}, pos);
    if (accept_kw("cons")) {
      expect(TokenKind::kLParen, "'('");
      ExprPtr hd = expr();
      expect(TokenKind::kComma, "','");
      ExprPtr tl = expr();
      expect(TokenKind::kRParen, "')'");
      return make_expr(Cons{hd, tl}, pos);
    }
    if (at(TokenKind::kIdent)) {
      std::string name = next().text;
      if (!accept(TokenKind::kLParen)) return make_var(std::move(name), pos);
      std::vector<ExprPtr> args;
      if (!at(TokenKind::kRParen)) {
        do {
          args.push_back(expr());
        } while (accept(TokenKind::kComma));
      }
      expect(TokenKind::kRParen, "')'");
      return make_expr(FunApp{std::move(name), std::move(args)}, pos);
    }
    if (accept(TokenKind::kLParen)) {
      ExprPtr e = expr();
      expect(TokenKind::kRParen, "')'");
      return e;
    }
    if (accept(TokenKind::kLBracket)) {
      std::vector<std::pair<ExprPtr, SourcePos>> items;
      if (!at(TokenKind::kRBracket)) {
        do {
          SourcePos ipos = peek().pos;
          items.emplace_back(expr(), ipos);
        } while (accept(TokenKind::kComma));
      }
      SourcePos end = expect(TokenKind::kRBracket, "']'").pos;
      ExprPtr out = make_expr(Nil{}, end);
      for (auto it = items.rbegin(); it != items.rend(); ++it)
        out = make_expr(Cons{it->first, out}, it->second);
      return out;
    }
    fail({"expression"});
  }

  // ---- programs ----

  Program program() {
    Program prog;
    std::set<std::string> names;
    std::optional<std::pair<std::string, SourcePos>> annotation;
    std::optional<FirstOrderType> annotated_type;

    auto take_annotation =
        [&](const std::string& name) -> std::optional<FirstOrderType> {
      if (!annotation) return std::nullopt;
      if (annotation->first != name)
        throw SyntaxError(annotation->second,
                          "annotation for '" + annotation->first +
                              "' is followed by the definition of '" + name +
                              "'");
      annotation.reset();
      return std::exchange(annotated_type, std::nullopt);
    };
    auto declare = [&](const std::string& name, SourcePos pos) {
      if (!names.insert(name).second)
        throw SyntaxError(pos, "duplicate definition of '" + name + "'");
    };
    // The closing "in" may be omitted after the final definition.
    auto close = [&] {
      if (accept_kw("in")) return;
      if (at(TokenKind::kEnd)) return;
      fail({"'in'"});
    };

    while (true) {
      SourcePos pos = peek().pos;
      if (at(TokenKind::kIdent) && peek(1).is(TokenKind::kColon)) {
        if (annotation)
          throw SyntaxError(annotation->second,
                            "annotation for '" + annotation->first +
                                "' is not followed by its definition");
        std::string name = next().text;
        next();
        annotated_type = ftype();
        annotation = {{name, pos}};
        continue;
      }
      if (accept_kw("letfun")) {
        auto def = std::make_shared<FunDef>();
        def->pos = pos;
        def->name = ident();
        declare(def->name, pos);
        def->declared_type = take_annotation(def->name);
        def->params = params();
        expect(TokenKind::kEquals, "'='");
        def->body = expr();
        close();
        prog.functions.push_back(std::move(def));
        continue;
      }
      if (accept_kw("letextern")) {
        ExternDecl decl;
        decl.pos = pos;
        decl.name = ident();
        declare(decl.name, pos);
        decl.type = take_annotation(decl.name);
        decl.params = params();
        close();
        prog.externs.push_back(std::move(decl));
        continue;
      }
      break;
    }
    if (annotation)
      throw SyntaxError(annotation->second,
                        "annotation for '" + annotation->first +
                            "' is not followed by its definition");
    if (accept_kw("main")) {
      expect(TokenKind::kEquals, "'='");
      prog.main = expr();
    } else if (!at(TokenKind::kEnd)) {
      prog.main = expr();
    }
    if (!at(TokenKind::kEnd)) fail({"end of input"});
    return prog;
  }

  void expect_end() {
    if (!at(TokenKind::kEnd)) fail({"end of input"});
  }

 private:
  std::vector<Token> toks_;
  std::size_t idx_ = 0;
};

}  // namespace

Program parse_program(std::string_view text, LexOptions options) {
  Parser p(tokenize(text, options));
  return p.program();
}

ExprPtr parse_expr(std::string_view text, LexOptions options) {
  Parser p(tokenize(text, options));
  ExprPtr e = p.expr();
  p.expect_end();
  return e;
}

Polynomial Polynomial::parse(std::string_view text) {
  Parser p(tokenize(text));
  Polynomial out = p.poly();
  p.expect_end();
  return out;
}

SizedType SizedType::parse(std::string_view text) {
  Parser p(tokenize(text));
  SizedType out = p.type();
  p.expect_end();
  return out;
}

FirstOrderType FirstOrderType::parse(std::string_view text) {
  Parser p(tokenize(text));
  FirstOrderType out = p.ftype();
  p.expect_end();
  return out;
}

}  // namespace polysize
