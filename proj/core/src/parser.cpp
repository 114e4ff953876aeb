#include "vcdlab/parser.hpp"

#include <cctype>

#include "vcdlab/errors.hpp"

namespace vcdlab {

namespace {

enum class Tok {
  Ident,
  Int,
  At,
  LParen,
  RParen,
  Comma,
  Dot,
  Amp,
  Pipe,
  Bang,
  Arrow,
  IffTok,
  Less,
  Equal,
  CountOpen,  // "[>="
  RBracket,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  long long number = 0;
  int offset = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    cur_.offset = static_cast<int>(pos_);
    if (pos_ >= src_.size()) {
      cur_.kind = Tok::End;
      cur_.text.clear();
      return;
    }
    const char c = src_[pos_];
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
        ++end;
      cur_.kind = Tok::Ident;
      cur_.text = std::string(src_.substr(pos_, end - pos_));
      pos_ = end;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t end = pos_;
      long long v = 0;
      while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end])))
        v = v * 10 + (src_[end++] - '0');
      cur_.kind = Tok::Int;
      cur_.number = v;
      cur_.text = std::string(src_.substr(pos_, end - pos_));
      pos_ = end;
      return;
    }
    if (c == '<' && src_.substr(pos_, 3) == "<->") {
      cur_.kind = Tok::IffTok;
      pos_ += 3;
      return;
    }
    if (two('-', '>')) {
      cur_.kind = Tok::Arrow;
      pos_ += 2;
      return;
    }
    if (c == '[' && src_.substr(pos_, 3) == "[>=") {
      cur_.kind = Tok::CountOpen;
      pos_ += 3;
      return;
    }
    ++pos_;
    switch (c) {
      case '(': cur_.kind = Tok::LParen; return;
      case ')': cur_.kind = Tok::RParen; return;
      case ',': cur_.kind = Tok::Comma; return;
      case '.': cur_.kind = Tok::Dot; return;
      case '&': cur_.kind = Tok::Amp; return;
      case '|': cur_.kind = Tok::Pipe; return;
      case '!': cur_.kind = Tok::Bang; return;
      case '<': cur_.kind = Tok::Less; return;
      case '=': cur_.kind = Tok::Equal; return;
      case ']': cur_.kind = Tok::RBracket; return;
      case '@': cur_.kind = Tok::At; return;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'",
                         static_cast<int>(pos_ - 1));
    }
  }

  std::string_view src_;
  size_t pos_ = 0;
  Token cur_;
};

class Parser {
 public:
  Parser(std::string_view src, const ParseContext& ctx) : lex_(src), ctx_(ctx) {}

  Formula parse() {
    Formula f = parse_iff();
    expect(Tok::End, "trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what, int offset) const { throw ParseError(what, offset); }

  void expect(Tok kind, const char* what) {
    if (lex_.peek().kind != kind) fail(std::string("expected ") + what, lex_.peek().offset);
    lex_.take();
  }

  Formula parse_iff() {
    Formula f = parse_imp();
    while (lex_.peek().kind == Tok::IffTok) {
      lex_.take();
      f = Formula::iff(std::move(f), parse_imp());
    }
    return f;
  }

  Formula parse_imp() {
    std::vector<Formula> parts;
    parts.push_back(parse_or());
    while (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      parts.push_back(parse_or());
    }
    Formula f = std::move(parts.back());
    for (int i = static_cast<int>(parts.size()) - 2; i >= 0; --i)
      f = Formula::implies(std::move(parts[static_cast<size_t>(i)]), std::move(f));
    return f;
  }

  Formula parse_or() {
    std::vector<Formula> parts;
    parts.push_back(parse_and());
    while (lex_.peek().kind == Tok::Pipe) {
      lex_.take();
      parts.push_back(parse_and());
    }
    return Formula::disjunction(std::move(parts));
  }

  Formula parse_and() {
    std::vector<Formula> parts;
    parts.push_back(parse_unary());
    while (lex_.peek().kind == Tok::Amp) {
      lex_.take();
      parts.push_back(parse_unary());
    }
    return Formula::conjunction(std::move(parts));
  }

  Formula parse_unary() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Bang) {
      lex_.take();
      return Formula::negation(parse_unary());
    }
    if (t.kind == Tok::LParen) {
      lex_.take();
      Formula f = parse_iff();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind == Tok::Ident && (t.text == "exists" || t.text == "forall")) return parse_quant();
    return parse_atom();
  }

  Formula parse_quant() {
    Token q = lex_.take();
    const bool is_forall = q.text == "forall";
    int count = 0;  // 0: plain quantifier
    if (lex_.peek().kind == Tok::CountOpen) {
      Token open = lex_.take();
      if (is_forall) fail("counting annotation only applies to exists", open.offset);
      if (lex_.peek().kind != Tok::Int) fail("expected count", lex_.peek().offset);
      Token k = lex_.take();
      if (k.number < 1) fail("counting quantifier requires k >= 1", k.offset);
      count = static_cast<int>(k.number);
      expect(Tok::RBracket, "']'");
    }
    if (lex_.peek().kind != Tok::Ident) fail("expected variable", lex_.peek().offset);
    Token v = lex_.take();
    expect(Tok::Dot, "'.'");
    Formula body = parse_unary();
    if (is_forall) return Formula::forall(v.text, std::move(body));
    if (count > 0) return Formula::count_at_least(count, v.text, std::move(body));
    return Formula::exists(v.text, std::move(body));
  }

  Formula parse_atom() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Ident) {
      // lookahead for relation application
      Token name = lex_.take();
      if (lex_.peek().kind == Tok::LParen) {
        lex_.take();
        std::vector<Term> terms;
        terms.push_back(parse_term());
        while (lex_.peek().kind == Tok::Comma) {
          lex_.take();
          terms.push_back(parse_term());
        }
        expect(Tok::RParen, "')'");
        check_relation(name.text, static_cast<int>(terms.size()), name.offset);
        return Formula::atom(name.text, std::move(terms));
      }
      return parse_infix(Term::variable(name.text), name.offset);
    }
    Token start = lex_.peek();
    Term lhs = parse_term();
    return parse_infix(std::move(lhs), start.offset);
  }

  Formula parse_infix(Term lhs, int at) {
    const Token& op = lex_.peek();
    if (op.kind == Tok::Less) {
      Token o = lex_.take();
      Term rhs = parse_term();
      check_relation(ctx_.order_rel, 2, o.offset);
      return Formula::atom(ctx_.order_rel, {std::move(lhs), std::move(rhs)});
    }
    if (op.kind == Tok::Equal) {
      lex_.take();
      Term rhs = parse_term();
      return Formula::eq(std::move(lhs), std::move(rhs));
    }
    fail("expected '<' or '=' after term", op.kind == Tok::End ? op.offset : at);
  }

  Term parse_term() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Ident) return Term::variable(lex_.take().text);
    if (t.kind == Tok::At) {
      lex_.take();
      const Token& c = lex_.peek();
      if (c.kind == Tok::Int) {
        Token k = lex_.take();
        if (ctx_.structure &&
            (k.number < 0 || k.number >= ctx_.structure->universe_size()))
          fail("constant @" + std::to_string(k.number) + " outside universe", k.offset);
        return Term::constant(static_cast<int>(k.number));
      }
      if (c.kind == Tok::Ident) {
        Token lbl = lex_.take();
        if (!ctx_.structure) fail("label constant needs a structure", lbl.offset);
        auto idx = ctx_.structure->element_by_label(lbl.text);
        if (!idx) fail("unknown label '" + lbl.text + "'", lbl.offset);
        return Term::constant(*idx);
      }
      fail("expected index or label after '@'", c.offset);
    }
    fail("expected term", t.offset);
  }

  void check_relation(const std::string& name, int arity, int offset) {
    if (!ctx_.structure) return;
    if (!ctx_.structure->has_relation(name)) fail("unknown relation '" + name + "'", offset);
    const int declared = ctx_.structure->relation(name).arity;
    if (declared != arity)
      fail("relation '" + name + "' expects arity " + std::to_string(declared), offset);
  }

  Lexer lex_;
  const ParseContext& ctx_;
};

}  // namespace

Formula parse_formula(std::string_view src, const ParseContext& ctx) {
  return Parser(src, ctx).parse();
}

}  // namespace vcdlab
