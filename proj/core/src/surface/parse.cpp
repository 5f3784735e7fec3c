#include "nbe/surface/parse.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace nbe::surface {

namespace {

enum class Tok {
  End,
  Ident,
  Number,
  AtomPos,  // a+
  AtomNeg,  // a-
  Backslash,
  Colon,
  Dot,
  LParen,
  RParen,
  Comma,
  Semi,
  Bar,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Arrow,
  LArrow,
  LAngle,
  RAngle,
  Diamond,
  Amp,
  Star,
  Plus,
};

struct Token {
  Tok kind;
  std::string text;
  SourceLocation loc;
};

std::string describe(const Token& t) { return t.kind == Tok::End ? "end of input" : "'" + t.text + "'"; }

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80; }

class Lexer {
 public:
  Lexer(std::string_view src, bool polar) : src_(src), polar_(polar) {
    if (src_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
  }

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      SourceLocation at{line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", at});
        return out;
      }
      out.push_back(next(at));
    }
  }

 private:
  char peek(std::size_t k = 0) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip() {
    for (;;) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '-' && peek(1) == '-') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  Token next(SourceLocation at) {
    unsigned char c = static_cast<unsigned char>(peek());
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && ident_char(static_cast<unsigned char>(peek()))) advance();
      std::string text(src_.substr(start, pos_ - start));
      // a+ / a- are single tokens when glued together.
      if (polar_ && text == "a") {
        if (peek() == '+') {
          advance();
          return {Tok::AtomPos, "a+", at};
        }
        if (peek() == '-' && peek(1) != '>' && peek(1) != '-') {
          advance();
          return {Tok::AtomNeg, "a-", at};
        }
      }
      return {Tok::Ident, std::move(text), at};
    }
    if (std::isdigit(c)) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      return {Tok::Number, std::string(src_.substr(start, pos_ - start)), at};
    }
    auto two = [&](char a, char b) { return peek() == a && peek(1) == b; };
    auto emit = [&](Tok k, std::size_t n) {
      std::string text(src_.substr(pos_, n));
      advance(n);
      return Token{k, std::move(text), at};
    };
    if (two('-', '>')) return emit(Tok::Arrow, 2);
    if (two('<', '-')) return emit(Tok::LArrow, 2);
    if (two('<', '>')) return emit(Tok::Diamond, 2);
    switch (c) {
      case '\\': return emit(Tok::Backslash, 1);
      case ':': return emit(Tok::Colon, 1);
      case '.': return emit(Tok::Dot, 1);
      case '(': return emit(Tok::LParen, 1);
      case ')': return emit(Tok::RParen, 1);
      case ',': return emit(Tok::Comma, 1);
      case ';': return emit(Tok::Semi, 1);
      case '|': return emit(Tok::Bar, 1);
      case '{': return emit(Tok::LBrace, 1);
      case '}': return emit(Tok::RBrace, 1);
      case '[': return emit(Tok::LBracket, 1);
      case ']': return emit(Tok::RBracket, 1);
      case '<': return emit(Tok::LAngle, 1);
      case '>': return emit(Tok::RAngle, 1);
      case '&': return emit(Tok::Amp, 1);
      case '*': return emit(Tok::Star, 1);
      case '+': return emit(Tok::Plus, 1);
      default: break;
    }
    std::string shown = std::isprint(c) ? std::string("'") + static_cast<char>(c) + "'" : "byte " + std::to_string(c);
    throw ParseError(at, "character " + shown, {});
  }

  std::string_view src_;
  bool polar_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// Types are read into this shape first and then resolved, so that polarity
// errors point at the offending subterm.
struct RawTy {
  enum class Kind { O, APos, ANeg, Zero, One, Top, Sum, Prod, With, Arr, U, F };
  Kind kind;
  SourceLocation loc;
  std::string name;
  std::vector<RawTy> kids;
};

enum class Want { Any, Pos, Neg };

using EK = Expr::Kind;

class Parser {
 public:
  Parser(std::vector<Token> toks, Calculus c) : toks_(std::move(toks)), cal_(c) {}

  SourceFile file() {
    SourceFile f;
    while (is_kw("var")) {
      SourceLocation at = take().loc;
      Decl d{ident("variable name"), stlc::Ty::one(), at};
      expect(Tok::Colon, "':'");
      d.type = type(cal_ == Calculus::Stlc ? Want::Any : cal_ == Calculus::Cbpv ? Want::Pos : Want::Any);
      expect(Tok::Semi, "';'");
      f.decls.push_back(std::move(d));
    }
    if (is_kw("term")) take();
    f.term = expr();
    if (peek().kind != Tok::End) error({"end of input"});
    return f;
  }

 private:
  // ---- tokens
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token take() {
    Token t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool is(Tok k) const { return peek().kind == k; }
  bool is_kw(std::string_view kw) const { return is(Tok::Ident) && peek().text == kw; }

  [[noreturn]] void error(std::vector<std::string> expected) const {
    throw ParseError(peek().loc, describe(peek()), std::move(expected));
  }
  Token expect(Tok k, const char* what) {
    if (!is(k)) error({what});
    return take();
  }
  void expect_kw(std::string_view kw) {
    if (!is_kw(kw)) error({"'" + std::string(kw) + "'"});
    take();
  }

  bool reserved(const std::string& s) const {
    static constexpr std::array<std::string_view, 9> common = {"case", "of", "inl", "inr", "fst",
                                                               "snd", "abort", "var", "term"};
    static constexpr std::array<std::string_view, 7> cbpv = {"thunk", "force", "ret", "let", "in", "split", "as"};
    static constexpr std::array<std::string_view, 4> polar = {"thunk", "force", "ret", "bind"};
    auto has = [&](const auto& arr) { return std::find(arr.begin(), arr.end(), s) != arr.end(); };
    if (has(common)) return true;
    if (cal_ == Calculus::Cbpv) return has(cbpv);
    if (cal_ == Calculus::Polarized) return has(polar);
    return false;
  }

  std::string ident(const char* what) {
    if (!is(Tok::Ident) || reserved(peek().text)) error({what});
    return take().text;
  }

  // ---- types
  RawTy raw_arrow() {
    RawTy l = raw_sum();
    if (is(Tok::Arrow)) {
      SourceLocation at = take().loc;
      RawTy r = raw_arrow();
      return RawTy{RawTy::Kind::Arr, at, "", {std::move(l), std::move(r)}};
    }
    return l;
  }

  RawTy raw_sum() {
    RawTy l = raw_prod();
    while (is(Tok::Plus)) {
      SourceLocation at = take().loc;
      RawTy r = raw_prod();
      l = RawTy{RawTy::Kind::Sum, at, "", {std::move(l), std::move(r)}};
    }
    return l;
  }

  RawTy raw_prod() {
    RawTy l = raw_prefix();
    while (is(Tok::Star) || (cal_ != Calculus::Stlc && is(Tok::Amp))) {
      bool with = is(Tok::Amp);
      SourceLocation at = take().loc;
      RawTy r = raw_prefix();
      l = RawTy{with ? RawTy::Kind::With : RawTy::Kind::Prod, at, "", {std::move(l), std::move(r)}};
    }
    return l;
  }

  RawTy raw_prefix() {
    if (cal_ != Calculus::Stlc && (is_kw("U") || is_kw("F"))) {
      bool u = peek().text == "U";
      SourceLocation at = take().loc;
      RawTy k = raw_atom();
      return RawTy{u ? RawTy::Kind::U : RawTy::Kind::F, at, "", {std::move(k)}};
    }
    return raw_atom();
  }

  RawTy raw_atom() {
    SourceLocation at = peek().loc;
    if (is(Tok::LParen)) {
      take();
      RawTy t = raw_arrow();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (is(Tok::Number) && (peek().text == "0" || peek().text == "1")) {
      bool zero = take().text == "0";
      return RawTy{zero ? RawTy::Kind::Zero : RawTy::Kind::One, at, "", {}};
    }
    if (cal_ == Calculus::Stlc) {
      if (is_kw("o")) {
        take();
        std::string name;
        if (is(Tok::Ident) && !reserved(peek().text)) name = take().text;
        return RawTy{RawTy::Kind::O, at, std::move(name), {}};
      }
      error({"a type"});
    }
    if (is(Tok::AtomPos) || is(Tok::AtomNeg)) {
      bool p = take().kind == Tok::AtomPos;
      std::string name = ident("atom name");
      return RawTy{p ? RawTy::Kind::APos : RawTy::Kind::ANeg, at, std::move(name), {}};
    }
    if (is_kw("Top")) {
      take();
      return RawTy{RawTy::Kind::Top, at, "", {}};
    }
    error({"a type"});
  }

  static bool positive(const RawTy& t) {
    switch (t.kind) {
      case RawTy::Kind::APos:
      case RawTy::Kind::Zero:
      case RawTy::Kind::One:
      case RawTy::Kind::Sum:
      case RawTy::Kind::Prod:
      case RawTy::Kind::U: return true;
      default: return false;
    }
  }

  static stlc::Ty to_stlc(const RawTy& t) {
    using K = RawTy::Kind;
    switch (t.kind) {
      case K::O: return stlc::Ty::atom(t.name);
      case K::Zero: return stlc::Ty::zero();
      case K::One: return stlc::Ty::one();
      case K::Sum: return stlc::Ty::sum(to_stlc(t.kids[0]), to_stlc(t.kids[1]));
      case K::Prod: return stlc::Ty::prod(to_stlc(t.kids[0]), to_stlc(t.kids[1]));
      case K::Arr: return stlc::Ty::arr(to_stlc(t.kids[0]), to_stlc(t.kids[1]));
      default: break;
    }
    throw ParseError(t.loc, "type former", {"an STLC type"});
  }

  static cbpv::Ty to_cbpv(const RawTy& t, Want want) {
    using K = RawTy::Kind;
    if (want == Want::Pos && !positive(t)) throw ParseError(t.loc, "negative type", {"a positive type"});
    if (want == Want::Neg && positive(t)) throw ParseError(t.loc, "positive type", {"a negative type"});
    switch (t.kind) {
      case K::APos: return cbpv::Ty::atom_pos(t.name);
      case K::ANeg: return cbpv::Ty::atom_neg(t.name);
      case K::Zero: return cbpv::Ty::zero();
      case K::One: return cbpv::Ty::one();
      case K::Top: return cbpv::Ty::top();
      case K::Sum: return cbpv::Ty::sum(to_cbpv(t.kids[0], Want::Pos), to_cbpv(t.kids[1], Want::Pos));
      case K::Prod: return cbpv::Ty::prod(to_cbpv(t.kids[0], Want::Pos), to_cbpv(t.kids[1], Want::Pos));
      case K::With: return cbpv::Ty::with(to_cbpv(t.kids[0], Want::Neg), to_cbpv(t.kids[1], Want::Neg));
      case K::Arr: return cbpv::Ty::arr(to_cbpv(t.kids[0], Want::Pos), to_cbpv(t.kids[1], Want::Neg));
      case K::U: return cbpv::Ty::thunk(to_cbpv(t.kids[0], Want::Neg));
      case K::F: return cbpv::Ty::comp(to_cbpv(t.kids[0], Want::Pos));
      default: break;
    }
    throw ParseError(t.loc, "type former", {"a polarized type"});
  }

  Type type(Want want) {
    RawTy raw = raw_arrow();
    if (cal_ == Calculus::Stlc) return to_stlc(raw);
    return to_cbpv(raw, want);
  }

  Type bracketed(Want want) {
    expect(Tok::LBracket, "'['");
    Type t = type(want);
    expect(Tok::RBracket, "']'");
    return t;
  }

  // ---- expressions
  static ExprP make(EK k, SourceLocation at, std::vector<ExprP> kids = {}, std::vector<std::string> names = {},
                    std::vector<Type> types = {}, std::vector<Clause> clauses = {}) {
    return std::make_shared<const Expr>(
        Expr{k, at, std::move(names), std::move(types), std::move(kids), std::move(clauses)});
  }

  ExprP expr() {
    SourceLocation at = peek().loc;
    if (is(Tok::Backslash)) {
      take();
      if (cal_ == Calculus::Polarized) {
        Type dom = bracketed(Want::Pos);
        return make(EK::Match, at, {}, {}, {std::move(dom)}, clauses());
      }
      std::string x = ident("variable name");
      expect(Tok::Colon, "':'");
      Type dom = type(Want::Pos);
      expect(Tok::Dot, "'.'");
      ExprP body = expr();
      return make(EK::Lam, at, {body}, {x}, {std::move(dom)});
    }
    if (cal_ != Calculus::Polarized && is_kw("case")) {
      take();
      ExprP scrut = expr();
      expect_kw("of");
      expect(Tok::LBrace, "'{'");
      expect_kw("inl");
      std::string x = ident("variable name");
      expect(Tok::Arrow, "'->'");
      ExprP l = expr();
      expect(Tok::Semi, "';'");
      expect_kw("inr");
      std::string y = ident("variable name");
      expect(Tok::Arrow, "'->'");
      ExprP r = expr();
      expect(Tok::RBrace, "'}'");
      return make(EK::Case, at, {scrut, l, r}, {x, y});
    }
    if (cal_ == Calculus::Cbpv && is_kw("let")) {
      take();
      std::string x = ident("variable name");
      expect(Tok::Colon, "':'");
      Type p = type(Want::Pos);
      expect(Tok::LArrow, "'<-'");
      ExprP t = expr();
      expect_kw("in");
      ExprP u = expr();
      return make(EK::Let, at, {t, u}, {x}, {std::move(p)});
    }
    if (cal_ == Calculus::Cbpv && is_kw("split")) {
      take();
      ExprP v = expr();
      expect_kw("as");
      expect(Tok::LParen, "'('");
      std::string x = ident("variable name");
      expect(Tok::Comma, "','");
      std::string y = ident("variable name");
      expect(Tok::RParen, "')'");
      expect_kw("in");
      ExprP t = expr();
      return make(EK::Split, at, {v, t}, {x, y});
    }
    return unary();
  }

  ExprP unary() {
    SourceLocation at = peek().loc;
    if (is(Tok::Ident)) {
      const std::string& w = peek().text;
      auto plain = [&](EK k) {
        take();
        ExprP e = unary();
        return make(k, at, {e});
      };
      if (w == "fst") return plain(EK::Fst);
      if (w == "snd") return plain(EK::Snd);
      if (cal_ != Calculus::Stlc) {
        if (w == "thunk") return plain(EK::Thunk);
        if (w == "force") return plain(EK::Force);
        if (w == "ret") return plain(EK::Ret);
      }
      if (w == "inl" || w == "inr" || (w == "abort" && cal_ != Calculus::Polarized)) {
        EK k = w == "inl" ? EK::Inl : w == "inr" ? EK::Inr : EK::Abort;
        take();
        Type t = bracketed(k == EK::Abort ? Want::Neg : Want::Pos);
        ExprP e = unary();
        return make(k, at, {e}, {}, {std::move(t)});
      }
      if (cal_ == Calculus::Polarized && w == "bind") {
        take();
        ExprP t = unary();
        return make(EK::Bind, at, {t}, {}, {}, clauses());
      }
    }
    return app();
  }

  bool starts_atom() const {
    switch (peek().kind) {
      case Tok::Ident: return !reserved(peek().text);
      case Tok::LParen: return true;
      case Tok::LAngle:
      case Tok::Diamond: return cal_ != Calculus::Stlc;
      default: return false;
    }
  }

  ExprP app() {
    ExprP f = atom();
    while (starts_atom()) {
      SourceLocation at = peek().loc;
      ExprP a = atom();
      f = make(EK::App, at, {f, a});
    }
    return f;
  }

  ExprP atom() {
    SourceLocation at = peek().loc;
    switch (peek().kind) {
      case Tok::Ident:
        if (!reserved(peek().text)) return make(EK::Var, at, {}, {take().text});
        break;
      case Tok::LParen: {
        take();
        if (is(Tok::RParen)) {
          take();
          return make(EK::Unit, at);
        }
        ExprP a = expr();
        if (is(Tok::Comma)) {
          take();
          ExprP b = expr();
          expect(Tok::RParen, "')'");
          return make(EK::Pair, at, {a, b});
        }
        if (cal_ == Calculus::Polarized && is(Tok::Colon)) {
          take();
          Type n = type(Want::Neg);
          expect(Tok::RParen, "')'");
          return make(EK::Ascribe, at, {a}, {}, {std::move(n)});
        }
        if (!is(Tok::RParen)) {
          error(cal_ == Calculus::Polarized ? std::vector<std::string>{"')'", "','", "':'"}
                                            : std::vector<std::string>{"')'", "','"});
        }
        take();
        return a;
      }
      case Tok::Diamond:
        if (cal_ == Calculus::Stlc) break;
        take();
        return make(EK::UnitN, at);
      case Tok::LAngle: {
        if (cal_ == Calculus::Stlc) break;
        take();
        ExprP a = expr();
        expect(Tok::Comma, "','");
        ExprP b = expr();
        expect(Tok::RAngle, "'>'");
        return make(EK::PairN, at, {a, b});
      }
      default: break;
    }
    std::vector<std::string> want = {"variable", "'('", "'\\'"};
    if (cal_ != Calculus::Stlc) want.push_back("'<'");
    error(std::move(want));
  }

  std::vector<Clause> clauses() {
    expect(Tok::LBrace, "'{'");
    std::vector<Clause> out;
    if (is(Tok::RBrace)) {
      take();
      return out;
    }
    for (;;) {
      PatternP p = pattern();
      expect(Tok::Arrow, "'->'");
      ExprP body = expr();
      out.push_back({std::move(p), std::move(body)});
      if (is(Tok::Bar)) {
        take();
        continue;
      }
      expect(Tok::RBrace, "'|' or '}'");
      return out;
    }
  }

  PatternP pattern() {
    SourceLocation at = peek().loc;
    using PK = Pattern::Kind;
    auto mk = [&](PK k, std::string name, std::vector<PatternP> kids) {
      return std::make_shared<const Pattern>(Pattern{k, at, std::move(name), std::move(kids)});
    };
    if (is_kw("inl") || is_kw("inr")) {
      bool l = take().text == "inl";
      PatternP p = pattern();
      return mk(l ? PK::Inl : PK::Inr, "", {p});
    }
    if (is(Tok::LParen)) {
      take();
      if (is(Tok::RParen)) {
        take();
        return mk(PK::Unit, "", {});
      }
      PatternP a = pattern();
      if (is(Tok::Comma)) {
        take();
        PatternP b = pattern();
        expect(Tok::RParen, "')'");
        return mk(PK::Pair, "", {a, b});
      }
      expect(Tok::RParen, "')' or ','");
      return a;
    }
    if (is(Tok::Ident) && !reserved(peek().text)) return mk(PK::Var, take().text, {});
    error({"a pattern"});
  }

  std::vector<Token> toks_;
  Calculus cal_;
  std::size_t pos_ = 0;
};

}  // namespace

SourceFile parse(std::string_view text, Calculus calculus) {
  Lexer lex(text, calculus != Calculus::Stlc);
  Parser p(lex.run(), calculus);
  return p.file();
}

}  // namespace nbe::surface
