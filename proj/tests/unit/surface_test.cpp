#include "doctest.h"
#include "nbe/surface/elaborate.hpp"
#include "nbe/surface/parse.hpp"
#include "nbe/surface/pretty.hpp"

using namespace nbe;
using namespace nbe::surface;

namespace {

Errc error_of(const std::string& text, Calculus c) {
  try {
    auto f = parse(text, c);
    switch (c) {
      case Calculus::Stlc: elaborate_stlc(f); break;
      case Calculus::Cbpv: elaborate_cbpv(f); break;
      case Calculus::Polarized: elaborate_polarized(f); break;
    }
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error for: " << text);
  return Errc::ValidationFailure;
}

stlc::Term v(std::uint32_t i) { return stlc::Term::var(Idx{i}); }
const stlc::Ty o = stlc::Ty::atom();

}  // namespace

TEST_SUITE("surface") {

TEST_CASE("parse") {
  auto f = parse("term \\x:o+o. case x of { inl y -> y ; inr z -> z }", Calculus::Stlc);
  REQUIRE(f.term);
  CHECK(f.decls.empty());
  CHECK(f.term->kind == Expr::Kind::Lam);
  CHECK(f.term->kid(0)->kind == Expr::Kind::Case);

  CHECK(parse("term ()", Calculus::Stlc).term->kind == Expr::Kind::Unit);

  auto g = parse("var f : o -> o ;\r\n-- a comment\nterm f", Calculus::Stlc);
  REQUIRE(g.decls.size() == 1);
  CHECK(g.decls[0].name == "f");
}

TEST_CASE("parse errors carry locations") {
  try {
    parse("term \\x:o.\n  (x,", Calculus::Stlc);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.location().line == 2);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK(error_of("term \\x:o. )", Calculus::Stlc) == Errc::ParseError);
}

TEST_CASE("elaborate stlc") {
  auto p = elaborate_stlc(parse("term \\x:o.\\y:o. x", Calculus::Stlc));
  CHECK(p.term == stlc::Term::abs(o, stlc::Term::abs(o, v(1))));
  CHECK(p.ty == stlc::Ty::arr(o, stlc::Ty::arr(o, o)));

  auto q = elaborate_stlc(parse("var a : o ; var f : o -> o ; term f a", Calculus::Stlc));
  CHECK(q.names == std::vector<std::string>{"a", "f"});
  CHECK(q.term == stlc::Term::app(v(0), v(1)));

  CHECK(error_of("term \\x:o. y", Calculus::Stlc) == Errc::UnboundVariable);
  CHECK(error_of("term \\x:o. x x", Calculus::Stlc) == Errc::TypeMismatch);
  error_of("var x : o ; var x : o ; term x", Calculus::Stlc);  // names are unique
}

TEST_CASE("precedence") {
  auto t = elaborate_stlc(parse("term \\x:o -> o + o * 1. x", Calculus::Stlc));
  // -> loosest, then +, then *
  stlc::Ty want = stlc::Ty::arr(o, stlc::Ty::sum(o, stlc::Ty::prod(o, stlc::Ty::one())));
  CHECK(t.ty == stlc::Ty::arr(want, want));
  auto a = elaborate_stlc(parse("var f : o -> o -> o ; var x : o ; term f x x", Calculus::Stlc));
  CHECK(a.term == stlc::Term::app(stlc::Term::app(v(1), v(0)), v(0)));
}

TEST_CASE("elaborate cbpv") {
  auto p = elaborate_cbpv(parse("var p : a+ P * 1 ; term split p as (x, y) in ret x", Calculus::Cbpv));
  CHECK(p.ty == cbpv::Ty::comp(cbpv::Ty::atom_pos("P")));
  auto q = elaborate_cbpv(parse("var f : U (F 1) ; term let x : 1 <- force f in ret x", Calculus::Cbpv));
  CHECK(q.term.kind() == cbpv::Tm::Kind::Bind);
  CHECK(error_of("term force ()", Calculus::Cbpv) == Errc::TypeMismatch);
}

TEST_CASE("pattern compilation") {
  auto p = elaborate_polarized(
      parse("term \\[a+ X + a+ Y]{ inl a -> ret inr[a+ Y] a | inr b -> ret inl[a+ X] b }", Calculus::Polarized));
  REQUIRE(p.term.kind() == polarized::Tm::Kind::Abs);
  const auto& body = p.term.body();
  REQUIRE(body.kind() == polarized::Add<polarized::Tm>::Kind::Branch2);
  CHECK(body.sub(0).kind() == polarized::Add<polarized::Tm>::Kind::HypP);
  CHECK(body.sub(1).kind() == polarized::Add<polarized::Tm>::Kind::HypP);
  CHECK(polarized::decomposes(body, cbpv::Ty::sum(cbpv::Ty::atom_pos("X"), cbpv::Ty::atom_pos("Y"))));

  // nested patterns split products before their components
  auto q = elaborate_polarized(parse("term \\[(a+ X + 1) * a+ X]{ (inl a, b) -> ret a | (inr (), c) -> ret c }",
                                     Calculus::Polarized));
  CHECK(q.term.body().kind() == polarized::Add<polarized::Tm>::Kind::Split2);

  CHECK(error_of("term \\[a+ X * a+ X]{ a -> ret a }", Calculus::Polarized) == Errc::NonAtomicVarPattern);
  CHECK(error_of("term \\[a+ X + 1]{ inl a -> ret inl[1] a }", Calculus::Polarized) == Errc::NonExhaustivePatterns);
  CHECK(error_of("term \\[a+ X + 1]{ inl a -> ret inl[1] a | inr () -> ret inr[a+ X] () | inl b -> ret inl[1] b }",
                 Calculus::Polarized) == Errc::OverlappingPatterns);
  CHECK(elaborate_polarized(parse("term (\\[0]{} : 0 -> F 1)", Calculus::Polarized)).term.body().kind() ==
        polarized::Add<polarized::Tm>::Kind::Branch0);
}

TEST_CASE("pretty") {
  stlc::Ty oo = stlc::Ty::sum(o, o);
  stlc::Term codiag = stlc::Term::abs(oo, stlc::Term::case_(v(0), v(0), v(0)));
  CHECK(pretty(codiag, {}) == "\\x0:o+o. case x0 of { inl x1 -> x1 ; inr x2 -> x2 }");
  CHECK(pretty(stlc::Term::unit(), {}) == "()");
  CHECK(pretty(stlc::Ty::arr(stlc::Ty::arr(o, o), o)) == "(o->o)->o");
  CHECK(pretty(stlc::Ty::prod(oo, o)) == "(o+o)*o");
  // generated names skip the free ones
  CHECK(pretty(stlc::Term::abs(o, v(1)), {"x0"}) == "\\x1:o. x0");
  CHECK(default_names(2) == std::vector<std::string>{"v0", "v1"});
}

TEST_CASE("pretty then parse is the identity") {
  const char* files[] = {
      "var f : (o -> o) * 1 ; term \\x:o+0. case x of { inl a -> (fst f) a ; inr b -> abort[o] b }",
      "term \\x:o. \\y:o->o. (x, \\z:o. y z)",
      "term inl[o*o] ()",
  };
  for (const char* src : files) {
    auto p = elaborate_stlc(parse(src, Calculus::Stlc));
    std::string out = pretty_file(p.ctx, p.names, p.term);
    CAPTURE(out);
    auto q = elaborate_stlc(parse(out, Calculus::Stlc));
    CHECK(q.term == p.term);
    CHECK(q.ctx == p.ctx);
  }
}

}
