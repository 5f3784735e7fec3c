#include "doctest.h"
#include "nbe/oracle/finite.hpp"
#include "nbe/stlc/nbe.hpp"

using namespace nbe;
using namespace nbe::stlc;

namespace {

const Ty o = Ty::atom();
const Ty oo = Ty::sum(o, o);
Term v(std::uint32_t i) { return Term::var(Idx{i}); }
Ne nv(std::uint32_t i) { return Ne::var(Idx{i}); }
Nf at(std::uint32_t i) { return Nf::ne(nv(i)); }

Term codiag() { return Term::abs(oo, Term::case_(v(0), v(0), v(0))); }

template <class C>
using Leaf = PosLeaf<C>;

}  // namespace

TEST_SUITE("stlc") {

TEST_CASE("infer") {
  CHECK(infer({}, codiag()) == Ty::arr(oo, o));
  CHECK(infer({o}, v(0)) == o);

  // \x:A.\y:C->D.(x, \z:C. y z)
  Ty a = Ty::atom("a"), c = Ty::atom("c"), d = Ty::atom("d");
  Ty b = Ty::arr(c, d);
  Term pair = Term::abs(a, Term::abs(b, Term::pair(v(1), Term::abs(c, Term::app(v(1), v(0))))));
  CHECK(infer({}, pair) == Ty::arr(a, Ty::arr(b, Ty::prod(a, b))));

  CHECK_THROWS_AS(infer({}, v(0)), Error);
  try {
    infer({o}, Term::app(v(0), v(0)));
    FAIL("expected TypeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TypeMismatch);
  }
  try {
    infer({oo, Ty::one()}, Term::case_(v(1), v(0), v(1)));
    FAIL("expected BranchTypeDisagreement");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BranchTypeDisagreement);
  }
}

TEST_CASE("rename and erase") {
  CHECK(rename(Ope::wk(1), v(0)) == v(1));
  Term t = Term::abs(o, Term::app(v(1), v(0)));
  CHECK(rename(Ope::id(1), t) == t);
  CHECK(rename(Ope::wk(1), t) == Term::abs(o, Term::app(v(2), v(0))));

  Context g{Ty::arr(o, o)};
  CHECK(erase({o}, o, at(0)) == v(0));
  Nf eta = Nf::abs(Nf::ne(Ne::app(nv(1), at(0))));
  CHECK(erase(g, Ty::arr(o, o), eta) == t);
}

TEST_CASE("free cover monad") {
  using M = FreeCover;
  Ne u = nv(0), u2 = nv(1);
  auto j = Cover<int>::ret(7);
  CHECK(M::join(Cover<Cover<int>>::ret(j)) == j);
  CHECK(M::map<int>([](int x, std::size_t) { return x + 1; }, Cover<int>::abort(u), 3) == Cover<int>::abort(u));

  auto nested = Cover<Cover<int>>::case_(u, oo, Cover<Cover<int>>::ret(Cover<int>::ret(7)),
                                          Cover<Cover<int>>::abort(u2));
  CHECK(M::join(nested) == Cover<int>::case_(u, oo, Cover<int>::ret(7), Cover<int>::abort(u2)));

  // stmap hands each leaf the path embedding
  auto tree = Cover<int>::case_(u, oo, Cover<int>::ret(0), Cover<int>::case_(u, oo, Cover<int>::ret(0), Cover<int>::ret(0)));
  auto sizes = M::stmap<std::size_t>([](const Ope& tau, int) { return tau.target_size(); }, tree, 2);
  CHECK(sizes.left().leaf() == 3);
  CHECK(sizes.right().left().leaf() == 4);
  CHECK(sizes.right().right().leaf() == 4);
}

TEST_CASE("runNf") {
  Nf n = Nf::inj(1, Nf::unit());
  CHECK(FreeCover::runNf(Cover<Nf>::ret(n), Ty::sum(Ty::one(), o)) == n);
  auto c = Cover<Nf>::case_(nv(0), oo, Cover<Nf>::ret(Nf::inj(1, Nf::unit())), Cover<Nf>::ret(Nf::inj(2, at(0))));
  CHECK(FreeCover::runNf(c, Ty::sum(Ty::one(), o)) ==
        Nf::case_(nv(0), Nf::inj(1, Nf::unit()), Nf::inj(2, at(0))));
  CHECK(FreeCover::runNf(Cover<Nf>::abort(nv(0)), o) == Nf::abort(nv(0)));
  CHECK_THROWS_AS(FreeCover::runNf(Cover<Nf>::abort(nv(0)), Ty::one()), Error);

  CHECK(Continuation::runNf(Continuation::ret(n, 1), o, 1) == n);
  // abort_cc (τ, k) = abort (ren τ u)
  auto ab = Continuation::abort<Nf>(nv(0), 1);
  CHECK(ab(Ope::wk(1), [](const Ope&, const Nf& m) { return m; }) == Nf::abort(nv(1)));
}

TEST_CASE("reflect and reify") {
  using N = Nbe<FreeCover>;
  using V = N::Val;
  CHECK(N::reflect(Ty::one(), nv(0), 1).kind() == V::Kind::Unit);
  auto a = N::reflect(o, nv(0), 1);
  REQUIRE(a.kind() == V::Kind::Pos);
  CHECK(a.cover().kind() == Cover<Leaf<FreeCover>>::Kind::Return);
  CHECK(*a.cover().leaf().ne == nv(0));

  auto s = N::reflect(oo, nv(0), 1);
  REQUIRE(s.cover().kind() == Cover<Leaf<FreeCover>>::Kind::Case);
  CHECK(s.cover().scrut() == nv(0));
  CHECK(s.cover().left().leaf().kind == Leaf<FreeCover>::Kind::Inl);
  CHECK(s.cover().right().leaf().kind == Leaf<FreeCover>::Kind::Inr);

  CHECK(N::reify(Ty::one(), V::unit(), 0) == Nf::unit());
  Ty f = Ty::arr(o, o);
  CHECK(N::reify(f, N::reflect(f, nv(0), 1), 1) == Nf::abs(Nf::ne(Ne::app(nv(1), at(0)))));
  CHECK(N::reify(Ty::zero(), N::reflect(Ty::zero(), nv(0), 1), 1) == Nf::abort(nv(0)));
}

TEST_CASE("eval") {
  using N = Nbe<FreeCover>;
  using V = N::Val;
  Context g{o};
  auto env = N::id_env(g);
  CHECK(N::eval(g, Term::unit(), env, 1).kind() == V::Kind::Unit);
  auto b = N::eval(g, Term::app(Term::abs(o, v(0)), v(0)), env, 1);
  CHECK(N::reify(o, b, 1) == at(0));
  // case (inl ()) of ... picks the first branch without building a cover
  Term sel = Term::case_(Term::inj(1, o, v(0)), v(0), v(1));
  CHECK(N::reify(o, N::eval(g, sel, env, 1), 1) == at(0));
  Term sel2 = Term::case_(Term::inj(2, o, v(0)), v(1), v(0));
  CHECK(N::reify(o, N::eval(g, sel2, env, 1), 1) == at(0));

  CHECK(N::id_env({}).empty());
  CHECK(N::id_env({Ty::one()}).at(0).kind() == V::Kind::Unit);
}

TEST_CASE("norm") {
  for (Monad m : {Monad::Free, Monad::Cont}) {
    CAPTURE(to_string(m));
    Nf n = norm({}, codiag(), m);
    CHECK(n == Nf::abs(Nf::case_(nv(0), at(0), at(0))));
    CHECK(dump(n) == "(Abs (Case (Var 0) (Ne (Var 0)) (Ne (Var 0))))");
    CHECK(is_valid({}, Ty::arr(oo, o), n));

    Context g{Ty::arr(o, o)};
    CHECK(norm(g, v(0), m) == Nf::abs(Nf::ne(Ne::app(nv(1), at(0)))));

    // β⇒ on a closed instance
    Term id = Term::abs(o, v(0));
    Term redex = Term::app(Term::abs(Ty::arr(o, o), Term::abs(o, Term::app(v(1), v(0)))), id);
    CHECK(norm({}, redex, m) == norm({}, id, m));
  }
}

TEST_CASE("abort_any and case_any") {
  CHECK(abort_any(Ty::one(), nv(0)) == Nf::unit());
  CHECK(abort_any(oo, nv(0)) == Nf::abort(nv(0)));
  CHECK(abort_any(Ty::arr(o, o), nv(0)) == Nf::abs(Nf::abort(nv(1))));
  CHECK(abort_any(Ty::prod(o, Ty::one()), nv(0)) == Nf::pair(Nf::abort(nv(0)), Nf::unit()));

  // \y. case x of { inl a -> a ; inr b -> y }: the branch hypothesis and y
  // trade places when the λ moves outside the case
  Nf l = Nf::abs(at(1)), r = Nf::abs(at(0));
  Nf got = case_any(Ty::arr(o, o), nv(0), l, r);
  CHECK(got == Nf::abs(Nf::case_(nv(1), at(0), at(1))));
  CHECK(is_valid({oo}, Ty::arr(o, o), got));
}

TEST_CASE("validator") {
  CHECK_FALSE(is_valid({Ty::arr(o, o)}, Ty::arr(o, o), Nf::ne(nv(0))));  // not η-long
  CHECK_FALSE(is_valid({Ty::zero()}, Ty::one(), Nf::abort(nv(0))));        // abort at a negative type
  CHECK(is_valid({Ty::zero()}, o, Nf::abort(nv(0))));
  CHECK_THROWS_AS(validate({o}, Ty::one(), at(0)), Error);
}

TEST_CASE("free and continuation pipelines agree") {
  Term t = Term::abs(oo, Term::abs(Ty::arr(o, oo), Term::case_(v(1), Term::app(v(1), v(0)), Term::inj(2, o, v(0)))));
  Nf a = norm({}, t, Monad::Free);
  Nf b = norm({}, t, Monad::Cont);
  CHECK(oracle::oracle_equiv({}, erase({}, infer({}, t), a), erase({}, infer({}, t), b)).equal);
}

}
