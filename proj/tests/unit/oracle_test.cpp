#include <set>

#include "doctest.h"
#include "nbe/oracle/axioms.hpp"
#include "nbe/oracle/finite.hpp"
#include "nbe/oracle/generate.hpp"
#include "nbe/stlc/nbe.hpp"

using namespace nbe;
using namespace nbe::oracle;

namespace {

const stlc::Ty o = stlc::Ty::atom();
const stlc::Ty oo = stlc::Ty::sum(o, o);
stlc::Term v(std::uint32_t i) { return stlc::Term::var(Idx{i}); }

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("the codiagonal table") {
  stlc::Term codiag = stlc::Term::abs(oo, stlc::Term::case_(v(0), v(0), v(0)));
  FinVal f = fin_eval({}, codiag, {});
  for (unsigned k = 0; k < 2; ++k) {
    CHECK(f(FinVal::inj(1, FinVal::atom(k))).atom_value() == k);
    CHECK(f(FinVal::inj(2, FinVal::atom(k))).atom_value() == k);
  }
  CHECK(cardinality(fin_type(stlc::Ty::arr(oo, o)), {}) == 16);
}

TEST_CASE("small evaluations") {
  CHECK(fin_eval({}, stlc::Term::unit(), {}).kind() == FinVal::Kind::Unit);
  FinVal a = FinVal::atom(1);
  CHECK(fin_eval({o}, v(0), {a}).atom_value() == 1);
}

TEST_CASE("enumerating environments") {
  auto count = [](const std::vector<FinTy>& ctx, const Model& m) {
    std::uint64_t n = 0;
    enum_envs(ctx, m, [&](const FinEnv&) { return ++n, true; });
    return n;
  };
  Model m;
  CHECK(count({}, m) == 1);
  CHECK(count({fin_type(o)}, m) == 2);
  std::vector<FinTy> g{fin_type(oo), fin_type(stlc::Ty::one())};
  CHECK(count(g, m) == 4);
  CHECK(env_count(g, m) == 4);
  CHECK(count({fin_type(stlc::Ty::arr(o, o))}, Model{.base = 3}) == 27);

  // every element exactly once
  FinTy t = fin_type(stlc::Ty::arr(oo, o));
  auto all = enumerate(t, m);
  std::set<std::uint64_t> seen;
  for (const auto& x : all) seen.insert(index_of(t, x, m));
  CHECK(seen.size() == all.size());

  CHECK_THROWS_AS(enumerate(fin_type(stlc::Ty::arr(stlc::Ty::arr(o, o), stlc::Ty::arr(o, o))), Model{.base = 4, .bound = 1000}),
                  Error);
}

TEST_CASE("oracle_equiv") {
  stlc::Context g{stlc::Ty::arr(o, o)};
  stlc::Term eta = stlc::Term::abs(o, stlc::Term::app(v(1), v(0)));
  CHECK(oracle_equiv(g, v(0), v(0)).equal);
  Verdict e = oracle_equiv(g, v(0), eta);
  CHECK(e.equal);
  CHECK(e.envs == 4);

  stlc::Ty s = stlc::Ty::sum(stlc::Ty::one(), stlc::Ty::one());
  Verdict ne = oracle_equiv({}, stlc::Term::inj(1, stlc::Ty::one(), stlc::Term::unit()),
                            stlc::Term::inj(2, stlc::Ty::one(), stlc::Term::unit()));
  CHECK_FALSE(ne.equal);
  CHECK_FALSE(ne.counterexample.empty());
  (void)s;
}

TEST_CASE("generators are deterministic and well typed") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto a = gen_stlc(seed), b = gen_stlc(seed);
    CHECK(a.term == b.term);
    CHECK(stlc::infer(a.ctx, a.term) == a.ty);
    auto c = gen_cbpv(seed);
    CHECK(cbpv::infer(c.ctx, c.term) == c.ty);
    CHECK(c.term == gen_cbpv(seed).term);
    auto p = gen_polarized(seed);
    CHECK(polarized::infer(p.ctx, p.term) == p.ty);
    CHECK(p.ctx.size() <= 3);
  }
  CHECK(sub_seed(1, 2) == sub_seed(1, 2));
  CHECK(sub_seed(1, 2) != sub_seed(1, 3));
}

TEST_CASE("axiom instances are sound in the set model") {
  for (Axiom ax : kAxioms) {
    CAPTURE(name(ax));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto inst = gen_axiom_instance(ax, seed);
      CHECK(stlc::infer(inst.ctx, inst.lhs) == inst.ty);
      CHECK(stlc::infer(inst.ctx, inst.rhs) == inst.ty);
      CHECK(oracle_equiv(inst.ctx, inst.lhs, inst.rhs).equal);
    }
    CHECK(parse_axiom(name(ax)) == ax);
  }
  CHECK(parse_axiom("pi-sum-sum") == Axiom::PiSumSum);
  CHECK_FALSE(parse_axiom("gamma").has_value());
}

TEST_CASE("axiom shapes") {
  auto e1 = gen_axiom_instance(Axiom::EtaOne, 3);
  CHECK(e1.rhs == stlc::Term::unit());
  auto bp = gen_axiom_instance(Axiom::BetaProd, 3);
  CHECK(bp.lhs.kind() == stlc::Term::Kind::Prj);
  CHECK(bp.lhs.sub(0).kind() == stlc::Term::Kind::Pair);
  CHECK(bp.rhs == bp.lhs.sub(0).sub(bp.lhs.which() - 1));
  auto zz = gen_axiom_instance(Axiom::PiZeroZero, 3);
  CHECK(zz.lhs.kind() == stlc::Term::Kind::Abort);
  CHECK(zz.lhs.sub(0).kind() == stlc::Term::Kind::Abort);
  CHECK(zz.rhs.kind() == stlc::Term::Kind::Abort);
  CHECK(zz.rhs.sub(0) == zz.lhs.sub(0).sub(0));
}

TEST_CASE("subst") {
  // (f x)[u] with f free: f drops to index 0, x becomes u
  stlc::Term t = stlc::Term::app(v(1), v(0));
  stlc::Term u = stlc::Term::app(v(0), v(1));
  CHECK(subst(t, u, 2) == stlc::Term::app(v(0), u));
  // under a binder the substitute is weakened
  stlc::Term lam = stlc::Term::abs(o, v(1));
  CHECK(subst(lam, v(0), 1) == stlc::Term::abs(o, v(1)));
  CHECK(subst(v(0), stlc::Term::unit(), 0) == stlc::Term::unit());
}

}
