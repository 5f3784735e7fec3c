#include "doctest.h"
#include "nbe/polarized/nbe.hpp"

using namespace nbe;
using namespace nbe::polarized;

namespace {

const Ty ap = Ty::atom_pos("p");

// Records the embedding and value handed to the continuation.
struct Seen {
  Ope tau;
  Sem a;
};

Kont<std::shared_ptr<Seen>> record() {
  return [](const Ope& t, const Sem& a) { return std::make_shared<Seen>(Seen{t, a}); };
}

}  // namespace

TEST_SUITE("polarized") {

TEST_CASE("add_stmap") {
  auto len = [](const Ope& t, int) { return t.target_size(); };
  CHECK(add_stmap<std::size_t>(len, Add<int>::branch0(), 2).kind() == Add<std::size_t>::Kind::Branch0);
  auto s0 = add_stmap<std::size_t>(len, Add<int>::split0(Add<int>::leaf(1)), 2);
  CHECK(s0.sub(0).leaf() == 2);
  auto hp = add_stmap<Ope>([](const Ope& t, int) { return t; }, Add<int>::hyp_pos(ap, Add<int>::leaf(1)), 2);
  CHECK(hp.sub(0).leaf() == Ope::wk(2));
}

TEST_CASE("cov_join") {
  auto inner = Cov<int>::ret(3);
  CHECK(cov_join(Cov<Cov<int>>::ret(inner)) == inner);
  Ne u = Ne::var(Idx{0});
  auto outer = Cov<Cov<int>>::bind(u, Ty::one(), Add<Cov<Cov<int>>>::split0(Add<Cov<Cov<int>>>::leaf(Cov<Cov<int>>::ret(inner))));
  CHECK(cov_join(outer) == Cov<int>::bind(u, Ty::one(), Add<Cov<int>>::split0(Add<Cov<int>>::leaf(inner))));
}

TEST_CASE("reflect_cont") {
  CHECK(reflect_cont<int>(Ty::zero(), [](const Ope&, const Sem&) { return 0; }, 1).kind() == Add<int>::Kind::Branch0);

  auto one = reflect_cont<std::shared_ptr<Seen>>(Ty::one(), record(), 1);
  REQUIRE(one.kind() == Add<std::shared_ptr<Seen>>::Kind::Split0);
  CHECK(one.sub(0).leaf()->tau == Ope::id(1));
  CHECK(one.sub(0).leaf()->a.kind() == Sem::Kind::Unit);

  // a+ × a+: split2, then two hypotheses; the first atom is renamed past the second
  auto pr = reflect_cont<std::shared_ptr<Seen>>(Ty::prod(ap, ap), record(), 0);
  using K = Add<std::shared_ptr<Seen>>::Kind;
  REQUIRE(pr.kind() == K::Split2);
  REQUIRE(pr.sub(0).kind() == K::HypP);
  REQUIRE(pr.sub(0).sub(0).kind() == K::HypP);
  const Seen& s = *pr.sub(0).sub(0).sub(0).leaf();
  CHECK(s.tau == compose(Ope::wk(0), Ope::wk(1)));
  CHECK(s.a.fst().idx() == Idx{1});
  CHECK(s.a.snd().idx() == Idx{0});
  CHECK(decomposes(pr, Ty::prod(ap, ap)));
  CHECK_FALSE(decomposes(pr, Ty::sum(ap, ap)));
}

TEST_CASE("match") {
  Env gamma;
  auto ev = [](int k) { return Add<Ev<int>>::leaf([k](const Env& e) { return k * 10 + static_cast<int>(e.size()); }); };
  auto tree = Add<Ev<int>>::branch2(Add<Ev<int>>::hyp_pos(ap, ev(1)), Add<Ev<int>>::split0(ev(2)));
  CHECK(match(Sem::inl(Sem::atom(Idx{0})), tree, gamma) == 11);
  CHECK(match(Sem::inr(Sem::unit()), tree, gamma) == 20);
  CHECK(match(Sem::unit(), Add<Ev<int>>::split0(ev(3)), gamma) == 30);
  CHECK_THROWS_AS(match(Sem::unit(), tree, gamma), Error);
}

TEST_CASE("id_env") {
  Env e = id_env({ap});
  REQUIRE(e.size() == 1);
  CHECK(e[0].kind() == Sem::Kind::AtomP);
  CHECK(e[0].idx() == Idx{0});
  Env e2 = id_env({ap, Ty::top()});
  CHECK(e2[0].idx() == Idx{1});
  CHECK(e2[1].kind() == Sem::Kind::Unit);
}

TEST_CASE("norm") {
  Ty tt = Ty::with(Ty::top(), Ty::top());
  CHECK(norm({tt}, Tm::var(Idx{0})) == Nf::pair(Nf::unit(), Nf::unit()));

  // \[a+ p + 1]{ inl a -> ret inr () | inr () -> ret inr () }
  Ty dom = Ty::sum(ap, Ty::one());
  Ty cod = Ty::comp(Ty::sum(ap, Ty::one()));
  Tm r = Tm::ret(Val::inj(2, ap, Val::unit()));
  Tm f = Tm::abs(Ty::arr(dom, cod), Add<Tm>::branch2(Add<Tm>::hyp_pos(ap, Add<Tm>::leaf(r)), Add<Tm>::split0(Add<Tm>::leaf(r))));
  Nf n = norm({}, f);
  CHECK(dump(n) == "(Abs (Branch2 (HypP p (Ret (Return (Inj2 (UnitP))))) (Split0 (Ret (Return (Inj2 (UnitP)))))))");
  CHECK(is_valid({}, Ty::arr(dom, cod), n));

  // a function variable is η-expanded through a complete pattern tree
  Ty g = Ty::arr(Ty::prod(ap, ap), Ty::atom_neg("n"));
  Nf e = norm({g}, Tm::var(Idx{0}));
  REQUIRE(e.kind() == Nf::Kind::Abs);
  CHECK(e.body().kind() == Add<Nf>::Kind::Split2);
  CHECK(is_valid({g}, g, e));
}

TEST_CASE("contexts hold hypotheses only") {
  CHECK_THROWS_AS(check_context({Ty::thunk(Ty::top())}), Error);
  CHECK_NOTHROW(check_context({ap, Ty::top()}));
}

}
