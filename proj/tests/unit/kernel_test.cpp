#include "doctest.h"
#include "nbe/kernel.hpp"

using namespace nbe;

namespace {
const Step L = Step::Lift;
const Step W = Step::Weak;
}

TEST_SUITE("kernel") {

TEST_CASE("identity embeddings are all lifts") {
  CHECK(Ope::id(0) == Ope());
  CHECK(Ope::id(0).spine().empty());
  CHECK(Ope::id(1) == Ope({L}));
  CHECK(Ope::id(2) == Ope({L, L}));
  CHECK(Ope::id(3).is_identity());
  CHECK(Ope::wk(2) == Ope({L, L, W}));
  CHECK(Ope::wk(2).source_size() == 2);
  CHECK(Ope::wk(2).target_size() == 3);
}

TEST_CASE("compose") {
  // []⊆[o] then [o]⊆[o,1]
  Ope t1({W});
  Ope t2({W, L});
  CHECK(compose(t1, t2) == Ope({W, W}));

  Ope tau({L, W, L, W});
  CHECK(compose(Ope::id(2), tau) == tau);
  CHECK(compose(tau, Ope::id(4)) == tau);
  CHECK_THROWS_AS(compose(Ope::id(3), tau), Error);
  try {
    compose(Ope::id(1), tau);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ContextMismatch);
  }
}

TEST_CASE("reindex") {
  CHECK(reindex(Ope::id(3), Idx::zero()) == Idx::zero());
  CHECK(reindex(Ope::wk(1), Idx::zero()) == Idx::zero().suc());
  // [o] ⊆ [1, o]
  CHECK(reindex(Ope({W, L}), Idx::zero()) == Idx::zero());
  // [a, c] ⊆ [a, b, c, d]
  Ope tau({L, W, L, W});
  CHECK(reindex(tau, Idx{0}) == Idx{1});
  CHECK(reindex(tau, Idx{1}) == Idx{3});
  CHECK_THROWS_AS(reindex(tau, Idx{2}), Error);
}

TEST_CASE("source_of folds the spine") {
  Ctx<char> target{'a', 'b', 'c', 'd'};
  Ope tau({L, W, L, W});
  CHECK(tau.source_of(target) == Ctx<char>{'a', 'c'});
  for (std::uint32_t x = 0; x < 2; ++x) {
    CHECK(lookup(tau.source_of(target), Idx{x}) == lookup(target, tau.reindex(Idx{x})));
  }
  CHECK_THROWS_AS(tau.source_of(Ctx<char>{'a'}), Error);
}

TEST_CASE("lift and weak extend at the outer end") {
  Ope tau({W});
  CHECK(tau.lift() == Ope({W, L}));
  CHECK(tau.weak() == Ope({W, W}));
  CHECK(Ope::id(2).weak() == Ope::wk(2));
}

TEST_CASE("contexts") {
  Ctx<int> g{1, 2, 3};
  CHECK(lookup(g, Idx{0}) == 3);
  CHECK(lookup(g, Idx{2}) == 1);
  CHECK(lookup(extend(g, 4), Idx{0}) == 4);
  CHECK_THROWS_AS(lookup(g, Idx{3}), Error);
}

TEST_CASE("error classification") {
  CHECK(is_internal(Errc::ContextMismatch));
  CHECK(is_internal(Errc::ValidationFailure));
  CHECK_FALSE(is_internal(Errc::TypeMismatch));
  CHECK_FALSE(is_internal(Errc::ParseError));
  ParseError p({3, 7}, "'}'", {"term", "';'"});
  CHECK(p.code() == Errc::ParseError);
  CHECK(p.location().line == 3);
  CHECK(std::string(p.what()).find("3:7") != std::string::npos);
}

}
