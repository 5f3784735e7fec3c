#include "laws.hpp"

#include <algorithm>

#include "nbe/cbpv/nbe.hpp"
#include "nbe/oracle/generate.hpp"
#include "nbe/polarized/nbe.hpp"
#include "nbe/stlc/nbe.hpp"

namespace nbe::laws {

namespace {

constexpr std::size_t kKeep = 5;

using Rng = std::mt19937_64;

std::size_t below(Rng& rng, std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng() % n); }

}  // namespace

void Report::check(bool cond, bool is_random, const std::function<std::string()>& what) {
  ++(is_random ? random : exhaustive);
  if (cond) return;
  ++failed;
  if (failures.size() < kKeep) failures.push_back(what());
}

void Report::guard(bool is_random, const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    check(false, is_random, [&] { return std::string("exception: ") + e.what(); });
  }
}

std::string summary(const Report& r) {
  return r.name + ": " + std::to_string(r.exhaustive) + " exhaustive + " + std::to_string(r.random) +
         " random checks, " + std::to_string(r.failed) + " failed";
}

// ---------------------------------------------------------------------------
// OPEs

std::vector<Ope> all_opes(std::size_t max_len) {
  std::vector<Ope> out;
  for (std::size_t len = 0; len <= max_len; ++len) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << len); ++mask) {
      std::vector<Step> spine(len);
      for (std::size_t i = 0; i < len; ++i) spine[i] = (mask >> i) & 1 ? Step::Lift : Step::Weak;
      out.emplace_back(std::move(spine));
    }
  }
  return out;
}

Ope random_ope(Rng& rng, std::size_t source, std::size_t extra) {
  std::vector<Step> spine(source, Step::Lift);
  std::size_t weaks = below(rng, extra + 1);
  for (std::size_t w = 0; w < weaks; ++w) {
    spine.insert(spine.begin() + static_cast<std::ptrdiff_t>(below(rng, spine.size() + 1)), Step::Weak);
  }
  return Ope(std::move(spine));
}

Idx naive_reindex(const Ope& tau, Idx x) {
  std::vector<std::size_t> lifts;  // target positions of the source entries
  for (std::size_t i = 0; i < tau.spine().size(); ++i) {
    if (tau.spine()[i] == Step::Lift) lifts.push_back(i);
  }
  if (x.depth >= lifts.size()) fail(Errc::IndexOutOfRange, "naive_reindex");
  std::size_t pos = lifts[lifts.size() - 1 - x.depth];
  return Idx(static_cast<std::uint32_t>(tau.target_size() - 1 - pos));
}

Ope naive_compose(const Ope& first, const Ope& second) {
  std::vector<Step> spine(second.target_size(), Step::Weak);
  for (std::uint32_t x = 0; x < first.source_size(); ++x) {
    Idx y = naive_reindex(second, naive_reindex(first, Idx(x)));
    spine[spine.size() - 1 - y.depth] = Step::Lift;
  }
  return Ope(std::move(spine));
}

namespace {

void ope_single(Report& r, const Ope& t, bool rnd) {
  std::size_t n = t.target_size();
  std::size_t m = t.source_size();
  r.check(compose(Ope::id(m), t) == t, rnd, [&] { return "id ; t /= t for t = " + to_string(t); });
  r.check(compose(t, Ope::id(n)) == t, rnd, [&] { return "t ; id /= t for t = " + to_string(t); });
  std::vector<int> delta(n);
  for (std::size_t i = 0; i < n; ++i) delta[i] = static_cast<int>(i);
  std::vector<int> gamma = t.source_of(delta);
  for (std::uint32_t x = 0; x < m; ++x) {
    Idx y = reindex(t, Idx(x));
    r.check(y == naive_reindex(t, Idx(x)), rnd, [&] { return "reindex disagrees with the reference at " + to_string(t); });
    r.check(reindex(Ope::id(m), Idx(x)) == Idx(x), rnd, [&] { return "reindex id moved an index"; });
    r.check(lookup(gamma, Idx(x)) == lookup(delta, y), rnd, [&] { return "reindex lost its entry at " + to_string(t); });
  }
}

void ope_pair(Report& r, const Ope& t1, const Ope& t2, bool rnd) {
  Ope c = compose(t1, t2);
  r.check(c == naive_compose(t1, t2), rnd,
          [&] { return "compose(" + to_string(t1) + ", " + to_string(t2) + ") = " + to_string(c); });
  for (std::uint32_t x = 0; x < t1.source_size(); ++x) {
    r.check(reindex(c, Idx(x)) == reindex(t2, reindex(t1, Idx(x))), rnd,
            [&] { return "reindex is not functorial on " + to_string(t1) + ", " + to_string(t2); });
  }
}

void ope_triple(Report& r, const Ope& t1, const Ope& t2, const Ope& t3, bool rnd) {
  r.check(compose(compose(t1, t2), t3) == compose(t1, compose(t2, t3)), rnd,
          [&] { return "composition not associative on " + to_string(t1) + ", " + to_string(t2) + ", " + to_string(t3); });
}

}  // namespace

Report ope_laws(std::uint64_t seed, std::size_t random) {
  Report r;
  r.name = "OPE category and reindex functor";
  auto opes = all_opes(3);
  for (const auto& t1 : opes) {
    r.guard(false, [&] { ope_single(r, t1, false); });
    for (const auto& t2 : opes) {
      if (t1.target_size() != t2.source_size()) {
        bool threw = false;
        try {
          compose(t1, t2);
        } catch (const Error& e) {
          threw = e.code() == Errc::ContextMismatch;
        }
        r.check(threw, false, [&] { return "mismatched compose accepted"; });
        continue;
      }
      r.guard(false, [&] { ope_pair(r, t1, t2, false); });
      for (const auto& t3 : opes) {
        if (t2.target_size() == t3.source_size()) r.guard(false, [&] { ope_triple(r, t1, t2, t3, false); });
      }
    }
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < random; ++i) {
    Ope t1 = random_ope(rng, below(rng, 10), 6);
    Ope t2 = random_ope(rng, t1.target_size(), 6);
    Ope t3 = random_ope(rng, t2.target_size(), 6);
    r.guard(true, [&] {
      ope_single(r, t1, true);
      ope_pair(r, t1, t2, true);
      ope_pair(r, t2, t3, true);
      ope_triple(r, t1, t2, t3, true);
    });
  }
  return r;
}

// ---------------------------------------------------------------------------
// rename on syntax and normal forms

namespace {

stlc::Term naive_rename(const Ope& tau, const stlc::Term& t, std::uint32_t bound = 0) {
  using stlc::Term;
  using K = Term::Kind;
  auto go = [&](std::size_t i, std::uint32_t extra = 0) { return naive_rename(tau, t.sub(i), bound + extra); };
  switch (t.kind()) {
    case K::Var: {
      Idx x = t.idx();
      if (x.depth < bound) return t;
      return Term::var(Idx(bound + naive_reindex(tau, Idx(x.depth - bound)).depth));
    }
    case K::Abs: return Term::abs(t.ty(), go(0, 1));
    case K::App: return Term::app(go(0), go(1));
    case K::Unit: return t;
    case K::Pair: return Term::pair(go(0), go(1));
    case K::Prj: return Term::prj(t.which(), go(0));
    case K::Inj: return Term::inj(t.which(), t.ty(), go(0));
    case K::Case: return Term::case_(go(0), go(1, 1), go(2, 1));
    case K::Abort: return Term::abort(t.ty(), go(0));
  }
  return t;
}

template <class T>
Ctx<T> fill(const Ctx<T>& gamma, const Ope& tau, const T& filler) {
  Ctx<T> out;
  std::size_t k = 0;
  for (Step s : tau.spine()) out.push_back(s == Step::Lift ? gamma.at(k++) : filler);
  return out;
}

struct StlcFamily {
  static constexpr const char* name = "stlc";
  static oracle::StlcSample gen(std::uint64_t s, const oracle::GenConfig& c) { return oracle::gen_stlc(s, c); }
  static stlc::Ty filler() { return stlc::Ty::atom(); }
  static stlc::Nf norm(const stlc::Context& g, const stlc::Term& t) { return stlc::norm(g, t); }
  static stlc::Ty infer(const stlc::Context& g, const stlc::Term& t) { return stlc::infer(g, t); }
  static void validate(const stlc::Context& g, const stlc::Ty& a, const stlc::Nf& n) { stlc::validate(g, a, n); }
  static stlc::Term erase(const stlc::Context& g, const stlc::Ty& a, const stlc::Nf& n) { return stlc::erase(g, a, n); }
  static std::optional<stlc::Term> reference(const Ope& tau, const stlc::Term& t) { return naive_rename(tau, t); }
};

struct CbpvFamily {
  static constexpr const char* name = "cbpv";
  static oracle::CbpvSample gen(std::uint64_t s, const oracle::GenConfig& c) { return oracle::gen_cbpv(s, c); }
  static cbpv::Ty filler() { return cbpv::Ty::atom_pos("a"); }
  static cbpv::Nf norm(const cbpv::Context& g, const cbpv::Tm& t) { return cbpv::norm(g, t); }
  static cbpv::Ty infer(const cbpv::Context& g, const cbpv::Tm& t) { return cbpv::infer(g, t); }
  static void validate(const cbpv::Context& g, const cbpv::Ty& a, const cbpv::Nf& n) { cbpv::validate(g, a, n); }
  static cbpv::Tm erase(const cbpv::Context& g, const cbpv::Ty& a, const cbpv::Nf& n) { return cbpv::erase(g, a, n); }
  static std::optional<cbpv::Tm> reference(const Ope&, const cbpv::Tm&) { return std::nullopt; }
};

struct PolarizedFamily {
  static constexpr const char* name = "polarized";
  static oracle::PolarizedSample gen(std::uint64_t s, const oracle::GenConfig& c) { return oracle::gen_polarized(s, c); }
  static cbpv::Ty filler() { return cbpv::Ty::atom_pos("a"); }
  static polarized::Nf norm(const polarized::Context& g, const polarized::Tm& t) { return polarized::norm(g, t); }
  static cbpv::Ty infer(const polarized::Context& g, const polarized::Tm& t) { return polarized::infer(g, t); }
  static void validate(const polarized::Context& g, const cbpv::Ty& a, const polarized::Nf& n) {
    polarized::validate(g, a, n);
  }
  static polarized::Tm erase(const polarized::Context& g, const cbpv::Ty& a, const polarized::Nf& n) {
    return polarized::erase(g, a, n);
  }
  static std::optional<polarized::Tm> reference(const Ope&, const polarized::Tm&) { return std::nullopt; }
};

template <class F, class Sample, class Nf>
void rename_case(Report& r, const Sample& g, const Nf& nf, const Ope& t1, const Ope& t2, bool rnd) {
  auto delta = fill(g.ctx, t1, F::filler());
  auto where = [&] { return std::string(F::name) + " at " + to_string(t1) + ", " + to_string(t2); };
  auto t = rename(t1, g.term);
  r.check(F::infer(delta, t) == g.ty, rnd, [&] { return "renaming changed the type, " + where(); });
  r.check(rename(t2, t) == rename(compose(t1, t2), g.term), rnd,
          [&] { return "rename is not functorial on terms, " + where(); });
  if (auto ref = F::reference(t1, g.term)) {
    r.check(t == *ref, rnd, [&] { return "rename disagrees with index-by-index shifting, " + where(); });
  }
  auto n = rename(t1, nf);
  r.check(rename(t2, n) == rename(compose(t1, t2), nf), rnd,
          [&] { return "rename is not functorial on normal forms, " + where(); });
  r.check(F::erase(delta, g.ty, n) == rename(t1, F::erase(g.ctx, g.ty, nf)), rnd,
          [&] { return "erase does not commute with rename, " + where(); });
  F::validate(delta, g.ty, n);
}

template <class F>
void rename_family(Report& r, std::uint64_t seed, std::size_t random) {
  oracle::GenConfig small;
  small.size = 12;
  auto opes = all_opes(3);
  for (std::uint64_t s = 0; s < 24; ++s) {
    r.guard(false, [&] {
      auto g = F::gen(oracle::sub_seed(seed, s), small);
      auto nf = F::norm(g.ctx, g.term);
      Ope id = Ope::id(g.ctx.size());
      r.check(rename(id, g.term) == g.term && rename(id, nf) == nf, false,
              [&] { return std::string(F::name) + ": rename id is not the identity"; });
      for (const auto& t1 : opes) {
        if (t1.source_size() != g.ctx.size()) continue;
        for (const auto& t2 : opes) {
          if (t2.source_size() == t1.target_size()) rename_case<F>(r, g, nf, t1, t2, false);
        }
      }
    });
  }
  Rng rng(seed);
  for (std::size_t i = 0; i < random; ++i) {
    r.guard(true, [&] {
      auto g = F::gen(oracle::sub_seed(seed ^ 0x5eed, i), {});
      auto nf = F::norm(g.ctx, g.term);
      Ope t1 = random_ope(rng, g.ctx.size(), 5);
      Ope t2 = random_ope(rng, t1.target_size(), 5);
      rename_case<F>(r, g, nf, t1, t2, true);
    });
  }
}

}  // namespace

Report rename_laws(std::uint64_t seed, std::size_t random) {
  Report r;
  r.name = "rename functor laws";
  rename_family<StlcFamily>(r, seed, random);
  rename_family<CbpvFamily>(r, seed, random);
  rename_family<PolarizedFamily>(r, seed, random);
  return r;
}

// ---------------------------------------------------------------------------
// STLC covers.  Base context, innermost last: o, 0, o+o.  Under b case
// binders the sum sits at index b, the empty type at b+1 and the atom at b+2.

namespace {

using stlc::Cont;
using stlc::Continuation;
using stlc::Cover;
using stlc::FreeCover;
using SNe = stlc::Ne;

constexpr std::size_t kBase = 3;

const stlc::Ty& sum_ty() {
  static const stlc::Ty t = stlc::Ty::sum(stlc::Ty::atom(), stlc::Ty::atom());
  return t;
}

SNe base_leaf(std::size_t b) { return SNe::var(Idx(static_cast<std::uint32_t>(b + 2))); }

std::vector<SNe> ne_leaves(std::size_t, std::size_t b) {
  std::vector<SNe> v{base_leaf(b)};
  if (b > 0) v.push_back(SNe::var(Idx::zero()));  // the nearest case binder
  return v;
}

template <class J, class Leaves>
std::vector<Cover<J>> covers(std::size_t h, std::size_t b, const Leaves& leaves) {
  std::vector<Cover<J>> out;
  if (h == 0) return out;
  out.push_back(Cover<J>::abort(SNe::var(Idx(static_cast<std::uint32_t>(b + 1)))));
  for (auto& j : leaves(h, b)) out.push_back(Cover<J>::ret(j));
  if (h >= 2) {
    auto subs = covers<J>(h - 1, b + 1, leaves);
    for (const auto& l : subs) {
      for (const auto& rr : subs) out.push_back(Cover<J>::case_(SNe::var(Idx(static_cast<std::uint32_t>(b))), sum_ty(), l, rr));
    }
  }
  return out;
}

template <class J, class Leaf>
Cover<J> random_cover(Rng& rng, std::size_t h, std::size_t b, const Leaf& leaf) {
  if (h <= 1 || below(rng, 3) == 0) {
    if (below(rng, 5) == 0) return Cover<J>::abort(SNe::var(Idx(static_cast<std::uint32_t>(b + 1))));
    return Cover<J>::ret(leaf(rng, h, b));
  }
  auto l = random_cover<J>(rng, h - 1, b + 1, leaf);
  auto rr = random_cover<J>(rng, h - 1, b + 1, leaf);
  return Cover<J>::case_(SNe::var(Idx(static_cast<std::uint32_t>(b))), sum_ty(), l, rr);
}

SNe random_ne_leaf(Rng& rng, std::size_t, std::size_t b) {
  auto v = ne_leaves(0, b);
  return v[below(rng, v.size())];
}

// Leaves replaced by the base atom, computed without the monad.
Cover<SNe> relabel(const Cover<SNe>& c, std::size_t b) {
  switch (c.kind()) {
    case Cover<SNe>::Kind::Return: return Cover<SNe>::ret(base_leaf(b));
    case Cover<SNe>::Kind::Case:
      return Cover<SNe>::case_(c.scrut(), c.scrut_ty(), relabel(c.left(), b + 1), relabel(c.right(), b + 1));
    case Cover<SNe>::Kind::Abort: return c;
  }
  return c;
}

template <class K, class J, class F>
Cont<K> to_cc(const Cover<J>& c, std::size_t depth, const F& leaf) {
  switch (c.kind()) {
    case Cover<J>::Kind::Return: return Continuation::ret(leaf(c.leaf(), depth), depth);
    case Cover<J>::Kind::Case:
      return Continuation::case_<K>(c.scrut(), c.scrut_ty(), to_cc<K>(c.left(), depth + 1, leaf),
                                    to_cc<K>(c.right(), depth + 1, leaf), depth);
    case Cover<J>::Kind::Abort: return Continuation::abort<K>(c.scrut(), depth);
  }
  fail(Errc::ShapeMismatch, "to_cc");
}

const auto kSame = [](const SNe& j, std::size_t) { return j; };

Cont<SNe> cc1(const Cover<SNe>& m) { return to_cc<SNe>(m, kBase, kSame); }

Cont<Cont<SNe>> cc2(const Cover<Cover<SNe>>& mm, std::size_t depth = kBase) {
  return to_cc<Cont<SNe>>(mm, depth, [](const Cover<SNe>& m, std::size_t d) { return to_cc<SNe>(m, d, kSame); });
}

Cont<Cont<Cont<SNe>>> cc3(const Cover<Cover<Cover<SNe>>>& mmm) {
  return to_cc<Cont<Cont<SNe>>>(mmm, kBase, [](const Cover<Cover<SNe>>& mm, std::size_t d) { return cc2(mm, d); });
}

stlc::Nf run_cc(const Cont<SNe>& c) {
  return c(Ope::id(kBase), [](const Ope&, const SNe& j) { return stlc::Nf::ne(j); });
}

stlc::Nf run_free(const Cover<SNe>& m) {
  auto nfs = FreeCover::map<stlc::Nf>([](const SNe& j, std::size_t) { return stlc::Nf::ne(j); }, m, kBase);
  return FreeCover::runNf(nfs, stlc::Ty::atom(), kBase);
}

void cover_single(Report& r, const Cover<SNe>& m, bool rnd) {
  using FC = FreeCover;
  using CC = Continuation;
  auto ret_leaf = [](const SNe& j, std::size_t) { return Cover<SNe>::ret(j); };
  auto f = [](const SNe& j, std::size_t) { return SNe::prj(1, j); };
  auto g = [](const SNe& j, std::size_t) { return SNe::app(j, stlc::Nf::unit()); };

  r.check(FC::join(Cover<Cover<SNe>>::ret(m)) == m, rnd, [] { return "free: join . return /= id"; });
  r.check(FC::join(FC::map<Cover<SNe>>(ret_leaf, m, kBase)) == m, rnd, [] { return "free: join . map return /= id"; });
  r.check(FC::map<SNe>(kSame, m, kBase) == m, rnd, [] { return "free: map id /= id"; });
  r.check(FC::map<SNe>(g, FC::map<SNe>(f, m, kBase), kBase) ==
              FC::map<SNe>([&](const SNe& j, std::size_t d) { return g(f(j, d), d); }, m, kBase),
          rnd, [] { return "free: map does not preserve composition"; });
  auto strong = FC::stmap<SNe>([](const Ope& tau, const SNe&) { return rename(tau, base_leaf(0)); }, m, kBase);
  r.check(strong == relabel(m, 0), rnd, [] { return "free: stmap passed the wrong embedding"; });
  r.check(FC::stmap<SNe>([&](const Ope&, const SNe& j) { return f(j, 0); }, m, kBase) == FC::map<SNe>(f, m, kBase),
          rnd, [] { return "free: stmap ignoring its embedding /= map"; });
  for (const Ope& sigma : {Ope::wk(kBase), Ope::id(2).weak().lift(), Ope::id(1).weak().lift().lift()}) {
    r.check(rename(sigma, FC::map<SNe>(f, m, kBase)) == FC::map<SNe>(f, rename(sigma, m), sigma.target_size()), rnd,
            [] { return "free: map is not natural in renaming"; });
    auto nfs = FC::map<stlc::Nf>([](const SNe& j, std::size_t) { return stlc::Nf::ne(j); }, m, kBase);
    r.check(rename(sigma, FC::runNf(nfs, stlc::Ty::atom(), kBase)) ==
                FC::runNf(rename(sigma, nfs), stlc::Ty::atom(), sigma.target_size()),
            rnd, [] { return "free: runNf is not natural in renaming"; });
  }

  auto c = cc1(m);
  stlc::Nf expect = run_free(m);
  r.check(run_cc(c) == expect, rnd, [] { return "cont: running disagrees with the free cover"; });
  r.check(run_cc(CC::join(CC::ret(c, kBase))) == expect, rnd, [] { return "cont: join . return /= id"; });
  r.check(run_cc(CC::join(CC::map<Cont<SNe>>([](const SNe& j, std::size_t d) { return CC::ret(j, d); }, c, kBase))) ==
              expect,
          rnd, [] { return "cont: join . map return /= id"; });
  r.check(run_cc(CC::map<SNe>(f, c, kBase)) == run_free(FC::map<SNe>(f, m, kBase)), rnd,
          [] { return "cont: map disagrees with the free cover"; });
  r.check(run_cc(CC::stmap<SNe>([](const Ope& tau, const SNe&) { return rename(tau, base_leaf(0)); }, c, kBase)) ==
              run_free(relabel(m, 0)),
          rnd, [] { return "cont: stmap passed the wrong embedding"; });
}

void cover_assoc(Report& r, const Cover<Cover<Cover<SNe>>>& mmm, bool rnd) {
  using FC = FreeCover;
  using CC = Continuation;
  auto lhs = FC::join(FC::join(mmm));
  auto rhs = FC::join(FC::map<Cover<SNe>>([](const Cover<Cover<SNe>>& mm, std::size_t) { return FC::join(mm); }, mmm, kBase));
  r.check(lhs == rhs, rnd, [] { return "free: join is not associative"; });
  auto ccc = cc3(mmm);
  auto cl = run_cc(CC::join(CC::join(ccc)));
  auto cr = run_cc(CC::join(
      CC::map<Cont<SNe>>([](const Cont<Cont<SNe>>& x, std::size_t) { return CC::join(x); }, ccc, kBase)));
  r.check(cl == cr, rnd, [] { return "cont: join is not associative"; });
  r.check(cl == run_free(lhs), rnd, [] { return "cont: join disagrees with the free cover"; });
}

}  // namespace

Report cover_laws(std::uint64_t seed, std::size_t random) {
  Report r;
  r.name = "cover monad laws (free, continuation)";
  for (const auto& m : covers<SNe>(4, 0, ne_leaves)) r.guard(false, [&] { cover_single(r, m, false); });
  auto level2 = [](std::size_t h, std::size_t b) { return covers<SNe>(h, b, ne_leaves); };
  auto level3 = [&](std::size_t h, std::size_t b) { return covers<Cover<SNe>>(h, b, level2); };
  for (const auto& mmm : covers<Cover<Cover<SNe>>>(3, 0, level3)) r.guard(false, [&] { cover_assoc(r, mmm, false); });

  Rng rng(seed);
  auto r2 = [](Rng& g, std::size_t h, std::size_t b) { return random_cover<SNe>(g, h, b, random_ne_leaf); };
  auto r3 = [&](Rng& g, std::size_t h, std::size_t b) { return random_cover<Cover<SNe>>(g, h, b, r2); };
  for (std::size_t i = 0; i < random; ++i) {
    r.guard(true, [&] {
      cover_single(r, random_cover<SNe>(rng, 7, 0, random_ne_leaf), true);
      cover_assoc(r, random_cover<Cover<Cover<SNe>>>(rng, 6, 0, r3), true);
    });
  }
  return r;
}

// ---------------------------------------------------------------------------
// Polarized covers and Add.

namespace {

using polarized::Add;
using polarized::Cov;
using PNe = polarized::Ne;
using cbpv::Ty;

Ty atom_p() { return Ty::atom_pos("a"); }
Ty atom_n() { return Ty::atom_neg("b"); }

// The fringe of reflect^P at `depth`, each leaf labelled with its context
// length.
Add<std::size_t> skeleton(const Ty& p, std::size_t depth) {
  return polarized::reflect_cont<std::size_t>(p, [](const Ope& tau, const polarized::Sem&) { return tau.target_size(); },
                                              depth);
}

// Every way of filling the leaves of `skel` from choices(leaf_depth).
template <class J, class Choices>
std::vector<Add<J>> fills(const Add<std::size_t>& skel, const Choices& choices) {
  using Kd = typename Add<std::size_t>::Kind;
  std::vector<Add<J>> out;
  if (skel.kind() == Kd::Leaf) {
    for (auto& c : choices(skel.leaf())) out.push_back(Add<J>::leaf(c));
    return out;
  }
  std::vector<std::vector<Add<J>>> kids;
  for (std::size_t i = 0; i < skel.arity(); ++i) kids.push_back(fills<J>(skel.sub(i), choices));
  std::vector<Add<J>> pick;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == kids.size()) {
      out.push_back(polarized::add_rebuild<J>(skel, pick));
      return;
    }
    for (const auto& k : kids[i]) {
      pick.push_back(k);
      go(i + 1);
      pick.pop_back();
    }
  };
  go(0);
  return out;
}

template <class J, class Choose>
Add<J> fill_random(const Add<std::size_t>& skel, const Choose& choose) {
  using Kd = typename Add<std::size_t>::Kind;
  if (skel.kind() == Kd::Leaf) return Add<J>::leaf(choose(skel.leaf()));
  std::vector<Add<J>> kids;
  for (std::size_t i = 0; i < skel.arity(); ++i) kids.push_back(fill_random<J>(skel.sub(i), choose));
  return polarized::add_rebuild<J>(skel, std::move(kids));
}

// Base context, innermost last: b-, F 0, F 1, F a+, F (1+1).
constexpr std::size_t kBaseZ = 5;

struct Bindable {
  Ty pos;
  std::uint32_t index;  // in the base context
};

const std::vector<Bindable>& bindables() {
  static const std::vector<Bindable> v = {
      {Ty::zero(), 3}, {Ty::one(), 2}, {atom_p(), 1}, {Ty::sum(Ty::one(), Ty::one()), 0}};
  return v;
}

PNe base_var(std::uint32_t index, std::size_t depth) {
  return PNe::var(Idx(static_cast<std::uint32_t>(index + depth - kBaseZ)));
}

std::vector<PNe> pne_leaves(std::size_t, std::size_t depth) { return {base_var(4, depth)}; }

template <class J, class Leaves>
std::vector<Cov<J>> covz(std::size_t h, std::size_t depth, const Leaves& leaves) {
  std::vector<Cov<J>> out;
  if (h == 0) return out;
  for (auto& j : leaves(h, depth)) out.push_back(Cov<J>::ret(j));
  if (h >= 2) {
    for (const auto& b : bindables()) {
      auto bodies = fills<Cov<J>>(skeleton(b.pos, depth), [&](std::size_t d) { return covz<J>(h - 1, d, leaves); });
      for (auto& body : bodies) out.push_back(Cov<J>::bind(base_var(b.index, depth), b.pos, body));
    }
  }
  return out;
}

template <class J, class Leaf>
Cov<J> random_covz(Rng& rng, std::size_t h, std::size_t depth, const Leaf& leaf) {
  if (h <= 1 || below(rng, 3) == 0) return Cov<J>::ret(leaf(rng, h, depth));
  const auto& b = bindables()[below(rng, bindables().size())];
  auto body = fill_random<Cov<J>>(skeleton(b.pos, depth),
                                  [&](std::size_t d) { return random_covz<J>(rng, h - 1, d, leaf); });
  return Cov<J>::bind(base_var(b.index, depth), b.pos, body);
}

PNe random_pne_leaf(Rng&, std::size_t, std::size_t depth) { return base_var(4, depth); }

polarized::Context dummy_ctx(std::size_t n) { return polarized::Context(n, atom_p()); }

Cov<PNe> relabel_z(const Cov<PNe>& c, std::size_t depth) {
  if (c.kind() == Cov<PNe>::Kind::Return) return Cov<PNe>::ret(base_var(4, depth));
  auto body = polarized::add_map_ctx<Cov<PNe>>(
      [](const Cov<PNe>& sub, const polarized::Context& ctx) { return relabel_z(sub, ctx.size()); }, c.body(),
      dummy_ctx(depth));
  return Cov<PNe>::bind(c.ne(), c.ty(), body);
}

void covz_single(Report& r, const Cov<PNe>& m, bool rnd) {
  using polarized::cov_join;
  using polarized::cov_map;
  using polarized::cov_stmap;
  auto f = [](const PNe& j, std::size_t) { return PNe::prj(1, j); };
  r.check(cov_join(Cov<Cov<PNe>>::ret(m)) == m, rnd, [] { return "covz: join . return /= id"; });
  r.check(cov_join(cov_map<Cov<PNe>>([](const PNe& j, std::size_t) { return Cov<PNe>::ret(j); }, m, kBaseZ)) == m, rnd,
          [] { return "covz: join . map return /= id"; });
  r.check(cov_map<PNe>([](const PNe& j, std::size_t) { return j; }, m, kBaseZ) == m, rnd,
          [] { return "covz: map id /= id"; });
  r.check(cov_stmap<PNe>([](const Ope& tau, const PNe&) { return rename(tau, base_var(4, kBaseZ)); }, m, kBaseZ) ==
              relabel_z(m, kBaseZ),
          rnd, [] { return "covz: stmap passed the wrong embedding"; });
  for (const Ope& sigma : {Ope::wk(kBaseZ), Ope::id(4).weak().lift()}) {
    r.check(rename(sigma, cov_map<PNe>(f, m, kBaseZ)) == cov_map<PNe>(f, rename(sigma, m), sigma.target_size()), rnd,
            [] { return "covz: map is not natural in renaming"; });
  }
}

void covz_assoc(Report& r, const Cov<Cov<Cov<PNe>>>& mmm, bool rnd) {
  using polarized::cov_join;
  using polarized::cov_map;
  auto lhs = cov_join(cov_join(mmm));
  auto rhs = cov_join(
      cov_map<Cov<PNe>>([](const Cov<Cov<PNe>>& mm, std::size_t) { return cov_join(mm); }, mmm, kBaseZ));
  r.check(lhs == rhs, rnd, [] { return "covz: join is not associative"; });
}

}  // namespace

Report covz_laws(std::uint64_t seed, std::size_t random) {
  Report r;
  r.name = "polarized cover monad laws";
  for (const auto& m : covz<PNe>(4, kBaseZ, pne_leaves)) r.guard(false, [&] { covz_single(r, m, false); });
  auto level2 = [](std::size_t h, std::size_t d) { return covz<PNe>(h, d, pne_leaves); };
  auto level3 = [&](std::size_t h, std::size_t d) { return covz<Cov<PNe>>(h, d, level2); };
  for (const auto& mmm : covz<Cov<Cov<PNe>>>(3, kBaseZ, level3)) r.guard(false, [&] { covz_assoc(r, mmm, false); });

  Rng rng(seed);
  auto r2 = [](Rng& g, std::size_t h, std::size_t d) { return random_covz<PNe>(g, h, d, random_pne_leaf); };
  auto r3 = [&](Rng& g, std::size_t h, std::size_t d) { return random_covz<Cov<PNe>>(g, h, d, r2); };
  for (std::size_t i = 0; i < random; ++i) {
    r.guard(true, [&] {
      covz_single(r, random_covz<PNe>(rng, 6, kBaseZ, random_pne_leaf), true);
      covz_assoc(r, random_covz<Cov<Cov<PNe>>>(rng, 5, kBaseZ, r3), true);
    });
  }
  return r;
}

std::vector<Ty> positive_types(std::size_t height) {
  std::vector<Ty> base = {atom_p(), Ty::zero(), Ty::one(), Ty::thunk(atom_n()), Ty::thunk(Ty::top())};
  if (height <= 1) return height == 1 ? base : std::vector<Ty>{};
  auto smaller = positive_types(height - 1);
  std::vector<Ty> out = base;
  for (const auto& a : smaller) {
    for (const auto& b : smaller) {
      out.push_back(Ty::sum(a, b));
      out.push_back(Ty::prod(a, b));
    }
  }
  return out;
}

namespace {

Ty random_positive(Rng& rng, std::size_t height) {
  if (height <= 1 || below(rng, 4) == 0) {
    auto base = positive_types(1);
    return base[below(rng, base.size())];
  }
  Ty a = random_positive(rng, height - 1);
  Ty b = random_positive(rng, height - 1);
  return below(rng, 2) == 0 ? Ty::sum(a, b) : Ty::prod(a, b);
}

// Number of complete patterns for p.
std::size_t patterns(const Ty& p) {
  switch (p.kind()) {
    case Ty::Kind::Zero: return 0;
    case Ty::Kind::Sum: return patterns(p.left()) + patterns(p.right());
    case Ty::Kind::Prod: return patterns(p.left()) * patterns(p.right());
    default: return 1;
  }
}

template <class J>
bool all_leaves(const Add<J>& a, const std::function<bool(const J&)>& pred) {
  if (a.kind() == Add<J>::Kind::Leaf) return pred(a.leaf());
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!all_leaves(a.sub(i), pred)) return false;
  }
  return true;
}

constexpr std::size_t kAddDepth = 2;

void add_single(Report& r, const Ty& p, bool rnd) {
  using polarized::add_map;
  using polarized::add_stmap;
  auto skel = skeleton(p, kAddDepth);
  auto where = [&] { return " for " + cbpv::show(p); };
  polarized::Context ctx{atom_p(), atom_n()};
  bool fringe_ok = true;
  try {
    polarized::walk_add(
        skel, p, ctx,
        [&](std::size_t j, const polarized::Context& c) { fringe_ok = fringe_ok && j == c.size(); },
        Errc::ValidationFailure);
  } catch (const Error&) {
    fringe_ok = false;
  }
  r.check(fringe_ok, rnd, [&] { return "reflect^P does not decompose P" + where(); });
  r.check(skel.leaves() == patterns(p), rnd, [&] { return "wrong number of fringe leaves" + where(); });

  auto f = [](std::size_t j) { return j + 1; };
  auto g = [](std::size_t j) { return 3 * j; };
  r.check(add_map<std::size_t>([](std::size_t j) { return j; }, skel) == skel, rnd,
          [&] { return "add: map id /= id" + where(); });
  r.check(add_map<std::size_t>(g, add_map<std::size_t>(f, skel)) ==
              add_map<std::size_t>([&](std::size_t j) { return g(f(j)); }, skel),
          rnd, [&] { return "add: map does not preserve composition" + where(); });
  r.check(add_stmap<std::size_t>([&](const Ope&, std::size_t j) { return f(j); }, skel, kAddDepth) ==
              add_map<std::size_t>(f, skel),
          rnd, [&] { return "add: stmap ignoring its embedding /= map" + where(); });

  auto embedding_ok = add_stmap<int>(
      [](const Ope& tau, std::size_t j) {
        Ope expect = Ope::id(kAddDepth);
        while (expect.target_size() < j) expect = expect.weak();
        return tau == expect ? 1 : 0;
      },
      skel, kAddDepth);
  r.check(all_leaves<int>(embedding_ok, [](const int& ok) { return ok == 1; }), rnd,
          [&] { return "add: stmap passed the wrong embedding" + where(); });

  auto l1 = [](const Ope& tau, std::size_t j) { return j + tau.target_size(); };
  auto l2 = [](const Ope& tau, std::size_t j) { return 2 * j + tau.source_size(); };
  r.check(add_stmap<std::size_t>(l2, add_stmap<std::size_t>(l1, skel, kAddDepth), kAddDepth) ==
              add_stmap<std::size_t>([&](const Ope& tau, std::size_t j) { return l2(tau, l1(tau, j)); }, skel,
                                     kAddDepth),
          rnd, [&] { return "add: stmap does not preserve composition" + where(); });

  // Leaves point at the outermost base entry.
  auto outer = add_map<PNe>([](std::size_t j) { return PNe::var(Idx(static_cast<std::uint32_t>(j - 1))); }, skel);
  Ope s1 = Ope::wk(kAddDepth);
  Ope s2 = Ope::id(kAddDepth).weak().lift();
  r.check(rename(Ope::id(kAddDepth), outer) == outer, rnd, [&] { return "add: rename id /= id" + where(); });
  r.check(rename(s1, outer) ==
              add_map<PNe>([](std::size_t j) { return PNe::var(Idx(static_cast<std::uint32_t>(j))); }, skel),
          rnd, [&] { return "add: rename does not lift past hypotheses" + where(); });
  r.check(rename(s2, rename(s1, outer)) == rename(compose(s1, s2), outer), rnd,
          [&] { return "add: rename is not functorial" + where(); });
}

}  // namespace

Report add_laws(std::uint64_t seed, std::size_t random) {
  Report r;
  r.name = "Add strong functor laws";
  for (const auto& p : positive_types(3)) r.guard(false, [&] { add_single(r, p, false); });
  Rng rng(seed);
  for (std::size_t i = 0; i < random; ++i) {
    Ty p = random_positive(rng, 6);
    r.guard(true, [&] { add_single(r, p, true); });
  }
  return r;
}

// ---------------------------------------------------------------------------
// match / reflect coherence.  Base context, innermost last:
// a+, a+, b-, b-, Top.

namespace {

using polarized::Sem;

constexpr std::size_t kCoherenceDepth = 5;

polarized::Context coherence_ctx() { return {atom_p(), atom_p(), atom_n(), atom_n(), Ty::top()}; }

// A value read back through an environment, down to base hypotheses.
std::string key(const Sem& v, const polarized::Env& env) {
  switch (v.kind()) {
    case Sem::Kind::Unit: return "()";
    case Sem::Kind::Pair: return "(" + key(v.fst(), env) + ", " + key(v.snd(), env) + ")";
    case Sem::Kind::Inl: return "inl " + key(v.payload(), env);
    case Sem::Kind::Inr: return "inr " + key(v.payload(), env);
    case Sem::Kind::AtomP: {
      const Sem& w = lookup(env, v.idx());
      if (w.kind() != Sem::Kind::AtomP) return "?atom";
      return "a" + std::to_string(w.idx().depth);
    }
    case Sem::Kind::AtomN: {
      const auto& c = v.neutrals();
      if (c.kind() != Cov<PNe>::Kind::Return || c.leaf().kind() != PNe::Kind::VarN) return "?neutral";
      const Sem& w = lookup(env, c.leaf().idx());
      if (w.kind() != Sem::Kind::AtomN || w.neutrals().kind() != Cov<PNe>::Kind::Return) return "?neutral";
      return "n" + polarized::dump(w.neutrals().leaf());
    }
    default: return "?";
  }
}

std::vector<Sem> values(const Ty& p) {
  switch (p.kind()) {
    case Ty::Kind::AtomP: return {Sem::atom(Idx(3)), Sem::atom(Idx(4))};
    case Ty::Kind::Thunk:
      if (p.left().kind() == Ty::Kind::Top) return {polarized::reflect(Ty::top(), PNe::var(Idx(0)), kCoherenceDepth)};
      return {polarized::reflect(p.left(), PNe::var(Idx(1)), kCoherenceDepth),
              polarized::reflect(p.left(), PNe::var(Idx(2)), kCoherenceDepth)};
    case Ty::Kind::Zero: return {};
    case Ty::Kind::One: return {Sem::unit()};
    case Ty::Kind::Sum: {
      std::vector<Sem> out;
      for (auto& a : values(p.left())) out.push_back(Sem::inl(a));
      for (auto& b : values(p.right())) out.push_back(Sem::inr(b));
      return out;
    }
    case Ty::Kind::Prod: {
      std::vector<Sem> out;
      auto bs = values(p.right());
      for (auto& a : values(p.left())) {
        for (auto& b : bs) out.push_back(Sem::pair(a, b));
      }
      return out;
    }
    default: break;
  }
  fail(Errc::PolarityViolation, "values of a negative type");
}

}  // namespace

Report coherence(std::size_t height) {
  Report r;
  r.name = "match/reflect coherence";
  auto ctx = coherence_ctx();
  polarized::Env gamma = polarized::id_env(ctx);
  for (const auto& p : positive_types(height)) {
    r.guard(false, [&] {
      polarized::Kont<polarized::Ev<std::string>> k = [](const Ope&, const Sem& a) -> polarized::Ev<std::string> {
        return [a](const polarized::Env& env) { return key(a, env); };
      };
      auto tree = polarized::reflect_cont<polarized::Ev<std::string>>(p, k, kCoherenceDepth);
      for (const auto& a : values(p)) {
        std::string got = polarized::match<std::string>(a, tree, gamma);
        std::string want = k(Ope::id(kCoherenceDepth), a)(gamma);
        r.check(got == want, false,
                [&] { return "at " + cbpv::show(p) + ": matched " + got + ", expected " + want; });
      }
    });
  }
  return r;
}

}  // namespace nbe::laws
