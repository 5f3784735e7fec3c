#include "nbe/oracle/generate.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace nbe::oracle {

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t k) {
  // splitmix64 step: decorrelates neighbouring seeds and attempts
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

// Portable draws: std distributions differ between standard libraries.
std::size_t below(Rng& rng, std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng() % n); }
bool chance(Rng& rng, unsigned pct) { return below(rng, 100) < pct; }

// Pick an index with probability proportional to its weight.
std::size_t weighted(Rng& rng, const std::vector<unsigned>& w) {
  unsigned total = 0;
  for (unsigned x : w) total += x;
  std::size_t r = below(rng, total);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (r < w[i]) return i;
    r -= w[i];
  }
  return w.size() - 1;
}

// A weighted random permutation of the options with non-zero weight.
std::vector<std::size_t> order(Rng& rng, std::vector<unsigned> w) {
  std::vector<std::size_t> out;
  for (;;) {
    unsigned total = 0;
    for (unsigned x : w) total += x;
    if (total == 0) return out;
    std::size_t i = weighted(rng, w);
    out.push_back(i);
    w[i] = 0;
  }
}

struct OutOfSteps {};

template <class T>
using Opt = std::optional<T>;

// Options are tried in weighted random order until one succeeds.
template <class T>
struct Menu {
  std::vector<unsigned> weights;
  std::vector<std::function<Opt<T>()>> options;

  void add(unsigned w, std::function<Opt<T>()> f) {
    if (w == 0) return;
    weights.push_back(w);
    options.push_back(std::move(f));
  }
  Opt<T> run(Rng& rng) {
    for (std::size_t i : order(rng, weights)) {
      if (auto r = options[i]()) return r;
    }
    return std::nullopt;
  }
};

class Steps {
 public:
  explicit Steps(std::size_t budget) : left_(budget) {}
  void tick() {
    if (left_ == 0) throw OutOfSteps{};
    --left_;
  }

 private:
  std::size_t left_;
};

// Split n into two positive parts (n ≥ 2).
std::pair<std::size_t, std::size_t> halves(Rng& rng, std::size_t n) {
  if (n < 2) return {1, 1};
  std::size_t a = 1 + below(rng, n - 1);
  return {a, n - a};
}

template <class Sample, class Attempt>
Sample with_retries(std::uint64_t seed, const GenConfig& cfg, const Attempt& attempt) {
  for (std::size_t k = 0; k < cfg.attempts; ++k) {
    Rng rng(sub_seed(seed, k));
    try {
      if (auto s = attempt(rng)) {
        s->retries = static_cast<unsigned>(k);
        return *s;
      }
    } catch (const OutOfSteps&) {
    }
  }
  fail(Errc::GenerationExhausted, "no term found for seed " + std::to_string(seed) + " after " +
                                      std::to_string(cfg.attempts) + " attempts");
}

// ---------------------------------------------------------------- STLC

using stlc::Term;
using SC = stlc::Context;
using STy = stlc::Ty;

bool reaches(const STy& s, const STy& t) {
  if (s == t) return true;
  switch (s.kind()) {
    case STy::Kind::Arr: return reaches(s.right(), t);
    case STy::Kind::Prod: return reaches(s.left(), t) || reaches(s.right(), t);
    case STy::Kind::Sum:
    case STy::Kind::Zero: return true;
    default: return false;
  }
}

class StlcGen {
 public:
  StlcGen(Rng& rng, const GenConfig& cfg) : rng_(rng), steps_(cfg.budget) {}

  Opt<Term> term(const SC& ctx, const STy& ty, std::size_t size) {
    steps_.tick();
    if (size == 0) return std::nullopt;
    Menu<Term> m;
    m.add(size <= 2 ? 6 : 4, [&] { return head(ctx, ty, size); });
    m.add(3, [&] { return intro(ctx, ty, size); });
    if (size >= 4) {
      m.add(2, [&] { return beta_arr(ctx, ty, size); });
      m.add(2, [&] { return case_any(ctx, ty, size); });
      m.add(1, [&] { return app_any(ctx, ty, size); });
      m.add(1, [&] { return prj_any(ctx, ty, size); });
      m.add(1, [&] { return abort_any(ctx, ty, size); });
    }
    return m.run(rng_);
  }

 private:
  STy small() { return random_stlc_type(rng_, 1); }

  Opt<Term> head(const SC& ctx, const STy& ty, std::size_t size) {
    std::vector<std::size_t> cands;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (reaches(lookup(ctx, Idx(static_cast<std::uint32_t>(i))), ty)) cands.push_back(i);
    }
    std::shuffle(cands.begin(), cands.end(), rng_);
    for (std::size_t i : cands) {
      Idx x(static_cast<std::uint32_t>(i));
      if (auto r = spine(ctx, Term::var(x), lookup(ctx, x), ty, size)) return r;
    }
    return std::nullopt;
  }

  Opt<Term> spine(const SC& ctx, const Term& h, const STy& s, const STy& ty, std::size_t size) {
    steps_.tick();
    if (s == ty && (size <= 2 || chance(rng_, 70))) return h;
    Menu<Term> m;
    if (s == ty) m.add(3, [&]() -> Opt<Term> { return h; });
    switch (s.kind()) {
      case STy::Kind::Arr:
        if (reaches(s.right(), ty) && size >= 2) {
          m.add(4, [&]() -> Opt<Term> {
            std::size_t a = std::max<std::size_t>(1, size / 3);
            auto arg = term(ctx, s.left(), a);
            if (!arg) return std::nullopt;
            return spine(ctx, Term::app(h, *arg), s.right(), ty, size - std::min(size - 1, arg->size()));
          });
        }
        break;
      case STy::Kind::Prod:
        for (int i : {1, 2}) {
          const STy& part = i == 1 ? s.left() : s.right();
          if (reaches(part, ty)) m.add(3, [&, i]() { return spine(ctx, Term::prj(i, h), part, ty, size); });
        }
        break;
      case STy::Kind::Sum:
        if (size >= 3) {
          m.add(2, [&]() -> Opt<Term> {
            auto [a, b] = halves(rng_, size - 1);
            auto l = term(extend(ctx, s.left()), ty, a);
            if (!l) return std::nullopt;
            auto r = term(extend(ctx, s.right()), ty, b);
            if (!r) return std::nullopt;
            return Term::case_(h, *l, *r);
          });
        }
        break;
      case STy::Kind::Zero: m.add(2, [&]() -> Opt<Term> { return Term::abort(ty, h); }); break;
      default: break;
    }
    return m.run(rng_);
  }

  Opt<Term> intro(const SC& ctx, const STy& ty, std::size_t size) {
    switch (ty.kind()) {
      case STy::Kind::Arr: {
        auto b = term(extend(ctx, ty.left()), ty.right(), std::max<std::size_t>(1, size - 1));
        if (!b) return std::nullopt;
        return Term::abs(ty.left(), *b);
      }
      case STy::Kind::Prod: {
        auto [a, b] = halves(rng_, std::max<std::size_t>(2, size - 1));
        auto l = term(ctx, ty.left(), a);
        if (!l) return std::nullopt;
        auto r = term(ctx, ty.right(), b);
        if (!r) return std::nullopt;
        return Term::pair(*l, *r);
      }
      case STy::Kind::One: return Term::unit();
      case STy::Kind::Sum: {
        int first = chance(rng_, 50) ? 1 : 2;
        for (int i : {first, 3 - first}) {
          const STy& mine = i == 1 ? ty.left() : ty.right();
          const STy& other = i == 1 ? ty.right() : ty.left();
          if (auto v = term(ctx, mine, std::max<std::size_t>(1, size - 1))) return Term::inj(i, other, *v);
        }
        return std::nullopt;
      }
      default: return std::nullopt;
    }
  }

  Opt<Term> beta_arr(const SC& ctx, const STy& ty, std::size_t size) {
    STy a = small();
    auto [s1, s2] = halves(rng_, size - 2);
    auto body = term(extend(ctx, a), ty, s1);
    if (!body) return std::nullopt;
    auto arg = term(ctx, a, s2);
    if (!arg) return std::nullopt;
    return Term::app(Term::abs(a, *body), *arg);
  }

  Opt<Term> case_any(const SC& ctx, const STy& ty, std::size_t size) {
    STy a = small();
    STy b = small();
    std::size_t s0 = std::max<std::size_t>(1, size / 3);
    auto [s1, s2] = halves(rng_, std::max<std::size_t>(2, size - s0 - 1));
    auto scrut = term(ctx, STy::sum(a, b), s0);
    if (!scrut) return std::nullopt;
    auto l = term(extend(ctx, a), ty, s1);
    if (!l) return std::nullopt;
    auto r = term(extend(ctx, b), ty, s2);
    if (!r) return std::nullopt;
    return Term::case_(*scrut, *l, *r);
  }

  Opt<Term> app_any(const SC& ctx, const STy& ty, std::size_t size) {
    STy a = small();
    auto [s1, s2] = halves(rng_, size - 1);
    auto f = term(ctx, STy::arr(a, ty), s1);
    if (!f) return std::nullopt;
    auto arg = term(ctx, a, s2);
    if (!arg) return std::nullopt;
    return Term::app(*f, *arg);
  }

  Opt<Term> prj_any(const SC& ctx, const STy& ty, std::size_t size) {
    STy other = small();
    int i = chance(rng_, 50) ? 1 : 2;
    auto p = term(ctx, i == 1 ? STy::prod(ty, other) : STy::prod(other, ty), size - 1);
    if (!p) return std::nullopt;
    return Term::prj(i, *p);
  }

  Opt<Term> abort_any(const SC& ctx, const STy& ty, std::size_t size) {
    auto z = term(ctx, STy::zero(), size - 1);
    if (!z) return std::nullopt;
    return Term::abort(ty, *z);
  }

  Rng& rng_;
  Steps steps_;
};

// ---------------------------------------------------------------- CBPV

using CTy = cbpv::Ty;

bool reaches_neg(const CTy& m, const CTy& n) {
  if (m == n) return true;
  switch (m.kind()) {
    case CTy::Kind::Arr: return reaches_neg(m.right(), n);
    case CTy::Kind::With: return reaches_neg(m.left(), n) || reaches_neg(m.right(), n);
    default: return false;
  }
}

class CbpvGen {
 public:
  using Val = cbpv::Val;
  using Tm = cbpv::Tm;
  using C = cbpv::Context;

  CbpvGen(Rng& rng, const GenConfig& cfg) : rng_(rng), steps_(cfg.budget) {}

  Opt<Val> val(const C& ctx, const CTy& p, std::size_t size) {
    steps_.tick();
    if (size == 0) return std::nullopt;
    Menu<Val> m;
    m.add(4, [&]() -> Opt<Val> {
      std::vector<Idx> cands;
      for (std::size_t i = 0; i < ctx.size(); ++i) {
        Idx x(static_cast<std::uint32_t>(i));
        if (lookup(ctx, x) == p) cands.push_back(x);
      }
      if (cands.empty()) return std::nullopt;
      return Val::var(cands[below(rng_, cands.size())]);
    });
    m.add(3, [&]() -> Opt<Val> {
      switch (p.kind()) {
        case CTy::Kind::One: return Val::unit();
        case CTy::Kind::Prod: {
          auto [a, b] = halves(rng_, std::max<std::size_t>(2, size - 1));
          auto l = val(ctx, p.left(), a);
          if (!l) return std::nullopt;
          auto r = val(ctx, p.right(), b);
          if (!r) return std::nullopt;
          return Val::pair(*l, *r);
        }
        case CTy::Kind::Sum: {
          int first = chance(rng_, 50) ? 1 : 2;
          for (int i : {first, 3 - first}) {
            const CTy& mine = i == 1 ? p.left() : p.right();
            const CTy& other = i == 1 ? p.right() : p.left();
            if (auto v = val(ctx, mine, std::max<std::size_t>(1, size - 1))) return Val::inj(i, other, *v);
          }
          return std::nullopt;
        }
        case CTy::Kind::Thunk: {
          auto t = tm(ctx, p.left(), std::max<std::size_t>(1, size - 1));
          if (!t) return std::nullopt;
          return Val::thunk(*t);
        }
        default: return std::nullopt;
      }
    });
    return m.run(rng_);
  }

  Opt<Tm> tm(const C& ctx, const CTy& n, std::size_t size) {
    steps_.tick();
    if (size == 0) return std::nullopt;
    Menu<Tm> m;
    m.add(3, [&] { return intro(ctx, n, size); });
    m.add(size <= 2 ? 6 : 4, [&] { return head(ctx, n, size); });
    if (size >= 2) m.add(2, [&] { return pos_elim(ctx, n, size); });
    if (size >= 3) m.add(2, [&] { return bind(ctx, n, size); });
    if (size >= 4) {
      m.add(1, [&]() -> Opt<Tm> {
        auto t = tm(ctx, n, size - 2);
        if (!t) return std::nullopt;
        return Tm::force(Val::thunk(*t));
      });
      m.add(2, [&] { return beta_arr(ctx, n, size); });
      m.add(1, [&] { return beta_split(ctx, n, size); });
      m.add(1, [&] { return beta_case(ctx, n, size); });
      m.add(1, [&] { return prj_any(ctx, n, size); });
      m.add(1, [&] { return app_any(ctx, n, size); });
    }
    return m.run(rng_);
  }

 private:
  CTy small_pos() { return random_pos_type(rng_, 1); }

  Opt<Tm> intro(const C& ctx, const CTy& n, std::size_t size) {
    switch (n.kind()) {
      case CTy::Kind::Arr: {
        auto b = tm(extend(ctx, n.left()), n.right(), std::max<std::size_t>(1, size - 1));
        if (!b) return std::nullopt;
        return Tm::abs(n.left(), *b);
      }
      case CTy::Kind::With: {
        auto [a, b] = halves(rng_, std::max<std::size_t>(2, size - 1));
        auto l = tm(ctx, n.left(), a);
        if (!l) return std::nullopt;
        auto r = tm(ctx, n.right(), b);
        if (!r) return std::nullopt;
        return Tm::pair(*l, *r);
      }
      case CTy::Kind::Top: return Tm::unit();
      case CTy::Kind::Comp: {
        auto v = val(ctx, n.left(), std::max<std::size_t>(1, size - 1));
        if (!v) return std::nullopt;
        return Tm::ret(*v);
      }
      default: return std::nullopt;
    }
  }

  Opt<Tm> head(const C& ctx, const CTy& n, std::size_t size) {
    std::vector<Idx> cands;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      Idx x(static_cast<std::uint32_t>(i));
      const CTy& t = lookup(ctx, x);
      if (t.kind() == CTy::Kind::Thunk && reaches_neg(t.left(), n)) cands.push_back(x);
    }
    std::shuffle(cands.begin(), cands.end(), rng_);
    for (Idx x : cands) {
      if (auto r = spine(ctx, Tm::force(Val::var(x)), lookup(ctx, x).left(), n, size)) return r;
    }
    return std::nullopt;
  }

  Opt<Tm> spine(const C& ctx, const Tm& h, const CTy& s, const CTy& n, std::size_t size) {
    steps_.tick();
    if (s == n && (size <= 2 || chance(rng_, 70))) return h;
    Menu<Tm> m;
    if (s == n) m.add(3, [&]() -> Opt<Tm> { return h; });
    if (s.kind() == CTy::Kind::Arr && reaches_neg(s.right(), n)) {
      m.add(4, [&]() -> Opt<Tm> {
        auto arg = val(ctx, s.left(), std::max<std::size_t>(1, size / 3));
        if (!arg) return std::nullopt;
        return spine(ctx, Tm::app(h, *arg), s.right(), n, size - std::min(size - 1, arg->size()));
      });
    }
    if (s.kind() == CTy::Kind::With) {
      for (int i : {1, 2}) {
        const CTy& part = i == 1 ? s.left() : s.right();
        if (reaches_neg(part, n)) m.add(3, [&, i]() { return spine(ctx, Tm::prj(i, h), part, n, size); });
      }
    }
    return m.run(rng_);
  }

  // split/case/abort on a variable of positive type
  Opt<Tm> pos_elim(const C& ctx, const CTy& n, std::size_t size) {
    std::vector<Idx> cands;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      Idx x(static_cast<std::uint32_t>(i));
      auto k = lookup(ctx, x).kind();
      if (k == CTy::Kind::Prod || k == CTy::Kind::Sum || k == CTy::Kind::Zero) cands.push_back(x);
    }
    if (cands.empty()) return std::nullopt;
    Idx x = cands[below(rng_, cands.size())];
    const CTy& p = lookup(ctx, x);
    switch (p.kind()) {
      case CTy::Kind::Prod: {
        auto b = tm(extend(extend(ctx, p.left()), p.right()), n, size - 1);
        if (!b) return std::nullopt;
        return Tm::split(Val::var(x), *b);
      }
      case CTy::Kind::Sum: {
        auto [a, c] = halves(rng_, size - 1);
        auto l = tm(extend(ctx, p.left()), n, a);
        if (!l) return std::nullopt;
        auto r = tm(extend(ctx, p.right()), n, c);
        if (!r) return std::nullopt;
        return Tm::case_(Val::var(x), *l, *r);
      }
      default: return Tm::abort(n, Val::var(x));
    }
  }

  Opt<Tm> bind(const C& ctx, const CTy& n, std::size_t size) {
    CTy p = small_pos();
    auto [a, b] = halves(rng_, size - 1);
    auto t = tm(ctx, CTy::comp(p), a);
    if (!t) return std::nullopt;
    auto body = tm(extend(ctx, p), n, b);
    if (!body) return std::nullopt;
    return Tm::bind(p, *t, *body);
  }

  Opt<Tm> beta_arr(const C& ctx, const CTy& n, std::size_t size) {
    CTy p = small_pos();
    auto [a, b] = halves(rng_, size - 2);
    auto body = tm(extend(ctx, p), n, a);
    if (!body) return std::nullopt;
    auto arg = val(ctx, p, b);
    if (!arg) return std::nullopt;
    return Tm::app(Tm::abs(p, *body), *arg);
  }

  Opt<Tm> beta_split(const C& ctx, const CTy& n, std::size_t size) {
    CTy p1 = random_pos_type(rng_, 0);
    CTy p2 = random_pos_type(rng_, 0);
    auto v1 = val(ctx, p1, 1);
    if (!v1) return std::nullopt;
    auto v2 = val(ctx, p2, 1);
    if (!v2) return std::nullopt;
    auto body = tm(extend(extend(ctx, p1), p2), n, size - 3);
    if (!body) return std::nullopt;
    return Tm::split(Val::pair(*v1, *v2), *body);
  }

  Opt<Tm> beta_case(const C& ctx, const CTy& n, std::size_t size) {
    CTy p1 = random_pos_type(rng_, 0);
    CTy p2 = random_pos_type(rng_, 0);
    int i = chance(rng_, 50) ? 1 : 2;
    auto v = val(ctx, i == 1 ? p1 : p2, 1);
    if (!v) return std::nullopt;
    auto [a, b] = halves(rng_, size - 2);
    auto l = tm(extend(ctx, p1), n, a);
    if (!l) return std::nullopt;
    auto r = tm(extend(ctx, p2), n, b);
    if (!r) return std::nullopt;
    return Tm::case_(Val::inj(i, i == 1 ? p2 : p1, *v), *l, *r);
  }

  Opt<Tm> prj_any(const C& ctx, const CTy& n, std::size_t size) {
    CTy other = random_neg_type(rng_, 1);
    int i = chance(rng_, 50) ? 1 : 2;
    auto p = tm(ctx, i == 1 ? CTy::with(n, other) : CTy::with(other, n), size - 1);
    if (!p) return std::nullopt;
    return Tm::prj(i, *p);
  }

  Opt<Tm> app_any(const C& ctx, const CTy& n, std::size_t size) {
    CTy p = small_pos();
    auto [a, b] = halves(rng_, size - 1);
    auto f = tm(ctx, CTy::arr(p, n), a);
    if (!f) return std::nullopt;
    auto arg = val(ctx, p, b);
    if (!arg) return std::nullopt;
    return Tm::app(*f, *arg);
  }

  Rng& rng_;
  Steps steps_;
};

// ---------------------------------------------------------------- polarized

// Leaves of a complete decomposition of p.
std::size_t fringe_size(const CTy& p) {
  switch (p.kind()) {
    case CTy::Kind::Zero: return 0;
    case CTy::Kind::Sum: return fringe_size(p.left()) + fringe_size(p.right());
    case CTy::Kind::Prod: return fringe_size(p.left()) * fringe_size(p.right());
    default: return 1;
  }
}

class PolGen {
 public:
  using Val = polarized::Val;
  using Tm = polarized::Tm;
  using Tree = polarized::Add<Tm>;
  using C = polarized::Context;

  PolGen(Rng& rng, const GenConfig& cfg) : rng_(rng), steps_(cfg.budget) {}

  Opt<Val> val(const C& ctx, const CTy& p, std::size_t size) {
    steps_.tick();
    if (size == 0) return std::nullopt;
    switch (p.kind()) {
      case CTy::Kind::AtomP: {
        std::vector<Idx> cands;
        for (std::size_t i = 0; i < ctx.size(); ++i) {
          Idx x(static_cast<std::uint32_t>(i));
          if (lookup(ctx, x) == p) cands.push_back(x);
        }
        if (cands.empty()) return std::nullopt;
        return Val::var(cands[below(rng_, cands.size())]);
      }
      case CTy::Kind::One: return Val::unit();
      case CTy::Kind::Prod: {
        auto [a, b] = halves(rng_, std::max<std::size_t>(2, size - 1));
        auto l = val(ctx, p.left(), a);
        if (!l) return std::nullopt;
        auto r = val(ctx, p.right(), b);
        if (!r) return std::nullopt;
        return Val::pair(*l, *r);
      }
      case CTy::Kind::Sum: {
        int first = chance(rng_, 50) ? 1 : 2;
        for (int i : {first, 3 - first}) {
          const CTy& mine = i == 1 ? p.left() : p.right();
          const CTy& other = i == 1 ? p.right() : p.left();
          if (auto v = val(ctx, mine, std::max<std::size_t>(1, size - 1))) return Val::inj(i, other, *v);
        }
        return std::nullopt;
      }
      case CTy::Kind::Thunk: {
        auto t = tm(ctx, p.left(), std::max<std::size_t>(1, size - 1));
        if (!t) return std::nullopt;
        return Val::thunk(*t);
      }
      default: return std::nullopt;
    }
  }

  Opt<Tm> tm(const C& ctx, const CTy& n, std::size_t size) {
    steps_.tick();
    if (size == 0) return std::nullopt;
    Menu<Tm> m;
    m.add(3, [&] { return intro(ctx, n, size); });
    m.add(size <= 2 ? 6 : 4, [&] { return head(ctx, n, size); });
    if (size >= 3) m.add(2, [&] { return bind(ctx, n, size); });
    if (size >= 4) {
      m.add(1, [&]() -> Opt<Tm> {
        auto t = tm(ctx, n, size - 2);
        if (!t) return std::nullopt;
        return Tm::force(Val::thunk(*t));
      });
      m.add(2, [&] { return beta_arr(ctx, n, size); });
      m.add(1, [&] { return beta_bind(ctx, n, size); });
      m.add(1, [&] { return prj_any(ctx, n, size); });
      m.add(1, [&] { return app_any(ctx, n, size); });
    }
    return m.run(rng_);
  }

 private:
  CTy small_pos() { return random_pos_type(rng_, 1); }

  // A complete pattern tree for p whose leaves have type n.
  Opt<Tree> tree(const C& ctx, const CTy& p, const CTy& n, std::size_t size) {
    std::size_t per_leaf = std::max<std::size_t>(1, size / std::max<std::size_t>(1, fringe_size(p)));
    std::function<Opt<Tree>(std::vector<CTy>, const C&)> build = [&](std::vector<CTy> pending,
                                                                     const C& c) -> Opt<Tree> {
      steps_.tick();
      if (pending.empty()) {
        auto t = tm(c, n, per_leaf);
        if (!t) return std::nullopt;
        return Tree::leaf(*t);
      }
      CTy q = pending.back();
      pending.pop_back();
      switch (q.kind()) {
        case CTy::Kind::AtomP: {
          auto r = build(pending, extend(c, q));
          if (!r) return std::nullopt;
          return Tree::hyp_pos(q, *r);
        }
        case CTy::Kind::Thunk: {
          auto r = build(pending, extend(c, q.left()));
          if (!r) return std::nullopt;
          return Tree::hyp_neg(q.left(), *r);
        }
        case CTy::Kind::Zero: return Tree::branch0();
        case CTy::Kind::Sum: {
          auto left = pending;
          left.push_back(q.left());
          pending.push_back(q.right());
          auto l = build(std::move(left), c);
          if (!l) return std::nullopt;
          auto r = build(std::move(pending), c);
          if (!r) return std::nullopt;
          return Tree::branch2(*l, *r);
        }
        case CTy::Kind::One: {
          auto r = build(pending, c);
          if (!r) return std::nullopt;
          return Tree::split0(*r);
        }
        case CTy::Kind::Prod: {
          pending.push_back(q.right());
          pending.push_back(q.left());
          auto r = build(std::move(pending), c);
          if (!r) return std::nullopt;
          return Tree::split2(*r);
        }
        default: return std::nullopt;
      }
    };
    return build({p}, ctx);
  }

  Opt<Tm> intro(const C& ctx, const CTy& n, std::size_t size) {
    switch (n.kind()) {
      case CTy::Kind::Arr: {
        auto b = tree(ctx, n.left(), n.right(), std::max<std::size_t>(1, size - 1));
        if (!b) return std::nullopt;
        return Tm::abs(n, *b);
      }
      case CTy::Kind::With: {
        auto [a, b] = halves(rng_, std::max<std::size_t>(2, size - 1));
        auto l = tm(ctx, n.left(), a);
        if (!l) return std::nullopt;
        auto r = tm(ctx, n.right(), b);
        if (!r) return std::nullopt;
        return Tm::pair(*l, *r);
      }
      case CTy::Kind::Top: return Tm::unit();
      case CTy::Kind::Comp: {
        auto v = val(ctx, n.left(), std::max<std::size_t>(1, size - 1));
        if (!v) return std::nullopt;
        return Tm::ret(*v);
      }
      default: return std::nullopt;
    }
  }

  Opt<Tm> head(const C& ctx, const CTy& n, std::size_t size) {
    std::vector<Idx> cands;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      Idx x(static_cast<std::uint32_t>(i));
      const CTy& t = lookup(ctx, x);
      if (t.is_negative() && reaches_neg(t, n)) cands.push_back(x);
    }
    std::shuffle(cands.begin(), cands.end(), rng_);
    for (Idx x : cands) {
      if (auto r = spine(ctx, Tm::var(x), lookup(ctx, x), n, size)) return r;
    }
    return std::nullopt;
  }

  Opt<Tm> spine(const C& ctx, const Tm& h, const CTy& s, const CTy& n, std::size_t size) {
    steps_.tick();
    if (s == n && (size <= 2 || chance(rng_, 70))) return h;
    Menu<Tm> m;
    if (s == n) m.add(3, [&]() -> Opt<Tm> { return h; });
    if (s.kind() == CTy::Kind::Arr && reaches_neg(s.right(), n)) {
      m.add(4, [&]() -> Opt<Tm> {
        auto arg = val(ctx, s.left(), std::max<std::size_t>(1, size / 3));
        if (!arg) return std::nullopt;
        return spine(ctx, Tm::app(h, *arg), s.right(), n, size - std::min(size - 1, arg->size()));
      });
    }
    if (s.kind() == CTy::Kind::With) {
      for (int i : {1, 2}) {
        const CTy& part = i == 1 ? s.left() : s.right();
        if (reaches_neg(part, n)) m.add(3, [&, i]() { return spine(ctx, Tm::prj(i, h), part, n, size); });
      }
    }
    return m.run(rng_);
  }

  Opt<Tm> bind(const C& ctx, const CTy& n, std::size_t size) {
    CTy p = small_pos();
    auto [a, b] = halves(rng_, size - 1);
    auto t = tm(ctx, CTy::comp(p), a);
    if (!t) return std::nullopt;
    auto body = tree(ctx, p, n, b);
    if (!body) return std::nullopt;
    return Tm::bind(n, *t, *body);
  }

  Opt<Tm> beta_bind(const C& ctx, const CTy& n, std::size_t size) {
    CTy p = small_pos();
    auto [a, b] = halves(rng_, size - 2);
    auto v = val(ctx, p, a);
    if (!v) return std::nullopt;
    auto body = tree(ctx, p, n, b);
    if (!body) return std::nullopt;
    return Tm::bind(n, Tm::ret(*v), *body);
  }

  Opt<Tm> beta_arr(const C& ctx, const CTy& n, std::size_t size) {
    CTy p = small_pos();
    auto [a, b] = halves(rng_, size - 2);
    auto body = tree(ctx, p, n, a);
    if (!body) return std::nullopt;
    auto arg = val(ctx, p, b);
    if (!arg) return std::nullopt;
    return Tm::app(Tm::abs(CTy::arr(p, n), *body), *arg);
  }

  Opt<Tm> prj_any(const C& ctx, const CTy& n, std::size_t size) {
    CTy other = random_neg_type(rng_, 1);
    int i = chance(rng_, 50) ? 1 : 2;
    auto p = tm(ctx, i == 1 ? CTy::with(n, other) : CTy::with(other, n), size - 1);
    if (!p) return std::nullopt;
    return Tm::prj(i, *p);
  }

  Opt<Tm> app_any(const C& ctx, const CTy& n, std::size_t size) {
    CTy p = small_pos();
    auto [a, b] = halves(rng_, size - 1);
    auto f = tm(ctx, CTy::arr(p, n), a);
    if (!f) return std::nullopt;
    auto arg = val(ctx, p, b);
    if (!arg) return std::nullopt;
    return Tm::app(*f, *arg);
  }

  Rng& rng_;
  Steps steps_;
};

}  // namespace

stlc::Ty random_stlc_type(Rng& rng, std::size_t depth) {
  auto leaf = [&] {
    std::size_t r = below(rng, 100);
    if (r < 70) return STy::atom();
    if (r < 94) return STy::one();
    return STy::zero();
  };
  if (depth == 0 || chance(rng, 30)) return leaf();
  switch (weighted(rng, {2, 2, 3})) {
    case 0: return STy::sum(random_stlc_type(rng, depth - 1), random_stlc_type(rng, depth - 1));
    case 1: return STy::prod(random_stlc_type(rng, depth - 1), random_stlc_type(rng, depth - 1));
    default: return STy::arr(random_stlc_type(rng, depth - 1), random_stlc_type(rng, depth - 1));
  }
}

cbpv::Ty random_pos_type(Rng& rng, std::size_t depth, bool thunks) {
  auto leaf = [&] {
    std::size_t r = below(rng, 100);
    if (r < 70) return CTy::atom_pos("a");
    if (r < 94) return CTy::one();
    return CTy::zero();
  };
  if (depth == 0 || chance(rng, 30)) return leaf();
  switch (weighted(rng, {5, 5, thunks ? 4u : 0u})) {
    case 0: return CTy::sum(random_pos_type(rng, depth - 1, thunks), random_pos_type(rng, depth - 1, thunks));
    case 1: return CTy::prod(random_pos_type(rng, depth - 1, thunks), random_pos_type(rng, depth - 1, thunks));
    default: return CTy::thunk(random_neg_type(rng, depth - 1));
  }
}

cbpv::Ty random_neg_type(Rng& rng, std::size_t depth) {
  if (depth == 0 || chance(rng, 25)) {
    std::size_t r = below(rng, 100);
    if (r < 55) return CTy::atom_neg("b");
    if (r < 70) return CTy::top();
    return CTy::comp(random_pos_type(rng, 0));
  }
  switch (weighted(rng, {2, 4, 3})) {
    case 0: return CTy::with(random_neg_type(rng, depth - 1), random_neg_type(rng, depth - 1));
    case 1: return CTy::arr(random_pos_type(rng, depth - 1), random_neg_type(rng, depth - 1));
    default: return CTy::comp(random_pos_type(rng, depth - 1));
  }
}

std::optional<stlc::Term> inhabit(Rng& rng, const stlc::Context& ctx, const stlc::Ty& ty, const GenConfig& cfg) {
  try {
    StlcGen g(rng, cfg);
    return g.term(ctx, ty, cfg.size);
  } catch (const OutOfSteps&) {
    return std::nullopt;
  }
}

StlcSample gen_stlc(std::uint64_t seed, const GenConfig& cfg) {
  return with_retries<StlcSample>(seed, cfg, [&](Rng& rng) -> Opt<StlcSample> {
    stlc::Context ctx;
    std::size_t n = below(rng, cfg.max_ctx + 1);
    for (std::size_t i = 0; i < n; ++i) ctx.push_back(random_stlc_type(rng, cfg.type_depth));
    STy ty = random_stlc_type(rng, cfg.type_depth);
    StlcGen g(rng, cfg);
    auto t = g.term(ctx, ty, cfg.size);
    if (!t) return std::nullopt;
    return StlcSample{ctx, *t, ty, 0};
  });
}

CbpvSample gen_cbpv(std::uint64_t seed, const GenConfig& cfg) {
  return with_retries<CbpvSample>(seed, cfg, [&](Rng& rng) -> Opt<CbpvSample> {
    cbpv::Context ctx;
    std::size_t n = below(rng, cfg.max_ctx + 1);
    for (std::size_t i = 0; i < n; ++i) ctx.push_back(random_pos_type(rng, cfg.type_depth));
    CTy ty = random_neg_type(rng, cfg.type_depth);
    CbpvGen g(rng, cfg);
    auto t = g.tm(ctx, ty, cfg.size);
    if (!t) return std::nullopt;
    return CbpvSample{ctx, *t, ty, 0};
  });
}

PolarizedSample gen_polarized(std::uint64_t seed, const GenConfig& cfg) {
  return with_retries<PolarizedSample>(seed, cfg, [&](Rng& rng) -> Opt<PolarizedSample> {
    polarized::Context ctx;
    std::size_t n = below(rng, cfg.max_ctx + 1);
    for (std::size_t i = 0; i < n; ++i) {
      ctx.push_back(chance(rng, 40) ? CTy::atom_pos("a") : random_neg_type(rng, cfg.type_depth));
    }
    CTy ty = random_neg_type(rng, cfg.type_depth);
    PolGen g(rng, cfg);
    auto t = g.tm(ctx, ty, cfg.size);
    if (!t) return std::nullopt;
    return PolarizedSample{ctx, *t, ty, 0};
  });
}

}  // namespace nbe::oracle
