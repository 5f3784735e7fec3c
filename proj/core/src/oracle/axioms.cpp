#include "nbe/oracle/axioms.hpp"

#include <string>

namespace nbe::oracle {

using stlc::Term;
using stlc::Ty;

namespace {

struct Names {
  Axiom axiom;
  std::string_view pretty;
  std::string_view ascii;
};

constexpr std::array<Names, 16> kNames = {{
    {Axiom::BetaArr, "β⇒", "beta-arr"},
    {Axiom::BetaProd, "β×", "beta-prod"},
    {Axiom::BetaSum, "β+", "beta-sum"},
    {Axiom::EtaArr, "η⇒", "eta-arr"},
    {Axiom::EtaProd, "η×", "eta-prod"},
    {Axiom::EtaOne, "η1", "eta-one"},
    {Axiom::EtaSum, "η+", "eta-sum"},
    {Axiom::EtaZero, "η0", "eta-zero"},
    {Axiom::PiArrZero, "π⇒0", "pi-arr-zero"},
    {Axiom::PiArrSum, "π⇒+", "pi-arr-sum"},
    {Axiom::PiProdZero, "π×0", "pi-prod-zero"},
    {Axiom::PiProdSum, "π×+", "pi-prod-sum"},
    {Axiom::PiSumZero, "π+0", "pi-sum-zero"},
    {Axiom::PiSumSum, "π++", "pi-sum-sum"},
    {Axiom::PiZeroZero, "π00", "pi-zero-zero"},
    {Axiom::PiZeroSum, "π0+", "pi-zero-sum"},
}};

bool needs_zero(Axiom a) {
  switch (a) {
    case Axiom::EtaZero:
    case Axiom::PiArrZero:
    case Axiom::PiProdZero:
    case Axiom::PiSumZero:
    case Axiom::PiZeroZero:
    case Axiom::PiZeroSum: return true;
    default: return false;
  }
}

Term subst_at(const Term& t, const Term& u, std::size_t n, std::uint32_t k) {
  using K = Term::Kind;
  switch (t.kind()) {
    case K::Var: {
      std::uint32_t d = t.idx().depth;
      if (d < k) return t;
      if (d > k) return Term::var(Idx(d - 1));
      Ope up = Ope::id(n);
      for (std::uint32_t i = 0; i < k; ++i) up = up.weak();
      return rename(up, u);
    }
    case K::Abs: return Term::abs(t.ty(), subst_at(t.sub(0), u, n, k + 1));
    case K::App: return Term::app(subst_at(t.sub(0), u, n, k), subst_at(t.sub(1), u, n, k));
    case K::Unit: return t;
    case K::Pair: return Term::pair(subst_at(t.sub(0), u, n, k), subst_at(t.sub(1), u, n, k));
    case K::Prj: return Term::prj(t.which(), subst_at(t.sub(0), u, n, k));
    case K::Inj: return Term::inj(t.which(), t.ty(), subst_at(t.sub(0), u, n, k));
    case K::Case:
      return Term::case_(subst_at(t.sub(0), u, n, k), subst_at(t.sub(1), u, n, k + 1),
                         subst_at(t.sub(2), u, n, k + 1));
    case K::Abort: return Term::abort(t.ty(), subst_at(t.sub(0), u, n, k));
  }
  return t;
}

struct Failed {};

class Builder {
 public:
  Builder(Rng& rng, const AxiomConfig& cfg) : rng_(rng), cfg_(cfg) {
    gen_.size = cfg.size;
    gen_.budget = 2000;
  }

  // Depth drawn per metavariable so that schemas with many slots still fit.
  Ty ty() { return random_stlc_type(rng_, rng_() % (cfg_.type_depth + 1)); }

  Term tm(const stlc::Context& ctx, const Ty& ty) {
    auto t = inhabit(rng_, ctx, ty, gen_);
    if (!t) throw Failed{};
    return *t;
  }

  int which() { return static_cast<int>(rng_() % 2) + 1; }
  Rng& rng() { return rng_; }

 private:
  Rng& rng_;
  AxiomConfig cfg_;
  GenConfig gen_;
};

AxiomInstance instance(Axiom a, Rng& rng, const AxiomConfig& cfg) {
  Builder b(rng, cfg);
  stlc::Context ctx;
  std::size_t k = rng() % 3;
  for (std::size_t i = 0; i < k; ++i) ctx.push_back(random_stlc_type(rng, 1));
  if (needs_zero(a)) {
    // A source of 0: either 0 itself or a function into it with an argument.
    if (rng() % 2 == 0) {
      ctx.push_back(Ty::zero());
    } else {
      ctx.push_back(Ty::atom());
      ctx.push_back(Ty::arr(Ty::atom(), Ty::zero()));
    }
  }
  const std::size_t n = ctx.size();
  auto wk = Ope::wk(n);
  auto done = [&](Ty ty, Term lhs, Term rhs) { return AxiomInstance{a, ctx, std::move(ty), std::move(lhs), std::move(rhs), 0}; };

  switch (a) {
    case Axiom::BetaArr: {
      Ty A = b.ty(), B = b.ty();
      Term t = b.tm(extend(ctx, A), B);
      Term u = b.tm(ctx, A);
      return done(B, Term::app(Term::abs(A, t), u), subst(t, u, n));
    }
    case Axiom::BetaProd: {
      Ty A1 = b.ty(), A2 = b.ty();
      Term t1 = b.tm(ctx, A1), t2 = b.tm(ctx, A2);
      int i = b.which();
      return done(i == 1 ? A1 : A2, Term::prj(i, Term::pair(t1, t2)), i == 1 ? t1 : t2);
    }
    case Axiom::BetaSum: {
      Ty A1 = b.ty(), A2 = b.ty(), B = b.ty();
      int i = b.which();
      Term t = b.tm(ctx, i == 1 ? A1 : A2);
      Term t1 = b.tm(extend(ctx, A1), B), t2 = b.tm(extend(ctx, A2), B);
      Term lhs = Term::case_(Term::inj(i, i == 1 ? A2 : A1, t), t1, t2);
      return done(B, lhs, subst(i == 1 ? t1 : t2, t, n));
    }
    case Axiom::EtaArr: {
      Ty A = b.ty(), B = b.ty();
      Term t = b.tm(ctx, Ty::arr(A, B));
      return done(Ty::arr(A, B), t, Term::abs(A, Term::app(rename(wk, t), Term::var(Idx::zero()))));
    }
    case Axiom::EtaProd: {
      Ty A1 = b.ty(), A2 = b.ty();
      Term t = b.tm(ctx, Ty::prod(A1, A2));
      return done(Ty::prod(A1, A2), t, Term::pair(Term::prj(1, t), Term::prj(2, t)));
    }
    case Axiom::EtaOne: return done(Ty::one(), b.tm(ctx, Ty::one()), Term::unit());
    case Axiom::EtaSum: {
      Ty A1 = b.ty(), A2 = b.ty();
      Term t = b.tm(ctx, Ty::sum(A1, A2));
      Term v = Term::var(Idx::zero());
      return done(Ty::sum(A1, A2), t, Term::case_(t, Term::inj(1, A2, v), Term::inj(2, A1, v)));
    }
    case Axiom::EtaZero: {
      Term t = b.tm(ctx, Ty::zero());
      return done(Ty::zero(), t, Term::abort(Ty::zero(), t));
    }
    case Axiom::PiArrZero: {
      Ty A = b.ty(), B = b.ty();
      Term t = b.tm(ctx, Ty::zero());
      Term u = b.tm(ctx, A);
      return done(B, Term::app(Term::abort(Ty::arr(A, B), t), u), Term::abort(B, t));
    }
    case Axiom::PiArrSum: {
      Ty C1 = b.ty(), C2 = b.ty(), A = b.ty(), B = b.ty();
      Term t = b.tm(ctx, Ty::sum(C1, C2));
      Term t1 = b.tm(extend(ctx, C1), Ty::arr(A, B)), t2 = b.tm(extend(ctx, C2), Ty::arr(A, B));
      Term u = b.tm(ctx, A);
      Term u_ = rename(wk, u);
      return done(B, Term::app(Term::case_(t, t1, t2), u),
                  Term::case_(t, Term::app(t1, u_), Term::app(t2, u_)));
    }
    case Axiom::PiProdZero: {
      Ty A1 = b.ty(), A2 = b.ty();
      int i = b.which();
      Term t = b.tm(ctx, Ty::zero());
      Ty Ai = i == 1 ? A1 : A2;
      return done(Ai, Term::prj(i, Term::abort(Ty::prod(A1, A2), t)), Term::abort(Ai, t));
    }
    case Axiom::PiProdSum: {
      Ty C1 = b.ty(), C2 = b.ty(), A1 = b.ty(), A2 = b.ty();
      int i = b.which();
      Term t = b.tm(ctx, Ty::sum(C1, C2));
      Term t1 = b.tm(extend(ctx, C1), Ty::prod(A1, A2)), t2 = b.tm(extend(ctx, C2), Ty::prod(A1, A2));
      return done(i == 1 ? A1 : A2, Term::prj(i, Term::case_(t, t1, t2)),
                  Term::case_(t, Term::prj(i, t1), Term::prj(i, t2)));
    }
    case Axiom::PiSumZero: {
      Ty A1 = b.ty(), A2 = b.ty(), B = b.ty();
      Term t = b.tm(ctx, Ty::zero());
      Term t1 = b.tm(extend(ctx, A1), B), t2 = b.tm(extend(ctx, A2), B);
      return done(B, Term::case_(Term::abort(Ty::sum(A1, A2), t), t1, t2), Term::abort(B, t));
    }
    case Axiom::PiSumSum: {
      Ty C1 = b.ty(), C2 = b.ty(), A1 = b.ty(), A2 = b.ty(), B = b.ty();
      Term t = b.tm(ctx, Ty::sum(C1, C2));
      Term t1 = b.tm(extend(ctx, C1), Ty::sum(A1, A2)), t2 = b.tm(extend(ctx, C2), Ty::sum(A1, A2));
      Term u1 = b.tm(extend(ctx, A1), B), u2 = b.tm(extend(ctx, A2), B);
      Ope up = wk.lift();
      Term u1_ = rename(up, u1), u2_ = rename(up, u2);
      return done(B, Term::case_(Term::case_(t, t1, t2), u1, u2),
                  Term::case_(t, Term::case_(t1, u1_, u2_), Term::case_(t2, u1_, u2_)));
    }
    case Axiom::PiZeroZero: {
      Ty B = b.ty();
      Term t = b.tm(ctx, Ty::zero());
      return done(B, Term::abort(B, Term::abort(Ty::zero(), t)), Term::abort(B, t));
    }
    case Axiom::PiZeroSum: {
      Ty C1 = b.ty(), C2 = b.ty(), B = b.ty();
      Term t = b.tm(ctx, Ty::sum(C1, C2));
      Term t1 = b.tm(extend(ctx, C1), Ty::zero()), t2 = b.tm(extend(ctx, C2), Ty::zero());
      return done(B, Term::abort(B, Term::case_(t, t1, t2)),
                  Term::case_(t, Term::abort(B, t1), Term::abort(B, t2)));
    }
  }
  throw Failed{};
}

}  // namespace

std::string_view name(Axiom a) {
  for (const auto& n : kNames) {
    if (n.axiom == a) return n.pretty;
  }
  return "?";
}

std::optional<Axiom> parse_axiom(std::string_view s) {
  for (const auto& n : kNames) {
    if (n.pretty == s || n.ascii == s) return n.axiom;
  }
  return std::nullopt;
}

Term subst(const Term& t, const Term& u, std::size_t n) { return subst_at(t, u, n, 0); }

AxiomInstance gen_axiom_instance(Axiom a, std::uint64_t seed, const AxiomConfig& cfg) {
  std::uint64_t base = sub_seed(seed, 1000 + static_cast<std::uint64_t>(a));
  for (std::size_t k = 0; k < cfg.attempts; ++k) {
    Rng rng(sub_seed(base, k));
    try {
      AxiomInstance inst = instance(a, rng, cfg);
      if (inst.lhs.size() > cfg.max_size) continue;
      inst.retries = static_cast<unsigned>(k);
      return inst;
    } catch (const Failed&) {
    }
  }
  fail(Errc::GenerationExhausted, std::string("no instance of ") + std::string(name(a)) + " for seed " +
                                      std::to_string(seed));
}

}  // namespace nbe::oracle
