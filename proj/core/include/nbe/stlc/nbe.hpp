#pragma once

// Normalization by evaluation for STLC with weak sums, generic in the cover
// monad.  Semantic values at positive types carry a cover of leaves; at
// negative types they are plain units, pairs and Kripke functions.

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "nbe/stlc/cover.hpp"

namespace nbe::stlc {

template <class C>
class SemVal;

// Leaves of ⟦o⟧, ⟦A+B⟧ covers: a neutral at atomic type, or an injection.
template <class C>
struct PosLeaf {
  enum class Kind : std::uint8_t { Ne, Inl, Inr };
  Kind kind;
  std::optional<stlc::Ne> ne;
  std::vector<SemVal<C>> val;  // exactly one element for Inl/Inr

  static PosLeaf neutral(stlc::Ne u) { return {Kind::Ne, std::move(u), {}}; }
  static PosLeaf inl(SemVal<C> v) { return {Kind::Inl, std::nullopt, {std::move(v)}}; }
  static PosLeaf inr(SemVal<C> v) { return {Kind::Inr, std::nullopt, {std::move(v)}}; }
};

// A presheaf exponential element: callable at any extension of its context.
// Renaming accumulates into `acc`; apply pre-composes it.
template <class C>
class Kripke {
 public:
  using Fn = std::function<SemVal<C>(const Ope&, const SemVal<C>&)>;

  Kripke(Ope acc, Fn fn) : acc_(std::move(acc)), fn_(std::make_shared<const Fn>(std::move(fn))) {}

  // τ : Γ ⊆ Δ, a ∈ ⟦A⟧Δ.
  SemVal<C> apply(const Ope& tau, const SemVal<C>& a) const { return (*fn_)(compose(acc_, tau), a); }
  Kripke renamed(const Ope& tau) const { return Kripke(compose(acc_, tau), fn_); }

 private:
  Kripke(Ope acc, std::shared_ptr<const Fn> fn) : acc_(std::move(acc)), fn_(std::move(fn)) {}
  Ope acc_;
  std::shared_ptr<const Fn> fn_;
};

template <class C>
class SemVal {
 public:
  enum class Kind : std::uint8_t { Unit, Pair, Fun, Pos };
  using Cov = typename C::template M<PosLeaf<C>>;

  static SemVal unit() { return SemVal(std::make_shared<const Node>(Node{Kind::Unit, {}, {}, {}})); }
  static SemVal pair(SemVal a, SemVal b) {
    return SemVal(std::make_shared<const Node>(Node{Kind::Pair, {std::move(a), std::move(b)}, {}, {}}));
  }
  static SemVal fun(Kripke<C> f) {
    return SemVal(std::make_shared<const Node>(Node{Kind::Fun, {}, std::move(f), {}}));
  }
  static SemVal pos(Cov c) { return SemVal(std::make_shared<const Node>(Node{Kind::Pos, {}, {}, std::move(c)})); }

  Kind kind() const noexcept { return node_->kind; }
  const SemVal& fst() const { return part(0); }
  const SemVal& snd() const { return part(1); }
  const Kripke<C>& fn() const {
    if (kind() != Kind::Fun) fail(Errc::ShapeMismatch, "expected a semantic function");
    return *node_->fn;
  }
  const Cov& cover() const {
    if (kind() != Kind::Pos) fail(Errc::ShapeMismatch, "expected a covered positive value");
    return *node_->pos;
  }

 private:
  struct Node {
    Kind kind;
    std::vector<SemVal> parts;
    std::optional<Kripke<C>> fn;
    std::optional<Cov> pos;
  };
  const SemVal& part(std::size_t i) const {
    if (kind() != Kind::Pair) fail(Errc::ShapeMismatch, "expected a semantic pair");
    return node_->parts[i];
  }
  explicit SemVal(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

template <class C>
using Env = std::vector<SemVal<C>>;  // parallel to a Context: back() is index zero

template <class C>
SemVal<C> rename(const Ope& tau, const SemVal<C>& v);

template <class C>
PosLeaf<C> rename(const Ope& tau, const PosLeaf<C>& l) {
  switch (l.kind) {
    case PosLeaf<C>::Kind::Ne: return PosLeaf<C>::neutral(rename(tau, *l.ne));
    case PosLeaf<C>::Kind::Inl: return PosLeaf<C>::inl(rename(tau, l.val[0]));
    case PosLeaf<C>::Kind::Inr: return PosLeaf<C>::inr(rename(tau, l.val[0]));
  }
  return l;
}

template <class C>
SemVal<C> rename(const Ope& tau, const SemVal<C>& v) {
  switch (v.kind()) {
    case SemVal<C>::Kind::Unit: return v;
    case SemVal<C>::Kind::Pair: return SemVal<C>::pair(rename(tau, v.fst()), rename(tau, v.snd()));
    case SemVal<C>::Kind::Fun: return SemVal<C>::fun(v.fn().renamed(tau));
    case SemVal<C>::Kind::Pos: return SemVal<C>::pos(rename(tau, v.cover()));
  }
  return v;
}

template <class C>
Env<C> rename(const Ope& tau, const Env<C>& env) {
  Env<C> out;
  out.reserve(env.size());
  for (const auto& v : env) out.push_back(rename(tau, v));
  return out;
}

// All operations take `depth`, the length of the context the value lives in.
template <class C>
struct Nbe {
  using Val = SemVal<C>;
  template <class J>
  using M = typename C::template M<J>;

  static Val reflect(const Ty& ty, const Ne& u, std::size_t depth);
  static Nf reify(const Ty& ty, const Val& v, std::size_t depth);
  // fresh^A at Γ.A, i.e. reflect(A, var zero); depth includes the new entry.
  static Val fresh(const Ty& ty, std::size_t depth);
  // Weak pasting: push a cover of values into a value.
  static Val run(const Ty& ty, const M<Val>& c, std::size_t depth);
  static Val eval(const Context& ctx, const Term& t, const Env<C>& env, std::size_t depth);
  static Env<C> id_env(const Context& ctx);
  static Nf norm(const Context& ctx, const Term& t);
};

extern template struct Nbe<FreeCover>;
extern template struct Nbe<Continuation>;

enum class Monad : std::uint8_t { Free, Cont };

const char* to_string(Monad m);

// β-normal η-long form of t at infer(ctx, t).
Nf norm(const Context& ctx, const Term& t, Monad monad = Monad::Free);

}  // namespace nbe::stlc
