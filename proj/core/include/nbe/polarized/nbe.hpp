#pragma once

// NbE for the focused calculus.  Reflection at a positive type is
// continuation-passing and builds a complete pattern tree; every binder is
// interpreted by matching its argument against its tree.

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "nbe/polarized/normal.hpp"

namespace nbe::polarized {

class Sem;

class SemFn {
 public:
  using Fn = std::function<Sem(const Ope&, const Sem&)>;

  SemFn(Ope acc, Fn fn);
  Sem apply(const Ope& tau, const Sem& a) const;
  SemFn renamed(const Ope& tau) const;

 private:
  SemFn(Ope acc, std::shared_ptr<const Fn> fn) : acc_(std::move(acc)), fn_(std::move(fn)) {}
  Ope acc_;
  std::shared_ptr<const Fn> fn_;
};

class Sem {
 public:
  // Unit and Pair serve both 1/× and ⊤/&; U N is transparent.
  enum class Kind : std::uint8_t { Unit, Pair, Inl, Inr, AtomP, Fun, Comp, AtomN };

  static Sem unit();
  static Sem pair(Sem a, Sem b);
  static Sem inl(Sem a);
  static Sem inr(Sem a);
  static Sem atom(Idx x);
  static Sem fun(SemFn f);
  static Sem comp(Cov<Sem> c);
  static Sem atom_neg(Cov<Ne> c);

  Kind kind() const noexcept { return node_->kind; }
  const Sem& fst() const;
  const Sem& snd() const;
  const Sem& payload() const;
  Idx idx() const;
  const SemFn& fn() const;
  const Cov<Sem>& comp() const;
  const Cov<Ne>& neutrals() const;

 private:
  struct Node {
    Kind kind;
    std::vector<Sem> parts;
    Idx idx{};
    std::optional<SemFn> fn;
    std::optional<Cov<Sem>> comp;
    std::optional<Cov<Ne>> neutrals;
  };
  explicit Sem(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

using Env = std::vector<Sem>;  // back() is index zero

Sem rename(const Ope& tau, const Sem& v);
Env rename(const Ope& tau, const Env& env);

Sem reflect(const Ty& neg, const Ne& u, std::size_t depth);
Vnf reify_pos(const Ty& pos, const Sem& a, std::size_t depth);
Nf reify_neg(const Ty& neg, const Sem& b, std::size_t depth);
Sem run(const Ty& neg, const Cov<Sem>& c, std::size_t depth);

// k(τ, a) with τ : Γ ⊆ Δ and a ∈ ⟦P⟧Δ.
template <class J>
using Kont = std::function<J(const Ope&, const Sem&)>;

namespace detail {

// Continuations here return whole subtrees, which is how Split2's nesting
// flattens: the P1 tree's leaf positions receive the P2 trees.
template <class J>
Add<J> reflect_tree(const Ty& pos, const Kont<Add<J>>& k, std::size_t depth) {
  switch (pos.kind()) {
    case Ty::Kind::AtomP: return Add<J>::hyp_pos(pos, k(Ope::wk(depth), Sem::atom(Idx::zero())));
    case Ty::Kind::Thunk:
      return Add<J>::hyp_neg(pos.left(), k(Ope::wk(depth), reflect(pos.left(), Ne::var(Idx::zero()), depth + 1)));
    case Ty::Kind::Zero: return Add<J>::branch0();
    case Ty::Kind::Sum:
      return Add<J>::branch2(
          reflect_tree<J>(pos.left(), [&k](const Ope& t, const Sem& a) { return k(t, Sem::inl(a)); }, depth),
          reflect_tree<J>(pos.right(), [&k](const Ope& t, const Sem& a) { return k(t, Sem::inr(a)); }, depth));
    case Ty::Kind::One: return Add<J>::split0(k(Ope::id(depth), Sem::unit()));
    case Ty::Kind::Prod: {
      const Ty& p2 = pos.right();
      return Add<J>::split2(reflect_tree<J>(
          pos.left(),
          [&](const Ope& t1, const Sem& a1) {
            return reflect_tree<J>(
                p2, [&](const Ope& t2, const Sem& a2) { return k(compose(t1, t2), Sem::pair(rename(t2, a1), a2)); },
                t1.target_size());
          },
          depth));
    }
    default: break;
  }
  fail(Errc::PolarityViolation, "positive reflection at " + cbpv::show(pos));
}

}  // namespace detail

// reflect^P k, at a context of length `depth`.
template <class J>
Add<J> reflect_cont(const Ty& pos, const Kont<J>& k, std::size_t depth) {
  return detail::reflect_tree<J>(pos, [&k](const Ope& t, const Sem& a) { return Add<J>::leaf(k(t, a)); }, depth);
}

// Ev J: an environment for the leaf context ↦ a J, all at one fixed Δ.
template <class J>
using Ev = std::function<J(const Env&)>;

// Complete matching of a against e, extending γ with the hypotheses each
// node binds.  The pending stack is the flattened Split2 nesting.
template <class J>
J match(const Sem& a, const Add<Ev<J>>& e, const Env& gamma) {
  using K = typename Add<Ev<J>>::Kind;
  std::vector<Sem> pending{a};
  Env env = gamma;
  const Add<Ev<J>>* t = &e;
  auto pop = [&] {
    if (pending.empty()) fail(Errc::ShapeMismatch, "match: pattern tree deeper than its value");
    Sem v = pending.back();
    pending.pop_back();
    return v;
  };
  for (;;) {
    switch (t->kind()) {
      case K::Leaf:
        if (!pending.empty()) fail(Errc::ShapeMismatch, "match: leaf reached with unmatched components");
        return t->leaf()(env);
      case K::HypP: {
        Sem v = pop();
        if (v.kind() != Sem::Kind::AtomP) fail(Errc::ShapeMismatch, "match: hyp+ against a non-atom");
        env.push_back(std::move(v));
        break;
      }
      case K::HypN: env.push_back(pop()); break;
      case K::Branch0: fail(Errc::ShapeMismatch, "match: branch0 reached (value of type 0)");
      case K::Branch2: {
        Sem v = pop();
        if (v.kind() == Sem::Kind::Inl) {
          pending.push_back(v.payload());
          t = &t->sub(0);
          continue;
        }
        if (v.kind() == Sem::Kind::Inr) {
          pending.push_back(v.payload());
          t = &t->sub(1);
          continue;
        }
        fail(Errc::ShapeMismatch, "match: branch2 against a non-injection");
      }
      case K::Split0:
        if (pop().kind() != Sem::Kind::Unit) fail(Errc::ShapeMismatch, "match: split0 against a non-unit");
        break;
      case K::Split2: {
        Sem v = pop();
        pending.push_back(v.snd());
        pending.push_back(v.fst());
        break;
      }
    }
    t = &t->sub(0);
  }
}

Sem eval(const Context& ctx, const Val& v, const Env& env, std::size_t depth);
Sem eval(const Context& ctx, const Tm& t, const Env& env, std::size_t depth);

// ⟦t⟧ γ τ a = match a (map ⟦·⟧ t) (ren τ γ) for a binder body t in ctx.
Sem fden(const Context& ctx, const Add<Tm>& body, const Env& env, const Ope& tau, const Sem& a);

Env id_env(const Context& ctx);

Nf norm(const Context& ctx, const Tm& t);

}  // namespace nbe::polarized
