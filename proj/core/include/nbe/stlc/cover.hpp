#pragma once

// Cover monads for the STLC normalizer.
//
// Two implementations share one static interface so the evaluator can be
// written once:
//
//   FreeCover     — the free cover monad, a case tree with leaves J.
//   Continuation  — CC J = ∀A. (J ⇒̂ Nf A) ⇒̂ Nf A, realised as OPE-indexed
//                   continuations that build Nf directly.
//
// Every operation receives the length of the context it lives in, since
// OPEs need concrete sizes.  Leaves are renamed through an ADL-visible
// rename(const Ope&, const J&).

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "nbe/stlc/normal.hpp"

namespace nbe::stlc {

template <class J>
class Cover {
 public:
  enum class Kind : std::uint8_t { Return, Case, Abort };

  static Cover ret(J leaf) { return Cover(std::make_shared<const Node>(Node{Kind::Return, std::move(leaf), {}, {}, {}})); }
  // scrut_ty is the type of the scrutinee (a sum for Case, 0 for Abort).
  static Cover case_(Ne scrut, Ty scrut_ty, Cover left, Cover right) {
    return Cover(std::make_shared<const Node>(
        Node{Kind::Case, {}, std::move(scrut), std::move(scrut_ty), {std::move(left), std::move(right)}}));
  }
  static Cover abort(Ne scrut) {
    return Cover(std::make_shared<const Node>(Node{Kind::Abort, {}, std::move(scrut), Ty::zero(), {}}));
  }

  Kind kind() const noexcept { return node_->kind; }
  const J& leaf() const { return node_->leaf.value(); }
  const Ne& scrut() const { return node_->scrut.value(); }
  const Ty& scrut_ty() const { return node_->scrut_ty.value(); }
  const Cover& left() const { return node_->subs.at(0); }
  const Cover& right() const { return node_->subs.at(1); }

  std::size_t leaves() const {
    switch (kind()) {
      case Kind::Return: return 1;
      case Kind::Case: return left().leaves() + right().leaves();
      case Kind::Abort: return 0;
    }
    return 0;
  }

  friend bool operator==(const Cover& a, const Cover& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    return x.kind == y.kind && x.leaf == y.leaf && x.scrut == y.scrut && x.scrut_ty == y.scrut_ty &&
           x.subs == y.subs;
  }

 private:
  struct Node {
    Kind kind;
    std::optional<J> leaf;
    std::optional<Ne> scrut;
    std::optional<Ty> scrut_ty;
    std::vector<Cover> subs;
  };
  explicit Cover(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

template <class J>
Cover<J> rename(const Ope& tau, const Cover<J>& c) {
  switch (c.kind()) {
    case Cover<J>::Kind::Return: return Cover<J>::ret(rename(tau, c.leaf()));
    case Cover<J>::Kind::Case: {
      Ope up = tau.lift();
      return Cover<J>::case_(rename(tau, c.scrut()), c.scrut_ty(), rename(up, c.left()), rename(up, c.right()));
    }
    case Cover<J>::Kind::Abort: return Cover<J>::abort(rename(tau, c.scrut()));
  }
  return c;
}

struct FreeCover {
  template <class J>
  using M = Cover<J>;

  static constexpr const char* name = "free";

  template <class J>
  static M<J> ret(J j, std::size_t) {
    return M<J>::ret(std::move(j));
  }

  // f(leaf, leaf_depth)
  template <class K, class J, class F>
  static M<K> map(const F& f, const M<J>& c, std::size_t depth) {
    switch (c.kind()) {
      case M<J>::Kind::Return: return M<K>::ret(f(c.leaf(), depth));
      case M<J>::Kind::Case:
        return M<K>::case_(c.scrut(), c.scrut_ty(), map<K>(f, c.left(), depth + 1),
                           map<K>(f, c.right(), depth + 1));
      case M<J>::Kind::Abort: return M<K>::abort(c.scrut());
    }
    fail(Errc::ShapeMismatch, "cover");
  }

  // l(τ, leaf) with τ : Γ ⊆ leaf context, accumulated along the path.
  template <class K, class J, class L>
  static M<K> stmap(const L& l, const M<J>& c, std::size_t depth) {
    return stmap_from<K>(l, c, Ope::id(depth));
  }

  template <class J>
  static M<J> join(const M<M<J>>& c) {
    switch (c.kind()) {
      case M<M<J>>::Kind::Return: return c.leaf();
      case M<M<J>>::Kind::Case: return M<J>::case_(c.scrut(), c.scrut_ty(), join(c.left()), join(c.right()));
      case M<M<J>>::Kind::Abort: return M<J>::abort(c.scrut());
    }
    fail(Errc::ShapeMismatch, "cover");
  }

  template <class J>
  static M<J> abort(const Ne& u, std::size_t) {
    return M<J>::abort(u);
  }

  // left/right live one binder deeper than `depth`.
  template <class J>
  static M<J> case_(const Ne& u, const Ty& sum, M<J> left, M<J> right, std::size_t) {
    return M<J>::case_(u, sum, std::move(left), std::move(right));
  }

  // Replace tree constructors by Nf constructors.  Only Return may occur at
  // negative result types.
  static Nf runNf(const M<Nf>& c, const Ty& result, std::size_t depth = 0) {
    switch (c.kind()) {
      case M<Nf>::Kind::Return: return c.leaf();
      case M<Nf>::Kind::Case:
        if (!result.is_positive()) fail(Errc::PolarityViolation, "case tree at negative type " + show(result));
        return Nf::case_(c.scrut(), runNf(c.left(), result, depth + 1), runNf(c.right(), result, depth + 1));
      case M<Nf>::Kind::Abort:
        if (!result.is_positive()) fail(Errc::PolarityViolation, "abort at negative type " + show(result));
        return Nf::abort(c.scrut());
    }
    fail(Errc::ShapeMismatch, "cover");
  }

 private:
  template <class K, class J, class L>
  static M<K> stmap_from(const L& l, const M<J>& c, const Ope& path) {
    switch (c.kind()) {
      case M<J>::Kind::Return: return M<K>::ret(l(path, c.leaf()));
      case M<J>::Kind::Case: {
        Ope down = path.weak();
        return M<K>::case_(c.scrut(), c.scrut_ty(), stmap_from<K>(l, c.left(), down),
                           stmap_from<K>(l, c.right(), down));
      }
      case M<J>::Kind::Abort: return M<K>::abort(c.scrut());
    }
    fail(Errc::ShapeMismatch, "cover");
  }
};

// ---------------------------------------------------------------------------
// Continuation monad.  A computation at Γ is given an embedding τ : Γ ⊆ Δ
// and a Kripke continuation k, and answers with a normal form at Δ.

template <class J>
using Kont = std::function<Nf(const Ope&, const J&)>;

template <class J>
struct Cont {
  std::function<Nf(const Ope&, const Kont<J>&)> run;

  Nf operator()(const Ope& tau, const Kont<J>& k) const { return run(tau, k); }
};

template <class J>
Cont<J> rename(const Ope& sigma, const Cont<J>& c) {
  return Cont<J>{[sigma, c](const Ope& tau, const Kont<J>& k) { return c(compose(sigma, tau), k); }};
}

struct Continuation {
  template <class J>
  using M = Cont<J>;

  static constexpr const char* name = "cont";

  template <class J>
  static M<J> ret(J j, std::size_t) {
    return M<J>{[j = std::move(j)](const Ope& tau, const Kont<J>& k) {
      return k(Ope::id(tau.target_size()), rename(tau, j));
    }};
  }

  template <class K, class J, class F>
  static M<K> map(const F& f, const M<J>& c, std::size_t) {
    return M<K>{[f, c](const Ope& tau, const Kont<K>& k) {
      return c(tau, [&](const Ope& tau2, const J& j) { return k(tau2, f(j, tau2.target_size())); });
    }};
  }

  template <class K, class J, class L>
  static M<K> stmap(const L& l, const M<J>& c, std::size_t) {
    return M<K>{[l, c](const Ope& tau, const Kont<K>& k) {
      return c(tau, [&](const Ope& tau2, const J& j) { return k(tau2, l(compose(tau, tau2), j)); });
    }};
  }

  template <class J>
  static M<J> join(const M<M<J>>& c) {
    return M<J>{[c](const Ope& tau, const Kont<J>& k) {
      return c(tau, [&](const Ope& tau2, const M<J>& inner) {
        return inner(Ope::id(tau2.target_size()),
                     [&](const Ope& tau3, const J& j) { return k(compose(tau2, tau3), j); });
      });
    }};
  }

  template <class J>
  static M<J> abort(const Ne& u, std::size_t) {
    return M<J>{[u](const Ope& tau, const Kont<J>&) { return Nf::abort(rename(tau, u)); }};
  }

  template <class J>
  static M<J> case_(const Ne& u, const Ty&, M<J> left, M<J> right, std::size_t) {
    return M<J>{[u, left = std::move(left), right = std::move(right)](const Ope& tau, const Kont<J>& k) {
      // wk^{Ai} ⨾ τ' sends the continuation back past the branch hypothesis.
      Ope wk = Ope::wk(tau.target_size());
      Kont<J> k_branch = [&](const Ope& tau2, const J& j) { return k(compose(wk, tau2), j); };
      Ope up = tau.lift();
      return Nf::case_(rename(tau, u), left(up, k_branch), right(up, k_branch));
    }};
  }

  static Nf runNf(const M<Nf>& c, const Ty&, std::size_t depth) {
    return c(Ope::id(depth), [](const Ope&, const Nf& n) { return n; });
  }
};

}  // namespace nbe::stlc
