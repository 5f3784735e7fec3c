#pragma once

// Add P J: one complete pattern-matching phase decomposing a positive type P
// into atomic and negative hypotheses, with judgements J at the fringe.
//
// The paper's nested datatype (split2 : Add P1 (Add P2 J) → Add (P1×P2) J)
// is flattened: the child of Split2 is the P1 tree whose leaf positions hold
// the P2 subtrees directly, so one leaf-generic type suffices.  Which type a
// subtree decomposes is therefore a runtime invariant, checked by walk_add.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nbe/cbpv/syntax.hpp"

namespace nbe::polarized {

using cbpv::Ty;
// Hypotheses are positive atoms or negative types.
using Context = Ctx<Ty>;

inline bool is_hyp(const Ty& t) { return t.kind() == Ty::Kind::AtomP || t.is_negative(); }

template <class J>
class Add {
 public:
  enum class Kind : std::uint8_t { Leaf, HypP, HypN, Branch0, Branch2, Split0, Split2 };

  static Add leaf(J j) { return make(Node{Kind::Leaf, std::move(j), {}, {}}); }
  // hyp+ : continue at Γ.o+; `atom` is the AtomP type.
  static Add hyp_pos(Ty atom, Add next) { return make(Node{Kind::HypP, {}, std::move(atom), {std::move(next)}}); }
  // hyp- : continue at Γ.N.
  static Add hyp_neg(Ty neg, Add next) { return make(Node{Kind::HypN, {}, std::move(neg), {std::move(next)}}); }
  static Add branch0() { return make(Node{Kind::Branch0, {}, {}, {}}); }
  static Add branch2(Add l, Add r) { return make(Node{Kind::Branch2, {}, {}, {std::move(l), std::move(r)}}); }
  static Add split0(Add next) { return make(Node{Kind::Split0, {}, {}, {std::move(next)}}); }
  static Add split2(Add next) { return make(Node{Kind::Split2, {}, {}, {std::move(next)}}); }

  Kind kind() const noexcept { return node_->kind; }
  const J& leaf() const { return node_->leaf.value(); }
  const Ty& hyp() const { return node_->hyp.value(); }
  const Add& sub(std::size_t i) const { return node_->subs.at(i); }
  std::size_t arity() const noexcept { return node_->subs.size(); }

  std::size_t leaves() const {
    if (kind() == Kind::Leaf) return 1;
    std::size_t n = 0;
    for (const auto& s : node_->subs) n += s.leaves();
    return n;
  }

  friend bool operator==(const Add& a, const Add& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    return x.kind == y.kind && x.leaf == y.leaf && x.hyp == y.hyp && x.subs == y.subs;
  }

 private:
  struct Node {
    Kind kind;
    std::optional<J> leaf;
    std::optional<Ty> hyp;
    std::vector<Add> subs;
  };
  static Add make(Node n) { return Add(std::make_shared<const Node>(std::move(n))); }
  explicit Add(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Rebuild a node of `a` with new children.
template <class K, class J>
Add<K> add_rebuild(const Add<J>& a, std::vector<Add<K>> subs) {
  using Kd = typename Add<J>::Kind;
  switch (a.kind()) {
    case Kd::HypP: return Add<K>::hyp_pos(a.hyp(), std::move(subs[0]));
    case Kd::HypN: return Add<K>::hyp_neg(a.hyp(), std::move(subs[0]));
    case Kd::Branch0: return Add<K>::branch0();
    case Kd::Branch2: return Add<K>::branch2(std::move(subs[0]), std::move(subs[1]));
    case Kd::Split0: return Add<K>::split0(std::move(subs[0]));
    case Kd::Split2: return Add<K>::split2(std::move(subs[0]));
    case Kd::Leaf: break;
  }
  fail(Errc::ShapeMismatch, "add_rebuild on a leaf");
}

// Relabel leaves with f(leaf, leaf_ctx), tracking the hypotheses added on
// the way down.  The workhorse behind map, stmap and rename.
template <class K, class J, class F>
Add<K> add_map_ctx(const F& f, const Add<J>& a, const Context& ctx) {
  using Kd = typename Add<J>::Kind;
  if (a.kind() == Kd::Leaf) return Add<K>::leaf(f(a.leaf(), ctx));
  const Context* inner = &ctx;
  Context grown;
  if (a.kind() == Kd::HypP || a.kind() == Kd::HypN) {
    grown = extend(ctx, a.hyp());
    inner = &grown;
  }
  std::vector<Add<K>> subs;
  for (std::size_t i = 0; i < a.arity(); ++i) subs.push_back(add_map_ctx<K>(f, a.sub(i), *inner));
  return add_rebuild<K>(a, std::move(subs));
}

namespace detail {

template <class K, class J, class L>
Add<K> add_stmap_from(const L& l, const Add<J>& a, const Ope& path) {
  using Kd = typename Add<J>::Kind;
  if (a.kind() == Kd::Leaf) return Add<K>::leaf(l(path, a.leaf()));
  Ope next = (a.kind() == Kd::HypP || a.kind() == Kd::HypN) ? path.weak() : path;
  std::vector<Add<K>> subs;
  for (std::size_t i = 0; i < a.arity(); ++i) subs.push_back(add_stmap_from<K>(l, a.sub(i), next));
  return add_rebuild<K>(a, std::move(subs));
}

template <class J, class R>
Add<J> add_rename_from(const Ope& tau, const Add<J>& a, const R& ren) {
  using Kd = typename Add<J>::Kind;
  if (a.kind() == Kd::Leaf) return Add<J>::leaf(ren(tau, a.leaf()));
  Ope next = (a.kind() == Kd::HypP || a.kind() == Kd::HypN) ? tau.lift() : tau;
  std::vector<Add<J>> subs;
  for (std::size_t i = 0; i < a.arity(); ++i) subs.push_back(add_rename_from(next, a.sub(i), ren));
  return add_rebuild<J>(a, std::move(subs));
}

}  // namespace detail

// Strength: l(τ, leaf) with τ : Γ ⊆ leaf context.
template <class K, class J, class L>
Add<K> add_stmap(const L& l, const Add<J>& a, std::size_t depth) {
  return detail::add_stmap_from<K>(l, a, Ope::id(depth));
}

template <class K, class J, class F>
Add<K> add_map(const F& f, const Add<J>& a) {
  return detail::add_stmap_from<K>([&f](const Ope&, const J& j) { return f(j); }, a, Ope());
}

// rename(τ, leaf) must be ADL-visible for J.
template <class J>
Add<J> rename(const Ope& tau, const Add<J>& a) {
  return detail::add_rename_from(tau, a, [](const Ope& t, const J& j) { return rename(t, j); });
}

// Walk the fringe of `a` as a decomposition of `pos` in `ctx`, calling
// leaf(j, leaf_ctx) at each leaf.  Throws `err` on any mismatch.
template <class J, class Leaf>
void walk_add(const Add<J>& a, const Ty& pos, const Context& ctx, const Leaf& leaf, Errc err) {
  using Kd = typename Add<J>::Kind;
  auto bad = [&](const std::string& why) { fail(err, "pattern tree: " + why); };
  // pending: positive types still to decompose; back() is next.
  std::function<void(const Add<J>&, std::vector<Ty>, const Context&)> go =
      [&](const Add<J>& t, std::vector<Ty> pending, const Context& c) {
        if (pending.empty()) {
          if (t.kind() != Kd::Leaf) bad("extra matching after the type is fully decomposed");
          leaf(t.leaf(), c);
          return;
        }
        Ty p = pending.back();
        pending.pop_back();
        switch (p.kind()) {
          case Ty::Kind::AtomP:
            if (t.kind() != Kd::HypP || !(t.hyp() == p)) bad("expected hyp+ for " + cbpv::show(p));
            go(t.sub(0), std::move(pending), extend(c, p));
            return;
          case Ty::Kind::Thunk:
            if (t.kind() != Kd::HypN || !(t.hyp() == p.left())) bad("expected hyp- for " + cbpv::show(p));
            go(t.sub(0), std::move(pending), extend(c, p.left()));
            return;
          case Ty::Kind::Zero:
            if (t.kind() != Kd::Branch0) bad("expected branch0");
            return;
          case Ty::Kind::Sum: {
            if (t.kind() != Kd::Branch2) bad("expected branch2 for " + cbpv::show(p));
            auto left = pending;
            left.push_back(p.left());
            pending.push_back(p.right());
            go(t.sub(0), std::move(left), c);
            go(t.sub(1), std::move(pending), c);
            return;
          }
          case Ty::Kind::One:
            if (t.kind() != Kd::Split0) bad("expected split0");
            go(t.sub(0), std::move(pending), c);
            return;
          case Ty::Kind::Prod:
            if (t.kind() != Kd::Split2) bad("expected split2 for " + cbpv::show(p));
            pending.push_back(p.right());
            pending.push_back(p.left());
            go(t.sub(0), std::move(pending), c);
            return;
          default: bad("negative type " + cbpv::show(p) + " in a pattern");
        }
      };
  if (!pos.is_positive()) bad("pattern type " + cbpv::show(pos) + " is not positive");
  go(a, {pos}, ctx);
}

template <class J>
bool decomposes(const Add<J>& a, const Ty& pos) {
  try {
    walk_add(a, pos, {}, [](const J&, const Context&) {}, Errc::ValidationFailure);
    return true;
  } catch (const Error&) {
    return false;
  }
}

template <class J, class D>
std::string dump(const Add<J>& a, const D& leaf) {
  using Kd = typename Add<J>::Kind;
  switch (a.kind()) {
    case Kd::Leaf: return leaf(a.leaf());
    case Kd::HypP: return "(HypP " + a.hyp().name() + " " + dump(a.sub(0), leaf) + ")";
    case Kd::HypN: return "(HypN " + cbpv::dump(a.hyp()) + " " + dump(a.sub(0), leaf) + ")";
    case Kd::Branch0: return "(Branch0)";
    case Kd::Branch2: return "(Branch2 " + dump(a.sub(0), leaf) + " " + dump(a.sub(1), leaf) + ")";
    case Kd::Split0: return "(Split0 " + dump(a.sub(0), leaf) + ")";
    case Kd::Split2: return "(Split2 " + dump(a.sub(0), leaf) + ")";
  }
  return "(?)";
}

}  // namespace nbe::polarized
