#pragma once

// CBPV normal forms.
//
//   Vnf P  ::= var x (x : a+) | thunk Nf | unit+ | pair+ Vnf Vnf | inj_i Vnf
//   Ne N   ::= force x (x : U N) | prj_i Ne | app Ne Vnf
//   Cov J  ::= return J | bind Ne (Cov J) | split x (Cov J)
//            | case x (Cov J) (Cov J) | abort x
//   Nf N   ::= ne (Cov Ne) (a-) | ret (Cov Vnf) (F P) | unit- | pair- Nf Nf | abs Nf

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nbe/cbpv/syntax.hpp"

namespace nbe::cbpv {

class Nf;

class Vnf {
 public:
  enum class Kind : std::uint8_t { Var, Thunk, Unit, Pair, Inj };

  static Vnf var(Idx x);
  static Vnf thunk(Nf n);
  static Vnf unit();
  static Vnf pair(Vnf a, Vnf b);
  static Vnf inj(int which, Vnf of);

  Kind kind() const noexcept;
  Idx idx() const noexcept;
  int which() const noexcept;
  const Vnf& sub(std::size_t i) const;
  const Nf& body() const;

  friend bool operator==(const Vnf& a, const Vnf& b);

 private:
  struct Node;
  explicit Vnf(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class Ne {
 public:
  enum class Kind : std::uint8_t { Force, Prj, App };

  static Ne force(Idx x);
  static Ne prj(int which, Ne of);
  static Ne app(Ne fn, Vnf arg);

  Kind kind() const noexcept;
  Idx idx() const noexcept;
  int which() const noexcept;
  const Ne& head() const;
  const Vnf& arg() const;

  friend bool operator==(const Ne& a, const Ne& b);

 private:
  struct Node;
  explicit Ne(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// The free strong monad of binds and positive eliminations on variables.
template <class J>
class Cov {
 public:
  enum class Kind : std::uint8_t { Return, Bind, Split, Case, Abort };

  static Cov ret(J j) { return make(Node{Kind::Return, std::move(j), {}, {}, {}, {}}); }
  // bind u : F P, continue at Γ.P
  static Cov bind(Ne u, Ty pos, Cov c) { return make(Node{Kind::Bind, {}, std::move(u), {}, {std::move(pos)}, {std::move(c)}}); }
  // split x : P1 * P2, continue at Γ.P1.P2
  static Cov split(Idx x, Ty p1, Ty p2, Cov c) {
    return make(Node{Kind::Split, {}, {}, x, {std::move(p1), std::move(p2)}, {std::move(c)}});
  }
  static Cov case_(Idx x, Ty p1, Ty p2, Cov l, Cov r) {
    return make(Node{Kind::Case, {}, {}, x, {std::move(p1), std::move(p2)}, {std::move(l), std::move(r)}});
  }
  static Cov abort(Idx x) { return make(Node{Kind::Abort, {}, {}, x, {}, {}}); }

  Kind kind() const noexcept { return node_->kind; }
  const J& leaf() const { return node_->leaf.value(); }
  const Ne& ne() const { return node_->ne.value(); }
  Idx var() const noexcept { return node_->var; }
  const Ty& ty(std::size_t i) const { return node_->tys.at(i); }
  const Cov& sub(std::size_t i) const { return node_->subs.at(i); }
  // Number of hypotheses the i-th subtree adds.
  std::size_t binds() const noexcept {
    switch (kind()) {
      case Kind::Bind: return 1;
      case Kind::Split: return 2;
      case Kind::Case: return 1;
      default: return 0;
    }
  }

  friend bool operator==(const Cov& a, const Cov& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    return x.kind == y.kind && x.leaf == y.leaf && x.ne == y.ne && x.var == y.var && x.tys == y.tys &&
           x.subs == y.subs;
  }

 private:
  struct Node {
    Kind kind;
    std::optional<J> leaf;
    std::optional<Ne> ne;
    Idx var{};
    std::vector<Ty> tys;
    std::vector<Cov> subs;
  };
  static Cov make(Node n) { return Cov(std::make_shared<const Node>(std::move(n))); }
  explicit Cov(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class Nf {
 public:
  enum class Kind : std::uint8_t { NeAtom, Ret, UnitN, PairN, Abs };

  static Nf ne(Cov<Ne> c);
  static Nf ret(Cov<Vnf> c);
  static Nf unit();
  static Nf pair(Nf a, Nf b);
  static Nf abs(Nf body);

  Kind kind() const noexcept;
  const Cov<Ne>& neutrals() const;
  const Cov<Vnf>& values() const;
  const Nf& sub(std::size_t i) const;

  friend bool operator==(const Nf& a, const Nf& b);

 private:
  struct Node;
  explicit Nf(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Vnf::Node {
  Kind kind;
  Idx idx{};
  int which = 0;
  std::vector<Vnf> subs;
  std::optional<Nf> body;
};

struct Ne::Node {
  Kind kind;
  Idx idx{};
  int which = 0;
  std::optional<Ne> head;
  std::optional<Vnf> arg;
};

struct Nf::Node {
  Kind kind;
  std::optional<Cov<Ne>> neutrals;
  std::optional<Cov<Vnf>> values;
  std::vector<Nf> subs;
};

inline Vnf::Kind Vnf::kind() const noexcept { return node_->kind; }
inline Idx Vnf::idx() const noexcept { return node_->idx; }
inline int Vnf::which() const noexcept { return node_->which; }
inline const Vnf& Vnf::sub(std::size_t i) const { return node_->subs.at(i); }
inline const Nf& Vnf::body() const { return node_->body.value(); }

inline Ne::Kind Ne::kind() const noexcept { return node_->kind; }
inline Idx Ne::idx() const noexcept { return node_->idx; }
inline int Ne::which() const noexcept { return node_->which; }
inline const Ne& Ne::head() const { return node_->head.value(); }
inline const Vnf& Ne::arg() const { return node_->arg.value(); }

inline Nf::Kind Nf::kind() const noexcept { return node_->kind; }
inline const Cov<Ne>& Nf::neutrals() const { return node_->neutrals.value(); }
inline const Cov<Vnf>& Nf::values() const { return node_->values.value(); }
inline const Nf& Nf::sub(std::size_t i) const { return node_->subs.at(i); }

Vnf rename(const Ope& tau, const Vnf& v);
Ne rename(const Ope& tau, const Ne& u);
Nf rename(const Ope& tau, const Nf& n);

template <class J>
Cov<J> rename(const Ope& tau, const Cov<J>& c) {
  using K = typename Cov<J>::Kind;
  switch (c.kind()) {
    case K::Return: return Cov<J>::ret(rename(tau, c.leaf()));
    case K::Bind: return Cov<J>::bind(rename(tau, c.ne()), c.ty(0), rename(tau.lift(), c.sub(0)));
    case K::Split: return Cov<J>::split(tau.reindex(c.var()), c.ty(0), c.ty(1), rename(tau.lift().lift(), c.sub(0)));
    case K::Case: {
      Ope up = tau.lift();
      return Cov<J>::case_(tau.reindex(c.var()), c.ty(0), c.ty(1), rename(up, c.sub(0)), rename(up, c.sub(1)));
    }
    case K::Abort: return Cov<J>::abort(tau.reindex(c.var()));
  }
  return c;
}

// Monad structure.  `depth` is the length of the context at the root.

// f(leaf, leaf_depth)
template <class K, class J, class F>
Cov<K> cov_map(const F& f, const Cov<J>& c, std::size_t depth) {
  using Kd = typename Cov<J>::Kind;
  switch (c.kind()) {
    case Kd::Return: return Cov<K>::ret(f(c.leaf(), depth));
    case Kd::Bind: return Cov<K>::bind(c.ne(), c.ty(0), cov_map<K>(f, c.sub(0), depth + 1));
    case Kd::Split: return Cov<K>::split(c.var(), c.ty(0), c.ty(1), cov_map<K>(f, c.sub(0), depth + 2));
    case Kd::Case:
      return Cov<K>::case_(c.var(), c.ty(0), c.ty(1), cov_map<K>(f, c.sub(0), depth + 1),
                           cov_map<K>(f, c.sub(1), depth + 1));
    case Kd::Abort: return Cov<K>::abort(c.var());
  }
  fail(Errc::ShapeMismatch, "cov");
}

namespace detail {

template <class K, class J, class L>
Cov<K> cov_stmap_from(const L& l, const Cov<J>& c, const Ope& path) {
  using Kd = typename Cov<J>::Kind;
  switch (c.kind()) {
    case Kd::Return: return Cov<K>::ret(l(path, c.leaf()));
    case Kd::Bind: return Cov<K>::bind(c.ne(), c.ty(0), cov_stmap_from<K>(l, c.sub(0), path.weak()));
    case Kd::Split: return Cov<K>::split(c.var(), c.ty(0), c.ty(1), cov_stmap_from<K>(l, c.sub(0), path.weak().weak()));
    case Kd::Case: {
      Ope down = path.weak();
      return Cov<K>::case_(c.var(), c.ty(0), c.ty(1), cov_stmap_from<K>(l, c.sub(0), down),
                           cov_stmap_from<K>(l, c.sub(1), down));
    }
    case Kd::Abort: return Cov<K>::abort(c.var());
  }
  fail(Errc::ShapeMismatch, "cov");
}

}  // namespace detail

// l(τ, leaf) with τ : Γ ⊆ leaf context.
template <class K, class J, class L>
Cov<K> cov_stmap(const L& l, const Cov<J>& c, std::size_t depth) {
  return detail::cov_stmap_from<K>(l, c, Ope::id(depth));
}

template <class J>
Cov<J> cov_join(const Cov<Cov<J>>& c) {
  using Kd = typename Cov<Cov<J>>::Kind;
  switch (c.kind()) {
    case Kd::Return: return c.leaf();
    case Kd::Bind: return Cov<J>::bind(c.ne(), c.ty(0), cov_join(c.sub(0)));
    case Kd::Split: return Cov<J>::split(c.var(), c.ty(0), c.ty(1), cov_join(c.sub(0)));
    case Kd::Case: return Cov<J>::case_(c.var(), c.ty(0), c.ty(1), cov_join(c.sub(0)), cov_join(c.sub(1)));
    case Kd::Abort: return Cov<J>::abort(c.var());
  }
  fail(Errc::ShapeMismatch, "cov");
}

// Monoidal functoriality: c1 ⋆ c2, pairing leaves with `combine`.
// The first component is renamed along the second tree's paths.
template <class R, class A, class B, class F>
Cov<R> cov_star(const Cov<A>& c1, const Cov<B>& c2, std::size_t depth, const F& combine) {
  auto outer = [&](const Ope& tau1, const A& a1) {
    auto inner = [&](const Ope& tau2, const B& a2) { return combine(rename(tau2, a1), a2); };
    return cov_stmap<R>(inner, rename(tau1, c2), tau1.target_size());
  };
  return cov_join(cov_stmap<Cov<R>>(outer, c1, depth));
}

Ty infer(const Context& ctx, const Ne& u);

// Erasure back into terms; Abort nodes need the result type.
Val erase(const Context& ctx, const Ty& pos, const Vnf& v);
Tm erase(const Context& ctx, const Ne& u);
Tm erase(const Context& ctx, const Ty& neg, const Nf& n);

// Independent grammar check; throws ValidationFailure.
void validate(const Context& ctx, const Ty& neg, const Nf& n);
bool is_valid(const Context& ctx, const Ty& neg, const Nf& n);

std::string dump(const Vnf& v);
std::string dump(const Ne& u);
std::string dump(const Nf& n);

template <class J, class D>
std::string dump(const Cov<J>& c, const D& leaf) {
  using K = typename Cov<J>::Kind;
  auto ix = [](Idx x) { return std::to_string(x.depth); };
  switch (c.kind()) {
    case K::Return: return "(Return " + leaf(c.leaf()) + ")";
    case K::Bind: return "(Bind " + dump(c.ne()) + " " + dump(c.ty(0)) + " " + dump(c.sub(0), leaf) + ")";
    case K::Split: return "(Split " + ix(c.var()) + " " + dump(c.sub(0), leaf) + ")";
    case K::Case: return "(Case " + ix(c.var()) + " " + dump(c.sub(0), leaf) + " " + dump(c.sub(1), leaf) + ")";
    case K::Abort: return "(Abort " + ix(c.var()) + ")";
  }
  return "(?)";
}

}  // namespace nbe::cbpv
