#pragma once

// Focused normal forms.
//
//   Vnf P  ::= var+ x (x : a+) | thunk Nf | unit+ | pair+ Vnf Vnf | inj_i Vnf
//   Ne N   ::= var- x | prj_i Ne | app Ne Vnf
//   Cov J  ::= return J | bind Ne (Add P (Cov J))      -- Ne : F P
//   Nf N   ::= ne (Cov Ne) (a-) | ret (Cov Vnf) (F P) | unit- | pair- Nf Nf
//            | abs (Add P Nf)
//
// Cov has no split/case/abort: all positive elimination is in the Add trees.

#include <string>

#include "nbe/polarized/syntax.hpp"

namespace nbe::polarized {

class Nf;

class Vnf {
 public:
  enum class Kind : std::uint8_t { VarP, Thunk, Unit, Pair, Inj };

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
  enum class Kind : std::uint8_t { VarN, Prj, App };

  static Ne var(Idx x);
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

template <class J>
class Cov {
 public:
  enum class Kind : std::uint8_t { Return, Bind };

  static Cov ret(J j) { return make(Node{Kind::Return, std::move(j), {}, {}, {}}); }
  static Cov bind(Ne u, Ty pos, Add<Cov> k) {
    return make(Node{Kind::Bind, {}, std::move(u), std::move(pos), std::move(k)});
  }

  Kind kind() const noexcept { return node_->kind; }
  const J& leaf() const { return node_->leaf.value(); }
  const Ne& ne() const { return node_->ne.value(); }
  const Ty& ty() const { return node_->pos.value(); }
  const Add<Cov>& body() const { return node_->body.value(); }

  friend bool operator==(const Cov& a, const Cov& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    return x.kind == y.kind && x.leaf == y.leaf && x.ne == y.ne && x.pos == y.pos && x.body == y.body;
  }

 private:
  struct Node {
    Kind kind;
    std::optional<J> leaf;
    std::optional<Ne> ne;
    std::optional<Ty> pos;
    std::optional<Add<Cov>> body;
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
  static Nf abs(Add<Nf> body);

  Kind kind() const noexcept;
  const Cov<Ne>& neutrals() const;
  const Cov<Vnf>& values() const;
  const Nf& sub(std::size_t i) const;
  const Add<Nf>& body() const;

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
  std::optional<Add<Nf>> body;
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
inline const Add<Nf>& Nf::body() const { return node_->body.value(); }

Vnf rename(const Ope& tau, const Vnf& v);
Ne rename(const Ope& tau, const Ne& u);
Nf rename(const Ope& tau, const Nf& n);

template <class J>
Cov<J> rename(const Ope& tau, const Cov<J>& c) {
  if (c.kind() == Cov<J>::Kind::Return) return Cov<J>::ret(rename(tau, c.leaf()));
  return Cov<J>::bind(rename(tau, c.ne()), c.ty(), rename(tau, c.body()));
}

namespace detail {

template <class K, class J, class L>
Cov<K> cov_stmap_from(const L& l, const Cov<J>& c, const Ope& path) {
  if (c.kind() == Cov<J>::Kind::Return) return Cov<K>::ret(l(path, c.leaf()));
  auto k = add_stmap<Cov<K>>(
      [&](const Ope& tau, const Cov<J>& sub) { return cov_stmap_from<K>(l, sub, compose(path, tau)); }, c.body(),
      path.target_size());
  return Cov<K>::bind(c.ne(), c.ty(), std::move(k));
}

}  // namespace detail

// l(τ, leaf) with τ : Γ ⊆ leaf context.
template <class K, class J, class L>
Cov<K> cov_stmap(const L& l, const Cov<J>& c, std::size_t depth) {
  return detail::cov_stmap_from<K>(l, c, Ope::id(depth));
}

// f(leaf, leaf_depth)
template <class K, class J, class F>
Cov<K> cov_map(const F& f, const Cov<J>& c, std::size_t depth) {
  return cov_stmap<K>([&f](const Ope& tau, const J& j) { return f(j, tau.target_size()); }, c, depth);
}

// join (return c) = c;  join (bind t k) = bind t (map join k).
// Structural on the outer tree.
template <class J>
Cov<J> cov_join(const Cov<Cov<J>>& c) {
  if (c.kind() == Cov<Cov<J>>::Kind::Return) return c.leaf();
  return Cov<J>::bind(c.ne(), c.ty(), add_map<Cov<J>>([](const Cov<Cov<J>>& s) { return cov_join(s); }, c.body()));
}

Ty infer(const Context& ctx, const Ne& u);

// Erasure into the focused term language itself.
Val erase(const Context& ctx, const Ty& pos, const Vnf& v);
Tm erase(const Context& ctx, const Ne& u);
Tm erase(const Context& ctx, const Ty& neg, const Nf& n);

// Independent grammar check, including Add-fringe completeness; throws
// ValidationFailure.
void validate(const Context& ctx, const Ty& neg, const Nf& n);
bool is_valid(const Context& ctx, const Ty& neg, const Nf& n);

std::string dump(const Vnf& v);
std::string dump(const Ne& u);
std::string dump(const Nf& n);

template <class J, class D>
std::string dump(const Cov<J>& c, const D& leaf) {
  if (c.kind() == Cov<J>::Kind::Return) return "(Return " + leaf(c.leaf()) + ")";
  auto sub = [&leaf](const Cov<J>& s) { return dump(s, leaf); };
  return "(Bind " + dump(c.ne()) + " " + cbpv::dump(c.ty()) + " " + dump(c.body(), sub) + ")";
}

}  // namespace nbe::polarized
