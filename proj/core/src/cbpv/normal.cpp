#include "nbe/cbpv/normal.hpp"

namespace nbe::cbpv {

Vnf Vnf::var(Idx x) { return Vnf(std::make_shared<const Node>(Node{Kind::Var, x, 0, {}, {}})); }
Vnf Vnf::thunk(Nf n) { return Vnf(std::make_shared<const Node>(Node{Kind::Thunk, {}, 0, {}, std::move(n)})); }
Vnf Vnf::unit() {
  static const Vnf u(std::make_shared<const Node>(Node{Kind::Unit, {}, 0, {}, {}}));
  return u;
}
Vnf Vnf::pair(Vnf a, Vnf b) {
  return Vnf(std::make_shared<const Node>(Node{Kind::Pair, {}, 0, {std::move(a), std::move(b)}, {}}));
}
Vnf Vnf::inj(int which, Vnf of) {
  return Vnf(std::make_shared<const Node>(Node{Kind::Inj, {}, which, {std::move(of)}, {}}));
}

bool operator==(const Vnf& a, const Vnf& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.idx == y.idx && x.which == y.which && x.subs == y.subs && x.body == y.body;
}

Ne Ne::force(Idx x) { return Ne(std::make_shared<const Node>(Node{Kind::Force, x, 0, {}, {}})); }
Ne Ne::prj(int which, Ne of) { return Ne(std::make_shared<const Node>(Node{Kind::Prj, {}, which, std::move(of), {}})); }
Ne Ne::app(Ne fn, Vnf arg) {
  return Ne(std::make_shared<const Node>(Node{Kind::App, {}, 0, std::move(fn), std::move(arg)}));
}

bool operator==(const Ne& a, const Ne& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.idx == y.idx && x.which == y.which && x.head == y.head && x.arg == y.arg;
}

Nf Nf::ne(Cov<Ne> c) { return Nf(std::make_shared<const Node>(Node{Kind::NeAtom, std::move(c), {}, {}})); }
Nf Nf::ret(Cov<Vnf> c) { return Nf(std::make_shared<const Node>(Node{Kind::Ret, {}, std::move(c), {}})); }
Nf Nf::unit() {
  static const Nf u(std::make_shared<const Node>(Node{Kind::UnitN, {}, {}, {}}));
  return u;
}
Nf Nf::pair(Nf a, Nf b) {
  return Nf(std::make_shared<const Node>(Node{Kind::PairN, {}, {}, {std::move(a), std::move(b)}}));
}
Nf Nf::abs(Nf body) { return Nf(std::make_shared<const Node>(Node{Kind::Abs, {}, {}, {std::move(body)}})); }

bool operator==(const Nf& a, const Nf& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.neutrals == y.neutrals && x.values == y.values && x.subs == y.subs;
}

Vnf rename(const Ope& tau, const Vnf& v) {
  switch (v.kind()) {
    case Vnf::Kind::Var: return Vnf::var(tau.reindex(v.idx()));
    case Vnf::Kind::Thunk: return Vnf::thunk(rename(tau, v.body()));
    case Vnf::Kind::Unit: return v;
    case Vnf::Kind::Pair: return Vnf::pair(rename(tau, v.sub(0)), rename(tau, v.sub(1)));
    case Vnf::Kind::Inj: return Vnf::inj(v.which(), rename(tau, v.sub(0)));
  }
  return v;
}

Ne rename(const Ope& tau, const Ne& u) {
  switch (u.kind()) {
    case Ne::Kind::Force: return Ne::force(tau.reindex(u.idx()));
    case Ne::Kind::Prj: return Ne::prj(u.which(), rename(tau, u.head()));
    case Ne::Kind::App: return Ne::app(rename(tau, u.head()), rename(tau, u.arg()));
  }
  return u;
}

Nf rename(const Ope& tau, const Nf& n) {
  switch (n.kind()) {
    case Nf::Kind::NeAtom: return Nf::ne(rename(tau, n.neutrals()));
    case Nf::Kind::Ret: return Nf::ret(rename(tau, n.values()));
    case Nf::Kind::UnitN: return n;
    case Nf::Kind::PairN: return Nf::pair(rename(tau, n.sub(0)), rename(tau, n.sub(1)));
    case Nf::Kind::Abs: return Nf::abs(rename(tau.lift(), n.sub(0)));
  }
  return n;
}

Ty infer(const Context& ctx, const Ne& u) {
  switch (u.kind()) {
    case Ne::Kind::Force: {
      const Ty& t = lookup(ctx, u.idx());
      if (t.kind() != Ty::Kind::Thunk) fail(Errc::ShapeMismatch, "force of a variable of type " + show(t));
      return t.left();
    }
    case Ne::Kind::Prj: {
      Ty p = infer(ctx, u.head());
      if (p.kind() != Ty::Kind::With) fail(Errc::ShapeMismatch, "projection from " + show(p));
      return u.which() == 1 ? p.left() : p.right();
    }
    case Ne::Kind::App: {
      Ty f = infer(ctx, u.head());
      if (f.kind() != Ty::Kind::Arr) fail(Errc::ShapeMismatch, "application of " + show(f));
      return f.right();
    }
  }
  fail(Errc::ShapeMismatch, "unknown neutral");
}

namespace {

template <class J, class Leaf>
Tm erase_cov(const Context& ctx, const Ty& neg, const Cov<J>& c, const Leaf& leaf) {
  using K = typename Cov<J>::Kind;
  switch (c.kind()) {
    case K::Return: return leaf(ctx, c.leaf());
    case K::Bind: return Tm::bind(c.ty(0), erase(ctx, c.ne()), erase_cov(extend(ctx, c.ty(0)), neg, c.sub(0), leaf));
    case K::Split:
      return Tm::split(Val::var(c.var()), erase_cov(extend(extend(ctx, c.ty(0)), c.ty(1)), neg, c.sub(0), leaf));
    case K::Case:
      return Tm::case_(Val::var(c.var()), erase_cov(extend(ctx, c.ty(0)), neg, c.sub(0), leaf),
                       erase_cov(extend(ctx, c.ty(1)), neg, c.sub(1), leaf));
    case K::Abort: return Tm::abort(neg, Val::var(c.var()));
  }
  fail(Errc::ShapeMismatch, "cov");
}

void shape(const Ty& ty, Ty::Kind k) {
  if (ty.kind() != k) fail(Errc::ShapeMismatch, "normal form does not fit type " + show(ty));
}

}  // namespace

Val erase(const Context& ctx, const Ty& pos, const Vnf& v) {
  switch (v.kind()) {
    case Vnf::Kind::Var: return Val::var(v.idx());
    case Vnf::Kind::Thunk: shape(pos, Ty::Kind::Thunk); return Val::thunk(erase(ctx, pos.left(), v.body()));
    case Vnf::Kind::Unit: return Val::unit();
    case Vnf::Kind::Pair:
      shape(pos, Ty::Kind::Prod);
      return Val::pair(erase(ctx, pos.left(), v.sub(0)), erase(ctx, pos.right(), v.sub(1)));
    case Vnf::Kind::Inj: {
      shape(pos, Ty::Kind::Sum);
      bool first = v.which() == 1;
      return Val::inj(v.which(), first ? pos.right() : pos.left(), erase(ctx, first ? pos.left() : pos.right(), v.sub(0)));
    }
  }
  fail(Errc::ShapeMismatch, "unknown value normal form");
}

Tm erase(const Context& ctx, const Ne& u) {
  switch (u.kind()) {
    case Ne::Kind::Force: return Tm::force(Val::var(u.idx()));
    case Ne::Kind::Prj: return Tm::prj(u.which(), erase(ctx, u.head()));
    case Ne::Kind::App: {
      Ty f = infer(ctx, u.head());
      return Tm::app(erase(ctx, u.head()), erase(ctx, f.left(), u.arg()));
    }
  }
  fail(Errc::ShapeMismatch, "unknown neutral");
}

Tm erase(const Context& ctx, const Ty& neg, const Nf& n) {
  switch (n.kind()) {
    case Nf::Kind::NeAtom:
      return erase_cov(ctx, neg, n.neutrals(), [](const Context& c, const Ne& u) { return erase(c, u); });
    case Nf::Kind::Ret: {
      shape(neg, Ty::Kind::Comp);
      const Ty& pos = neg.left();
      return erase_cov(ctx, neg, n.values(),
                       [&pos](const Context& c, const Vnf& v) { return Tm::ret(erase(c, pos, v)); });
    }
    case Nf::Kind::UnitN: return Tm::unit();
    case Nf::Kind::PairN:
      shape(neg, Ty::Kind::With);
      return Tm::pair(erase(ctx, neg.left(), n.sub(0)), erase(ctx, neg.right(), n.sub(1)));
    case Nf::Kind::Abs:
      shape(neg, Ty::Kind::Arr);
      return Tm::abs(neg.left(), erase(extend(ctx, neg.left()), neg.right(), n.sub(0)));
  }
  fail(Errc::ShapeMismatch, "unknown normal form");
}

namespace {

[[noreturn]] void invalid(const std::string& why) { fail(Errc::ValidationFailure, why); }

const Ty& var_type(const Context& ctx, Idx x) {
  if (!valid_in(ctx, x)) invalid("variable #" + std::to_string(x.depth) + " out of scope");
  return lookup(ctx, x);
}

void check_nf(const Context& ctx, const Ty& neg, const Nf& n);
void check_vnf(const Context& ctx, const Ty& pos, const Vnf& v);

Ty check_ne(const Context& ctx, const Ne& u) {
  switch (u.kind()) {
    case Ne::Kind::Force: {
      const Ty& t = var_type(ctx, u.idx());
      if (t.kind() != Ty::Kind::Thunk) invalid("force of a variable of type " + show(t));
      return t.left();
    }
    case Ne::Kind::Prj: {
      Ty p = check_ne(ctx, u.head());
      if (p.kind() != Ty::Kind::With) invalid("projection from neutral of type " + show(p));
      return u.which() == 1 ? p.left() : p.right();
    }
    case Ne::Kind::App: {
      Ty f = check_ne(ctx, u.head());
      if (f.kind() != Ty::Kind::Arr) invalid("application of neutral of type " + show(f));
      check_vnf(ctx, f.left(), u.arg());
      return f.right();
    }
  }
  invalid("unknown neutral");
}

template <class J, class Leaf>
void check_cov(const Context& ctx, const Cov<J>& c, const Leaf& leaf) {
  using K = typename Cov<J>::Kind;
  switch (c.kind()) {
    case K::Return: leaf(ctx, c.leaf()); return;
    case K::Bind: {
      Ty t = check_ne(ctx, c.ne());
      if (t.kind() != Ty::Kind::Comp || !(t.left() == c.ty(0))) invalid("bind of neutral of type " + show(t));
      check_cov(extend(ctx, c.ty(0)), c.sub(0), leaf);
      return;
    }
    case K::Split: {
      const Ty& t = var_type(ctx, c.var());
      if (!(t == Ty::prod(c.ty(0), c.ty(1)))) invalid("split of a variable of type " + show(t));
      check_cov(extend(extend(ctx, c.ty(0)), c.ty(1)), c.sub(0), leaf);
      return;
    }
    case K::Case: {
      const Ty& t = var_type(ctx, c.var());
      if (!(t == Ty::sum(c.ty(0), c.ty(1)))) invalid("case on a variable of type " + show(t));
      check_cov(extend(ctx, c.ty(0)), c.sub(0), leaf);
      check_cov(extend(ctx, c.ty(1)), c.sub(1), leaf);
      return;
    }
    case K::Abort: {
      const Ty& t = var_type(ctx, c.var());
      if (t.kind() != Ty::Kind::Zero) invalid("abort on a variable of type " + show(t));
      return;
    }
  }
  invalid("unknown cover node");
}

void check_vnf(const Context& ctx, const Ty& pos, const Vnf& v) {
  switch (v.kind()) {
    case Vnf::Kind::Var: {
      if (pos.kind() != Ty::Kind::AtomP) invalid("variable as value normal form at non-atomic " + show(pos));
      const Ty& t = var_type(ctx, v.idx());
      if (!(t == pos)) invalid("variable of type " + show(t) + " where " + show(pos) + " expected");
      return;
    }
    case Vnf::Kind::Thunk:
      if (pos.kind() != Ty::Kind::Thunk) invalid("thunk at type " + show(pos));
      check_nf(ctx, pos.left(), v.body());
      return;
    case Vnf::Kind::Unit:
      if (pos.kind() != Ty::Kind::One) invalid("unit at type " + show(pos));
      return;
    case Vnf::Kind::Pair:
      if (pos.kind() != Ty::Kind::Prod) invalid("pair at type " + show(pos));
      check_vnf(ctx, pos.left(), v.sub(0));
      check_vnf(ctx, pos.right(), v.sub(1));
      return;
    case Vnf::Kind::Inj:
      if (pos.kind() != Ty::Kind::Sum) invalid("injection at type " + show(pos));
      if (v.which() != 1 && v.which() != 2) invalid("bad injection tag");
      check_vnf(ctx, v.which() == 1 ? pos.left() : pos.right(), v.sub(0));
      return;
  }
  invalid("unknown value normal form");
}

void check_nf(const Context& ctx, const Ty& neg, const Nf& n) {
  switch (n.kind()) {
    case Nf::Kind::NeAtom:
      if (neg.kind() != Ty::Kind::AtomN) invalid("ne at non-atomic type " + show(neg));
      check_cov(ctx, n.neutrals(), [&neg](const Context& c, const Ne& u) {
        Ty t = check_ne(c, u);
        if (!(t == neg)) invalid("neutral of type " + show(t) + " where " + show(neg) + " expected");
      });
      return;
    case Nf::Kind::Ret:
      if (neg.kind() != Ty::Kind::Comp) invalid("ret at type " + show(neg));
      check_cov(ctx, n.values(), [&neg](const Context& c, const Vnf& v) { check_vnf(c, neg.left(), v); });
      return;
    case Nf::Kind::UnitN:
      if (neg.kind() != Ty::Kind::Top) invalid("unit- at type " + show(neg));
      return;
    case Nf::Kind::PairN:
      if (neg.kind() != Ty::Kind::With) invalid("pair- at type " + show(neg));
      check_nf(ctx, neg.left(), n.sub(0));
      check_nf(ctx, neg.right(), n.sub(1));
      return;
    case Nf::Kind::Abs:
      if (neg.kind() != Ty::Kind::Arr) invalid("abs at type " + show(neg));
      check_nf(extend(ctx, neg.left()), neg.right(), n.sub(0));
      return;
  }
  invalid("unknown normal form");
}

}  // namespace

void validate(const Context& ctx, const Ty& neg, const Nf& n) {
  for (const auto& t : ctx) {
    if (!t.is_positive()) invalid("context entry of computation type " + show(t));
  }
  check_nf(ctx, neg, n);
}

bool is_valid(const Context& ctx, const Ty& neg, const Nf& n) {
  try {
    validate(ctx, neg, n);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::string dump(const Vnf& v) {
  switch (v.kind()) {
    case Vnf::Kind::Var: return "(Var " + std::to_string(v.idx().depth) + ")";
    case Vnf::Kind::Thunk: return "(Thunk " + dump(v.body()) + ")";
    case Vnf::Kind::Unit: return "(UnitP)";
    case Vnf::Kind::Pair: return "(PairP " + dump(v.sub(0)) + " " + dump(v.sub(1)) + ")";
    case Vnf::Kind::Inj: return "(Inj" + std::to_string(v.which()) + " " + dump(v.sub(0)) + ")";
  }
  return "(?)";
}

std::string dump(const Ne& u) {
  switch (u.kind()) {
    case Ne::Kind::Force: return "(Force " + std::to_string(u.idx().depth) + ")";
    case Ne::Kind::Prj: return "(Prj" + std::to_string(u.which()) + " " + dump(u.head()) + ")";
    case Ne::Kind::App: return "(App " + dump(u.head()) + " " + dump(u.arg()) + ")";
  }
  return "(?)";
}

std::string dump(const Nf& n) {
  switch (n.kind()) {
    case Nf::Kind::NeAtom: return "(Ne " + dump(n.neutrals(), [](const Ne& u) { return dump(u); }) + ")";
    case Nf::Kind::Ret: return "(Ret " + dump(n.values(), [](const Vnf& v) { return dump(v); }) + ")";
    case Nf::Kind::UnitN: return "(UnitN)";
    case Nf::Kind::PairN: return "(PairN " + dump(n.sub(0)) + " " + dump(n.sub(1)) + ")";
    case Nf::Kind::Abs: return "(Abs " + dump(n.sub(0)) + ")";
  }
  return "(?)";
}

}  // namespace nbe::cbpv
