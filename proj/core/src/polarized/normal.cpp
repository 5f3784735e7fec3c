#include "nbe/polarized/normal.hpp"

namespace nbe::polarized {

using cbpv::show;

Vnf Vnf::var(Idx x) { return Vnf(std::make_shared<const Node>(Node{Kind::VarP, x, 0, {}, {}})); }
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

Ne Ne::var(Idx x) { return Ne(std::make_shared<const Node>(Node{Kind::VarN, x, 0, {}, {}})); }
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

Nf Nf::ne(Cov<Ne> c) { return Nf(std::make_shared<const Node>(Node{Kind::NeAtom, std::move(c), {}, {}, {}})); }
Nf Nf::ret(Cov<Vnf> c) { return Nf(std::make_shared<const Node>(Node{Kind::Ret, {}, std::move(c), {}, {}})); }
Nf Nf::unit() {
  static const Nf u(std::make_shared<const Node>(Node{Kind::UnitN, {}, {}, {}, {}}));
  return u;
}
Nf Nf::pair(Nf a, Nf b) {
  return Nf(std::make_shared<const Node>(Node{Kind::PairN, {}, {}, {std::move(a), std::move(b)}, {}}));
}
Nf Nf::abs(Add<Nf> body) { return Nf(std::make_shared<const Node>(Node{Kind::Abs, {}, {}, {}, std::move(body)})); }

bool operator==(const Nf& a, const Nf& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.neutrals == y.neutrals && x.values == y.values && x.subs == y.subs &&
         x.body == y.body;
}

Vnf rename(const Ope& tau, const Vnf& v) {
  switch (v.kind()) {
    case Vnf::Kind::VarP: return Vnf::var(tau.reindex(v.idx()));
    case Vnf::Kind::Thunk: return Vnf::thunk(rename(tau, v.body()));
    case Vnf::Kind::Unit: return v;
    case Vnf::Kind::Pair: return Vnf::pair(rename(tau, v.sub(0)), rename(tau, v.sub(1)));
    case Vnf::Kind::Inj: return Vnf::inj(v.which(), rename(tau, v.sub(0)));
  }
  return v;
}

Ne rename(const Ope& tau, const Ne& u) {
  switch (u.kind()) {
    case Ne::Kind::VarN: return Ne::var(tau.reindex(u.idx()));
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
    case Nf::Kind::Abs: return Nf::abs(rename(tau, n.body()));
  }
  return n;
}

Ty infer(const Context& ctx, const Ne& u) {
  switch (u.kind()) {
    case Ne::Kind::VarN: {
      const Ty& t = lookup(ctx, u.idx());
      if (!t.is_negative()) fail(Errc::ShapeMismatch, "var- at a hypothesis of type " + show(t));
      return t;
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

void shape(const Ty& ty, Ty::Kind k) {
  if (ty.kind() != k) fail(Errc::ShapeMismatch, "normal form does not fit type " + show(ty));
}

template <class J, class Leaf>
Tm erase_cov(const Context& ctx, const Ty& neg, const Cov<J>& c, const Leaf& leaf) {
  if (c.kind() == Cov<J>::Kind::Return) return leaf(ctx, c.leaf());
  auto body = add_map_ctx<Tm>([&](const Cov<J>& s, const Context& cx) { return erase_cov(cx, neg, s, leaf); },
                              c.body(), ctx);
  return Tm::bind(neg, erase(ctx, c.ne()), std::move(body));
}

}  // namespace

Val erase(const Context& ctx, const Ty& pos, const Vnf& v) {
  switch (v.kind()) {
    case Vnf::Kind::VarP: return Val::var(v.idx());
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
    case Ne::Kind::VarN: return Tm::var(u.idx());
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
    case Nf::Kind::Abs: {
      shape(neg, Ty::Kind::Arr);
      const Ty& cod = neg.right();
      return Tm::abs(neg, add_map_ctx<Tm>([&cod](const Nf& b, const Context& c) { return erase(c, cod, b); },
                                          n.body(), ctx));
    }
  }
  fail(Errc::ShapeMismatch, "unknown normal form");
}

namespace {

[[noreturn]] void invalid(const std::string& why) { fail(Errc::ValidationFailure, why); }

const Ty& var_type(const Context& ctx, Idx x) {
  if (!valid_in(ctx, x)) invalid("variable #" + std::to_string(x.depth) + " out of scope");
  return lookup(ctx, x);
}

// Fringe check read straight off the nested datatype: `then` says what the
// leaf positions of a P-tree must hold.  Deliberately not walk_add.
template <class J>
using Then = std::function<void(const Add<J>&, const Context&)>;

template <class J>
void fringe(const Context& ctx, const Ty& pos, const Add<J>& a, const Then<J>& then) {
  using K = typename Add<J>::Kind;
  auto need = [&](K k, const char* what) {
    if (a.kind() != k) invalid(std::string("expected ") + what + " decomposing " + show(pos));
  };
  switch (pos.kind()) {
    case Ty::Kind::AtomP:
      need(K::HypP, "hyp+");
      if (!(a.hyp() == pos)) invalid("hyp+ names the wrong atom");
      then(a.sub(0), extend(ctx, pos));
      return;
    case Ty::Kind::Thunk:
      need(K::HypN, "hyp-");
      if (!(a.hyp() == pos.left())) invalid("hyp- at the wrong type");
      then(a.sub(0), extend(ctx, pos.left()));
      return;
    case Ty::Kind::Zero: need(K::Branch0, "branch0"); return;
    case Ty::Kind::Sum:
      need(K::Branch2, "branch2");
      fringe(ctx, pos.left(), a.sub(0), then);
      fringe(ctx, pos.right(), a.sub(1), then);
      return;
    case Ty::Kind::One:
      need(K::Split0, "split0");
      then(a.sub(0), ctx);
      return;
    case Ty::Kind::Prod: {
      need(K::Split2, "split2");
      const Ty& p2 = pos.right();
      fringe<J>(ctx, pos.left(), a.sub(0), [&](const Add<J>& rest, const Context& c) { fringe(c, p2, rest, then); });
      return;
    }
    default: invalid("pattern tree at non-positive type " + show(pos));
  }
}

template <class J, class Leaf>
void check_add(const Context& ctx, const Ty& pos, const Add<J>& a, const Leaf& leaf) {
  fringe<J>(ctx, pos, a, [&](const Add<J>& t, const Context& c) {
    if (t.kind() != Add<J>::Kind::Leaf) invalid("pattern tree matches past a complete decomposition");
    leaf(c, t.leaf());
  });
}

void check_nf(const Context& ctx, const Ty& neg, const Nf& n);
void check_vnf(const Context& ctx, const Ty& pos, const Vnf& v);

Ty check_ne(const Context& ctx, const Ne& u) {
  switch (u.kind()) {
    case Ne::Kind::VarN: {
      const Ty& t = var_type(ctx, u.idx());
      if (!t.is_negative()) invalid("var- at hypothesis of type " + show(t));
      return t;
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
  if (c.kind() == Cov<J>::Kind::Return) {
    leaf(ctx, c.leaf());
    return;
  }
  Ty t = check_ne(ctx, c.ne());
  if (t.kind() != Ty::Kind::Comp || !(t.left() == c.ty())) invalid("bind of neutral of type " + show(t));
  check_add(ctx, c.ty(), c.body(), [&](const Context& cx, const Cov<J>& s) { check_cov(cx, s, leaf); });
}

void check_vnf(const Context& ctx, const Ty& pos, const Vnf& v) {
  switch (v.kind()) {
    case Vnf::Kind::VarP: {
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
      check_add(ctx, neg.left(), n.body(), [&neg](const Context& c, const Nf& b) { check_nf(c, neg.right(), b); });
      return;
  }
  invalid("unknown normal form");
}

}  // namespace

void validate(const Context& ctx, const Ty& neg, const Nf& n) {
  for (const auto& t : ctx) {
    if (!is_hyp(t)) invalid("context entry " + show(t) + " is not a hypothesis");
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
    case Vnf::Kind::VarP: return "(VarP " + std::to_string(v.idx().depth) + ")";
    case Vnf::Kind::Thunk: return "(Thunk " + dump(v.body()) + ")";
    case Vnf::Kind::Unit: return "(UnitP)";
    case Vnf::Kind::Pair: return "(PairP " + dump(v.sub(0)) + " " + dump(v.sub(1)) + ")";
    case Vnf::Kind::Inj: return "(Inj" + std::to_string(v.which()) + " " + dump(v.sub(0)) + ")";
  }
  return "(?)";
}

std::string dump(const Ne& u) {
  switch (u.kind()) {
    case Ne::Kind::VarN: return "(VarN " + std::to_string(u.idx().depth) + ")";
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
    case Nf::Kind::Abs: return "(Abs " + polarized::dump(n.body(), [](const Nf& b) { return dump(b); }) + ")";
  }
  return "(?)";
}

}  // namespace nbe::polarized
