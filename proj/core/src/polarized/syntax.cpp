#include "nbe/polarized/syntax.hpp"

namespace nbe::polarized {

Val Val::var(Idx x) { return Val(std::make_shared<const Node>(Node{Kind::VarP, x, 0, {}, {}, {}})); }
Val Val::thunk(Tm t) { return Val(std::make_shared<const Node>(Node{Kind::Thunk, {}, 0, {}, {}, {std::move(t)}})); }
Val Val::unit() {
  static const Val u(std::make_shared<const Node>(Node{Kind::Unit, {}, 0, {}, {}, {}}));
  return u;
}
Val Val::pair(Val a, Val b) {
  return Val(std::make_shared<const Node>(Node{Kind::Pair, {}, 0, {}, {std::move(a), std::move(b)}, {}}));
}
Val Val::inj(int which, Ty other, Val of) {
  return Val(std::make_shared<const Node>(Node{Kind::Inj, {}, which, std::move(other), {std::move(of)}, {}}));
}

std::size_t Val::size() const noexcept {
  std::size_t n = 1;
  for (const auto& v : node_->vals) n += v.size();
  for (const auto& t : node_->tms) n += t.size();
  return n;
}

bool operator==(const Val& a, const Val& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.idx == y.idx && x.which == y.which && x.ty == y.ty && x.vals == y.vals &&
         x.tms == y.tms;
}

Tm Tm::var(Idx x) { return Tm(std::make_shared<const Node>(Node{Kind::VarN, x, 0, {}, {}, {}, {}})); }
Tm Tm::ret(Val v) { return Tm(std::make_shared<const Node>(Node{Kind::Ret, {}, 0, {}, {}, {std::move(v)}, {}})); }
Tm Tm::abs(Ty arrow, Add<Tm> body) {
  return Tm(std::make_shared<const Node>(Node{Kind::Abs, {}, 0, std::move(arrow), {}, {}, std::move(body)}));
}
Tm Tm::pair(Tm a, Tm b) {
  return Tm(std::make_shared<const Node>(Node{Kind::PairN, {}, 0, {}, {std::move(a), std::move(b)}, {}, {}}));
}
Tm Tm::unit() {
  static const Tm u(std::make_shared<const Node>(Node{Kind::UnitN, {}, 0, {}, {}, {}, {}}));
  return u;
}
Tm Tm::force(Val v) { return Tm(std::make_shared<const Node>(Node{Kind::Force, {}, 0, {}, {}, {std::move(v)}, {}})); }
Tm Tm::app(Tm fn, Val arg) {
  return Tm(std::make_shared<const Node>(Node{Kind::App, {}, 0, {}, {std::move(fn)}, {std::move(arg)}, {}}));
}
Tm Tm::prj(int which, Tm of) {
  return Tm(std::make_shared<const Node>(Node{Kind::Prj, {}, which, {}, {std::move(of)}, {}, {}}));
}
Tm Tm::bind(Ty result, Tm t, Add<Tm> body) {
  return Tm(std::make_shared<const Node>(Node{Kind::Bind, {}, 0, std::move(result), {std::move(t)}, {}, std::move(body)}));
}

std::size_t Tm::size() const noexcept {
  std::size_t n = 1;
  for (const auto& v : node_->vals) n += v.size();
  for (const auto& t : node_->tms) n += t.size();
  if (node_->body) {
    std::function<std::size_t(const Add<Tm>&)> go = [&](const Add<Tm>& a) -> std::size_t {
      if (a.kind() == Add<Tm>::Kind::Leaf) return a.leaf().size();
      std::size_t m = 1;
      for (std::size_t i = 0; i < a.arity(); ++i) m += go(a.sub(i));
      return m;
    };
    n += go(*node_->body);
  }
  return n;
}

bool operator==(const Tm& a, const Tm& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.idx == y.idx && x.which == y.which && x.ty == y.ty && x.tms == y.tms &&
         x.vals == y.vals && x.body == y.body;
}

namespace {

using cbpv::show;

[[noreturn]] void mismatch(const std::string& what, const Ty& got) {
  fail(Errc::TypeMismatch, "expected " + what + ", got " + show(got));
}

void want(const Ty& got, Ty::Kind k, const std::string& what) {
  if (got.kind() != k) mismatch(what, got);
}

const Ty& bound(const Context& ctx, Idx x) {
  if (!valid_in(ctx, x)) fail(Errc::UnboundVariable, "variable #" + std::to_string(x.depth) + " not bound");
  return lookup(ctx, x);
}

// Every leaf of `body` must have type `want_ty` in its own context.
void check_body(const Context& ctx, const Add<Tm>& body, const Ty& pos, const Ty& want_ty) {
  walk_add(
      body, pos, ctx,
      [&](const Tm& leaf, const Context& c) {
        Ty got = infer(c, leaf);
        if (!(got == want_ty)) mismatch(show(want_ty), got);
      },
      Errc::TypeMismatch);
}

}  // namespace

void check_context(const Context& ctx) {
  for (const auto& h : ctx) {
    if (!is_hyp(h)) fail(Errc::PolarityViolation, "context entry " + show(h) + " is neither a+ nor negative");
  }
}

Ty infer(const Context& ctx, const Val& v) {
  switch (v.kind()) {
    case Val::Kind::VarP: {
      const Ty& h = bound(ctx, v.idx());
      want(h, Ty::Kind::AtomP, "a positive atom for a value variable");
      return h;
    }
    case Val::Kind::Thunk: return Ty::thunk(infer(ctx, v.tm()));
    case Val::Kind::Unit: return Ty::one();
    case Val::Kind::Pair: return Ty::prod(infer(ctx, v.val(0)), infer(ctx, v.val(1)));
    case Val::Kind::Inj: {
      if (!v.ty().is_positive()) mismatch("a value type in inj annotation", v.ty());
      Ty a = infer(ctx, v.val(0));
      return v.which() == 1 ? Ty::sum(a, v.ty()) : Ty::sum(v.ty(), a);
    }
  }
  fail(Errc::ShapeMismatch, "unknown value");
}

Ty infer(const Context& ctx, const Tm& t) {
  using K = Tm::Kind;
  switch (t.kind()) {
    case K::VarN: {
      const Ty& h = bound(ctx, t.idx());
      if (!h.is_negative()) mismatch("a computation type for a computation variable", h);
      return h;
    }
    case K::Ret: return Ty::comp(infer(ctx, t.val()));
    case K::Abs:
      want(t.ty(), Ty::Kind::Arr, "a function type on the lambda");
      check_body(ctx, t.body(), t.ty().left(), t.ty().right());
      return t.ty();
    case K::PairN: return Ty::with(infer(ctx, t.tm(0)), infer(ctx, t.tm(1)));
    case K::UnitN: return Ty::top();
    case K::Force: {
      Ty th = infer(ctx, t.val());
      want(th, Ty::Kind::Thunk, "a thunk type U N");
      return th.left();
    }
    case K::App: {
      Ty fn = infer(ctx, t.tm(0));
      want(fn, Ty::Kind::Arr, "a function type");
      Ty arg = infer(ctx, t.val());
      if (!(arg == fn.left())) mismatch("argument of type " + show(fn.left()), arg);
      return fn.right();
    }
    case K::Prj: {
      Ty p = infer(ctx, t.tm(0));
      want(p, Ty::Kind::With, "a record type N & N");
      return t.which() == 1 ? p.left() : p.right();
    }
    case K::Bind: {
      if (!t.ty().is_negative()) mismatch("a computation type as bind result", t.ty());
      Ty c = infer(ctx, t.tm(0));
      want(c, Ty::Kind::Comp, "a computation type F P");
      check_body(ctx, t.body(), c.left(), t.ty());
      return t.ty();
    }
  }
  fail(Errc::ShapeMismatch, "unknown term");
}

Val rename(const Ope& tau, const Val& v) {
  switch (v.kind()) {
    case Val::Kind::VarP: return Val::var(tau.reindex(v.idx()));
    case Val::Kind::Thunk: return Val::thunk(rename(tau, v.tm()));
    case Val::Kind::Unit: return v;
    case Val::Kind::Pair: return Val::pair(rename(tau, v.val(0)), rename(tau, v.val(1)));
    case Val::Kind::Inj: return Val::inj(v.which(), v.ty(), rename(tau, v.val(0)));
  }
  return v;
}

Tm rename(const Ope& tau, const Tm& t) {
  using K = Tm::Kind;
  switch (t.kind()) {
    case K::VarN: return Tm::var(tau.reindex(t.idx()));
    case K::Ret: return Tm::ret(rename(tau, t.val()));
    case K::Abs: return Tm::abs(t.ty(), rename(tau, t.body()));
    case K::PairN: return Tm::pair(rename(tau, t.tm(0)), rename(tau, t.tm(1)));
    case K::UnitN: return t;
    case K::Force: return Tm::force(rename(tau, t.val()));
    case K::App: return Tm::app(rename(tau, t.tm(0)), rename(tau, t.val()));
    case K::Prj: return Tm::prj(t.which(), rename(tau, t.tm(0)));
    case K::Bind: return Tm::bind(t.ty(), rename(tau, t.tm(0)), rename(tau, t.body()));
  }
  return t;
}

std::string dump(const Val& v) {
  switch (v.kind()) {
    case Val::Kind::VarP: return "(VarP " + std::to_string(v.idx().depth) + ")";
    case Val::Kind::Thunk: return "(Thunk " + dump(v.tm()) + ")";
    case Val::Kind::Unit: return "(UnitP)";
    case Val::Kind::Pair: return "(PairP " + dump(v.val(0)) + " " + dump(v.val(1)) + ")";
    case Val::Kind::Inj: return "(Inj" + std::to_string(v.which()) + " " + cbpv::dump(v.ty()) + " " + dump(v.val(0)) + ")";
  }
  return "(?)";
}

std::string dump(const Tm& t) {
  using K = Tm::Kind;
  auto body = [](const Add<Tm>& a) { return polarized::dump(a, [](const Tm& x) { return dump(x); }); };
  switch (t.kind()) {
    case K::VarN: return "(VarN " + std::to_string(t.idx().depth) + ")";
    case K::Ret: return "(Ret " + dump(t.val()) + ")";
    case K::Abs: return "(Abs " + cbpv::dump(t.ty()) + " " + body(t.body()) + ")";
    case K::PairN: return "(PairN " + dump(t.tm(0)) + " " + dump(t.tm(1)) + ")";
    case K::UnitN: return "(UnitN)";
    case K::Force: return "(Force " + dump(t.val()) + ")";
    case K::App: return "(App " + dump(t.tm(0)) + " " + dump(t.val()) + ")";
    case K::Prj: return "(Prj" + std::to_string(t.which()) + " " + dump(t.tm(0)) + ")";
    case K::Bind: return "(Bind " + cbpv::dump(t.ty()) + " " + dump(t.tm(0)) + " " + body(t.body()) + ")";
  }
  return "(?)";
}

}  // namespace nbe::polarized
