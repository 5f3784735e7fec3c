#include "nbe/cbpv/syntax.hpp"

#include <algorithm>

namespace nbe::cbpv {

Ty Ty::atom_pos(std::string name) { return Ty(std::make_shared<const Node>(Node{Kind::AtomP, std::move(name), {}})); }
Ty Ty::zero() {
  static const Ty z(std::make_shared<const Node>(Node{Kind::Zero, {}, {}}));
  return z;
}
Ty Ty::one() {
  static const Ty u(std::make_shared<const Node>(Node{Kind::One, {}, {}}));
  return u;
}
Ty Ty::sum(Ty l, Ty r) { return Ty(std::make_shared<const Node>(Node{Kind::Sum, {}, {std::move(l), std::move(r)}})); }
Ty Ty::prod(Ty l, Ty r) { return Ty(std::make_shared<const Node>(Node{Kind::Prod, {}, {std::move(l), std::move(r)}})); }
Ty Ty::thunk(Ty n) { return Ty(std::make_shared<const Node>(Node{Kind::Thunk, {}, {std::move(n)}})); }
Ty Ty::atom_neg(std::string name) { return Ty(std::make_shared<const Node>(Node{Kind::AtomN, std::move(name), {}})); }
Ty Ty::top() {
  static const Ty t(std::make_shared<const Node>(Node{Kind::Top, {}, {}}));
  return t;
}
Ty Ty::with(Ty l, Ty r) { return Ty(std::make_shared<const Node>(Node{Kind::With, {}, {std::move(l), std::move(r)}})); }
Ty Ty::arr(Ty d, Ty c) { return Ty(std::make_shared<const Node>(Node{Kind::Arr, {}, {std::move(d), std::move(c)}})); }
Ty Ty::comp(Ty p) { return Ty(std::make_shared<const Node>(Node{Kind::Comp, {}, {std::move(p)}})); }

std::size_t Ty::depth() const noexcept {
  std::size_t d = 0;
  for (const auto& c : node_->children) d = std::max(d, c.depth());
  return node_->children.empty() ? 0 : d + 1;
}

bool operator==(const Ty& a, const Ty& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->kind == b.node_->kind && a.node_->name == b.node_->name &&
         a.node_->children == b.node_->children;
}

Val Val::var(Idx x) { return Val(std::make_shared<const Node>(Node{Kind::Var, x, 0, {}, {}, {}})); }
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

Tm Tm::ret(Val v) { return Tm(std::make_shared<const Node>(Node{Kind::Ret, 0, {}, {}, {std::move(v)}})); }
Tm Tm::abs(Ty dom, Tm body) {
  return Tm(std::make_shared<const Node>(Node{Kind::Abs, 0, std::move(dom), {std::move(body)}, {}}));
}
Tm Tm::pair(Tm a, Tm b) {
  return Tm(std::make_shared<const Node>(Node{Kind::PairN, 0, {}, {std::move(a), std::move(b)}, {}}));
}
Tm Tm::unit() {
  static const Tm u(std::make_shared<const Node>(Node{Kind::UnitN, 0, {}, {}, {}}));
  return u;
}
Tm Tm::force(Val v) { return Tm(std::make_shared<const Node>(Node{Kind::Force, 0, {}, {}, {std::move(v)}})); }
Tm Tm::app(Tm fn, Val arg) {
  return Tm(std::make_shared<const Node>(Node{Kind::App, 0, {}, {std::move(fn)}, {std::move(arg)}}));
}
Tm Tm::prj(int which, Tm of) { return Tm(std::make_shared<const Node>(Node{Kind::Prj, which, {}, {std::move(of)}, {}})); }
Tm Tm::bind(Ty pos, Tm t, Tm body) {
  return Tm(std::make_shared<const Node>(Node{Kind::Bind, 0, std::move(pos), {std::move(t), std::move(body)}, {}}));
}
Tm Tm::split(Val v, Tm body) {
  return Tm(std::make_shared<const Node>(Node{Kind::Split, 0, {}, {std::move(body)}, {std::move(v)}}));
}
Tm Tm::case_(Val v, Tm l, Tm r) {
  return Tm(std::make_shared<const Node>(Node{Kind::Case, 0, {}, {std::move(l), std::move(r)}, {std::move(v)}}));
}
Tm Tm::abort(Ty result, Val v) {
  return Tm(std::make_shared<const Node>(Node{Kind::Abort, 0, std::move(result), {}, {std::move(v)}}));
}

std::size_t Tm::size() const noexcept {
  std::size_t n = 1;
  for (const auto& v : node_->vals) n += v.size();
  for (const auto& t : node_->tms) n += t.size();
  return n;
}

bool operator==(const Tm& a, const Tm& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.which == y.which && x.ty == y.ty && x.tms == y.tms && x.vals == y.vals;
}

namespace {

[[noreturn]] void mismatch(const std::string& what, const Ty& got) {
  fail(Errc::TypeMismatch, "expected " + what + ", got " + show(got));
}

void want(const Ty& got, Ty::Kind k, const std::string& what) {
  if (got.kind() != k) mismatch(what, got);
}

void want_positive(const Ty& t, const char* where) {
  if (!t.is_positive()) fail(Errc::TypeMismatch, std::string(where) + " needs a value type, got " + show(t));
}

void want_negative(const Ty& t, const char* where) {
  if (!t.is_negative()) fail(Errc::TypeMismatch, std::string(where) + " needs a computation type, got " + show(t));
}

}  // namespace

Ty infer(const Context& ctx, const Val& v) {
  switch (v.kind()) {
    case Val::Kind::Var:
      if (!valid_in(ctx, v.idx())) fail(Errc::UnboundVariable, "variable #" + std::to_string(v.idx().depth) + " not bound");
      return lookup(ctx, v.idx());
    case Val::Kind::Thunk: return Ty::thunk(infer(ctx, v.tm()));
    case Val::Kind::Unit: return Ty::one();
    case Val::Kind::Pair: return Ty::prod(infer(ctx, v.val(0)), infer(ctx, v.val(1)));
    case Val::Kind::Inj: {
      want_positive(v.ty(), "inj annotation");
      Ty a = infer(ctx, v.val(0));
      return v.which() == 1 ? Ty::sum(a, v.ty()) : Ty::sum(v.ty(), a);
    }
  }
  fail(Errc::ShapeMismatch, "unknown value");
}

Ty infer(const Context& ctx, const Tm& t) {
  using K = Tm::Kind;
  switch (t.kind()) {
    case K::Ret: return Ty::comp(infer(ctx, t.val()));
    case K::Abs:
      want_positive(t.ty(), "lambda domain");
      return Ty::arr(t.ty(), infer(extend(ctx, t.ty()), t.tm(0)));
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
      want_positive(t.ty(), "let annotation");
      Ty c = infer(ctx, t.tm(0));
      want(c, Ty::Kind::Comp, "a computation type F P");
      if (!(c.left() == t.ty())) mismatch("F " + show(t.ty()), c);
      return infer(extend(ctx, t.ty()), t.tm(1));
    }
    case K::Split: {
      Ty p = infer(ctx, t.val());
      want(p, Ty::Kind::Prod, "a product type");
      return infer(extend(extend(ctx, p.left()), p.right()), t.tm(0));
    }
    case K::Case: {
      Ty s = infer(ctx, t.val());
      want(s, Ty::Kind::Sum, "a sum type");
      Ty b1 = infer(extend(ctx, s.left()), t.tm(0));
      Ty b2 = infer(extend(ctx, s.right()), t.tm(1));
      if (!(b1 == b2)) fail(Errc::BranchTypeDisagreement, "case branches have types " + show(b1) + " and " + show(b2));
      return b1;
    }
    case K::Abort:
      want_negative(t.ty(), "abort annotation");
      want(infer(ctx, t.val()), Ty::Kind::Zero, "the empty type 0");
      return t.ty();
  }
  fail(Errc::ShapeMismatch, "unknown term");
}

Val rename(const Ope& tau, const Val& v) {
  switch (v.kind()) {
    case Val::Kind::Var: return Val::var(tau.reindex(v.idx()));
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
    case K::Ret: return Tm::ret(rename(tau, t.val()));
    case K::Abs: return Tm::abs(t.ty(), rename(tau.lift(), t.tm(0)));
    case K::PairN: return Tm::pair(rename(tau, t.tm(0)), rename(tau, t.tm(1)));
    case K::UnitN: return t;
    case K::Force: return Tm::force(rename(tau, t.val()));
    case K::App: return Tm::app(rename(tau, t.tm(0)), rename(tau, t.val()));
    case K::Prj: return Tm::prj(t.which(), rename(tau, t.tm(0)));
    case K::Bind: return Tm::bind(t.ty(), rename(tau, t.tm(0)), rename(tau.lift(), t.tm(1)));
    case K::Split: return Tm::split(rename(tau, t.val()), rename(tau.lift().lift(), t.tm(0)));
    case K::Case: {
      Ope up = tau.lift();
      return Tm::case_(rename(tau, t.val()), rename(up, t.tm(0)), rename(up, t.tm(1)));
    }
    case K::Abort: return Tm::abort(t.ty(), rename(tau, t.val()));
  }
  return t;
}

namespace {

// -> loosest (right assoc), then +, then * and &; U and F take an atomic argument.
std::string show_prec(const Ty& ty, int prec) {
  auto paren = [&](int own, std::string s) { return own < prec ? "(" + s + ")" : s; };
  switch (ty.kind()) {
    case Ty::Kind::AtomP: return "a+ " + ty.name();
    case Ty::Kind::AtomN: return "a- " + ty.name();
    case Ty::Kind::Zero: return "0";
    case Ty::Kind::One: return "1";
    case Ty::Kind::Top: return "Top";
    case Ty::Kind::Sum: return paren(1, show_prec(ty.left(), 1) + " + " + show_prec(ty.right(), 2));
    case Ty::Kind::Prod: return paren(2, show_prec(ty.left(), 2) + " * " + show_prec(ty.right(), 3));
    case Ty::Kind::With: return paren(2, show_prec(ty.left(), 2) + " & " + show_prec(ty.right(), 3));
    case Ty::Kind::Arr: return paren(0, show_prec(ty.left(), 1) + " -> " + show_prec(ty.right(), 0));
    case Ty::Kind::Thunk: return paren(3, "U " + show_prec(ty.left(), 4));
    case Ty::Kind::Comp: return paren(3, "F " + show_prec(ty.left(), 4));
  }
  return "?";
}

}  // namespace

std::string show(const Ty& ty) { return show_prec(ty, 0); }

std::string dump(const Ty& ty) {
  auto bin = [&](const char* tag) { return std::string("(") + tag + " " + dump(ty.left()) + " " + dump(ty.right()) + ")"; };
  switch (ty.kind()) {
    case Ty::Kind::AtomP: return "(AtomP " + ty.name() + ")";
    case Ty::Kind::AtomN: return "(AtomN " + ty.name() + ")";
    case Ty::Kind::Zero: return "(Zero)";
    case Ty::Kind::One: return "(One)";
    case Ty::Kind::Top: return "(Top)";
    case Ty::Kind::Sum: return bin("Sum");
    case Ty::Kind::Prod: return bin("Prod");
    case Ty::Kind::With: return bin("With");
    case Ty::Kind::Arr: return bin("Arr");
    case Ty::Kind::Thunk: return "(Thunk " + dump(ty.left()) + ")";
    case Ty::Kind::Comp: return "(Comp " + dump(ty.left()) + ")";
  }
  return "(?)";
}

std::string dump(const Val& v) {
  switch (v.kind()) {
    case Val::Kind::Var: return "(Var " + std::to_string(v.idx().depth) + ")";
    case Val::Kind::Thunk: return "(Thunk " + dump(v.tm()) + ")";
    case Val::Kind::Unit: return "(UnitP)";
    case Val::Kind::Pair: return "(PairP " + dump(v.val(0)) + " " + dump(v.val(1)) + ")";
    case Val::Kind::Inj: return "(Inj" + std::to_string(v.which()) + " " + dump(v.ty()) + " " + dump(v.val(0)) + ")";
  }
  return "(?)";
}

std::string dump(const Tm& t) {
  using K = Tm::Kind;
  switch (t.kind()) {
    case K::Ret: return "(Ret " + dump(t.val()) + ")";
    case K::Abs: return "(Abs " + dump(t.ty()) + " " + dump(t.tm(0)) + ")";
    case K::PairN: return "(PairN " + dump(t.tm(0)) + " " + dump(t.tm(1)) + ")";
    case K::UnitN: return "(UnitN)";
    case K::Force: return "(Force " + dump(t.val()) + ")";
    case K::App: return "(App " + dump(t.tm(0)) + " " + dump(t.val()) + ")";
    case K::Prj: return "(Prj" + std::to_string(t.which()) + " " + dump(t.tm(0)) + ")";
    case K::Bind: return "(Bind " + dump(t.ty()) + " " + dump(t.tm(0)) + " " + dump(t.tm(1)) + ")";
    case K::Split: return "(Split " + dump(t.val()) + " " + dump(t.tm(0)) + ")";
    case K::Case: return "(Case " + dump(t.val()) + " " + dump(t.tm(0)) + " " + dump(t.tm(1)) + ")";
    case K::Abort: return "(Abort " + dump(t.ty()) + " " + dump(t.val()) + ")";
  }
  return "(?)";
}

}  // namespace nbe::cbpv
