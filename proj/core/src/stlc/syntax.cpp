#include "nbe/stlc/syntax.hpp"

#include <algorithm>

namespace nbe::stlc {

Ty Ty::atom(std::string name) { return Ty(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), {}})); }
Ty Ty::zero() {
  static const Ty z(std::make_shared<const Node>(Node{Kind::Zero, {}, {}}));
  return z;
}
Ty Ty::one() {
  static const Ty u(std::make_shared<const Node>(Node{Kind::One, {}, {}}));
  return u;
}
Ty Ty::sum(Ty left, Ty right) {
  return Ty(std::make_shared<const Node>(Node{Kind::Sum, {}, {std::move(left), std::move(right)}}));
}
Ty Ty::prod(Ty left, Ty right) {
  return Ty(std::make_shared<const Node>(Node{Kind::Prod, {}, {std::move(left), std::move(right)}}));
}
Ty Ty::arr(Ty dom, Ty cod) {
  return Ty(std::make_shared<const Node>(Node{Kind::Arr, {}, {std::move(dom), std::move(cod)}}));
}

bool Ty::is_positive() const noexcept {
  switch (kind()) {
    case Kind::Atom:
    case Kind::Zero:
    case Kind::Sum:
      return true;
    default:
      return false;
  }
}

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

Term Term::var(Idx x) { return Term(std::make_shared<const Node>(Node{Kind::Var, x, 0, {}, {}})); }
Term Term::abs(Ty dom, Term body) {
  return Term(std::make_shared<const Node>(Node{Kind::Abs, {}, 0, std::move(dom), {std::move(body)}}));
}
Term Term::app(Term fn, Term arg) {
  return Term(std::make_shared<const Node>(Node{Kind::App, {}, 0, {}, {std::move(fn), std::move(arg)}}));
}
Term Term::unit() {
  static const Term u(std::make_shared<const Node>(Node{Kind::Unit, {}, 0, {}, {}}));
  return u;
}
Term Term::pair(Term first, Term second) {
  return Term(
      std::make_shared<const Node>(Node{Kind::Pair, {}, 0, {}, {std::move(first), std::move(second)}}));
}
Term Term::prj(int which, Term of) {
  return Term(std::make_shared<const Node>(Node{Kind::Prj, {}, which, {}, {std::move(of)}}));
}
Term Term::inj(int which, Ty other, Term of) {
  return Term(std::make_shared<const Node>(Node{Kind::Inj, {}, which, std::move(other), {std::move(of)}}));
}
Term Term::case_(Term scrut, Term left, Term right) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Case, {}, 0, {}, {std::move(scrut), std::move(left), std::move(right)}}));
}
Term Term::abort(Ty result, Term of) {
  return Term(std::make_shared<const Node>(Node{Kind::Abort, {}, 0, std::move(result), {std::move(of)}}));
}

std::size_t Term::size() const noexcept {
  std::size_t n = 1;
  for (const auto& s : node_->subs) n += s.size();
  return n;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.idx == y.idx && x.which == y.which && x.ty == y.ty && x.subs == y.subs;
}

namespace {

[[noreturn]] void mismatch(const std::string& what, const Ty& got) {
  fail(Errc::TypeMismatch, what + ", got " + show(got));
}

Ty expect(const Ty& got, Ty::Kind kind, const std::string& what) {
  if (got.kind() != kind) mismatch("expected " + what, got);
  return got;
}

}  // namespace

Ty infer(const Context& ctx, const Term& t) {
  using K = Term::Kind;
  switch (t.kind()) {
    case K::Var:
      if (!valid_in(ctx, t.idx())) {
        fail(Errc::UnboundVariable, "variable #" + std::to_string(t.idx().depth) + " not bound");
      }
      return lookup(ctx, t.idx());
    case K::Abs:
      return Ty::arr(t.ty(), infer(extend(ctx, t.ty()), t.sub(0)));
    case K::App: {
      Ty fn = expect(infer(ctx, t.sub(0)), Ty::Kind::Arr, "function type");
      Ty arg = infer(ctx, t.sub(1));
      if (!(arg == fn.left())) mismatch("argument of type " + show(fn.left()), arg);
      return fn.right();
    }
    case K::Unit:
      return Ty::one();
    case K::Pair:
      return Ty::prod(infer(ctx, t.sub(0)), infer(ctx, t.sub(1)));
    case K::Prj: {
      Ty p = expect(infer(ctx, t.sub(0)), Ty::Kind::Prod, "product type");
      return t.which() == 1 ? p.left() : p.right();
    }
    case K::Inj: {
      Ty a = infer(ctx, t.sub(0));
      return t.which() == 1 ? Ty::sum(a, t.ty()) : Ty::sum(t.ty(), a);
    }
    case K::Case: {
      Ty s = expect(infer(ctx, t.sub(0)), Ty::Kind::Sum, "sum type");
      Ty b1 = infer(extend(ctx, s.left()), t.sub(1));
      Ty b2 = infer(extend(ctx, s.right()), t.sub(2));
      if (!(b1 == b2)) {
        fail(Errc::BranchTypeDisagreement, "case branches have types " + show(b1) + " and " + show(b2));
      }
      return b1;
    }
    case K::Abort:
      expect(infer(ctx, t.sub(0)), Ty::Kind::Zero, "empty type 0");
      return t.ty();
  }
  fail(Errc::ShapeMismatch, "unknown term");
}

Term rename(const Ope& tau, const Term& t) {
  using K = Term::Kind;
  switch (t.kind()) {
    case K::Var: return Term::var(tau.reindex(t.idx()));
    case K::Abs: return Term::abs(t.ty(), rename(tau.lift(), t.sub(0)));
    case K::App: return Term::app(rename(tau, t.sub(0)), rename(tau, t.sub(1)));
    case K::Unit: return t;
    case K::Pair: return Term::pair(rename(tau, t.sub(0)), rename(tau, t.sub(1)));
    case K::Prj: return Term::prj(t.which(), rename(tau, t.sub(0)));
    case K::Inj: return Term::inj(t.which(), t.ty(), rename(tau, t.sub(0)));
    case K::Case: {
      Ope up = tau.lift();
      return Term::case_(rename(tau, t.sub(0)), rename(up, t.sub(1)), rename(up, t.sub(2)));
    }
    case K::Abort: return Term::abort(t.ty(), rename(tau, t.sub(0)));
  }
  return t;
}

namespace {

// -> is loosest and right associative, then +, then *; both left associative.
std::string show_prec(const Ty& ty, int prec) {
  auto paren = [&](int own, std::string s) { return own < prec ? "(" + s + ")" : s; };
  switch (ty.kind()) {
    case Ty::Kind::Atom: return ty.name().empty() ? "o" : paren(3, "o " + ty.name());
    case Ty::Kind::Zero: return "0";
    case Ty::Kind::One: return "1";
    case Ty::Kind::Sum: return paren(1, show_prec(ty.left(), 1) + " + " + show_prec(ty.right(), 2));
    case Ty::Kind::Prod: return paren(2, show_prec(ty.left(), 2) + " * " + show_prec(ty.right(), 3));
    case Ty::Kind::Arr: return paren(0, show_prec(ty.left(), 1) + " -> " + show_prec(ty.right(), 0));
  }
  return "?";
}

}  // namespace

std::string show(const Ty& ty) { return show_prec(ty, 0); }

std::string dump(const Ty& ty) {
  switch (ty.kind()) {
    case Ty::Kind::Atom: return ty.name().empty() ? "(Atom)" : "(Atom " + ty.name() + ")";
    case Ty::Kind::Zero: return "(Zero)";
    case Ty::Kind::One: return "(One)";
    case Ty::Kind::Sum: return "(Sum " + dump(ty.left()) + " " + dump(ty.right()) + ")";
    case Ty::Kind::Prod: return "(Prod " + dump(ty.left()) + " " + dump(ty.right()) + ")";
    case Ty::Kind::Arr: return "(Arr " + dump(ty.left()) + " " + dump(ty.right()) + ")";
  }
  return "(?)";
}

std::string dump(const Term& t) {
  using K = Term::Kind;
  switch (t.kind()) {
    case K::Var: return "(Var " + std::to_string(t.idx().depth) + ")";
    case K::Abs: return "(Abs " + dump(t.ty()) + " " + dump(t.sub(0)) + ")";
    case K::App: return "(App " + dump(t.sub(0)) + " " + dump(t.sub(1)) + ")";
    case K::Unit: return "(Unit)";
    case K::Pair: return "(Pair " + dump(t.sub(0)) + " " + dump(t.sub(1)) + ")";
    case K::Prj: return "(Prj" + std::to_string(t.which()) + " " + dump(t.sub(0)) + ")";
    case K::Inj:
      return "(Inj" + std::to_string(t.which()) + " " + dump(t.ty()) + " " + dump(t.sub(0)) + ")";
    case K::Case:
      return "(Case " + dump(t.sub(0)) + " " + dump(t.sub(1)) + " " + dump(t.sub(2)) + ")";
    case K::Abort: return "(Abort " + dump(t.ty()) + " " + dump(t.sub(0)) + ")";
  }
  return "(?)";
}

}  // namespace nbe::stlc
