#include "nbe/stlc/normal.hpp"

#include <functional>

namespace nbe::stlc {

Ne Ne::var(Idx x) { return Ne(std::make_shared<const Node>(Node{Kind::Var, x, 0, {}, {}})); }
Ne Ne::app(Ne fn, Nf arg) {
  return Ne(std::make_shared<const Node>(Node{Kind::App, {}, 0, std::move(fn), std::move(arg)}));
}
Ne Ne::prj(int which, Ne of) {
  return Ne(std::make_shared<const Node>(Node{Kind::Prj, {}, which, std::move(of), {}}));
}

bool operator==(const Ne& a, const Ne& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.idx == y.idx && x.which == y.which && x.head == y.head && x.arg == y.arg;
}

Nf Nf::ne(Ne u) { return Nf(std::make_shared<const Node>(Node{Kind::NeAtom, 0, std::move(u), {}})); }
Nf Nf::abs(Nf body) { return Nf(std::make_shared<const Node>(Node{Kind::Abs, 0, {}, {std::move(body)}})); }
Nf Nf::unit() {
  static const Nf u(std::make_shared<const Node>(Node{Kind::Unit, 0, {}, {}}));
  return u;
}
Nf Nf::pair(Nf first, Nf second) {
  return Nf(std::make_shared<const Node>(Node{Kind::Pair, 0, {}, {std::move(first), std::move(second)}}));
}
Nf Nf::inj(int which, Nf of) {
  return Nf(std::make_shared<const Node>(Node{Kind::Inj, which, {}, {std::move(of)}}));
}
Nf Nf::case_(Ne scrut, Nf left, Nf right) {
  return Nf(std::make_shared<const Node>(
      Node{Kind::Case, 0, std::move(scrut), {std::move(left), std::move(right)}}));
}
Nf Nf::abort(Ne scrut) { return Nf(std::make_shared<const Node>(Node{Kind::Abort, 0, std::move(scrut), {}})); }

bool operator==(const Nf& a, const Nf& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.which == y.which && x.neutral == y.neutral && x.subs == y.subs;
}

Ne rename(const Ope& tau, const Ne& u) {
  switch (u.kind()) {
    case Ne::Kind::Var: return Ne::var(tau.reindex(u.idx()));
    case Ne::Kind::App: return Ne::app(rename(tau, u.head()), rename(tau, u.arg()));
    case Ne::Kind::Prj: return Ne::prj(u.which(), rename(tau, u.head()));
  }
  return u;
}

Nf rename(const Ope& tau, const Nf& n) {
  switch (n.kind()) {
    case Nf::Kind::NeAtom: return Nf::ne(rename(tau, n.neutral()));
    case Nf::Kind::Abs: return Nf::abs(rename(tau.lift(), n.sub(0)));
    case Nf::Kind::Unit: return n;
    case Nf::Kind::Pair: return Nf::pair(rename(tau, n.sub(0)), rename(tau, n.sub(1)));
    case Nf::Kind::Inj: return Nf::inj(n.which(), rename(tau, n.sub(0)));
    case Nf::Kind::Case: {
      Ope up = tau.lift();
      return Nf::case_(rename(tau, n.neutral()), rename(up, n.sub(0)), rename(up, n.sub(1)));
    }
    case Nf::Kind::Abort: return Nf::abort(rename(tau, n.neutral()));
  }
  return n;
}

Ty infer_ne(const Context& ctx, const Ne& u) {
  switch (u.kind()) {
    case Ne::Kind::Var:
      if (!valid_in(ctx, u.idx())) fail(Errc::IndexOutOfRange, "neutral variable out of scope");
      return lookup(ctx, u.idx());
    case Ne::Kind::App: {
      Ty fn = infer_ne(ctx, u.head());
      if (fn.kind() != Ty::Kind::Arr) fail(Errc::ShapeMismatch, "application of non-function neutral");
      return fn.right();
    }
    case Ne::Kind::Prj: {
      Ty p = infer_ne(ctx, u.head());
      if (p.kind() != Ty::Kind::Prod) fail(Errc::ShapeMismatch, "projection of non-product neutral");
      return u.which() == 1 ? p.left() : p.right();
    }
  }
  fail(Errc::ShapeMismatch, "unknown neutral");
}

Term erase(const Context& ctx, const Ne& u) {
  switch (u.kind()) {
    case Ne::Kind::Var: return Term::var(u.idx());
    case Ne::Kind::App: {
      Ty fn = infer_ne(ctx, u.head());
      return Term::app(erase(ctx, u.head()), erase(ctx, fn.left(), u.arg()));
    }
    case Ne::Kind::Prj: return Term::prj(u.which(), erase(ctx, u.head()));
  }
  fail(Errc::ShapeMismatch, "unknown neutral");
}

Term erase(const Context& ctx, const Ty& ty, const Nf& n) {
  auto shape = [&](Ty::Kind want) {
    if (ty.kind() != want) fail(Errc::ShapeMismatch, "normal form does not fit type " + show(ty));
  };
  switch (n.kind()) {
    case Nf::Kind::NeAtom: return erase(ctx, n.neutral());
    case Nf::Kind::Abs:
      shape(Ty::Kind::Arr);
      return Term::abs(ty.left(), erase(extend(ctx, ty.left()), ty.right(), n.sub(0)));
    case Nf::Kind::Unit: return Term::unit();
    case Nf::Kind::Pair:
      shape(Ty::Kind::Prod);
      return Term::pair(erase(ctx, ty.left(), n.sub(0)), erase(ctx, ty.right(), n.sub(1)));
    case Nf::Kind::Inj: {
      shape(Ty::Kind::Sum);
      const Ty& mine = n.which() == 1 ? ty.left() : ty.right();
      const Ty& other = n.which() == 1 ? ty.right() : ty.left();
      return Term::inj(n.which(), other, erase(ctx, mine, n.sub(0)));
    }
    case Nf::Kind::Case: {
      Ty s = infer_ne(ctx, n.neutral());
      if (s.kind() != Ty::Kind::Sum) fail(Errc::ShapeMismatch, "case on non-sum neutral");
      return Term::case_(erase(ctx, n.neutral()), erase(extend(ctx, s.left()), ty, n.sub(0)),
                         erase(extend(ctx, s.right()), ty, n.sub(1)));
    }
    case Nf::Kind::Abort: return Term::abort(ty, erase(ctx, n.neutral()));
  }
  fail(Errc::ShapeMismatch, "unknown normal form");
}

namespace {

[[noreturn]] void invalid(const std::string& why) { fail(Errc::ValidationFailure, why); }

Ty check_ne(const Context& ctx, const Ne& u);

void check_nf(const Context& ctx, const Ty& ty, const Nf& n) {
  switch (n.kind()) {
    case Nf::Kind::NeAtom: {
      if (ty.kind() != Ty::Kind::Atom) invalid("ne at non-atomic type " + show(ty));
      Ty got = check_ne(ctx, n.neutral());
      if (!(got == ty)) invalid("neutral of type " + show(got) + " where " + show(ty) + " expected");
      return;
    }
    case Nf::Kind::Abs:
      if (ty.kind() != Ty::Kind::Arr) invalid("abs at type " + show(ty));
      check_nf(extend(ctx, ty.left()), ty.right(), n.sub(0));
      return;
    case Nf::Kind::Unit:
      if (ty.kind() != Ty::Kind::One) invalid("unit at type " + show(ty));
      return;
    case Nf::Kind::Pair:
      if (ty.kind() != Ty::Kind::Prod) invalid("pair at type " + show(ty));
      check_nf(ctx, ty.left(), n.sub(0));
      check_nf(ctx, ty.right(), n.sub(1));
      return;
    case Nf::Kind::Inj:
      if (ty.kind() != Ty::Kind::Sum) invalid("inj at type " + show(ty));
      if (n.which() != 1 && n.which() != 2) invalid("bad injection tag");
      check_nf(ctx, n.which() == 1 ? ty.left() : ty.right(), n.sub(0));
      return;
    case Nf::Kind::Case: {
      if (!ty.is_positive()) invalid("case at negative type " + show(ty));
      Ty s = check_ne(ctx, n.neutral());
      if (s.kind() != Ty::Kind::Sum) invalid("case scrutinee of type " + show(s));
      check_nf(extend(ctx, s.left()), ty, n.sub(0));
      check_nf(extend(ctx, s.right()), ty, n.sub(1));
      return;
    }
    case Nf::Kind::Abort: {
      if (!ty.is_positive()) invalid("abort at negative type " + show(ty));
      Ty s = check_ne(ctx, n.neutral());
      if (s.kind() != Ty::Kind::Zero) invalid("abort scrutinee of type " + show(s));
      return;
    }
  }
  invalid("unknown normal form");
}

Ty check_ne(const Context& ctx, const Ne& u) {
  switch (u.kind()) {
    case Ne::Kind::Var:
      if (!valid_in(ctx, u.idx())) invalid("variable out of scope");
      return lookup(ctx, u.idx());
    case Ne::Kind::App: {
      Ty fn = check_ne(ctx, u.head());
      if (fn.kind() != Ty::Kind::Arr) invalid("application of neutral of type " + show(fn));
      check_nf(ctx, fn.left(), u.arg());
      return fn.right();
    }
    case Ne::Kind::Prj: {
      Ty p = check_ne(ctx, u.head());
      if (p.kind() != Ty::Kind::Prod) invalid("projection of neutral of type " + show(p));
      if (u.which() != 1 && u.which() != 2) invalid("bad projection tag");
      return u.which() == 1 ? p.left() : p.right();
    }
  }
  invalid("unknown neutral");
}

// Injective reindexing of free variables (not expressible as an OPE).
Ne remap(const Ne& u, const std::function<Idx(Idx)>& f, std::uint32_t bound);

Nf remap(const Nf& n, const std::function<Idx(Idx)>& f, std::uint32_t bound) {
  switch (n.kind()) {
    case Nf::Kind::NeAtom: return Nf::ne(remap(n.neutral(), f, bound));
    case Nf::Kind::Abs: return Nf::abs(remap(n.sub(0), f, bound + 1));
    case Nf::Kind::Unit: return n;
    case Nf::Kind::Pair: return Nf::pair(remap(n.sub(0), f, bound), remap(n.sub(1), f, bound));
    case Nf::Kind::Inj: return Nf::inj(n.which(), remap(n.sub(0), f, bound));
    case Nf::Kind::Case:
      return Nf::case_(remap(n.neutral(), f, bound), remap(n.sub(0), f, bound + 1),
                       remap(n.sub(1), f, bound + 1));
    case Nf::Kind::Abort: return Nf::abort(remap(n.neutral(), f, bound));
  }
  return n;
}

Ne remap(const Ne& u, const std::function<Idx(Idx)>& f, std::uint32_t bound) {
  switch (u.kind()) {
    case Ne::Kind::Var:
      if (u.idx().depth < bound) return u;
      return Ne::var(Idx{f(Idx{u.idx().depth - bound}).depth + bound});
    case Ne::Kind::App: return Ne::app(remap(u.head(), f, bound), remap(u.arg(), f, bound));
    case Ne::Kind::Prj: return Ne::prj(u.which(), remap(u.head(), f, bound));
  }
  return u;
}

// Γ.A.B → Γ.B.A
Nf exchange(const Nf& n) {
  return remap(
      n,
      [](Idx x) {
        if (x.depth == 0) return Idx{1};
        if (x.depth == 1) return Idx{0};
        return x;
      },
      0);
}

// Γ → Γ.A without knowing |Γ|.
Ne shift(const Ne& u) {
  return remap(u, [](Idx x) { return x.suc(); }, 0);
}

}  // namespace

void validate(const Context& ctx, const Ty& ty, const Nf& n) { check_nf(ctx, ty, n); }

bool is_valid(const Context& ctx, const Ty& ty, const Nf& n) {
  try {
    check_nf(ctx, ty, n);
    return true;
  } catch (const Error&) {
    return false;
  }
}

Nf abort_any(const Ty& result, const Ne& u) {
  switch (result.kind()) {
    case Ty::Kind::One: return Nf::unit();
    case Ty::Kind::Prod: return Nf::pair(abort_any(result.left(), u), abort_any(result.right(), u));
    case Ty::Kind::Arr: return Nf::abs(abort_any(result.right(), shift(u)));
    default: return Nf::abort(u);
  }
}

Nf case_any(const Ty& result, const Ne& u, const Nf& left, const Nf& right) {
  switch (result.kind()) {
    case Ty::Kind::One: return Nf::unit();
    case Ty::Kind::Prod:
      return Nf::pair(case_any(result.left(), u, left.sub(0), right.sub(0)),
                      case_any(result.right(), u, left.sub(1), right.sub(1)));
    case Ty::Kind::Arr:
      // branches live under Γ.A_i.A; the new λ binds A outside the case
      return Nf::abs(case_any(result.right(), shift(u), exchange(left.sub(0)), exchange(right.sub(0))));
    default: return Nf::case_(u, left, right);
  }
}

std::string dump(const Ne& u) {
  switch (u.kind()) {
    case Ne::Kind::Var: return "(Var " + std::to_string(u.idx().depth) + ")";
    case Ne::Kind::App: return "(App " + dump(u.head()) + " " + dump(u.arg()) + ")";
    case Ne::Kind::Prj: return "(Prj" + std::to_string(u.which()) + " " + dump(u.head()) + ")";
  }
  return "(?)";
}

std::string dump(const Nf& n) {
  switch (n.kind()) {
    case Nf::Kind::NeAtom: return "(Ne " + dump(n.neutral()) + ")";
    case Nf::Kind::Abs: return "(Abs " + dump(n.sub(0)) + ")";
    case Nf::Kind::Unit: return "(Unit)";
    case Nf::Kind::Pair: return "(Pair " + dump(n.sub(0)) + " " + dump(n.sub(1)) + ")";
    case Nf::Kind::Inj: return "(Inj" + std::to_string(n.which()) + " " + dump(n.sub(0)) + ")";
    case Nf::Kind::Case:
      return "(Case " + dump(n.neutral()) + " " + dump(n.sub(0)) + " " + dump(n.sub(1)) + ")";
    case Nf::Kind::Abort: return "(Abort " + dump(n.neutral()) + ")";
  }
  return "(?)";
}

}  // namespace nbe::stlc
