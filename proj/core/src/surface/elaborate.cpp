#include "nbe/surface/elaborate.hpp"

#include <optional>
#include <unordered_set>

namespace nbe::surface {

namespace {

using EK = Expr::Kind;

[[noreturn]] void fail_at(Errc code, SourceLocation at, const std::string& msg) {
  fail(code, std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + msg);
}

// Names in scope, parallel to the context; the last entry is index zero.
class Scope {
 public:
  explicit Scope(std::vector<std::string> names) : names_(std::move(names)) {}

  Idx find(const std::string& x, SourceLocation at) const {
    for (std::size_t i = names_.size(); i-- > 0;) {
      if (names_[i] == x) return Idx(static_cast<std::uint32_t>(names_.size() - 1 - i));
    }
    fail_at(Errc::UnboundVariable, at, "unbound variable " + x);
  }

  Scope with(const std::string& x) const {
    Scope s = *this;
    s.names_.push_back(x);
    return s;
  }

 private:
  std::vector<std::string> names_;
};

template <class Ty>
void check_decls(const SourceFile& f, std::vector<std::string>& names, std::vector<Ty>& ctx) {
  std::unordered_set<std::string> seen;
  for (const auto& d : f.decls) {
    if (!seen.insert(d.name).second) throw ParseError(d.loc, "duplicate declaration of " + d.name, {});
    names.push_back(d.name);
    ctx.push_back(std::get<Ty>(d.type));
  }
}

[[noreturn]] void not_here(const Expr& e, const char* what) {
  fail_at(Errc::TypeMismatch, e.loc, std::string("expected ") + what + " here");
}

// ---------------------------------------------------------------- STLC

stlc::Term stlc_term(const Expr& e, const Scope& s) {
  using stlc::Term;
  auto ty = [&] { return std::get<stlc::Ty>(e.type()); };
  switch (e.kind) {
    case EK::Var: return Term::var(s.find(e.names[0], e.loc));
    case EK::Lam: return Term::abs(ty(), stlc_term(*e.kid(0), s.with(e.names[0])));
    case EK::App: return Term::app(stlc_term(*e.kid(0), s), stlc_term(*e.kid(1), s));
    case EK::Unit: return Term::unit();
    case EK::Pair: return Term::pair(stlc_term(*e.kid(0), s), stlc_term(*e.kid(1), s));
    case EK::Fst: return Term::prj(1, stlc_term(*e.kid(0), s));
    case EK::Snd: return Term::prj(2, stlc_term(*e.kid(0), s));
    case EK::Inl: return Term::inj(1, ty(), stlc_term(*e.kid(0), s));
    case EK::Inr: return Term::inj(2, ty(), stlc_term(*e.kid(0), s));
    case EK::Abort: return Term::abort(ty(), stlc_term(*e.kid(0), s));
    case EK::Case:
      return Term::case_(stlc_term(*e.kid(0), s), stlc_term(*e.kid(1), s.with(e.names[0])),
                         stlc_term(*e.kid(2), s.with(e.names[1])));
    default: not_here(e, "an STLC term");
  }
}

// ---------------------------------------------------------------- CBPV

cbpv::Tm cbpv_tm(const Expr& e, const Scope& s);

cbpv::Val cbpv_val(const Expr& e, const Scope& s) {
  using cbpv::Val;
  switch (e.kind) {
    case EK::Var: return Val::var(s.find(e.names[0], e.loc));
    case EK::Thunk: return Val::thunk(cbpv_tm(*e.kid(0), s));
    case EK::Unit: return Val::unit();
    case EK::Pair: return Val::pair(cbpv_val(*e.kid(0), s), cbpv_val(*e.kid(1), s));
    case EK::Inl: return Val::inj(1, std::get<cbpv::Ty>(e.type()), cbpv_val(*e.kid(0), s));
    case EK::Inr: return Val::inj(2, std::get<cbpv::Ty>(e.type()), cbpv_val(*e.kid(0), s));
    default: not_here(e, "a value");
  }
}

cbpv::Tm cbpv_tm(const Expr& e, const Scope& s) {
  using cbpv::Tm;
  auto ty = [&] { return std::get<cbpv::Ty>(e.type()); };
  switch (e.kind) {
    case EK::Lam: return Tm::abs(ty(), cbpv_tm(*e.kid(0), s.with(e.names[0])));
    case EK::App: return Tm::app(cbpv_tm(*e.kid(0), s), cbpv_val(*e.kid(1), s));
    case EK::PairN: return Tm::pair(cbpv_tm(*e.kid(0), s), cbpv_tm(*e.kid(1), s));
    case EK::UnitN: return Tm::unit();
    case EK::Fst: return Tm::prj(1, cbpv_tm(*e.kid(0), s));
    case EK::Snd: return Tm::prj(2, cbpv_tm(*e.kid(0), s));
    case EK::Force: return Tm::force(cbpv_val(*e.kid(0), s));
    case EK::Ret: return Tm::ret(cbpv_val(*e.kid(0), s));
    case EK::Let: return Tm::bind(ty(), cbpv_tm(*e.kid(0), s), cbpv_tm(*e.kid(1), s.with(e.names[0])));
    case EK::Split:
      return Tm::split(cbpv_val(*e.kid(0), s), cbpv_tm(*e.kid(1), s.with(e.names[0]).with(e.names[1])));
    case EK::Case:
      return Tm::case_(cbpv_val(*e.kid(0), s), cbpv_tm(*e.kid(1), s.with(e.names[0])),
                       cbpv_tm(*e.kid(2), s.with(e.names[1])));
    case EK::Abort: return Tm::abort(ty(), cbpv_val(*e.kid(0), s));
    default: not_here(e, "a computation");
  }
}

// ---------------------------------------------------------------- polarized

using PTy = polarized::Ty;
using PTree = polarized::Add<polarized::Tm>;

// One decision on the way from the root of an Add tree to a leaf, enough to
// describe which case is missing.
enum class Step { Hyp, Inl, Inr, Unit, Pair };

std::string witness(const PTy& p, const std::vector<Step>& path, std::size_t& at) {
  if (at >= path.size()) return "_";
  Step s = path[at++];
  switch (s) {
    case Step::Hyp: return "_";
    case Step::Inl: return "inl " + witness(p.left(), path, at);
    case Step::Inr: return "inr " + witness(p.right(), path, at);
    case Step::Unit: return "()";
    case Step::Pair: {
      std::string a = witness(p.left(), path, at);
      std::string b = witness(p.right(), path, at);
      return "(" + a + ", " + b + ")";
    }
  }
  return "_";
}

class PolarizedElab {
 public:
  PolarizedElab(polarized::Context ctx, std::vector<std::string> names)
      : ctx_(std::move(ctx)), names_(std::move(names)) {}

  polarized::Val val(const Expr& e) {
    using polarized::Val;
    switch (e.kind) {
      case EK::Var: {
        Idx x = find(e);
        if (lookup(ctx_, x).kind() != PTy::Kind::AtomP) {
          fail_at(Errc::TypeMismatch, e.loc, e.names[0] + " is a computation; write thunk " + e.names[0]);
        }
        return Val::var(x);
      }
      case EK::Thunk: return Val::thunk(tm(*e.kid(0), std::nullopt));
      case EK::Unit: return Val::unit();
      case EK::Pair: return Val::pair(val(*e.kid(0)), val(*e.kid(1)));
      case EK::Inl: return Val::inj(1, std::get<PTy>(e.type()), val(*e.kid(0)));
      case EK::Inr: return Val::inj(2, std::get<PTy>(e.type()), val(*e.kid(0)));
      default: not_here(e, "a value");
    }
  }

  // `expected`, when known, flows into pattern matches whose result type
  // cannot be read off a leaf.
  polarized::Tm tm(const Expr& e, const std::optional<PTy>& expected) {
    using polarized::Tm;
    switch (e.kind) {
      case EK::Var: {
        Idx x = find(e);
        if (!lookup(ctx_, x).is_negative()) {
          fail_at(Errc::TypeMismatch, e.loc, e.names[0] + " is a value; write ret " + e.names[0]);
        }
        return Tm::var(x);
      }
      case EK::Ret: return Tm::ret(val(*e.kid(0)));
      case EK::Match: {
        const PTy& dom = std::get<PTy>(e.type());
        std::optional<PTy> cod;
        if (expected && expected->kind() == PTy::Kind::Arr && expected->left() == dom) cod = expected->right();
        PTree body = compile(e, dom, cod);
        if (!cod) {
          fail_at(Errc::TypeMismatch, e.loc, "cannot tell the result type of a match without clauses; add (t : N)");
        }
        return Tm::abs(PTy::arr(dom, *cod), body);
      }
      case EK::PairN: {
        std::optional<PTy> l, r;
        if (expected && expected->kind() == PTy::Kind::With) {
          l = expected->left();
          r = expected->right();
        }
        return Tm::pair(tm(*e.kid(0), l), tm(*e.kid(1), r));
      }
      case EK::UnitN: return Tm::unit();
      case EK::Fst: return Tm::prj(1, tm(*e.kid(0), std::nullopt));
      case EK::Snd: return Tm::prj(2, tm(*e.kid(0), std::nullopt));
      case EK::Force: return Tm::force(val(*e.kid(0)));
      case EK::App: return Tm::app(tm(*e.kid(0), std::nullopt), val(*e.kid(1)));
      case EK::Bind: {
        Tm t = tm(*e.kid(0), std::nullopt);
        PTy ft = polarized::infer(ctx_, t);
        if (ft.kind() != PTy::Kind::Comp) {
          fail_at(Errc::TypeMismatch, e.kid(0)->loc, "bind expects a computation of type F P, got " + show(ft));
        }
        std::optional<PTy> result = expected;
        PTree body = compile(e, ft.left(), result);
        if (!result) {
          fail_at(Errc::TypeMismatch, e.loc, "cannot tell the result type of a bind without clauses; add (t : N)");
        }
        return Tm::bind(*result, t, body);
      }
      case EK::Ascribe: {
        const PTy& n = std::get<PTy>(e.type());
        Tm t = tm(*e.kid(0), n);
        PTy got = polarized::infer(ctx_, t);
        if (!(got == n)) fail_at(Errc::TypeMismatch, e.loc, "ascribed " + show(n) + " but the term has " + show(got));
        return t;
      }
      default: not_here(e, "a computation");
    }
  }

 private:
  Idx find(const Expr& e) const { return Scope(names_).find(e.names[0], e.loc); }

  struct Row {
    std::vector<const Pattern*> pending;  // back() is next
    std::vector<std::string> bound;
    const Clause* clause;
  };

  // Clauses are split column by column, left to right, following the shape
  // of Add: products split before their components, sums branch, and only
  // atoms and thunks bind names.
  PTree compile(const Expr& site, const PTy& p, std::optional<PTy>& result) {
    std::vector<Row> rows;
    for (const auto& c : site.clauses) rows.push_back(Row{{c.pattern.get()}, {}, &c});
    std::vector<Step> path;
    return go(site, p, {p}, std::move(rows), {}, path, result);
  }

  PTree go(const Expr& site, const PTy& root, std::vector<PTy> pending, std::vector<Row> rows,
           std::vector<PTy> hyps, std::vector<Step>& path, std::optional<PTy>& result) {
    using PK = Pattern::Kind;
    if (pending.empty()) return leaf(site, root, rows, hyps, path, result);
    PTy q = pending.back();
    pending.pop_back();
    std::vector<const Pattern*> heads;
    for (auto& r : rows) {
      heads.push_back(r.pending.back());
      r.pending.pop_back();
    }
    auto mismatch = [&](const Pattern& pat) -> PTree {
      fail_at(Errc::TypeMismatch, pat.loc, "pattern does not match type " + show(q));
    };
    auto var_only_at_hyps = [&](const Pattern& pat) -> PTree {
      fail_at(Errc::NonAtomicVarPattern, pat.loc,
              "variable " + pat.name + " would bind " + show(q) + "; only a+ atoms and U N can be named");
    };
    auto step = [&](Step s, auto&& k) {
      path.push_back(s);
      PTree t = k();
      path.pop_back();
      return t;
    };

    switch (q.kind()) {
      case PTy::Kind::AtomP:
      case PTy::Kind::Thunk: {
        PTy h = q.kind() == PTy::Kind::Thunk ? q.left() : q;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (heads[i]->kind != PK::Var) mismatch(*heads[i]);
          rows[i].bound.push_back(heads[i]->name);
        }
        hyps.push_back(h);
        return step(Step::Hyp, [&] {
          PTree next = go(site, root, pending, rows, hyps, path, result);
          return q.kind() == PTy::Kind::Thunk ? PTree::hyp_neg(h, next) : PTree::hyp_pos(h, next);
        });
      }
      case PTy::Kind::Zero:
        for (const auto* h : heads) {
          if (h->kind == PK::Var) var_only_at_hyps(*h);
          mismatch(*h);
        }
        return PTree::branch0();
      case PTy::Kind::One:
        for (const auto* h : heads) {
          if (h->kind == PK::Var) var_only_at_hyps(*h);
          if (h->kind != PK::Unit) mismatch(*h);
        }
        return step(Step::Unit, [&] { return PTree::split0(go(site, root, pending, rows, hyps, path, result)); });
      case PTy::Kind::Prod: {
        for (std::size_t i = 0; i < rows.size(); ++i) {
          const Pattern* h = heads[i];
          if (h->kind == PK::Var) var_only_at_hyps(*h);
          if (h->kind != PK::Pair) mismatch(*h);
          rows[i].pending.push_back(h->kids[1].get());
          rows[i].pending.push_back(h->kids[0].get());
        }
        pending.push_back(q.right());
        pending.push_back(q.left());
        return step(Step::Pair, [&] { return PTree::split2(go(site, root, pending, rows, hyps, path, result)); });
      }
      case PTy::Kind::Sum: {
        std::vector<Row> left, right;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          const Pattern* h = heads[i];
          if (h->kind == PK::Var) var_only_at_hyps(*h);
          if (h->kind != PK::Inl && h->kind != PK::Inr) mismatch(*h);
          Row r = rows[i];
          r.pending.push_back(h->kids[0].get());
          (h->kind == PK::Inl ? left : right).push_back(std::move(r));
        }
        auto lp = pending, rp = pending;
        lp.push_back(q.left());
        rp.push_back(q.right());
        PTree l = step(Step::Inl, [&] { return go(site, root, lp, left, hyps, path, result); });
        PTree r = step(Step::Inr, [&] { return go(site, root, rp, right, hyps, path, result); });
        return PTree::branch2(l, r);
      }
      default: break;
    }
    fail_at(Errc::TypeMismatch, site.loc, "cannot match on " + show(q));
  }

  PTree leaf(const Expr& site, const PTy& root, const std::vector<Row>& rows, const std::vector<PTy>& hyps,
             const std::vector<Step>& path, std::optional<PTy>& result) {
    if (rows.empty()) {
      std::size_t at = 0;
      fail_at(Errc::NonExhaustivePatterns, site.loc, "no clause for " + witness(root, path, at));
    }
    if (rows.size() > 1) {
      fail_at(Errc::OverlappingPatterns, rows[1].clause->pattern->loc, "clause overlaps an earlier one");
    }
    const Row& r = rows[0];
    auto saved_ctx = ctx_;
    auto saved_names = names_;
    for (std::size_t i = 0; i < hyps.size(); ++i) {
      ctx_.push_back(hyps[i]);
      names_.push_back(r.bound[i]);
    }
    polarized::Tm t = tm(*r.clause->body, result);
    if (!result) result = polarized::infer(ctx_, t);
    ctx_ = std::move(saved_ctx);
    names_ = std::move(saved_names);
    return PTree::leaf(t);
  }

  polarized::Context ctx_;
  std::vector<std::string> names_;
};

}  // namespace

StlcProgram elaborate_stlc(const SourceFile& file) {
  StlcProgram p{{}, {}, stlc::Term::unit(), stlc::Ty::one()};
  check_decls(file, p.names, p.ctx);
  p.term = stlc_term(*file.term, Scope(p.names));
  p.ty = stlc::infer(p.ctx, p.term);
  return p;
}

CbpvProgram elaborate_cbpv(const SourceFile& file) {
  CbpvProgram p{{}, {}, cbpv::Tm::unit(), cbpv::Ty::top()};
  check_decls(file, p.names, p.ctx);
  p.term = cbpv_tm(*file.term, Scope(p.names));
  p.ty = cbpv::infer(p.ctx, p.term);
  return p;
}

PolarizedProgram elaborate_polarized(const SourceFile& file) {
  PolarizedProgram p{{}, {}, polarized::Tm::unit(), PTy::top()};
  check_decls(file, p.names, p.ctx);
  for (std::size_t i = 0; i < p.ctx.size(); ++i) {
    if (!polarized::is_hyp(p.ctx[i])) {
      fail_at(Errc::TypeMismatch, file.decls[i].loc,
              p.names[i] + " : " + show(p.ctx[i]) + " must be an a+ atom or a negative type");
    }
  }
  PolarizedElab elab(p.ctx, p.names);
  p.term = elab.tm(*file.term, std::nullopt);
  p.ty = polarized::infer(p.ctx, p.term);
  return p;
}

}  // namespace nbe::surface
