#include "nbe/oracle/finite.hpp"

#include <algorithm>

namespace nbe::oracle {

FinTy FinTy::atom() {
  static const FinTy t(std::make_shared<const Node>(Node{Kind::Atom, {}}));
  return t;
}
FinTy FinTy::zero() {
  static const FinTy t(std::make_shared<const Node>(Node{Kind::Zero, {}}));
  return t;
}
FinTy FinTy::one() {
  static const FinTy t(std::make_shared<const Node>(Node{Kind::One, {}}));
  return t;
}
FinTy FinTy::sum(FinTy a, FinTy b) { return FinTy(std::make_shared<const Node>(Node{Kind::Sum, {std::move(a), std::move(b)}})); }
FinTy FinTy::prod(FinTy a, FinTy b) {
  return FinTy(std::make_shared<const Node>(Node{Kind::Prod, {std::move(a), std::move(b)}}));
}
FinTy FinTy::arr(FinTy a, FinTy b) { return FinTy(std::make_shared<const Node>(Node{Kind::Arr, {std::move(a), std::move(b)}})); }

FinTy fin_type(const stlc::Ty& t) {
  using K = stlc::Ty::Kind;
  switch (t.kind()) {
    case K::Atom: return FinTy::atom();
    case K::Zero: return FinTy::zero();
    case K::One: return FinTy::one();
    case K::Sum: return FinTy::sum(fin_type(t.left()), fin_type(t.right()));
    case K::Prod: return FinTy::prod(fin_type(t.left()), fin_type(t.right()));
    case K::Arr: return FinTy::arr(fin_type(t.left()), fin_type(t.right()));
  }
  fail(Errc::ShapeMismatch, "unknown type");
}

FinTy fin_type(const cbpv::Ty& t) {
  using K = cbpv::Ty::Kind;
  switch (t.kind()) {
    case K::AtomP:
    case K::AtomN: return FinTy::atom();
    case K::Zero: return FinTy::zero();
    case K::One:
    case K::Top: return FinTy::one();
    case K::Sum: return FinTy::sum(fin_type(t.left()), fin_type(t.right()));
    case K::Prod:
    case K::With: return FinTy::prod(fin_type(t.left()), fin_type(t.right()));
    case K::Arr: return FinTy::arr(fin_type(t.left()), fin_type(t.right()));
    case K::Thunk:
    case K::Comp: return fin_type(t.left());
  }
  fail(Errc::ShapeMismatch, "unknown type");
}

FinVal FinVal::atom(unsigned k) { return FinVal(std::make_shared<const Node>(Node{Kind::Atom, k, {}, {}})); }
FinVal FinVal::unit() {
  static const FinVal u(std::make_shared<const Node>(Node{Kind::Unit, 0, {}, {}}));
  return u;
}
FinVal FinVal::pair(FinVal a, FinVal b) {
  return FinVal(std::make_shared<const Node>(Node{Kind::Pair, 0, {std::move(a), std::move(b)}, {}}));
}
FinVal FinVal::inj(int which, FinVal a) {
  return FinVal(std::make_shared<const Node>(Node{Kind::Inj, static_cast<unsigned>(which), {std::move(a)}, {}}));
}
FinVal FinVal::fun(Fn f) {
  return FinVal(std::make_shared<const Node>(Node{Kind::Fun, 0, {}, std::make_shared<const Fn>(std::move(f))}));
}

namespace {

[[noreturn]] void wrong(const char* want) { fail(Errc::ShapeMismatch, std::string("finite model: expected ") + want); }

}  // namespace

unsigned FinVal::atom_value() const {
  if (kind() != Kind::Atom) wrong("an atom");
  return node_->k;
}
int FinVal::which() const {
  if (kind() != Kind::Inj) wrong("an injection");
  return static_cast<int>(node_->k);
}
const FinVal& FinVal::fst() const {
  if (kind() != Kind::Pair) wrong("a pair");
  return node_->parts[0];
}
const FinVal& FinVal::snd() const {
  if (kind() != Kind::Pair) wrong("a pair");
  return node_->parts[1];
}
const FinVal& FinVal::payload() const {
  if (kind() != Kind::Inj) wrong("an injection");
  return node_->parts[0];
}
FinVal FinVal::operator()(const FinVal& x) const {
  if (kind() != Kind::Fun) wrong("a function");
  return (*node_->fn)(x);
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b, std::uint64_t cap) { return std::min(cap, a + b); }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  if (a == 0 || b == 0) return 0;
  if (a > cap / b) return cap;
  return std::min(cap, a * b);
}
std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    r = sat_mul(r, base, cap);
    if (r == cap || r == 0) break;
  }
  return exp == 0 ? 1 : r;
}

[[noreturn]] void too_large(const std::string& what, const Model& m) {
  fail(Errc::DomainTooLarge, what + " exceeds the enumeration bound of " + std::to_string(m.bound));
}

}  // namespace

std::uint64_t cardinality(const FinTy& t, const Model& m) {
  std::uint64_t cap = m.bound + 1;
  switch (t.kind()) {
    case FinTy::Kind::Atom: return std::min<std::uint64_t>(m.base, cap);
    case FinTy::Kind::Zero: return 0;
    case FinTy::Kind::One: return 1;
    case FinTy::Kind::Sum: return sat_add(cardinality(t.left(), m), cardinality(t.right(), m), cap);
    case FinTy::Kind::Prod: return sat_mul(cardinality(t.left(), m), cardinality(t.right(), m), cap);
    case FinTy::Kind::Arr: {
      std::uint64_t d = cardinality(t.left(), m);
      std::uint64_t c = cardinality(t.right(), m);
      if (d == cap) return c <= 1 ? c : cap;
      return sat_pow(c, d, cap);
    }
  }
  return 0;
}

std::vector<FinVal> enumerate(const FinTy& t, const Model& m) {
  std::uint64_t n = cardinality(t, m);
  if (n > m.bound) too_large("a type with that many elements", m);
  std::vector<FinVal> out;
  out.reserve(n);
  switch (t.kind()) {
    case FinTy::Kind::Atom:
      for (unsigned k = 0; k < m.base; ++k) out.push_back(FinVal::atom(k));
      break;
    case FinTy::Kind::Zero: break;
    case FinTy::Kind::One: out.push_back(FinVal::unit()); break;
    case FinTy::Kind::Sum:
      for (auto& a : enumerate(t.left(), m)) out.push_back(FinVal::inj(1, a));
      for (auto& b : enumerate(t.right(), m)) out.push_back(FinVal::inj(2, b));
      break;
    case FinTy::Kind::Prod: {
      auto bs = enumerate(t.right(), m);
      for (auto& a : enumerate(t.left(), m))
        for (auto& b : bs) out.push_back(FinVal::pair(a, b));
      break;
    }
    case FinTy::Kind::Arr: {
      auto dom = std::make_shared<const std::vector<FinVal>>(enumerate(t.left(), m));
      auto cod = std::make_shared<const std::vector<FinVal>>(enumerate(t.right(), m));
      std::size_t d = dom->size();
      std::size_t c = cod->size();
      FinTy a = t.left();
      for (std::uint64_t code = 0; code < n; ++code) {
        // digit i of `code` in base c is the image of the i-th domain element
        auto table = std::make_shared<std::vector<std::uint32_t>>(d);
        std::uint64_t rest = code;
        for (std::size_t i = 0; i < d; ++i) {
          (*table)[i] = static_cast<std::uint32_t>(rest % c);
          rest /= c;
        }
        out.push_back(FinVal::fun([a, m, cod, table](const FinVal& x) { return (*cod)[(*table)[index_of(a, x, m)]]; }));
      }
      break;
    }
  }
  return out;
}

std::uint64_t index_of(const FinTy& t, const FinVal& v, const Model& m) {
  switch (t.kind()) {
    case FinTy::Kind::Atom: return v.atom_value();
    case FinTy::Kind::Zero: wrong("no inhabitant of 0");
    case FinTy::Kind::One: return 0;
    case FinTy::Kind::Sum:
      if (v.which() == 1) return index_of(t.left(), v.payload(), m);
      return cardinality(t.left(), m) + index_of(t.right(), v.payload(), m);
    case FinTy::Kind::Prod:
      return index_of(t.left(), v.fst(), m) * cardinality(t.right(), m) + index_of(t.right(), v.snd(), m);
    case FinTy::Kind::Arr: {
      std::uint64_t c = cardinality(t.right(), m);
      std::uint64_t code = 0;
      std::uint64_t place = 1;
      for (const auto& x : enumerate(t.left(), m)) {
        code += index_of(t.right(), v(x), m) * place;
        place *= c;
      }
      return code;
    }
  }
  return 0;
}

bool fin_equal(const FinTy& t, const FinVal& a, const FinVal& b, const Model& m) {
  switch (t.kind()) {
    case FinTy::Kind::Atom: return a.atom_value() == b.atom_value();
    case FinTy::Kind::Zero:
    case FinTy::Kind::One: return true;
    case FinTy::Kind::Sum:
      if (a.which() != b.which()) return false;
      return fin_equal(a.which() == 1 ? t.left() : t.right(), a.payload(), b.payload(), m);
    case FinTy::Kind::Prod:
      return fin_equal(t.left(), a.fst(), b.fst(), m) && fin_equal(t.right(), a.snd(), b.snd(), m);
    case FinTy::Kind::Arr:
      for (const auto& x : enumerate(t.left(), m)) {
        if (!fin_equal(t.right(), a(x), b(x), m)) return false;
      }
      return true;
  }
  return false;
}

std::string show(const FinTy& t, const FinVal& v, const Model& m) {
  switch (t.kind()) {
    case FinTy::Kind::Atom: return std::to_string(v.atom_value());
    case FinTy::Kind::Zero: return "<0>";
    case FinTy::Kind::One: return "()";
    case FinTy::Kind::Sum:
      return v.which() == 1 ? "inl " + show(t.left(), v.payload(), m) : "inr " + show(t.right(), v.payload(), m);
    case FinTy::Kind::Prod: return "(" + show(t.left(), v.fst(), m) + ", " + show(t.right(), v.snd(), m) + ")";
    case FinTy::Kind::Arr: {
      std::string s = "[";
      bool first = true;
      for (const auto& x : enumerate(t.left(), m)) {
        if (!first) s += ", ";
        first = false;
        s += show(t.left(), x, m) + " |-> " + show(t.right(), v(x), m);
      }
      return s + "]";
    }
  }
  return "?";
}

std::uint64_t env_count(const std::vector<FinTy>& ctx, const Model& m) {
  std::uint64_t cap = m.bound + 1;
  std::uint64_t n = 1;
  for (const auto& t : ctx) n = sat_mul(n, cardinality(t, m), cap);
  return n;
}

void enum_envs(const std::vector<FinTy>& ctx, const Model& m, const std::function<bool(const FinEnv&)>& visit) {
  if (env_count(ctx, m) > m.bound) too_large("the environment space", m);
  std::vector<std::vector<FinVal>> doms;
  for (const auto& t : ctx) {
    doms.push_back(enumerate(t, m));
    if (doms.back().empty()) return;
  }
  std::vector<std::size_t> pos(ctx.size(), 0);
  FinEnv env;
  for (;;) {
    env.clear();
    for (std::size_t i = 0; i < ctx.size(); ++i) env.push_back(doms[i][pos[i]]);
    if (!visit(env)) return;
    // odometer, innermost binding fastest
    std::size_t i = ctx.size();
    while (i > 0) {
      --i;
      if (++pos[i] < doms[i].size()) break;
      pos[i] = 0;
      if (i == 0) return;
    }
    if (ctx.empty()) return;
  }
}

namespace {

const FinVal& at(const FinEnv& env, Idx x) {
  if (x.depth >= env.size()) fail(Errc::IndexOutOfRange, "finite environment lookup out of range");
  return env[env.size() - 1 - x.depth];
}

FinEnv push(FinEnv env, FinVal v) {
  env.push_back(std::move(v));
  return env;
}

[[noreturn]] void absurd() { fail(Errc::ShapeMismatch, "finite model: abort reached (0 has no elements)"); }

FinVal ev(const stlc::Term& t, const FinEnv& env) {
  using K = stlc::Term::Kind;
  switch (t.kind()) {
    case K::Var: return at(env, t.idx());
    case K::Abs: {
      stlc::Term body = t.sub(0);
      return FinVal::fun([body, env](const FinVal& x) { return ev(body, push(env, x)); });
    }
    case K::App: return ev(t.sub(0), env)(ev(t.sub(1), env));
    case K::Unit: return FinVal::unit();
    case K::Pair: return FinVal::pair(ev(t.sub(0), env), ev(t.sub(1), env));
    case K::Prj: {
      FinVal p = ev(t.sub(0), env);
      return t.which() == 1 ? p.fst() : p.snd();
    }
    case K::Inj: return FinVal::inj(t.which(), ev(t.sub(0), env));
    case K::Case: {
      FinVal s = ev(t.sub(0), env);
      return ev(t.sub(s.which() == 1 ? 1 : 2), push(env, s.payload()));
    }
    case K::Abort: absurd();
  }
  fail(Errc::ShapeMismatch, "unknown term");
}

FinVal ev(const cbpv::Tm& t, const FinEnv& env);

FinVal ev(const cbpv::Val& v, const FinEnv& env) {
  using K = cbpv::Val::Kind;
  switch (v.kind()) {
    case K::Var: return at(env, v.idx());
    case K::Thunk: return ev(v.tm(), env);
    case K::Unit: return FinVal::unit();
    case K::Pair: return FinVal::pair(ev(v.val(0), env), ev(v.val(1), env));
    case K::Inj: return FinVal::inj(v.which(), ev(v.val(0), env));
  }
  fail(Errc::ShapeMismatch, "unknown value");
}

FinVal ev(const cbpv::Tm& t, const FinEnv& env) {
  using K = cbpv::Tm::Kind;
  switch (t.kind()) {
    case K::Ret: return ev(t.val(), env);
    case K::Abs: {
      cbpv::Tm body = t.tm(0);
      return FinVal::fun([body, env](const FinVal& x) { return ev(body, push(env, x)); });
    }
    case K::PairN: return FinVal::pair(ev(t.tm(0), env), ev(t.tm(1), env));
    case K::UnitN: return FinVal::unit();
    case K::Force: return ev(t.val(), env);
    case K::App: return ev(t.tm(0), env)(ev(t.val(), env));
    case K::Prj: {
      FinVal p = ev(t.tm(0), env);
      return t.which() == 1 ? p.fst() : p.snd();
    }
    case K::Bind: return ev(t.tm(1), push(env, ev(t.tm(0), env)));
    case K::Split: {
      FinVal p = ev(t.val(), env);
      return ev(t.tm(0), push(push(env, p.fst()), p.snd()));
    }
    case K::Case: {
      FinVal s = ev(t.val(), env);
      return ev(t.tm(s.which() == 1 ? 0 : 1), push(env, s.payload()));
    }
    case K::Abort: absurd();
  }
  fail(Errc::ShapeMismatch, "unknown term");
}

FinVal ev(const polarized::Tm& t, const FinEnv& env);

// Complete matching against a pattern tree, same traversal order as the
// semantic match but over set-theoretic values.
FinVal ev_match(const FinVal& a, const polarized::Add<polarized::Tm>& tree, FinEnv env) {
  using K = polarized::Add<polarized::Tm>::Kind;
  std::vector<FinVal> pending{a};
  const auto* t = &tree;
  for (;;) {
    if (t->kind() == K::Leaf) return ev(t->leaf(), env);
    if (t->kind() == K::Branch0) absurd();
    FinVal v = pending.back();
    pending.pop_back();
    switch (t->kind()) {
      case K::HypP:
      case K::HypN: env.push_back(v); break;
      case K::Branch2:
        pending.push_back(v.payload());
        t = &t->sub(v.which() == 1 ? 0 : 1);
        continue;
      case K::Split0: break;
      case K::Split2:
        pending.push_back(v.snd());
        pending.push_back(v.fst());
        break;
      default: break;
    }
    t = &t->sub(0);
  }
}

FinVal ev(const polarized::Val& v, const FinEnv& env) {
  using K = polarized::Val::Kind;
  switch (v.kind()) {
    case K::VarP: return at(env, v.idx());
    case K::Thunk: return ev(v.tm(), env);
    case K::Unit: return FinVal::unit();
    case K::Pair: return FinVal::pair(ev(v.val(0), env), ev(v.val(1), env));
    case K::Inj: return FinVal::inj(v.which(), ev(v.val(0), env));
  }
  fail(Errc::ShapeMismatch, "unknown value");
}

FinVal ev(const polarized::Tm& t, const FinEnv& env) {
  using K = polarized::Tm::Kind;
  switch (t.kind()) {
    case K::VarN: return at(env, t.idx());
    case K::Ret: return ev(t.val(), env);
    case K::Abs: {
      polarized::Add<polarized::Tm> body = t.body();
      return FinVal::fun([body, env](const FinVal& x) { return ev_match(x, body, env); });
    }
    case K::PairN: return FinVal::pair(ev(t.tm(0), env), ev(t.tm(1), env));
    case K::UnitN: return FinVal::unit();
    case K::Force: return ev(t.val(), env);
    case K::App: return ev(t.tm(0), env)(ev(t.val(), env));
    case K::Prj: {
      FinVal p = ev(t.tm(0), env);
      return t.which() == 1 ? p.fst() : p.snd();
    }
    case K::Bind: return ev_match(ev(t.tm(0), env), t.body(), env);
  }
  fail(Errc::ShapeMismatch, "unknown term");
}

template <class Ctx>
void check_env(const Ctx& ctx, const FinEnv& env) {
  if (ctx.size() != env.size()) {
    fail(Errc::ContextMismatch, "environment has " + std::to_string(env.size()) + " entries for a context of " +
                                    std::to_string(ctx.size()));
  }
}

template <class Ctx>
std::vector<FinTy> fin_context(const Ctx& ctx) {
  std::vector<FinTy> out;
  for (const auto& t : ctx) out.push_back(fin_type(t));
  return out;
}

template <class Ctx, class Term, class TyOf>
Verdict equiv(const Ctx& ctx, const Term& a, const Term& b, const Model& m, const TyOf& ty_of) {
  auto ta = ty_of(a);
  auto tb = ty_of(b);
  if (!(ta == tb)) fail(Errc::TypeMismatch, "oracle: the two terms have different types");
  FinTy res = fin_type(ta);
  std::vector<FinTy> fctx = fin_context(ctx);
  Verdict out;
  enum_envs(fctx, m, [&](const FinEnv& env) {
    ++out.envs;
    FinVal va = ev(a, env);
    FinVal vb = ev(b, env);
    if (fin_equal(res, va, vb, m)) return true;
    out.equal = false;
    std::string where;
    for (std::size_t i = 0; i < env.size(); ++i) {
      if (i) where += ", ";
      where += "#" + std::to_string(env.size() - 1 - i) + " = " + show(fctx[i], env[i], m);
    }
    out.counterexample = "at [" + where + "]: " + show(res, va, m) + " vs " + show(res, vb, m);
    return false;
  });
  return out;
}

}  // namespace

FinVal fin_eval(const stlc::Context& ctx, const stlc::Term& t, const FinEnv& env, const Model&) {
  stlc::infer(ctx, t);
  check_env(ctx, env);
  return ev(t, env);
}

FinVal fin_eval(const cbpv::Context& ctx, const cbpv::Tm& t, const FinEnv& env, const Model&) {
  cbpv::infer(ctx, t);
  check_env(ctx, env);
  return ev(t, env);
}

FinVal fin_eval(const polarized::Context& ctx, const polarized::Tm& t, const FinEnv& env, const Model&) {
  polarized::infer(ctx, t);
  check_env(ctx, env);
  return ev(t, env);
}

Verdict oracle_equiv(const stlc::Context& ctx, const stlc::Term& a, const stlc::Term& b, const Model& m) {
  return equiv(ctx, a, b, m, [&](const stlc::Term& t) { return stlc::infer(ctx, t); });
}

Verdict oracle_equiv(const cbpv::Context& ctx, const cbpv::Tm& a, const cbpv::Tm& b, const Model& m) {
  return equiv(ctx, a, b, m, [&](const cbpv::Tm& t) { return cbpv::infer(ctx, t); });
}

Verdict oracle_equiv(const polarized::Context& ctx, const polarized::Tm& a, const polarized::Tm& b, const Model& m) {
  polarized::check_context(ctx);
  return equiv(ctx, a, b, m, [&](const polarized::Tm& t) { return polarized::infer(ctx, t); });
}

}  // namespace nbe::oracle
