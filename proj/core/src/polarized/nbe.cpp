#include "nbe/polarized/nbe.hpp"

namespace nbe::polarized {

SemFn::SemFn(Ope acc, Fn fn) : acc_(std::move(acc)), fn_(std::make_shared<const Fn>(std::move(fn))) {}
Sem SemFn::apply(const Ope& tau, const Sem& a) const { return (*fn_)(compose(acc_, tau), a); }
SemFn SemFn::renamed(const Ope& tau) const { return SemFn(compose(acc_, tau), fn_); }

Sem Sem::unit() {
  static const Sem u(std::make_shared<const Node>(Node{Kind::Unit, {}, {}, {}, {}, {}}));
  return u;
}
Sem Sem::pair(Sem a, Sem b) {
  return Sem(std::make_shared<const Node>(Node{Kind::Pair, {std::move(a), std::move(b)}, {}, {}, {}, {}}));
}
Sem Sem::inl(Sem a) { return Sem(std::make_shared<const Node>(Node{Kind::Inl, {std::move(a)}, {}, {}, {}, {}})); }
Sem Sem::inr(Sem a) { return Sem(std::make_shared<const Node>(Node{Kind::Inr, {std::move(a)}, {}, {}, {}, {}})); }
Sem Sem::atom(Idx x) { return Sem(std::make_shared<const Node>(Node{Kind::AtomP, {}, x, {}, {}, {}})); }
Sem Sem::fun(SemFn f) { return Sem(std::make_shared<const Node>(Node{Kind::Fun, {}, {}, std::move(f), {}, {}})); }
Sem Sem::comp(Cov<Sem> c) { return Sem(std::make_shared<const Node>(Node{Kind::Comp, {}, {}, {}, std::move(c), {}})); }
Sem Sem::atom_neg(Cov<Ne> c) {
  return Sem(std::make_shared<const Node>(Node{Kind::AtomN, {}, {}, {}, {}, std::move(c)}));
}

namespace {

[[noreturn]] void bad_shape(const char* want) { fail(Errc::ShapeMismatch, std::string("expected a semantic ") + want); }

}  // namespace

const Sem& Sem::fst() const {
  if (kind() != Kind::Pair) bad_shape("pair");
  return node_->parts[0];
}
const Sem& Sem::snd() const {
  if (kind() != Kind::Pair) bad_shape("pair");
  return node_->parts[1];
}
const Sem& Sem::payload() const {
  if (kind() != Kind::Inl && kind() != Kind::Inr) bad_shape("injection");
  return node_->parts[0];
}
Idx Sem::idx() const {
  if (kind() != Kind::AtomP) bad_shape("positive atom");
  return node_->idx;
}
const SemFn& Sem::fn() const {
  if (kind() != Kind::Fun) bad_shape("function");
  return *node_->fn;
}
const Cov<Sem>& Sem::comp() const {
  if (kind() != Kind::Comp) bad_shape("computation");
  return *node_->comp;
}
const Cov<Ne>& Sem::neutrals() const {
  if (kind() != Kind::AtomN) bad_shape("negative atom");
  return *node_->neutrals;
}

Sem rename(const Ope& tau, const Sem& v) {
  switch (v.kind()) {
    case Sem::Kind::Unit: return v;
    case Sem::Kind::Pair: return Sem::pair(rename(tau, v.fst()), rename(tau, v.snd()));
    case Sem::Kind::Inl: return Sem::inl(rename(tau, v.payload()));
    case Sem::Kind::Inr: return Sem::inr(rename(tau, v.payload()));
    case Sem::Kind::AtomP: return Sem::atom(tau.reindex(v.idx()));
    case Sem::Kind::Fun: return Sem::fun(v.fn().renamed(tau));
    case Sem::Kind::Comp: return Sem::comp(rename(tau, v.comp()));
    case Sem::Kind::AtomN: return Sem::atom_neg(rename(tau, v.neutrals()));
  }
  return v;
}

Env rename(const Ope& tau, const Env& env) {
  Env out;
  out.reserve(env.size());
  for (const auto& v : env) out.push_back(rename(tau, v));
  return out;
}

// ↑(F P) u = bind u (reflect^P (λτ a. return a))
Sem reflect(const Ty& neg, const Ne& u, std::size_t depth) {
  switch (neg.kind()) {
    case Ty::Kind::Comp: {
      Kont<Cov<Sem>> k = [](const Ope&, const Sem& a) { return Cov<Sem>::ret(a); };
      return Sem::comp(Cov<Sem>::bind(u, neg.left(), reflect_cont(neg.left(), k, depth)));
    }
    case Ty::Kind::AtomN: return Sem::atom_neg(Cov<Ne>::ret(u));
    case Ty::Kind::Top: return Sem::unit();
    case Ty::Kind::With:
      return Sem::pair(reflect(neg.left(), Ne::prj(1, u), depth), reflect(neg.right(), Ne::prj(2, u), depth));
    case Ty::Kind::Arr:
      return Sem::fun(SemFn(Ope::id(depth), [neg, u](const Ope& tau, const Sem& a) {
        std::size_t d = tau.target_size();
        return reflect(neg.right(), Ne::app(rename(tau, u), reify_pos(neg.left(), a, d)), d);
      }));
    default: break;
  }
  fail(Errc::PolarityViolation, "negative reflection at " + cbpv::show(neg));
}

Vnf reify_pos(const Ty& pos, const Sem& a, std::size_t depth) {
  switch (pos.kind()) {
    case Ty::Kind::AtomP: return Vnf::var(a.idx());
    case Ty::Kind::Thunk: return Vnf::thunk(reify_neg(pos.left(), a, depth));
    case Ty::Kind::One: return Vnf::unit();
    case Ty::Kind::Prod: return Vnf::pair(reify_pos(pos.left(), a.fst(), depth), reify_pos(pos.right(), a.snd(), depth));
    case Ty::Kind::Sum:
      if (a.kind() == Sem::Kind::Inl) return Vnf::inj(1, reify_pos(pos.left(), a.payload(), depth));
      return Vnf::inj(2, reify_pos(pos.right(), a.payload(), depth));
    case Ty::Kind::Zero: bad_shape("inhabitant of 0");
    default: break;
  }
  fail(Errc::PolarityViolation, "positive reification at " + cbpv::show(pos));
}

// ↓(P → N) f = abs (reflect^P (λτ a. ↓N (f τ a)))
Nf reify_neg(const Ty& neg, const Sem& b, std::size_t depth) {
  switch (neg.kind()) {
    case Ty::Kind::Arr: {
      const Ty& cod = neg.right();
      Kont<Nf> k = [&](const Ope& tau, const Sem& a) { return reify_neg(cod, b.fn().apply(tau, a), tau.target_size()); };
      return Nf::abs(reflect_cont(neg.left(), k, depth));
    }
    case Ty::Kind::Comp: {
      const Ty& pos = neg.left();
      return Nf::ret(cov_map<Vnf>([&pos](const Sem& a, std::size_t d) { return reify_pos(pos, a, d); }, b.comp(), depth));
    }
    case Ty::Kind::AtomN: return Nf::ne(b.neutrals());
    case Ty::Kind::Top: return Nf::unit();
    case Ty::Kind::With: return Nf::pair(reify_neg(neg.left(), b.fst(), depth), reify_neg(neg.right(), b.snd(), depth));
    default: break;
  }
  fail(Errc::PolarityViolation, "negative reification at " + cbpv::show(neg));
}

Sem run(const Ty& neg, const Cov<Sem>& c, std::size_t depth) {
  switch (neg.kind()) {
    case Ty::Kind::Comp:
      return Sem::comp(cov_join(cov_map<Cov<Sem>>([](const Sem& s, std::size_t) { return s.comp(); }, c, depth)));
    case Ty::Kind::AtomN:
      return Sem::atom_neg(cov_join(cov_map<Cov<Ne>>([](const Sem& s, std::size_t) { return s.neutrals(); }, c, depth)));
    case Ty::Kind::Top: return Sem::unit();
    case Ty::Kind::With:
      return Sem::pair(run(neg.left(), cov_map<Sem>([](const Sem& s, std::size_t) { return s.fst(); }, c, depth), depth),
                       run(neg.right(), cov_map<Sem>([](const Sem& s, std::size_t) { return s.snd(); }, c, depth), depth));
    case Ty::Kind::Arr:
      return Sem::fun(SemFn(Ope::id(depth), [neg, c](const Ope& tau, const Sem& a) {
        std::size_t d = tau.target_size();
        auto applied = cov_stmap<Sem>(
            [&a](const Ope& t2, const Sem& f) { return f.fn().apply(Ope::id(t2.target_size()), rename(t2, a)); },
            rename(tau, c), d);
        return run(neg.right(), applied, d);
      }));
    default: break;
  }
  fail(Errc::PolarityViolation, "run at " + cbpv::show(neg));
}

namespace {

const Sem& lookup_env(const Env& env, Idx x) {
  if (x.depth >= env.size()) fail(Errc::IndexOutOfRange, "environment lookup out of range");
  return env[env.size() - 1 - x.depth];
}

}  // namespace

Sem eval(const Context& ctx, const Val& v, const Env& env, std::size_t depth) {
  switch (v.kind()) {
    case Val::Kind::VarP: return lookup_env(env, v.idx());
    case Val::Kind::Thunk: return eval(ctx, v.tm(), env, depth);
    case Val::Kind::Unit: return Sem::unit();
    case Val::Kind::Pair: return Sem::pair(eval(ctx, v.val(0), env, depth), eval(ctx, v.val(1), env, depth));
    case Val::Kind::Inj: {
      Sem a = eval(ctx, v.val(0), env, depth);
      return v.which() == 1 ? Sem::inl(std::move(a)) : Sem::inr(std::move(a));
    }
  }
  fail(Errc::ShapeMismatch, "unknown value");
}

Sem fden(const Context& ctx, const Add<Tm>& body, const Env& env, const Ope& tau, const Sem& a) {
  std::size_t d = tau.target_size();
  auto evs = add_map_ctx<Ev<Sem>>(
      [d](const Tm& t, const Context& c) { return Ev<Sem>([c, t, d](const Env& g) { return eval(c, t, g, d); }); },
      body, ctx);
  return match(a, evs, rename(tau, env));
}

Sem eval(const Context& ctx, const Tm& t, const Env& env, std::size_t depth) {
  using K = Tm::Kind;
  switch (t.kind()) {
    case K::VarN: return lookup_env(env, t.idx());
    case K::Ret: return Sem::comp(Cov<Sem>::ret(eval(ctx, t.val(), env, depth)));
    case K::Abs:
      return Sem::fun(SemFn(Ope::id(depth), [ctx, body = t.body(), env](const Ope& tau, const Sem& a) {
        return fden(ctx, body, env, tau, a);
      }));
    case K::PairN: return Sem::pair(eval(ctx, t.tm(0), env, depth), eval(ctx, t.tm(1), env, depth));
    case K::UnitN: return Sem::unit();
    case K::Force: return eval(ctx, t.val(), env, depth);
    case K::App: {
      Sem f = eval(ctx, t.tm(0), env, depth);
      return f.fn().apply(Ope::id(depth), eval(ctx, t.val(), env, depth));
    }
    case K::Prj: {
      Sem p = eval(ctx, t.tm(0), env, depth);
      return t.which() == 1 ? p.fst() : p.snd();
    }
    case K::Bind: {
      Sem m = eval(ctx, t.tm(0), env, depth);
      const Cov<Sem>& c = m.comp();
      const Add<Tm>& body = t.body();
      auto k = cov_stmap<Sem>([&](const Ope& tau, const Sem& a) { return fden(ctx, body, env, tau, a); }, c, depth);
      return run(t.ty(), k, depth);
    }
  }
  fail(Errc::ShapeMismatch, "unknown term");
}

// ε ↦ (); Γ.o+ ↦ (ren wk γ, var+ zero); Γ.N ↦ (ren wk γ, ↑N (var- zero))
Env id_env(const Context& ctx) {
  check_context(ctx);
  Env env;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    env = rename(Ope::wk(i), env);
    const Ty& h = ctx[i];
    env.push_back(h.kind() == Ty::Kind::AtomP ? Sem::atom(Idx::zero()) : reflect(h, Ne::var(Idx::zero()), i + 1));
  }
  return env;
}

Nf norm(const Context& ctx, const Tm& t) {
  check_context(ctx);
  Ty neg = infer(ctx, t);
  return reify_neg(neg, eval(ctx, t, id_env(ctx), ctx.size()), ctx.size());
}

}  // namespace nbe::polarized
