#include "nbe/stlc/nbe.hpp"

namespace nbe::stlc {

template <class C>
SemVal<C> Nbe<C>::fresh(const Ty& ty, std::size_t depth) {
  return reflect(ty, Ne::var(Idx::zero()), depth);
}

template <class C>
SemVal<C> Nbe<C>::reflect(const Ty& ty, const Ne& u, std::size_t depth) {
  using Leaf = PosLeaf<C>;
  switch (ty.kind()) {
    case Ty::Kind::One: return Val::unit();
    case Ty::Kind::Prod:
      return Val::pair(reflect(ty.left(), Ne::prj(1, u), depth), reflect(ty.right(), Ne::prj(2, u), depth));
    case Ty::Kind::Arr:
      return Val::fun(Kripke<C>(Ope::id(depth), [ty, u](const Ope& tau, const Val& a) {
        std::size_t d = tau.target_size();
        return reflect(ty.right(), Ne::app(rename(tau, u), reify(ty.left(), a, d)), d);
      }));
    case Ty::Kind::Atom: return Val::pos(C::ret(Leaf::neutral(u), depth));
    case Ty::Kind::Zero: return Val::pos(C::template abort<Leaf>(u, depth));
    case Ty::Kind::Sum:
      return Val::pos(C::case_(u, ty, C::ret(Leaf::inl(fresh(ty.left(), depth + 1)), depth + 1),
                               C::ret(Leaf::inr(fresh(ty.right(), depth + 1)), depth + 1), depth));
  }
  fail(Errc::TypeMismatch, "reflect at unknown type");
}

template <class C>
Nf Nbe<C>::reify(const Ty& ty, const Val& v, std::size_t depth) {
  using Leaf = PosLeaf<C>;
  switch (ty.kind()) {
    case Ty::Kind::One:
      if (v.kind() != Val::Kind::Unit) fail(Errc::ShapeMismatch, "reify 1");
      return Nf::unit();
    case Ty::Kind::Prod: return Nf::pair(reify(ty.left(), v.fst(), depth), reify(ty.right(), v.snd(), depth));
    case Ty::Kind::Arr:
      return Nf::abs(reify(ty.right(), v.fn().apply(Ope::wk(depth), fresh(ty.left(), depth + 1)), depth + 1));
    case Ty::Kind::Atom:
    case Ty::Kind::Zero:
    case Ty::Kind::Sum: {
      auto leaf = [&ty](const Leaf& l, std::size_t d) -> Nf {
        switch (l.kind) {
          case Leaf::Kind::Ne:
            if (ty.kind() != Ty::Kind::Atom) fail(Errc::ShapeMismatch, "neutral leaf at " + show(ty));
            return Nf::ne(*l.ne);
          case Leaf::Kind::Inl:
            if (ty.kind() != Ty::Kind::Sum) fail(Errc::ShapeMismatch, "injection leaf at " + show(ty));
            return Nf::inj(1, reify(ty.left(), l.val[0], d));
          case Leaf::Kind::Inr:
            if (ty.kind() != Ty::Kind::Sum) fail(Errc::ShapeMismatch, "injection leaf at " + show(ty));
            return Nf::inj(2, reify(ty.right(), l.val[0], d));
        }
        fail(Errc::ShapeMismatch, "leaf");
      };
      return C::runNf(C::template map<Nf>(leaf, v.cover(), depth), ty, depth);
    }
  }
  fail(Errc::ShapeMismatch, "reify at unknown type");
}

template <class C>
SemVal<C> Nbe<C>::run(const Ty& ty, const M<Val>& c, std::size_t depth) {
  switch (ty.kind()) {
    case Ty::Kind::One: return Val::unit();
    case Ty::Kind::Prod: {
      auto p1 = C::template map<Val>([](const Val& v, std::size_t) { return v.fst(); }, c, depth);
      auto p2 = C::template map<Val>([](const Val& v, std::size_t) { return v.snd(); }, c, depth);
      return Val::pair(run(ty.left(), p1, depth), run(ty.right(), p2, depth));
    }
    case Ty::Kind::Arr:
      return Val::fun(Kripke<C>(Ope::id(depth), [ty, c](const Ope& tau, const Val& a) {
        std::size_t d = tau.target_size();
        auto applied = C::template stmap<Val>(
            [a](const Ope& tau2, const Val& f) { return f.fn().apply(Ope::id(tau2.target_size()), rename(tau2, a)); },
            rename(tau, c), d);
        return run(ty.right(), applied, d);
      }));
    case Ty::Kind::Atom:
    case Ty::Kind::Zero:
    case Ty::Kind::Sum: {
      using Cov = typename Val::Cov;
      return Val::pos(C::join(C::template map<Cov>([](const Val& v, std::size_t) { return v.cover(); }, c, depth)));
    }
  }
  fail(Errc::ShapeMismatch, "run at unknown type");
}

template <class C>
SemVal<C> Nbe<C>::eval(const Context& ctx, const Term& t, const Env<C>& env, std::size_t depth) {
  using K = Term::Kind;
  using Leaf = PosLeaf<C>;
  switch (t.kind()) {
    case K::Var: return lookup(env, t.idx());
    case K::Abs: {
      Context inner = extend(ctx, t.ty());
      Term body = t.sub(0);
      return Val::fun(Kripke<C>(Ope::id(depth), [inner, body, env](const Ope& tau, const Val& a) {
        return eval(inner, body, extend(rename(tau, env), a), tau.target_size());
      }));
    }
    case K::App: return eval(ctx, t.sub(0), env, depth).fn().apply(Ope::id(depth), eval(ctx, t.sub(1), env, depth));
    case K::Unit: return Val::unit();
    case K::Pair: return Val::pair(eval(ctx, t.sub(0), env, depth), eval(ctx, t.sub(1), env, depth));
    case K::Prj: {
      Val p = eval(ctx, t.sub(0), env, depth);
      return t.which() == 1 ? p.fst() : p.snd();
    }
    case K::Inj: {
      Val v = eval(ctx, t.sub(0), env, depth);
      return Val::pos(C::ret(t.which() == 1 ? Leaf::inl(v) : Leaf::inr(v), depth));
    }
    case K::Case: {
      Ty result = infer(ctx, t);
      Ty sum = infer(ctx, t.sub(0));
      Val scrut = eval(ctx, t.sub(0), env, depth);
      Context c1 = extend(ctx, sum.left());
      Context c2 = extend(ctx, sum.right());
      // Continuations may outlive this frame, so capture by value.
      auto branch = [env, c1, c2, t](const Ope& tau, const Leaf& l) -> Val {
        Env<C> moved = rename(tau, env);
        std::size_t d = tau.target_size();
        if (l.kind == Leaf::Kind::Inl) return eval(c1, t.sub(1), extend(std::move(moved), l.val[0]), d);
        if (l.kind == Leaf::Kind::Inr) return eval(c2, t.sub(2), extend(std::move(moved), l.val[0]), d);
        fail(Errc::ShapeMismatch, "case on a non-sum value");
      };
      return run(result, C::template stmap<Val>(branch, scrut.cover(), depth), depth);
    }
    case K::Abort: {
      Val scrut = eval(ctx, t.sub(0), env, depth);
      auto magic = [](const Leaf&, std::size_t) -> Val { fail(Errc::ShapeMismatch, "leaf in a cover of 0"); };
      return run(t.ty(), C::template map<Val>(magic, scrut.cover(), depth), depth);
    }
  }
  fail(Errc::ShapeMismatch, "eval of unknown term");
}

template <class C>
Env<C> Nbe<C>::id_env(const Context& ctx) {
  Env<C> env;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    env = rename(Ope::wk(i), env);
    env.push_back(fresh(ctx[i], i + 1));
  }
  return env;
}

template <class C>
Nf Nbe<C>::norm(const Context& ctx, const Term& t) {
  Ty ty = infer(ctx, t);
  return reify(ty, eval(ctx, t, id_env(ctx), ctx.size()), ctx.size());
}

template struct Nbe<FreeCover>;
template struct Nbe<Continuation>;

const char* to_string(Monad m) { return m == Monad::Free ? FreeCover::name : Continuation::name; }

Nf norm(const Context& ctx, const Term& t, Monad monad) {
  return monad == Monad::Free ? Nbe<FreeCover>::norm(ctx, t) : Nbe<Continuation>::norm(ctx, t);
}

}  // namespace nbe::stlc
