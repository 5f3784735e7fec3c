#include "nbe/surface/pretty.hpp"

#include <unordered_set>

namespace nbe::surface {

namespace {

// Precedence of the context a term is printed in.
constexpr int kExpr = 0;   // binders and case extend as far right as possible
constexpr int kUnary = 1;  // fst t, inl[T] t, thunk t, ...
constexpr int kApp = 2;
constexpr int kAtom = 3;

std::string paren(bool yes, std::string s) { return yes ? "(" + s + ")" : s; }

std::string stlc_ty(const stlc::Ty& ty, int prec) {
  using K = stlc::Ty::Kind;
  switch (ty.kind()) {
    case K::Atom: return ty.name().empty() ? "o" : "o " + ty.name();
    case K::Zero: return "0";
    case K::One: return "1";
    case K::Sum: return paren(prec > 1, stlc_ty(ty.left(), 1) + "+" + stlc_ty(ty.right(), 2));
    case K::Prod: return paren(prec > 2, stlc_ty(ty.left(), 2) + "*" + stlc_ty(ty.right(), 3));
    case K::Arr: return paren(prec > 0, stlc_ty(ty.left(), 1) + "->" + stlc_ty(ty.right(), 0));
  }
  return "?";
}

// Binder names and the names in scope.
class Names {
 public:
  explicit Names(const std::vector<std::string>& free) : scope_(free), taken_(free.begin(), free.end()) {}

  std::string fresh() {
    for (;;) {
      std::string x = "x" + std::to_string(next_++);
      if (!taken_.count(x)) return x;
    }
  }
  const std::string& at(Idx x) const {
    if (x.depth >= scope_.size()) fail(Errc::IndexOutOfRange, "free index " + std::to_string(x.depth));
    return scope_[scope_.size() - 1 - x.depth];
  }
  void push(std::string x) { scope_.push_back(std::move(x)); }
  void pop(std::size_t n = 1) { scope_.resize(scope_.size() - n); }

 private:
  std::vector<std::string> scope_;
  std::unordered_set<std::string> taken_;
  std::size_t next_ = 0;
};

// Names are handed out in reading order, so every piece is built in its
// own statement.

class StlcPrinter {
 public:
  explicit StlcPrinter(const std::vector<std::string>& free) : n_(free) {}

  std::string go(const stlc::Term& t, int prec) {
    using K = stlc::Term::Kind;
    switch (t.kind()) {
      case K::Var: return n_.at(t.idx());
      case K::Abs: {
        std::string x = n_.fresh();
        std::string head = "\\" + x + ":" + stlc_ty(t.ty(), 0) + ". ";
        n_.push(x);
        std::string body = go(t.sub(0), kExpr);
        n_.pop();
        return paren(prec > kExpr, head + body);
      }
      case K::App: {
        std::string f = go(t.sub(0), kApp);
        std::string a = go(t.sub(1), kAtom);
        return paren(prec > kApp, f + " " + a);
      }
      case K::Unit: return "()";
      case K::Pair: {
        std::string a = go(t.sub(0), kExpr);
        std::string b = go(t.sub(1), kExpr);
        return "(" + a + ", " + b + ")";
      }
      case K::Prj: return paren(prec > kUnary, (t.which() == 1 ? "fst " : "snd ") + go(t.sub(0), kUnary));
      case K::Inj: {
        std::string head = (t.which() == 1 ? "inl[" : "inr[") + stlc_ty(t.ty(), 0) + "] ";
        return paren(prec > kUnary, head + go(t.sub(0), kUnary));
      }
      case K::Abort: return paren(prec > kUnary, "abort[" + stlc_ty(t.ty(), 0) + "] " + go(t.sub(0), kUnary));
      case K::Case: {
        std::string s = go(t.sub(0), kExpr);
        std::string x = n_.fresh();
        n_.push(x);
        std::string l = go(t.sub(1), kExpr);
        n_.pop();
        std::string y = n_.fresh();
        n_.push(y);
        std::string r = go(t.sub(2), kExpr);
        n_.pop();
        return paren(prec > kExpr, "case " + s + " of { inl " + x + " -> " + l + " ; inr " + y + " -> " + r + " }");
      }
    }
    return "?";
  }

 private:
  Names n_;
};

class CbpvPrinter {
 public:
  explicit CbpvPrinter(const std::vector<std::string>& free) : n_(free) {}

  std::string val(const cbpv::Val& v, int prec) {
    using K = cbpv::Val::Kind;
    switch (v.kind()) {
      case K::Var: return n_.at(v.idx());
      case K::Thunk: return paren(prec > kUnary, "thunk " + tm(v.tm(), kUnary));
      case K::Unit: return "()";
      case K::Pair: {
        std::string a = val(v.val(0), kExpr);
        std::string b = val(v.val(1), kExpr);
        return "(" + a + ", " + b + ")";
      }
      case K::Inj: {
        std::string head = (v.which() == 1 ? "inl[" : "inr[") + cbpv::show(v.ty()) + "] ";
        return paren(prec > kUnary, head + val(v.val(0), kUnary));
      }
    }
    return "?";
  }

  std::string tm(const cbpv::Tm& t, int prec) {
    using K = cbpv::Tm::Kind;
    switch (t.kind()) {
      case K::Ret: return paren(prec > kUnary, "ret " + val(t.val(), kUnary));
      case K::Abs: {
        std::string x = n_.fresh();
        std::string head = "\\" + x + ":" + cbpv::show(t.ty()) + ". ";
        n_.push(x);
        std::string body = tm(t.tm(0), kExpr);
        n_.pop();
        return paren(prec > kExpr, head + body);
      }
      case K::PairN: {
        std::string a = tm(t.tm(0), kExpr);
        std::string b = tm(t.tm(1), kExpr);
        return "<" + a + ", " + b + ">";
      }
      case K::UnitN: return "<>";
      case K::Force: return paren(prec > kUnary, "force " + val(t.val(), kUnary));
      case K::App: {
        std::string f = tm(t.tm(0), kApp);
        std::string a = val(t.val(), kAtom);
        return paren(prec > kApp, f + " " + a);
      }
      case K::Prj: return paren(prec > kUnary, (t.which() == 1 ? "fst " : "snd ") + tm(t.tm(0), kUnary));
      case K::Bind: {
        std::string s = tm(t.tm(0), kExpr);
        std::string x = n_.fresh();
        n_.push(x);
        std::string body = tm(t.tm(1), kExpr);
        n_.pop();
        return paren(prec > kExpr, "let " + x + " : " + cbpv::show(t.ty()) + " <- " + s + " in " + body);
      }
      case K::Split: {
        std::string v = val(t.val(), kExpr);
        std::string x = n_.fresh();
        std::string y = n_.fresh();
        n_.push(x);
        n_.push(y);
        std::string body = tm(t.tm(0), kExpr);
        n_.pop(2);
        return paren(prec > kExpr, "split " + v + " as (" + x + ", " + y + ") in " + body);
      }
      case K::Case: {
        std::string s = val(t.val(), kExpr);
        std::string x = n_.fresh();
        n_.push(x);
        std::string l = tm(t.tm(0), kExpr);
        n_.pop();
        std::string y = n_.fresh();
        n_.push(y);
        std::string r = tm(t.tm(1), kExpr);
        n_.pop();
        return paren(prec > kExpr, "case " + s + " of { inl " + x + " -> " + l + " ; inr " + y + " -> " + r + " }");
      }
      case K::Abort: return paren(prec > kUnary, "abort[" + cbpv::show(t.ty()) + "] " + val(t.val(), kUnary));
    }
    return "?";
  }

 private:
  Names n_;
};

class PolarizedPrinter {
 public:
  using Tree = polarized::Add<polarized::Tm>;

  explicit PolarizedPrinter(const std::vector<std::string>& free) : n_(free) {}

  std::string val(const polarized::Val& v, int prec) {
    using K = polarized::Val::Kind;
    switch (v.kind()) {
      case K::VarP: return n_.at(v.idx());
      case K::Thunk: return paren(prec > kUnary, "thunk " + tm(v.tm(), kUnary));
      case K::Unit: return "()";
      case K::Pair: {
        std::string a = val(v.val(0), kExpr);
        std::string b = val(v.val(1), kExpr);
        return "(" + a + ", " + b + ")";
      }
      case K::Inj: {
        std::string head = (v.which() == 1 ? "inl[" : "inr[") + cbpv::show(v.ty()) + "] ";
        return paren(prec > kUnary, head + val(v.val(0), kUnary));
      }
    }
    return "?";
  }

  std::string tm(const polarized::Tm& t, int prec) {
    using K = polarized::Tm::Kind;
    switch (t.kind()) {
      case K::VarN: return n_.at(t.idx());
      case K::Ret: return paren(prec > kUnary, "ret " + val(t.val(), kUnary));
      case K::Abs: {
        std::string s = "\\[" + cbpv::show(t.ty().left()) + "]" + clauses(t.body());
        if (t.body().leaves() == 0) return "(" + s + " : " + cbpv::show(t.ty()) + ")";
        return paren(prec > kExpr, s);
      }
      case K::PairN: {
        std::string a = tm(t.tm(0), kExpr);
        std::string b = tm(t.tm(1), kExpr);
        return "<" + a + ", " + b + ">";
      }
      case K::UnitN: return "<>";
      case K::Force: return paren(prec > kUnary, "force " + val(t.val(), kUnary));
      case K::App: {
        std::string f = tm(t.tm(0), kApp);
        std::string a = val(t.val(), kAtom);
        return paren(prec > kApp, f + " " + a);
      }
      case K::Prj: return paren(prec > kUnary, (t.which() == 1 ? "fst " : "snd ") + tm(t.tm(0), kUnary));
      case K::Bind: {
        std::string s = tm(t.tm(0), kUnary);
        std::string out = "bind " + s + " " + clauses(t.body());
        if (t.body().leaves() == 0) return "(" + out + " : " + cbpv::show(t.ty()) + ")";
        return paren(prec > kUnary, out);
      }
    }
    return "?";
  }

 private:
  enum class Step { Hyp, Inl, Inr, Unit, Pair };

  struct Path {
    std::vector<Step> steps;
    std::size_t hyps = 0;
    const polarized::Tm* leaf = nullptr;
  };

  static void paths(const Tree& a, Path& cur, std::vector<Path>& out) {
    using K = Tree::Kind;
    auto down = [&](Step s, const Tree& next) {
      cur.steps.push_back(s);
      if (s == Step::Hyp) ++cur.hyps;
      paths(next, cur, out);
      if (s == Step::Hyp) --cur.hyps;
      cur.steps.pop_back();
    };
    switch (a.kind()) {
      case K::Leaf: {
        Path p = cur;
        p.leaf = &a.leaf();
        out.push_back(std::move(p));
        return;
      }
      case K::HypP:
      case K::HypN: down(Step::Hyp, a.sub(0)); return;
      case K::Branch0: return;
      case K::Branch2:
        down(Step::Inl, a.sub(0));
        down(Step::Inr, a.sub(1));
        return;
      case K::Split0: down(Step::Unit, a.sub(0)); return;
      case K::Split2: down(Step::Pair, a.sub(0)); return;
    }
  }

  // The steps are a prefix code for the pattern, so no type is needed.
  static std::string pattern(const Path& path, std::size_t& at, const std::vector<std::string>& names,
                             std::size_t& next) {
    Step s = path.steps.at(at++);
    switch (s) {
      case Step::Hyp: return names.at(next++);
      case Step::Inl: return "inl " + pattern(path, at, names, next);
      case Step::Inr: return "inr " + pattern(path, at, names, next);
      case Step::Unit: return "()";
      case Step::Pair: {
        std::string a = pattern(path, at, names, next);
        std::string b = pattern(path, at, names, next);
        return "(" + a + ", " + b + ")";
      }
    }
    return "?";
  }

  std::string clauses(const Tree& body) {
    std::vector<Path> ps;
    Path cur;
    paths(body, cur, ps);
    if (ps.empty()) return "{}";
    std::string out = "{ ";
    for (std::size_t i = 0; i < ps.size(); ++i) {
      std::vector<std::string> names;
      for (std::size_t k = 0; k < ps[i].hyps; ++k) names.push_back(n_.fresh());
      std::size_t at = 0, next = 0;
      std::string pat = pattern(ps[i], at, names, next);
      for (const auto& x : names) n_.push(x);
      std::string rhs = tm(*ps[i].leaf, kExpr);
      n_.pop(names.size());
      if (i > 0) out += " | ";
      out += pat + " -> " + rhs;
    }
    return out + " }";
  }

  Names n_;
};

}  // namespace

std::string pretty(const stlc::Ty& ty) { return stlc_ty(ty, 0); }
std::string pretty(const cbpv::Ty& ty) { return cbpv::show(ty); }

std::string pretty(const stlc::Term& t, const std::vector<std::string>& names) {
  return StlcPrinter(names).go(t, kExpr);
}
std::string pretty(const cbpv::Tm& t, const std::vector<std::string>& names) {
  return CbpvPrinter(names).tm(t, kExpr);
}
std::string pretty(const polarized::Tm& t, const std::vector<std::string>& names) {
  return PolarizedPrinter(names).tm(t, kExpr);
}

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("v" + std::to_string(i));
  return out;
}

}  // namespace nbe::surface
