#pragma once

// Named, located syntax shared by the three calculi.  The parser only builds
// the forms its calculus admits; types are resolved (and polarity-checked)
// during parsing, so only scoping and typing are left to elaboration.

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "nbe/cbpv/syntax.hpp"
#include "nbe/error.hpp"
#include "nbe/stlc/syntax.hpp"

namespace nbe::surface {

using Type = std::variant<stlc::Ty, cbpv::Ty>;

struct Pattern {
  enum class Kind { Var, Unit, Pair, Inl, Inr };
  Kind kind;
  SourceLocation loc;
  std::string name;
  std::vector<std::shared_ptr<const Pattern>> kids;
};
using PatternP = std::shared_ptr<const Pattern>;

struct Expr;
using ExprP = std::shared_ptr<const Expr>;

struct Clause {
  PatternP pattern;
  ExprP body;
};

struct Expr {
  enum class Kind {
    Var,
    Lam,     // \x:T. e
    Match,   // \[P]{ clauses }
    App,
    Unit,    // ()
    Pair,    // (e, e)
    UnitN,   // <>
    PairN,   // <e, e>
    Fst,
    Snd,
    Inl,     // ty is the other summand
    Inr,
    Abort,   // ty is the result
    Case,    // case e of { inl x -> e ; inr y -> e }
    Thunk,
    Force,
    Ret,
    Let,     // let x : P <- e in e
    Split,   // split e as (x, y) in e
    Bind,    // bind e { clauses }
    Ascribe, // (e : N)
  };
  Kind kind;
  SourceLocation loc;
  std::vector<std::string> names;  // binders, in order
  std::vector<Type> types;         // at most one
  std::vector<ExprP> kids;
  std::vector<Clause> clauses;

  const Type& type() const { return types.at(0); }
  const ExprP& kid(std::size_t i) const { return kids.at(i); }
};

struct Decl {
  std::string name;
  Type type;
  SourceLocation loc;
};

struct SourceFile {
  std::vector<Decl> decls;
  ExprP term;
};

}  // namespace nbe::surface
