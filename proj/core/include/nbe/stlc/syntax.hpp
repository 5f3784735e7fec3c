#pragma once

// Simply-typed λ-calculus with weak sums: types and annotated de Bruijn terms.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nbe/kernel.hpp"

namespace nbe::stlc {

class Ty {
 public:
  enum class Kind : std::uint8_t { Atom, Zero, One, Sum, Prod, Arr };

  static Ty atom(std::string name = {});
  static Ty zero();
  static Ty one();
  static Ty sum(Ty left, Ty right);
  static Ty prod(Ty left, Ty right);
  static Ty arr(Ty dom, Ty cod);

  Kind kind() const noexcept;
  const std::string& name() const noexcept;
  const Ty& left() const;
  const Ty& right() const;

  // Atom/Zero/Sum are positive; One/Prod/Arr are negative.
  bool is_positive() const noexcept;
  bool is_negative() const noexcept { return !is_positive(); }
  std::size_t depth() const noexcept;

  friend bool operator==(const Ty& a, const Ty& b);

 private:
  struct Node;
  explicit Ty(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Ty::Node {
  Kind kind;
  std::string name;
  std::vector<Ty> children;
};

inline Ty::Kind Ty::kind() const noexcept { return node_->kind; }
inline const std::string& Ty::name() const noexcept { return node_->name; }
inline const Ty& Ty::left() const { return node_->children.at(0); }
inline const Ty& Ty::right() const { return node_->children.at(1); }

using Context = Ctx<Ty>;

class Term {
 public:
  enum class Kind : std::uint8_t { Var, Abs, App, Unit, Pair, Prj, Inj, Case, Abort };

  static Term var(Idx x);
  static Term abs(Ty dom, Term body);
  static Term app(Term fn, Term arg);
  static Term unit();
  static Term pair(Term first, Term second);
  static Term prj(int which, Term of);
  // `other` is the summand not being injected into.
  static Term inj(int which, Ty other, Term of);
  static Term case_(Term scrut, Term left, Term right);
  static Term abort(Ty result, Term of);

  Kind kind() const noexcept;
  Idx idx() const noexcept;
  int which() const noexcept;
  // Abs domain, Inj other summand, Abort result type.
  const Ty& ty() const;
  const Term& sub(std::size_t i) const;
  std::size_t size() const noexcept;

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Kind kind;
  Idx idx{};
  int which = 0;
  std::optional<Ty> ty;
  std::vector<Term> subs;
};

inline Term::Kind Term::kind() const noexcept { return node_->kind; }
inline Idx Term::idx() const noexcept { return node_->idx; }
inline int Term::which() const noexcept { return node_->which; }
inline const Ty& Term::ty() const { return node_->ty.value(); }
inline const Term& Term::sub(std::size_t i) const { return node_->subs.at(i); }

// Syntax-directed type inference.  Throws TypeMismatch, UnboundVariable or
// BranchTypeDisagreement.
Ty infer(const Context& ctx, const Term& t);

Term rename(const Ope& tau, const Term& t);

std::string show(const Ty& ty);
// Parenthesized constructor dump, one token per constructor.
std::string dump(const Ty& ty);
std::string dump(const Term& t);

}  // namespace nbe::stlc
