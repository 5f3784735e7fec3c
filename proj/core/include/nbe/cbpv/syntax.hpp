#pragma once

// Pure call-by-push-value: value (positive) and computation (negative)
// types, values and terms.  Contexts hold positive types only.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nbe/kernel.hpp"

namespace nbe::cbpv {

class Ty {
 public:
  enum class Kind : std::uint8_t {
    // positive
    AtomP, Zero, One, Sum, Prod, Thunk,
    // negative
    AtomN, Top, With, Arr, Comp
  };

  static Ty atom_pos(std::string name);
  static Ty zero();
  static Ty one();
  static Ty sum(Ty left, Ty right);
  static Ty prod(Ty left, Ty right);
  static Ty thunk(Ty neg);
  static Ty atom_neg(std::string name);
  static Ty top();
  static Ty with(Ty left, Ty right);
  static Ty arr(Ty dom, Ty cod);
  static Ty comp(Ty pos);

  Kind kind() const noexcept;
  const std::string& name() const noexcept;
  const Ty& left() const;   // also the Thunk/Comp payload and Arr domain
  const Ty& right() const;  // also the Arr codomain
  bool is_positive() const noexcept { return kind() <= Kind::Thunk; }
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

class Tm;

class Val {
 public:
  enum class Kind : std::uint8_t { Var, Thunk, Unit, Pair, Inj };

  static Val var(Idx x);
  static Val thunk(Tm t);
  static Val unit();
  static Val pair(Val a, Val b);
  static Val inj(int which, Ty other, Val of);

  Kind kind() const noexcept;
  Idx idx() const noexcept;
  int which() const noexcept;
  const Ty& ty() const;  // Inj other summand
  const Val& val(std::size_t i) const;
  const Tm& tm() const;  // Thunk body
  std::size_t size() const noexcept;

  friend bool operator==(const Val& a, const Val& b);

 private:
  struct Node;
  explicit Val(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class Tm {
 public:
  enum class Kind : std::uint8_t { Ret, Abs, PairN, UnitN, Force, App, Prj, Bind, Split, Case, Abort };

  static Tm ret(Val v);
  static Tm abs(Ty dom, Tm body);
  static Tm pair(Tm a, Tm b);
  static Tm unit();
  static Tm force(Val v);
  static Tm app(Tm fn, Val arg);
  static Tm prj(int which, Tm of);
  // let x : P <- t in u
  static Tm bind(Ty pos, Tm t, Tm body);
  static Tm split(Val v, Tm body);
  static Tm case_(Val v, Tm left, Tm right);
  static Tm abort(Ty result, Val v);

  Kind kind() const noexcept;
  int which() const noexcept;
  const Ty& ty() const;  // Abs domain, Bind annotation, Abort result
  const Tm& tm(std::size_t i) const;
  const Val& val() const;
  std::size_t size() const noexcept;

  friend bool operator==(const Tm& a, const Tm& b);

 private:
  struct Node;
  explicit Tm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Val::Node {
  Kind kind;
  Idx idx{};
  int which = 0;
  std::optional<Ty> ty;
  std::vector<Val> vals;
  std::vector<Tm> tms;
};

struct Tm::Node {
  Kind kind;
  int which = 0;
  std::optional<Ty> ty;
  std::vector<Tm> tms;
  std::vector<Val> vals;
};

inline Val::Kind Val::kind() const noexcept { return node_->kind; }
inline Idx Val::idx() const noexcept { return node_->idx; }
inline int Val::which() const noexcept { return node_->which; }
inline const Ty& Val::ty() const { return node_->ty.value(); }
inline const Val& Val::val(std::size_t i) const { return node_->vals.at(i); }
inline const Tm& Val::tm() const { return node_->tms.at(0); }

inline Tm::Kind Tm::kind() const noexcept { return node_->kind; }
inline int Tm::which() const noexcept { return node_->which; }
inline const Ty& Tm::ty() const { return node_->ty.value(); }
inline const Tm& Tm::tm(std::size_t i) const { return node_->tms.at(i); }
inline const Val& Tm::val() const { return node_->vals.at(0); }

// Throws TypeMismatch, UnboundVariable, BranchTypeDisagreement,
// PolarityViolation (malformed annotations).
Ty infer(const Context& ctx, const Val& v);
Ty infer(const Context& ctx, const Tm& t);

Val rename(const Ope& tau, const Val& v);
Tm rename(const Ope& tau, const Tm& t);

std::string show(const Ty& ty);
std::string dump(const Ty& ty);
std::string dump(const Val& v);
std::string dump(const Tm& t);

}  // namespace nbe::cbpv
