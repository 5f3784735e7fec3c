#pragma once

// The focused calculus: CBPV without split/case/abort.  Positive values are
// only ever taken apart by a complete pattern tree (Add) at an abstraction
// or a bind, so contexts hold positive atoms and negative types only.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nbe/polarized/add.hpp"

namespace nbe::polarized {

class Tm;

class Val {
 public:
  enum class Kind : std::uint8_t { VarP, Thunk, Unit, Pair, Inj };

  static Val var(Idx x);  // must name an a+ hypothesis
  static Val thunk(Tm t);
  static Val unit();
  static Val pair(Val a, Val b);
  static Val inj(int which, Ty other, Val of);

  Kind kind() const noexcept;
  Idx idx() const noexcept;
  int which() const noexcept;
  const Ty& ty() const;
  const Val& val(std::size_t i) const;
  const Tm& tm() const;
  std::size_t size() const noexcept;

  friend bool operator==(const Val& a, const Val& b);

 private:
  struct Node;
  explicit Val(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class Tm {
 public:
  enum class Kind : std::uint8_t { VarN, Ret, Abs, PairN, UnitN, Force, App, Prj, Bind };

  static Tm var(Idx x);  // must name a negative hypothesis
  static Tm ret(Val v);
  // The full arrow type is kept: a body with no leaves (P containing 0)
  // says nothing about the codomain.
  static Tm abs(Ty arrow, Add<Tm> body);
  static Tm pair(Tm a, Tm b);
  static Tm unit();
  static Tm force(Val v);
  static Tm app(Tm fn, Val arg);
  static Tm prj(int which, Tm of);
  // bind t {body} : result, for t : F P and body decomposing P
  static Tm bind(Ty result, Tm t, Add<Tm> body);

  Kind kind() const noexcept;
  Idx idx() const noexcept;
  int which() const noexcept;
  const Ty& ty() const;  // Abs arrow, Bind result
  const Tm& tm(std::size_t i) const;
  const Val& val() const;
  const Add<Tm>& body() const;
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
  Idx idx{};
  int which = 0;
  std::optional<Ty> ty;
  std::vector<Tm> tms;
  std::vector<Val> vals;
  std::optional<Add<Tm>> body;
};

inline Val::Kind Val::kind() const noexcept { return node_->kind; }
inline Idx Val::idx() const noexcept { return node_->idx; }
inline int Val::which() const noexcept { return node_->which; }
inline const Ty& Val::ty() const { return node_->ty.value(); }
inline const Val& Val::val(std::size_t i) const { return node_->vals.at(i); }
inline const Tm& Val::tm() const { return node_->tms.at(0); }

inline Tm::Kind Tm::kind() const noexcept { return node_->kind; }
inline Idx Tm::idx() const noexcept { return node_->idx; }
inline int Tm::which() const noexcept { return node_->which; }
inline const Ty& Tm::ty() const { return node_->ty.value(); }
inline const Tm& Tm::tm(std::size_t i) const { return node_->tms.at(i); }
inline const Val& Tm::val() const { return node_->vals.at(0); }
inline const Add<Tm>& Tm::body() const { return node_->body.value(); }

// Throws TypeMismatch, UnboundVariable, PolarityViolation (a context entry
// that is not a hypothesis).
Ty infer(const Context& ctx, const Val& v);
Ty infer(const Context& ctx, const Tm& t);
void check_context(const Context& ctx);

Val rename(const Ope& tau, const Val& v);
Tm rename(const Ope& tau, const Tm& t);

std::string dump(const Val& v);
std::string dump(const Tm& t);

}  // namespace nbe::polarized
