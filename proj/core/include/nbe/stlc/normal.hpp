#pragma once

// β-normal η-long forms of the simply-typed λ-calculus with weak sums.
//
//   Nf ::= ne Ne (atoms only) | abs Nf | unit | pair Nf Nf | inj_i Nf
//        | case Ne Nf Nf (positive result) | abort Ne (positive result)
//   Ne ::= var x | app Ne Nf | prj_i Ne

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nbe/stlc/syntax.hpp"

namespace nbe::stlc {

class Nf;

class Ne {
 public:
  enum class Kind : std::uint8_t { Var, App, Prj };

  static Ne var(Idx x);
  static Ne app(Ne fn, Nf arg);
  static Ne prj(int which, Ne of);

  Kind kind() const noexcept;
  Idx idx() const noexcept;
  int which() const noexcept;
  const Ne& head() const;
  const Nf& arg() const;

  friend bool operator==(const Ne& a, const Ne& b);

 private:
  struct Node;
  explicit Ne(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class Nf {
 public:
  enum class Kind : std::uint8_t { NeAtom, Abs, Unit, Pair, Inj, Case, Abort };

  static Nf ne(Ne u);
  static Nf abs(Nf body);
  static Nf unit();
  static Nf pair(Nf first, Nf second);
  static Nf inj(int which, Nf of);
  static Nf case_(Ne scrut, Nf left, Nf right);
  static Nf abort(Ne scrut);

  Kind kind() const noexcept;
  int which() const noexcept;
  // The embedded neutral of NeAtom, or the scrutinee of Case/Abort.
  const Ne& neutral() const;
  const Nf& sub(std::size_t i) const;

  friend bool operator==(const Nf& a, const Nf& b);

 private:
  struct Node;
  explicit Nf(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Ne::Node {
  Kind kind;
  Idx idx{};
  int which = 0;
  std::optional<Ne> head;
  std::optional<Nf> arg;
};

struct Nf::Node {
  Kind kind;
  int which = 0;
  std::optional<Ne> neutral;
  std::vector<Nf> subs;
};

inline Ne::Kind Ne::kind() const noexcept { return node_->kind; }
inline Idx Ne::idx() const noexcept { return node_->idx; }
inline int Ne::which() const noexcept { return node_->which; }
inline const Ne& Ne::head() const { return node_->head.value(); }
inline const Nf& Ne::arg() const { return node_->arg.value(); }

inline Nf::Kind Nf::kind() const noexcept { return node_->kind; }
inline int Nf::which() const noexcept { return node_->which; }
inline const Ne& Nf::neutral() const { return node_->neutral.value(); }
inline const Nf& Nf::sub(std::size_t i) const { return node_->subs.at(i); }

Ne rename(const Ope& tau, const Ne& u);
Nf rename(const Ope& tau, const Nf& n);

// Type of a neutral, read off the context (neutrals are syntax-directed).
Ty infer_ne(const Context& ctx, const Ne& u);

// Erasure to annotated terms; the type supplies Abs/Inj/Abort annotations.
Term erase(const Context& ctx, const Ty& ty, const Nf& n);
Term erase(const Context& ctx, const Ne& u);

// Grammar check independent of the normalizer: η-long at negative types,
// ne only at atoms, case/abort only at positive types.  Throws
// ValidationFailure with a path description on the first violation.
void validate(const Context& ctx, const Ty& ty, const Nf& n);
bool is_valid(const Context& ctx, const Ty& ty, const Nf& n);

// Eliminations of neutral sums into arbitrary (also negative) types.
Nf abort_any(const Ty& result, const Ne& u);
Nf case_any(const Ty& result, const Ne& u, const Nf& left, const Nf& right);

std::string dump(const Ne& u);
std::string dump(const Nf& n);

}  // namespace nbe::stlc
