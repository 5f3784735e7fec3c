#pragma once

// NbE for CBPV.  Positive types are interpreted directly (sums carry no
// cover); the cover monad appears only at F P and at negative atoms.
// Thunk is semantically transparent.

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "nbe/cbpv/normal.hpp"

namespace nbe::cbpv {

class Sem;

class SemFn {
 public:
  using Fn = std::function<Sem(const Ope&, const Sem&)>;

  SemFn(Ope acc, Fn fn);
  Sem apply(const Ope& tau, const Sem& a) const;
  SemFn renamed(const Ope& tau) const;

 private:
  SemFn(Ope acc, std::shared_ptr<const Fn> fn) : acc_(std::move(acc)), fn_(std::move(fn)) {}
  Ope acc_;
  std::shared_ptr<const Fn> fn_;
};

class Sem {
 public:
  // Unit and Pair serve both 1/× and ⊤/&.
  enum class Kind : std::uint8_t { Unit, Pair, Inl, Inr, AtomP, Fun, Comp, AtomN };

  static Sem unit();
  static Sem pair(Sem a, Sem b);
  static Sem inl(Sem a);
  static Sem inr(Sem a);
  static Sem atom(Idx x);
  static Sem fun(SemFn f);
  static Sem comp(Cov<Sem> c);
  static Sem atom_neg(Cov<Ne> c);

  Kind kind() const noexcept { return node_->kind; }
  const Sem& fst() const;
  const Sem& snd() const;
  const Sem& payload() const;  // Inl/Inr
  Idx idx() const;
  const SemFn& fn() const;
  const Cov<Sem>& comp() const;
  const Cov<Ne>& neutrals() const;

 private:
  struct Node {
    Kind kind;
    std::vector<Sem> parts;
    Idx idx{};
    std::optional<SemFn> fn;
    std::optional<Cov<Sem>> comp;
    std::optional<Cov<Ne>> neutrals;
  };
  explicit Sem(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

using Env = std::vector<Sem>;  // back() is index zero

Sem rename(const Ope& tau, const Sem& v);
Env rename(const Ope& tau, const Env& env);

// Positive reflection runs in the monad; negative reflection does not.
Cov<Sem> reflect(const Ty& pos, Idx x, std::size_t depth);
Sem reflect(const Ty& neg, const Ne& u, std::size_t depth);
// fresh^P at Γ.P; depth includes the new entry.
Cov<Sem> fresh(const Ty& pos, std::size_t depth);

Vnf reify_pos(const Ty& pos, const Sem& a, std::size_t depth);
Nf reify_neg(const Ty& neg, const Sem& b, std::size_t depth);

// run^N : Cov ⟦N⟧ → ⟦N⟧
Sem run(const Ty& neg, const Cov<Sem>& c, std::size_t depth);

Sem eval(const Context& ctx, const Val& v, const Env& env, std::size_t depth);
Sem eval(const Context& ctx, const Tm& t, const Env& env, std::size_t depth);

Cov<Env> id_env(const Context& ctx);

Nf norm(const Context& ctx, const Tm& t);

}  // namespace nbe::cbpv
