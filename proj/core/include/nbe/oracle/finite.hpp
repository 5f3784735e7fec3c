#pragma once

// The standard set model with finite atoms, used as an independent check on
// normalization: atoms denote {0..base-1}; U, F and polarity are invisible;
// Top is 1 and & is ×.  Functions are closures, compared extensionally by
// enumerating their domain.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "nbe/cbpv/syntax.hpp"
#include "nbe/polarized/syntax.hpp"
#include "nbe/stlc/syntax.hpp"

namespace nbe::oracle {

inline constexpr std::uint64_t kDefaultBound = 1'000'000;

struct Model {
  unsigned base = 2;
  // Largest set we are prepared to enumerate.
  std::uint64_t bound = kDefaultBound;
};

class FinTy {
 public:
  enum class Kind : std::uint8_t { Atom, Zero, One, Sum, Prod, Arr };

  static FinTy atom();
  static FinTy zero();
  static FinTy one();
  static FinTy sum(FinTy a, FinTy b);
  static FinTy prod(FinTy a, FinTy b);
  static FinTy arr(FinTy a, FinTy b);

  Kind kind() const noexcept { return node_->kind; }
  const FinTy& left() const { return node_->kids.at(0); }
  const FinTy& right() const { return node_->kids.at(1); }

 private:
  struct Node {
    Kind kind;
    std::vector<FinTy> kids;
  };
  explicit FinTy(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

FinTy fin_type(const stlc::Ty& t);
FinTy fin_type(const cbpv::Ty& t);

class FinVal {
 public:
  enum class Kind : std::uint8_t { Atom, Unit, Pair, Inj, Fun };
  using Fn = std::function<FinVal(const FinVal&)>;

  static FinVal atom(unsigned k);
  static FinVal unit();
  static FinVal pair(FinVal a, FinVal b);
  static FinVal inj(int which, FinVal a);
  static FinVal fun(Fn f);

  Kind kind() const noexcept { return node_->kind; }
  unsigned atom_value() const;
  int which() const;
  const FinVal& fst() const;
  const FinVal& snd() const;
  const FinVal& payload() const;
  FinVal operator()(const FinVal& x) const;

 private:
  struct Node {
    Kind kind;
    unsigned k = 0;
    std::vector<FinVal> parts;
    std::shared_ptr<const Fn> fn;
  };
  explicit FinVal(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

using FinEnv = std::vector<FinVal>;  // back() is index zero

// Saturates at bound + 1.
std::uint64_t cardinality(const FinTy& t, const Model& m);
// Every element, in a fixed order; DomainTooLarge above the bound.
std::vector<FinVal> enumerate(const FinTy& t, const Model& m);
// Position of v in enumerate(t).
std::uint64_t index_of(const FinTy& t, const FinVal& v, const Model& m);
bool fin_equal(const FinTy& t, const FinVal& a, const FinVal& b, const Model& m);
// Functions print as tables.
std::string show(const FinTy& t, const FinVal& v, const Model& m);

std::uint64_t env_count(const std::vector<FinTy>& ctx, const Model& m);
// Calls visit on every environment once; stops early if visit returns false.
void enum_envs(const std::vector<FinTy>& ctx, const Model& m, const std::function<bool(const FinEnv&)>& visit);

FinVal fin_eval(const stlc::Context& ctx, const stlc::Term& t, const FinEnv& env, const Model& m = {});
FinVal fin_eval(const cbpv::Context& ctx, const cbpv::Tm& t, const FinEnv& env, const Model& m = {});
FinVal fin_eval(const polarized::Context& ctx, const polarized::Tm& t, const FinEnv& env, const Model& m = {});

struct Verdict {
  bool equal = true;
  std::uint64_t envs = 0;
  std::string counterexample;  // empty when equal
};

Verdict oracle_equiv(const stlc::Context& ctx, const stlc::Term& a, const stlc::Term& b, const Model& m = {});
Verdict oracle_equiv(const cbpv::Context& ctx, const cbpv::Tm& a, const cbpv::Tm& b, const Model& m = {});
Verdict oracle_equiv(const polarized::Context& ctx, const polarized::Tm& a, const polarized::Tm& b,
                     const Model& m = {});

}  // namespace nbe::oracle
