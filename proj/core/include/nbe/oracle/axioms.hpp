#pragma once

// Random instances of the βηπ axioms for STLC with weak sums.  Each instance
// is a pair of well-typed terms that the equational theory identifies, so
// norm must send both sides to the same normal form.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "nbe/oracle/generate.hpp"
#include "nbe/stlc/syntax.hpp"

namespace nbe::oracle {

enum class Axiom : std::uint8_t {
  BetaArr,
  BetaProd,
  BetaSum,
  EtaArr,
  EtaProd,
  EtaOne,
  EtaSum,
  EtaZero,
  PiArrZero,
  PiArrSum,
  PiProdZero,
  PiProdSum,
  PiSumZero,
  PiSumSum,
  PiZeroZero,
  PiZeroSum,
};

inline constexpr std::array<Axiom, 16> kAxioms = {
    Axiom::BetaArr,   Axiom::BetaProd,   Axiom::BetaSum,   Axiom::EtaArr,    Axiom::EtaProd,  Axiom::EtaOne,
    Axiom::EtaSum,    Axiom::EtaZero,    Axiom::PiArrZero, Axiom::PiArrSum,  Axiom::PiProdZero, Axiom::PiProdSum,
    Axiom::PiSumZero, Axiom::PiSumSum,   Axiom::PiZeroZero, Axiom::PiZeroSum,
};

// "β⇒", "π++", ...
std::string_view name(Axiom a);
// Also accepts ASCII spellings: beta-arr, pi-sum-sum, ...
std::optional<Axiom> parse_axiom(std::string_view s);

struct AxiomInstance {
  Axiom axiom;
  stlc::Context ctx;
  stlc::Ty ty;
  stlc::Term lhs;
  stlc::Term rhs;
  unsigned retries = 0;
};

struct AxiomConfig {
  std::size_t size = 5;        // per metavariable
  std::size_t max_size = 25;   // instances with a larger lhs are redrawn
  std::size_t type_depth = 2;  // per type metavariable; composite types reach depth 3
  std::size_t attempts = 256;
};

// Deterministic in (axiom, seed).  Throws GenerationExhausted.
AxiomInstance gen_axiom_instance(Axiom a, std::uint64_t seed, const AxiomConfig& cfg = {});

// t[u] for t in Γ.A and u in Γ, where |Γ| = n.  Test infrastructure only.
stlc::Term subst(const stlc::Term& t, const stlc::Term& u, std::size_t n);

}  // namespace nbe::oracle
