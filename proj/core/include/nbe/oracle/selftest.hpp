#pragma once

// Generator-driven property suites, shared by `nbe selftest` and the
// acceptance tests.  Case k of a suite uses sub_seed(seed, k), so a failure
// is reproducible from the printed seed alone.

#include <cstdint>
#include <string>
#include <vector>

#include "nbe/calculus.hpp"
#include "nbe/oracle/axioms.hpp"
#include "nbe/oracle/finite.hpp"
#include "nbe/oracle/generate.hpp"
#include "nbe/stlc/nbe.hpp"

namespace nbe::oracle {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t passed = 0;
  std::size_t skipped = 0;     // DomainTooLarge
  std::size_t validated = 0;   // normal forms that passed the grammar check
  std::size_t invalid = 0;
  std::size_t structural = 0;  // monad suite: identical normal forms
  double max_ms = 0;           // slowest single normalization
  double total_ms = 0;
  std::vector<std::string> failures;  // the first few, with seeds

  bool ok() const { return passed + skipped == cases && invalid == 0; }
};

// norm(erase(norm t)) = norm t.
SuiteResult idempotence(Calculus c, std::uint64_t seed, std::size_t cases, const GenConfig& cfg = {},
                        stlc::Monad monad = stlc::Monad::Free);

// t and erase(norm t) agree in the set model.
SuiteResult soundness(Calculus c, std::uint64_t seed, std::size_t cases, const Model& m = {},
                      const GenConfig& cfg = {}, stlc::Monad monad = stlc::Monad::Free);

// Free covers against continuations on STLC: oracle-equivalent always,
// structurally equal counted.
SuiteResult monads(std::uint64_t seed, std::size_t cases, const Model& m = {}, const GenConfig& cfg = {});

// Both sides of every schema instance normalize identically, under both
// monads.  `per_schema` instances of each of the 16 schemas.
SuiteResult axioms(std::uint64_t seed, std::size_t per_schema, const AxiomConfig& cfg = {});

std::string summary(const SuiteResult& r);

}  // namespace nbe::oracle
