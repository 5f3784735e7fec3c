#pragma once

// Deterministic, type-directed generators of well-typed terms.  A goal type
// is picked first and an inhabitant is built from variables, introductions,
// eliminations and deliberate redexes, so that normalization has work to do.

#include <cstdint>
#include <optional>
#include <random>

#include "nbe/cbpv/syntax.hpp"
#include "nbe/polarized/syntax.hpp"
#include "nbe/stlc/syntax.hpp"

namespace nbe::oracle {

using Rng = std::mt19937_64;

struct GenConfig {
  std::size_t size = 30;       // soft bound on term size
  std::size_t type_depth = 2;  // bound on generated type depth
  std::size_t max_ctx = 3;     // free variables
  std::size_t budget = 5000;   // search steps per attempt
  std::size_t attempts = 64;   // sub-seeds tried before GenerationExhausted
};

struct StlcSample {
  stlc::Context ctx;
  stlc::Term term;
  stlc::Ty ty;
  unsigned retries = 0;
};

struct CbpvSample {
  cbpv::Context ctx;
  cbpv::Tm term;
  cbpv::Ty ty;
  unsigned retries = 0;
};

struct PolarizedSample {
  polarized::Context ctx;
  polarized::Tm term;
  polarized::Ty ty;
  unsigned retries = 0;
};

// Same seed, same config ⇒ same output.  Throws GenerationExhausted.
StlcSample gen_stlc(std::uint64_t seed, const GenConfig& cfg = {});
CbpvSample gen_cbpv(std::uint64_t seed, const GenConfig& cfg = {});
PolarizedSample gen_polarized(std::uint64_t seed, const GenConfig& cfg = {});

// An inhabitant of ty in ctx, or nothing within cfg.size and cfg.budget.
std::optional<stlc::Term> inhabit(Rng& rng, const stlc::Context& ctx, const stlc::Ty& ty, const GenConfig& cfg);

// Random types, for property tests.  One atom per polarity.
stlc::Ty random_stlc_type(Rng& rng, std::size_t depth);
cbpv::Ty random_pos_type(Rng& rng, std::size_t depth, bool thunks = true);
cbpv::Ty random_neg_type(Rng& rng, std::size_t depth);

// Sub-seed for attempt k of seed s.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t k);

}  // namespace nbe::oracle
