#pragma once

// Contexts, de Bruijn indices and order-preserving embeddings (OPEs).
//
// A context is a snoc list stored in a std::vector: back() is the most
// recently bound entry and is addressed by index zero.  An OPE Γ ⊆ Δ is kept
// as a reified spine of Lift/Weak steps over the target context Δ, in the
// same snoc order, so that spine().back() is the outermost constructor.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nbe/error.hpp"

namespace nbe {

struct Idx {
  std::uint32_t depth = 0;

  constexpr Idx() = default;
  constexpr explicit Idx(std::uint32_t d) : depth(d) {}

  static constexpr Idx zero() { return Idx{0}; }
  constexpr Idx suc() const { return Idx{depth + 1}; }

  friend constexpr auto operator<=>(Idx, Idx) = default;
};

std::ostream& operator<<(std::ostream& os, Idx x);

template <class T>
using Ctx = std::vector<T>;

template <class T>
bool valid_in(const Ctx<T>& ctx, Idx x) {
  return x.depth < ctx.size();
}

template <class T>
const T& lookup(const Ctx<T>& ctx, Idx x) {
  if (!valid_in(ctx, x)) {
    fail(Errc::IndexOutOfRange, "index " + std::to_string(x.depth) + " in context of length " +
                                    std::to_string(ctx.size()));
  }
  return ctx[ctx.size() - 1 - x.depth];
}

template <class T>
Ctx<T> extend(Ctx<T> ctx, T entry) {
  ctx.push_back(std::move(entry));
  return ctx;
}

enum class Step : std::uint8_t { Lift, Weak };

class Ope {
 public:
  // The empty embedding ε ⊆ ε.
  Ope() = default;
  explicit Ope(std::vector<Step> spine);

  static Ope id(std::size_t len);
  // wk^A : Γ ⊆ Γ.A, i.e. weak id.
  static Ope wk(std::size_t len);

  Ope lift() const;
  Ope weak() const;

  const std::vector<Step>& spine() const noexcept { return spine_; }
  std::size_t source_size() const noexcept { return source_size_; }
  std::size_t target_size() const noexcept { return spine_.size(); }
  bool is_identity() const noexcept { return source_size_ == spine_.size(); }

  // Reconstruct the source context from the target by folding the spine.
  template <class T>
  Ctx<T> source_of(const Ctx<T>& target) const {
    if (target.size() != target_size()) {
      fail(Errc::ContextMismatch, "OPE target has " + std::to_string(target_size()) +
                                      " entries, context has " + std::to_string(target.size()));
    }
    Ctx<T> out;
    out.reserve(source_size_);
    for (std::size_t i = 0; i < spine_.size(); ++i) {
      if (spine_[i] == Step::Lift) out.push_back(target[i]);
    }
    return out;
  }

  Idx reindex(Idx x) const;

  friend bool operator==(const Ope&, const Ope&) = default;

 private:
  std::vector<Step> spine_;
  std::size_t source_size_ = 0;
};

// τ1 ⨾ τ2 : Γ ⊆ Φ for τ1 : Γ ⊆ Δ and τ2 : Δ ⊆ Φ.
Ope compose(const Ope& first, const Ope& second);

inline Idx reindex(const Ope& tau, Idx x) { return tau.reindex(x); }

std::string to_string(const Ope& tau);
std::ostream& operator<<(std::ostream& os, const Ope& tau);

}  // namespace nbe
