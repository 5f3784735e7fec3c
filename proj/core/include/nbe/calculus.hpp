#pragma once

#include <optional>
#include <string_view>

namespace nbe {

enum class Calculus { Stlc, Cbpv, Polarized };

constexpr std::string_view to_string(Calculus c) {
  switch (c) {
    case Calculus::Stlc: return "stlc";
    case Calculus::Cbpv: return "cbpv";
    case Calculus::Polarized: return "polarized";
  }
  return "?";
}

constexpr std::optional<Calculus> parse_calculus(std::string_view s) {
  if (s == "stlc") return Calculus::Stlc;
  if (s == "cbpv") return Calculus::Cbpv;
  if (s == "polarized") return Calculus::Polarized;
  return std::nullopt;
}

}  // namespace nbe
