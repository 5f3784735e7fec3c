#pragma once

// Concrete syntax with minimal parentheses.  Binders are named x0, x1, ...
// in the order they are printed, skipping names of the free variables, so
// that parse followed by elaboration gives back the same term.

#include <string>
#include <vector>

#include "nbe/cbpv/syntax.hpp"
#include "nbe/polarized/syntax.hpp"
#include "nbe/stlc/syntax.hpp"

namespace nbe::surface {

std::string pretty(const stlc::Ty& ty);
std::string pretty(const cbpv::Ty& ty);  // also the polarized types

std::string pretty(const stlc::Term& t, const std::vector<std::string>& names);
std::string pretty(const cbpv::Tm& t, const std::vector<std::string>& names);
std::string pretty(const polarized::Tm& t, const std::vector<std::string>& names);

// Names v0, v1, ... for a context of n entries.
std::vector<std::string> default_names(std::size_t n);

// A whole source file: one `var` line per context entry, then the term.  A
// closed term is printed on its own.
template <class Ctx, class Term>
std::string pretty_file(const Ctx& ctx, const std::vector<std::string>& names, const Term& t) {
  if (ctx.empty()) return pretty(t, names);
  std::string out;
  for (std::size_t i = 0; i < ctx.size(); ++i) out += "var " + names.at(i) + " : " + pretty(ctx[i]) + " ;\n";
  return out + "term " + pretty(t, names);
}

}  // namespace nbe::surface
