#pragma once

// Scoping and typing of parsed files.  Names become de Bruijn indices
// (innermost binder = zero); the result has been checked by the calculus's
// own infer.  Polarized pattern clauses are compiled to Add trees.

#include <string>
#include <vector>

#include "nbe/cbpv/syntax.hpp"
#include "nbe/polarized/syntax.hpp"
#include "nbe/stlc/syntax.hpp"
#include "nbe/surface/ast.hpp"

namespace nbe::surface {

template <class Ctx, class Term, class Ty>
struct Program {
  Ctx ctx;
  std::vector<std::string> names;  // parallel to ctx
  Term term;
  Ty ty;
};

using StlcProgram = Program<stlc::Context, stlc::Term, stlc::Ty>;
using CbpvProgram = Program<cbpv::Context, cbpv::Tm, cbpv::Ty>;
using PolarizedProgram = Program<polarized::Context, polarized::Tm, polarized::Ty>;

StlcProgram elaborate_stlc(const SourceFile& file);
CbpvProgram elaborate_cbpv(const SourceFile& file);
PolarizedProgram elaborate_polarized(const SourceFile& file);

}  // namespace nbe::surface
