#pragma once

#include <string_view>

#include "nbe/calculus.hpp"
#include "nbe/surface/ast.hpp"

namespace nbe::surface {

// `var x : T ;`* `term`? e.  Throws ParseError with the first error's
// location and what would have been accepted there.
SourceFile parse(std::string_view text, Calculus calculus);

}  // namespace nbe::surface
