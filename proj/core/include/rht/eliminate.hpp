#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rht/morphism.hpp"

namespace rht {

// Contractible-pair elimination for Sullivan algebras.  Given generators x, y
// with d(x) = c*y + r, c = +1 or -1 (rescale the generator first otherwise)
// and y absent from r, the quotient by the acyclic differential ideal (x, dx)
// is again free on the remaining generators, with y replaced by -r/c
// everywhere.  The returned projection A -> A' is a quasi-isomorphism.
struct Elimination {
  CDGA reduced;
  Morphism projection;  // quasi-isomorphism A -> reduced
};

Elimination eliminate_pair(const CDGA& algebra, const Generator& x, const Generator& y);

// Iterated elimination of the named (x, y) pairs, left to right.  The
// returned projection is the composite of the individual projections.
Elimination eliminate_chain(const CDGA& algebra,
                            const std::vector<std::pair<std::string, std::string>>& pairs);

}  // namespace rht
