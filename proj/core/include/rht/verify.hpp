#pragma once

// The engine's end-to-end verification suite: twelve exact criteria covering
// d^2 = 0 across the catalog, reproduction of every closed-form model along
// an independent construction path, the orbit-map equivalence decision,
// Betti references, torsion and characteristic formulas, elimination closed
// forms, combinatorial identities, the real-family Thom comparison,
// splitting-principle oracles, and serialization determinism.

#include <iosfwd>
#include <optional>

namespace rht {

struct VerifyOptions {
  // When set, lowers the top of every criterion's n-range (never below the
  // range's minimum, so each criterion still runs at least one case).
  // Unset runs the full documented ranges.
  std::optional<long> n_cap;
};

// Runs the suite, printing one pass/FAIL line per criterion (with indented
// notes carrying pinned conventions and failure diagnostics) to `out`.
// Returns the number of failing criteria; 0 means the suite is green.
int run_verification_suite(std::ostream& out, const VerifyOptions& options = {});

}  // namespace rht
