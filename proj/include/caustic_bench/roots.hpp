#pragma once

// Real-root isolation for univariate polynomials on an interval.  Roots of p
// are bracketed between critical points (found recursively from p'), then
// polished by bisection and guarded Newton.  Deterministic; handles roots of
// even multiplicity where p touches zero without a sign change.

#include <vector>

#include "caustic_bench/poly.hpp"

namespace caustics {

// All real roots of p in [lo, hi], sorted ascending, deduplicated, each
// located to absolute tolerance ~1e-13.
std::vector<double> real_roots(const Poly1& p, double lo, double hi);

}  // namespace caustics
