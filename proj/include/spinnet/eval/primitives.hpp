#pragma once

#include "spinnet/core/exact_scalar.hpp"
#include "spinnet/core/network.hpp"
#include "spinnet/eval/eval_cache.hpp"

namespace spinnet {

// Evaluation convention
// ---------------------
// A unit of label n is n spin-1/2 strands joined by the antisymmetrizer
// (1/n!) sum_s sgn(s) s, every closed strand loop counts -2, and strands
// pass through each other freely. A vertex (a, b, c) routes
// (a+b-c)/2 strands between slots 0 and 1, (b+c-a)/2 between 1 and 2 and
// (c+a-b)/2 between 2 and 0, drawn without crossings with the slots in
// counterclockwise order. This is the binor (loop = -2) calculus; with the
// vertex drawing fixed by slot order it is defined for any abstract graph.
//
// Reversing the cyclic order of one vertex multiplies a closed value by
// reorientation_sign(a, b, c). Probabilities are built from mirror pairings
// in which every such sign appears squared.

/// (-1)^n (n + 1).
[[nodiscard]] ExactScalar loop_value(SpinLabel n);

/// Planar theta network with edges a, b, c. Throws InadmissibleTriple.
[[nodiscard]] ExactScalar theta_value(SpinLabel a, SpinLabel b, SpinLabel c, EvalCache& cache);
[[nodiscard]] ExactScalar theta_value(SpinLabel a, SpinLabel b, SpinLabel c);

/// Planar tetrahedral network with vertex triads (a,b,c), (a,e,f), (d,b,f),
/// (d,e,c); opposite edge pairs are (a,d), (b,e), (c,f), matching the column
/// layout of the 6j symbol {a b c; d e f}. Throws InadmissibleTriple.
[[nodiscard]] ExactScalar tet_value(SpinLabel a, SpinLabel b, SpinLabel c, SpinLabel d,
                                    SpinLabel e, SpinLabel f, EvalCache& cache);
[[nodiscard]] ExactScalar tet_value(SpinLabel a, SpinLabel b, SpinLabel c, SpinLabel d,
                                    SpinLabel e, SpinLabel f);

/// Sign picked up by a closed value when one vertex with labels (a, b, c)
/// has two of its slots exchanged: (-1)^(ij + jk + ki) with i, j, k the
/// strand counts routed between slot pairs.
[[nodiscard]] int reorientation_sign(int a, int b, int c) noexcept;

/// Canonical tetrahedral key: lexicographically smallest of the 24 relabelings
/// of (a..f) under the symmetry group of the tetrahedron.
[[nodiscard]] EvalCache::Labels canonical_tet_key(const EvalCache::Labels& labels);

}  // namespace spinnet
