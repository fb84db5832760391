#pragma once

#include "mmforge/matrix.hpp"

// Closed-form base matrices for the two-eigenvalue constructions. Radicals are
// evaluated in long double and rounded once.
namespace mmforge::constants {

/// On (K_{2,0} u K_{1,1})^c: vertices 0, 1 form the dominating pair, 2 and 3
/// are the non-adjacent pair. Spectrum {0, 0, 1, 1}.
SymMatrix base_k20_k11();

/// On (K_{1,0} u 2K_{1,1})^c: pairs {0,1}, {2,3}, dominating vertex 4.
/// Spectrum {0^3, 1^2}.
SymMatrix base_k10_2k11();

/// On (K_{1,0} u 3K_{1,1})^c: dominating vertex 0, pairs {1,2}, {3,4}, {5,6}.
/// Spectrum {0^4, 1^3}. The 3x3 leading block is the symmetric completion that
/// makes the matrix idempotent; rows 3..6 and the coupling are the original
/// values.
SymMatrix base_k10_3k11();

/// Odd start of the paired chain, on (2K_{1,1})^c with pairs {0,1}, {2,3}.
/// Spectrum {0, 1, 1 + a, 1 + a} for a > 0.
SymMatrix odd_chain_start(double a);

/// On (K_{1,0} u K_{1,1})^c with vertex 0 dominating. Spectrum {3, sqrt3, -sqrt3}.
SymMatrix k10_k11_seed();

}  // namespace mmforge::constants
