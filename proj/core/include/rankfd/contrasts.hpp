#pragma once

#include <string>

#include "rankfd/matrix.hpp"

namespace rankfd {

/// A linear hypothesis C p = 0 together with the unique symmetric idempotent
/// projection T = C'(CC')^+ C onto C's row space. Tests depend on C only
/// through T.
struct HypothesisSpec {
    num::Matrix c;
    num::Matrix t;
    std::string label;
};

/// P_a = I_a - J_a / a; symmetric, idempotent, rank a - 1.
num::Matrix centering_matrix(std::size_t a);

/// Moore-Penrose pseudoinverse via SVD with relative cutoff
/// max(rows, cols) * eps * sigma_max.
num::Matrix moore_penrose(const num::Matrix& m);

/// Builds the projection for an arbitrary contrast matrix. Every row must
/// sum to zero (the effects always sum to d/2, so meaningful contrasts
/// annihilate the all-ones vector).
HypothesisSpec projection_from_contrast(const num::Matrix& c,
                                        std::string label = "custom");

/// One-way hypothesis of equal effects: C = T = P_d.
HypothesisSpec one_way_hypothesis(std::size_t d);

/// Projections for the crossed two-way layout with cells in row-major
/// order: main effect A, main effect B, interaction AB. Mutually orthogonal
/// and summing with J/(ab) to the identity.
struct TwoWayHypotheses {
    HypothesisSpec main_a;
    HypothesisSpec main_b;
    HypothesisSpec interaction;
};
TwoWayHypotheses two_way_hypotheses(std::size_t a, std::size_t b);

} // namespace rankfd
