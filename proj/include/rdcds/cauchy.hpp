#pragma once

#include <cstddef>
#include <vector>

#include "rdcds/matrix.hpp"

namespace rdcds {

// The 2N evaluation points that generate the encode matrix. All values must
// be pairwise distinct mod q; that is exactly the condition under which every
// square submatrix of the Cauchy matrix is invertible, which both the decoder
// and the null-space construction rely on.
struct EvalPoints {
    std::vector<Symbol> xs;   // row points, one per server
    std::vector<Symbol> fs;   // column points
};

// x_n = n and f_n = N + n for n = 1..N, reduced mod q.
EvalPoints canonical_eval_points(std::size_t n, const PrimeField& field);

// Throws DegeneratePoints on duplicates or shape mismatch.
void validate_eval_points(const EvalPoints& pts, const PrimeField& field);

// N x N matrix with entry (i, j) = (x_i - f_j)^-1.
FieldMatrix cauchy_matrix(const EvalPoints& pts, const PrimeField& field);

} // namespace rdcds
