#pragma once

#include <cstddef>
#include <vector>

#include "tq/rational.hpp"

namespace tq {

using MatrixQ = std::vector<std::vector<Rational>>;

/// Determinant by Gaussian elimination over Q.
Rational determinant(MatrixQ m);

/// Inverse over Q; throws std::domain_error when singular.
MatrixQ inverse(const MatrixQ& m);

MatrixQ multiply(const MatrixQ& a, const MatrixQ& b);
MatrixQ transpose(const MatrixQ& a);

}  // namespace tq
