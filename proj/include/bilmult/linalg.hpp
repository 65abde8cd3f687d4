// SPDX-License-Identifier: Apache-2.0
#pragma once

// Dense matrices over a FieldDescriptor, row-major.

#include <vector>

#include "bilmult/gf.hpp"

namespace bilmult {

using Matrix = std::vector<std::vector<Element>>;

Matrix mat_zero(const FieldDescriptor& F, std::size_t rows, std::size_t cols);
Matrix mat_identity(const FieldDescriptor& F, std::size_t n);
Matrix mat_mul(const FieldDescriptor& F, const Matrix& A, const Matrix& B);
Matrix mat_transpose(const Matrix& A);
std::vector<Element> mat_vec(const FieldDescriptor& F, const Matrix& A, const std::vector<Element>& v);
// Throws Singular when A is not invertible.
Matrix mat_inverse(const FieldDescriptor& F, const Matrix& A);
std::size_t mat_rank(const FieldDescriptor& F, Matrix A);

}  // namespace bilmult
