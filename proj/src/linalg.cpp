// SPDX-License-Identifier: Apache-2.0
#include "bilmult/linalg.hpp"

#include "bilmult/error.hpp"

namespace bilmult {

namespace {

std::size_t cols_of(const Matrix& A) { return A.empty() ? 0 : A.front().size(); }

}  // namespace

Matrix mat_zero(const FieldDescriptor& F, std::size_t rows, std::size_t cols) {
  return Matrix(rows, std::vector<Element>(cols, gf_zero(F)));
}

Matrix mat_identity(const FieldDescriptor& F, std::size_t n) {
  Matrix I = mat_zero(F, n, n);
  for (std::size_t i = 0; i < n; ++i) I[i][i] = gf_one(F);
  return I;
}

Matrix mat_mul(const FieldDescriptor& F, const Matrix& A, const Matrix& B) {
  if (cols_of(A) != B.size()) throw Error(ErrorCode::DimensionMismatch, "matrix product shapes differ");
  Matrix C = mat_zero(F, A.size(), cols_of(B));
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t k = 0; k < B.size(); ++k) {
      if (gf_is_zero(A[i][k])) continue;
      for (std::size_t j = 0; j < cols_of(B); ++j) C[i][j] = gf_add(F, C[i][j], gf_mul(F, A[i][k], B[k][j]));
    }
  }
  return C;
}

Matrix mat_transpose(const Matrix& A) {
  Matrix T(cols_of(A), std::vector<Element>(A.size()));
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = 0; j < cols_of(A); ++j) T[j][i] = A[i][j];
  }
  return T;
}

std::vector<Element> mat_vec(const FieldDescriptor& F, const Matrix& A, const std::vector<Element>& v) {
  if (cols_of(A) != v.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shapes differ");
  std::vector<Element> out(A.size(), gf_zero(F));
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] = gf_add(F, out[i], gf_mul(F, A[i][j], v[j]));
  }
  return out;
}

Matrix mat_inverse(const FieldDescriptor& F, const Matrix& A) {
  const std::size_t n = A.size();
  if (cols_of(A) != n) throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  Matrix M = A;
  Matrix R = mat_identity(F, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && gf_is_zero(M[piv][c])) ++piv;
    if (piv == n) throw Error(ErrorCode::Singular, "matrix is not invertible");
    std::swap(M[piv], M[c]);
    std::swap(R[piv], R[c]);
    const Element inv = gf_inv(F, M[c][c]);
    for (std::size_t j = 0; j < n; ++j) {
      M[c][j] = gf_mul(F, M[c][j], inv);
      R[c][j] = gf_mul(F, R[c][j], inv);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || gf_is_zero(M[i][c])) continue;
      const Element f = M[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        M[i][j] = gf_sub(F, M[i][j], gf_mul(F, f, M[c][j]));
        R[i][j] = gf_sub(F, R[i][j], gf_mul(F, f, R[c][j]));
      }
    }
  }
  return R;
}

std::size_t mat_rank(const FieldDescriptor& F, Matrix M) {
  const std::size_t rows = M.size();
  const std::size_t cols = cols_of(M);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && gf_is_zero(M[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(M[piv], M[rank]);
    const Element inv = gf_inv(F, M[rank][c]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (gf_is_zero(M[i][c])) continue;
      const Element f = gf_mul(F, M[i][c], inv);
      for (std::size_t j = c; j < cols; ++j) M[i][j] = gf_sub(F, M[i][j], gf_mul(F, f, M[rank][j]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace bilmult
