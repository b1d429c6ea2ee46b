#ifndef HDGBC_SPARSE_HPP
#define HDGBC_SPARSE_HPP

#include "hdgbc/common.hpp"

#include <Eigen/Sparse>

#include <string>
#include <vector>

namespace hdgbc {

using Triplet = Eigen::Triplet<double>;
using SparseMat = Eigen::SparseMatrix<double>;

/// Builds a compressed square matrix from (row, col, value) entries;
/// duplicates are summed. Entries out of range throw.
SparseMat finalize(long dim, const std::vector<Triplet>& triplets);

/// Direct sparse LU solve (column-ordered, partial pivoting) with one
/// iterative refinement pass. Deterministic: identical inputs give identical
/// results. Throws solver_error on singular or otherwise unfactorizable
/// matrices, with the factorization diagnostic attached.
VecX factor_solve(const SparseMat& matrix, const VecX& rhs);

/// Euclidean norm of b - A x.
double residual_norm(const SparseMat& matrix, const VecX& x, const VecX& b);

/// Coordinate-format MatrixMarket dump, deterministic ordering and
/// formatting.
void write_matrix_market(const SparseMat& matrix, const std::string& path);

} // namespace hdgbc

#endif
