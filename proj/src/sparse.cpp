#include "hdgbc/sparse.hpp"

#include <Eigen/SparseLU>

#include <cinttypes>
#include <cstdio>
#include <stdexcept>

namespace hdgbc {

SparseMat finalize(long dim, const std::vector<Triplet>& triplets) {
  for (const auto& t : triplets) {
    if (t.row() < 0 || t.row() >= dim || t.col() < 0 || t.col() >= dim) {
      throw std::out_of_range("triplet (" + std::to_string(t.row()) + ", " +
                              std::to_string(t.col()) +
                              ") outside matrix of dimension " +
                              std::to_string(dim));
    }
  }
  SparseMat matrix(dim, dim);
  matrix.setFromTriplets(triplets.begin(), triplets.end());
  matrix.makeCompressed();
  return matrix;
}

VecX factor_solve(const SparseMat& matrix, const VecX& rhs) {
  if (matrix.rows() != rhs.size()) {
    throw std::invalid_argument("rhs length " + std::to_string(rhs.size()) +
                                " does not match matrix dimension " +
                                std::to_string(matrix.rows()));
  }
  Eigen::SparseLU<SparseMat, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(matrix);
  lu.factorize(matrix);
  if (lu.info() != Eigen::Success) {
    throw solver_error("sparse LU factorization failed: " + lu.lastErrorMessage());
  }
  VecX x = lu.solve(rhs);
  if (lu.info() != Eigen::Success) {
    throw solver_error("sparse LU solve failed");
  }
  // One refinement pass keeps the residual at rounding level even when the
  // matrix entries span many orders of magnitude (the 1/epsilon flux block).
  const VecX r = rhs - matrix * x;
  x += lu.solve(r);
  return x;
}

double residual_norm(const SparseMat& matrix, const VecX& x, const VecX& b) {
  return (b - matrix * x).norm();
}

void write_matrix_market(const SparseMat& matrix, const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  std::fprintf(out, "%%%%MatrixMarket matrix coordinate real general\n");
  std::fprintf(out, "%" PRId64 " %" PRId64 " %" PRId64 "\n",
               static_cast<int64_t>(matrix.rows()),
               static_cast<int64_t>(matrix.cols()),
               static_cast<int64_t>(matrix.nonZeros()));
  for (int k = 0; k < matrix.outerSize(); ++k) {
    for (SparseMat::InnerIterator it(matrix, k); it; ++it) {
      std::fprintf(out, "%" PRId64 " %" PRId64 " %.17g\n",
                   static_cast<int64_t>(it.row() + 1),
                   static_cast<int64_t>(it.col() + 1), it.value());
    }
  }
  std::fclose(out);
}

} // namespace hdgbc
