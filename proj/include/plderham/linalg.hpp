#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "plderham/rational.hpp"

namespace plderham {

// Sparse vector over Q: (column, value) pairs sorted by column, values nonzero.
using SparseVec = std::vector<std::pair<int, Rational>>;

SparseVec sparse_axpy(const SparseVec& a, const Rational& c, const SparseVec& b);
SparseVec sparse_scale(const SparseVec& a, const Rational& c);
Rational sparse_get(const SparseVec& a, int col);
SparseVec dense_to_sparse(const std::vector<Rational>& v);
std::vector<Rational> sparse_to_dense(const SparseVec& v, int ncols);
Rational sparse_dot(const SparseVec& a, const SparseVec& b);

class SparseMatrix {
 public:
  SparseMatrix() = default;
  explicit SparseMatrix(int ncols) : ncols_(ncols) {}

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return ncols_; }
  void add_row(SparseVec row);
  const SparseVec& row(int i) const { return rows_[i]; }

  std::vector<Rational> apply(const std::vector<Rational>& x) const;
  SparseVec apply_sparse(const SparseVec& x) const;
  SparseMatrix transpose() const;
  SparseMatrix multiply(const SparseMatrix& rhs) const;  // (m×n)·(n×k)
  bool is_zero() const;

  static SparseMatrix identity(int n);

 private:
  int ncols_ = 0;
  std::vector<SparseVec> rows_;
};

// Reduced row echelon form. The RREF of a matrix is unique, so everything
// derived from it here (pivot columns, kernel basis, particular solutions
// with free variables set to zero) is canonical: independent of row order
// and of the pivot-row selection heuristic used during elimination.
struct Rref {
  SparseMatrix mat;              // pivot rows, sorted by pivot column
  std::vector<int> pivot_cols;   // ascending
  int rank() const { return static_cast<int>(pivot_cols.size()); }
};

Rref rref(const SparseMatrix& a);
int rank_of(const SparseMatrix& a);

// One canonical kernel vector per free column, in ascending column order.
std::vector<SparseVec> kernel_basis(const SparseMatrix& a);

struct KernelResult {
  std::vector<SparseVec> basis;  // basis[k] has a 1 at free_cols[k]
  std::vector<int> free_cols;    // ascending
};
KernelResult kernel_with_free(const SparseMatrix& a);

// [a | b] side by side (column offset for b).
SparseMatrix hconcat(const SparseMatrix& a, const SparseMatrix& b);

// Canonical row-space basis of the COLUMN space of a (i.e. image of x ↦ a·x).
std::vector<SparseVec> image_basis(const SparseMatrix& a);

// Canonical particular solution of a·x = b (leftmost pivots, free variables
// zero); nullopt when the system is inconsistent. The map b ↦ x is linear
// on the set of b for which the system is solvable.
std::optional<std::vector<Rational>> solve(const SparseMatrix& a,
                                           const std::vector<Rational>& b);

// Shared-elimination variant for many right-hand sides.
std::vector<std::optional<std::vector<Rational>>> solve_many(
    const SparseMatrix& a, const std::vector<std::vector<Rational>>& bs);

// Incrementally maintained row space, for span-membership tests.
class RowSpan {
 public:
  explicit RowSpan(int ncols) : ncols_(ncols) {}
  bool contains(const SparseVec& v) const;
  bool insert(SparseVec v);  // true if v enlarged the span
  int rank() const { return static_cast<int>(rows_.size()); }
  int cols() const { return ncols_; }

 private:
  SparseVec reduce(SparseVec v) const;
  int ncols_;
  std::vector<SparseVec> rows_;  // each with a distinct leading column, normalized
};

}  // namespace plderham
