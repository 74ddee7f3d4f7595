#pragma once

#include <map>
#include <tuple>

#include "plderham/global_form.hpp"
#include "plderham/linalg.hpp"

namespace plderham {

// Finite-dimensional window onto the relative complex A^*(X, A): in degree q
// it spans the face-compatible assignments vanishing on A whose coefficient
// polynomials have total degree <= D - q. The coefficient degree drops under
// d while q rises, so d is an endomorphism of the window. Bases are the
// canonical kernel bases of the compatibility system; coordinates of a
// window form are read off at the free cells.
class FormWindow {
 public:
  struct Cell {
    SimplexRef simplex;
    std::vector<int> index_set;
    Polynomial::Exponents mono;
  };

  FormWindow(SimplicialSetPtr x, SubSet rel, int degree_bound);
  static FormWindow absolute(SimplicialSetPtr x, int degree_bound);

  const SimplicialSetPtr& space() const { return x_; }
  const SubSet& relative_to() const { return rel_; }
  int degree_bound() const { return bound_; }
  int top_degree() const { return top_; }  // highest q with cells (may be -1)

  int dim(int q) const;
  const std::vector<Cell>& cells(int q) const;
  const std::vector<SparseVec>& basis(int q) const;
  const GlobalForm& basis_form(int q, int k) const;
  SparseMatrix d_matrix(int q) const;  // dim(q+1) × dim(q)

  // Coordinates of a form that lies in this window (compatible, vanishing on
  // A, coefficient degree within bound). With `check`, the claim is verified
  // by re-materializing.
  std::vector<Rational> coordinates(const GlobalForm& w, bool check = false) const;
  GlobalForm materialize(int q, const std::vector<Rational>& coords) const;

 private:
  struct Level {
    std::vector<Cell> cells;
    std::map<std::tuple<SimplexRef, std::vector<int>, Polynomial::Exponents>, int> lookup;
    std::vector<SparseVec> basis;   // over cells
    std::vector<int> free_cols;
    mutable std::vector<GlobalForm> forms;  // materialized basis cache
    mutable bool forms_ready = false;
  };
  void build_level(int q);
  GlobalForm from_cells(int q, const std::map<int, Rational>& cellvals) const;
  const Level& level(int q) const;

  SimplicialSetPtr x_;
  SubSet rel_;
  int bound_;
  int top_;
  std::vector<Level> levels_;
};

}  // namespace plderham
