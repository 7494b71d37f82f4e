#pragma once

// Exact integer linear algebra over Z: Smith normal form, kernels,
// cokernels and lattice indices. Everything is unbounded (GMP).

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace tamagawa {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense row-major matrix of unbounded integers. Zero rows or columns are legal.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const std::vector<Integer>& entries);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  IntMatrix transpose() const;
  IntMatrix column(std::size_t j) const;
  /// Columns [first, last).
  IntMatrix columns(std::size_t first, std::size_t last) const;
  IntMatrix rows_range(std::size_t first, std::size_t last) const;
  bool is_zero() const;
  std::vector<std::vector<Integer>> to_rows() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const Integer& c, const IntMatrix& a);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

  // Elementary operations; used by the normal-form routines.
  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  /// row_i += c * row_j
  void add_row_multiple(std::size_t i, std::size_t j, const Integer& c);
  /// col_i += c * col_j
  void add_col_multiple(std::size_t i, std::size_t j, const Integer& c);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

/// [a | b], same row count.
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
/// [a ; b], same column count.
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix matrix_power(const IntMatrix& a, unsigned long exponent);
/// Bareiss fraction-free determinant.
Integer determinant(const IntMatrix& a);

/// Finite-or-not abelian group Z^free_rank x Z/d_1 x ... x Z/d_k with d_i | d_{i+1}, d_i >= 2.
class FinAbGroup {
 public:
  FinAbGroup() = default;
  /// Accepts arbitrary cyclic orders (0 meaning Z, 1 dropped) and normalises to invariant factors.
  static FinAbGroup from_cyclic_orders(const std::vector<Integer>& orders);
  /// Takes an already canonical chain; throws std::invalid_argument otherwise.
  static FinAbGroup from_invariant_factors(std::vector<Integer> factors, std::size_t free_rank = 0);
  static FinAbGroup trivial() { return {}; }

  const std::vector<Integer>& invariant_factors() const { return factors_; }
  std::size_t free_rank() const { return free_rank_; }
  bool is_finite() const { return free_rank_ == 0; }
  bool is_trivial() const { return free_rank_ == 0 && factors_.empty(); }
  /// Throws std::logic_error when the group is infinite.
  Integer order() const;
  std::string to_string() const;

  friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;

 private:
  std::vector<Integer> factors_;
  std::size_t free_rank_ = 0;
};

std::ostream& operator<<(std::ostream& os, const FinAbGroup& g);

struct SmithForm {
  IntMatrix left;      // U, rows x rows, unimodular
  IntMatrix diagonal;  // D = U * M * V
  IntMatrix right;     // V, cols x cols, unimodular
  std::size_t rank = 0;
};

/// Smith normal form U*M*V = D, diagonal entries non-negative with d_1 | d_2 | ...
SmithForm snf(const IntMatrix& m);

/// Z^rows / (column span of m).
FinAbGroup cokernel_structure(const IntMatrix& m);

/// Columns form a saturated basis of {x in Z^cols : m x = 0}.
IntMatrix kernel_basis(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);

/// Basis (as columns) of the lattice generated by the columns of `generators`.
IntMatrix lattice_basis(const IntMatrix& generators);

/// Integer solution C of basis * C = targets, or nullopt when some column of
/// `targets` is not in the Z-span of the columns of `basis`.
/// `basis` must have full column rank.
std::optional<IntMatrix> solve_in_basis(const IntMatrix& basis, const IntMatrix& targets);

/// [L_big : L_small] for full-column-rank bases of lattices of equal rank.
/// Throws InputError if L_small is not contained in L_big or either is rank deficient.
Integer sublattice_index(const IntMatrix& big, const IntMatrix& small);

/// span(big_generators) / span(small_generators); the small lattice must lie in the big one.
FinAbGroup quotient_structure(const IntMatrix& big_generators, const IntMatrix& small_generators);

/// True when every column of `vectors` lies in the span of `relations`.
bool in_lattice(const IntMatrix& vectors, const IntMatrix& relations);

}  // namespace tamagawa
