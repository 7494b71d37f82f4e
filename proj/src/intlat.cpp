#include "tamagawa/intlat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "tamagawa/errors.hpp"

namespace tamagawa {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
    for (long v : row) entries_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Integer>& entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("IntMatrix: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::column(std::size_t j) const { return columns(j, j + 1); }

IntMatrix IntMatrix::columns(std::size_t first, std::size_t last) const {
  IntMatrix c(rows_, last - first);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = first; j < last; ++j) c(i, j - first) = (*this)(i, j);
  return c;
}

IntMatrix IntMatrix::rows_range(std::size_t first, std::size_t last) const {
  IntMatrix r(last - first, cols_);
  for (std::size_t i = first; i < last; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(i - first, j) = (*this)(i, j);
  return r;
}

bool IntMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Integer& v) { return v == 0; });
}

std::vector<std::vector<Integer>> IntMatrix::to_rows() const {
  std::vector<std::vector<Integer>> out(rows_, std::vector<Integer>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch in product");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix: dimension mismatch in sum");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.entries_.size(); ++k) c.entries_[k] += b.entries_[k];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix: dimension mismatch in difference");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.entries_.size(); ++k) c.entries_[k] -= b.entries_[k];
  return c;
}

IntMatrix operator*(const Integer& s, const IntMatrix& a) {
  IntMatrix c = a;
  for (auto& v : c.entries_) v *= s;
  return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row_multiple(std::size_t i, std::size_t j, const Integer& c) {
  for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) += c * (*this)(j, k);
}

void IntMatrix::add_col_multiple(std::size_t i, std::size_t j, const Integer& c) {
  for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) += c * (*this)(k, j);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t k = 0; k < rows_; ++k) (*this)(k, j) = -(*this)(k, j);
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  IntMatrix c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
  IntMatrix c(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) c(a.rows() + i, j) = b(i, j);
  }
  return c;
}

IntMatrix matrix_power(const IntMatrix& a, unsigned long exponent) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix_power: not square");
  IntMatrix result = IntMatrix::identity(a.rows());
  IntMatrix base = a;
  while (exponent) {
    if (exponent & 1UL) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// FinAbGroup

FinAbGroup FinAbGroup::from_cyclic_orders(const std::vector<Integer>& orders) {
  const SmithForm s = snf(IntMatrix::diagonal(orders));
  return cokernel_structure(s.diagonal);
}

FinAbGroup FinAbGroup::from_invariant_factors(std::vector<Integer> factors, std::size_t free_rank) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] < 2) throw std::invalid_argument("FinAbGroup: invariant factor below 2");
    if (i > 0 && !mpz_divisible_p(factors[i].get_mpz_t(), factors[i - 1].get_mpz_t()))
      throw std::invalid_argument("FinAbGroup: invariant factors do not form a divisibility chain");
  }
  FinAbGroup g;
  g.factors_ = std::move(factors);
  g.free_rank_ = free_rank;
  return g;
}

Integer FinAbGroup::order() const {
  if (free_rank_ != 0) throw std::logic_error("FinAbGroup::order: group is infinite");
  Integer n = 1;
  for (const auto& d : factors_) n *= d;
  return n;
}

std::string FinAbGroup::to_string() const {
  if (is_trivial()) return "1";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < free_rank_; ++i) {
    os << (first ? "" : " x ") << "Z";
    first = false;
  }
  for (const auto& d : factors_) {
    os << (first ? "" : " x ") << "Z/" << d;
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FinAbGroup& g) { return os << g.to_string(); }

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

struct Position {
  std::size_t row;
  std::size_t col;
};

// Smallest nonzero |entry| in the trailing block starting at (t, t).
std::optional<Position> smallest_in_block(const IntMatrix& d, std::size_t t) {
  std::optional<Position> best;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      if (!best || mpz_cmpabs(d(i, j).get_mpz_t(), d(best->row, best->col).get_mpz_t()) < 0) best = Position{i, j};
    }
  return best;
}

// Smallest nonzero |entry| on the cross through (t, t).
Position smallest_on_cross(const IntMatrix& d, std::size_t t) {
  Position best{t, t};
  auto better = [&](std::size_t i, std::size_t j) {
    return d(i, j) != 0 && (d(best.row, best.col) == 0 || mpz_cmpabs(d(i, j).get_mpz_t(), d(best.row, best.col).get_mpz_t()) < 0);
  };
  for (std::size_t i = t + 1; i < d.rows(); ++i)
    if (better(i, t)) best = Position{i, t};
  for (std::size_t j = t + 1; j < d.cols(); ++j)
    if (better(t, j)) best = Position{t, j};
  return best;
}

}  // namespace

SmithForm snf(const IntMatrix& m) {
  SmithForm s{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols()), 0};
  IntMatrix& d = s.diagonal;
  IntMatrix& u = s.left;
  IntMatrix& v = s.right;

  auto move_to_pivot = [&](std::size_t t, Position p) {
    d.swap_rows(t, p.row);
    u.swap_rows(t, p.row);
    d.swap_cols(t, p.col);
    v.swap_cols(t, p.col);
  };

  const std::size_t limit = std::min(m.rows(), m.cols());
  std::size_t t = 0;
  for (; t < limit; ++t) {
    const auto start = smallest_in_block(d, t);
    if (!start) break;
    move_to_pivot(t, *start);

    for (;;) {
      bool residue = false;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        d.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        residue = residue || d(i, t) != 0;
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        d.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        residue = residue || d(t, j) != 0;
      }
      if (residue) {
        move_to_pivot(t, smallest_on_cross(d, t));
        continue;
      }

      // Cross is clear; enforce that the pivot divides the rest of the block.
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < d.rows() && !offending; ++i)
        for (std::size_t j = t + 1; j < d.cols(); ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            offending = i;
            break;
          }
      if (!offending) break;
      d.add_row_multiple(t, *offending, 1);
      u.add_row_multiple(t, *offending, 1);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  s.rank = t;
  return s;
}

FinAbGroup cokernel_structure(const IntMatrix& m) {
  const SmithForm s = snf(m);
  std::vector<Integer> factors;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.diagonal(i, i) != 1) factors.push_back(s.diagonal(i, i));
  return FinAbGroup::from_invariant_factors(std::move(factors), m.rows() - s.rank);
}

std::size_t rank(const IntMatrix& m) { return snf(m).rank; }

IntMatrix kernel_basis(const IntMatrix& m) {
  const SmithForm s = snf(m);
  return s.right.columns(s.rank, m.cols());
}

IntMatrix lattice_basis(const IntMatrix& generators) {
  // G*V = U^{-1}*D, whose first `rank` columns are a basis and the rest vanish.
  const SmithForm s = snf(generators);
  return (generators * s.right).columns(0, s.rank);
}

std::optional<IntMatrix> solve_in_basis(const IntMatrix& basis, const IntMatrix& targets) {
  if (basis.rows() != targets.rows()) throw std::invalid_argument("solve_in_basis: row mismatch");
  const SmithForm s = snf(basis);
  if (s.rank != basis.cols()) throw std::invalid_argument("solve_in_basis: basis is rank deficient");
  const IntMatrix ux = s.left * targets;
  IntMatrix y(basis.cols(), targets.cols());
  for (std::size_t j = 0; j < targets.cols(); ++j) {
    for (std::size_t i = 0; i < ux.rows(); ++i) {
      if (i >= s.rank) {
        if (ux(i, j) != 0) return std::nullopt;
        continue;
      }
      const Integer& di = s.diagonal(i, i);
      if (!mpz_divisible_p(ux(i, j).get_mpz_t(), di.get_mpz_t())) return std::nullopt;
      mpz_divexact(y(i, j).get_mpz_t(), ux(i, j).get_mpz_t(), di.get_mpz_t());
    }
  }
  return s.right * y;
}

Integer sublattice_index(const IntMatrix& big, const IntMatrix& small) {
  if (big.rows() != small.rows()) throw InputError("sublattice_index: ambient dimensions differ");
  if (rank(big) != big.cols()) throw InputError("sublattice_index: big lattice basis is rank deficient");
  if (rank(small) != small.cols()) throw InputError("sublattice_index: small lattice basis is rank deficient");
  if (small.cols() != big.cols()) throw InputError("sublattice_index: lattices have different ranks (infinite index)");
  const auto coords = solve_in_basis(big, small);
  if (!coords) throw InputError("sublattice_index: small lattice is not contained in big lattice");
  return abs(determinant(*coords));
}

FinAbGroup quotient_structure(const IntMatrix& big_generators, const IntMatrix& small_generators) {
  const IntMatrix basis = lattice_basis(big_generators);
  if (basis.cols() == 0) {
    if (!small_generators.is_zero()) throw InputError("quotient_structure: sublattice not contained");
    return FinAbGroup::trivial();
  }
  const auto coords = solve_in_basis(basis, small_generators);
  if (!coords) throw InputError("quotient_structure: sublattice not contained");
  return cokernel_structure(*coords);
}

bool in_lattice(const IntMatrix& vectors, const IntMatrix& relations) {
  const IntMatrix basis = lattice_basis(relations);
  if (basis.cols() == 0) return vectors.is_zero();
  return solve_in_basis(basis, vectors).has_value();
}

}  // namespace tamagawa
