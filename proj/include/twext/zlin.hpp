#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twext/errors.hpp"

namespace twext {

using Int = mpz_class;
using IntVector = std::vector<Int>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(int n);
  static IntMatrix diagonal(const std::vector<long>& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Int& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  IntVector column(int j) const;
  IntVector row(int i) const;
  IntMatrix transpose() const;
  IntVector apply(const IntVector& x) const;
  bool is_zero() const;

  bool operator==(const IntMatrix&) const = default;

  // Elementary operations; `r` and `s` must differ.
  void swap_rows(int r, int s);
  void swap_cols(int r, int s);
  /// row r += q * row s
  void add_row_multiple(int r, int s, const Int& q);
  /// col r += q * col s
  void add_col_multiple(int r, int s, const Int& q);
  void negate_row(int r);
  void negate_col(int r);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

/// Determinant by fraction-free elimination (square matrices only).
Int determinant(const IntMatrix& m);

/**
 * Finitely generated abelian group Z/d_1 + ... + Z/d_k + Z^free_rank in
 * invariant-factor form: every d_i >= 2 and d_i | d_{i+1}.
 */
struct AbelianInvariants {
  std::vector<std::int64_t> torsion;
  int free_rank = 0;

  /// Normalizes an arbitrary list of cyclic orders (0 means Z, 1 is dropped).
  static AbelianInvariants from_cyclic_orders(const std::vector<std::int64_t>& orders, int extra_free = 0);

  bool is_trivial() const { return torsion.empty() && free_rank == 0; }
  /// Order of the group; only meaningful when free_rank == 0.
  std::int64_t order() const;
  std::string to_string() const;
  bool operator==(const AbelianInvariants&) const = default;
};

struct SmithForm {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;
  /// Inverse of V, tracked alongside it.
  IntMatrix V_inv;
};

/// D = U * M * V with U, V unimodular and D diagonal with d_1 | d_2 | ..., d_i >= 0.
SmithForm smith_normal_form(const IntMatrix& m);

struct HermiteForm {
  /// H = U * A in reduced row echelon form: pivots positive, entries above a
  /// pivot reduced into [0, pivot), zero rows last.
  IntMatrix H;
  IntMatrix U;
  /// Inverse of U; only filled when requested.
  IntMatrix U_inv;
  int rank = 0;
  std::vector<int> pivot_cols;
};

HermiteForm row_hermite_form(const IntMatrix& a, bool want_inverse = false);

/// Columns form a Z-basis of ker M (taken from the row-Hermite transform of M^T).
IntMatrix kernel_basis(const IntMatrix& m);

/// Returns x with M x = b, or nullopt when b is not in the column lattice of M.
/// The solution has zero component along the kernel in the Hermite coordinates.
std::optional<IntVector> solve_in_image(const IntMatrix& m, const IntVector& b);

/// Invariants of Z^rows / (column span of M).
AbelianInvariants cokernel_invariants(const IntMatrix& m);

AbelianInvariants ext_group(const AbelianInvariants& a, const AbelianInvariants& b);
AbelianInvariants torsion_free_quotient(const AbelianInvariants& a);

/**
 * A sublattice of Z^n kept as an echelon basis and grown one vector at a time.
 * Entries at pivot columns of an inserted vector are reduced modulo the
 * existing pivots before any new row is created.
 */
class LatticeEchelon {
 public:
  explicit LatticeEchelon(int n) : n_(n), row_of_pivot_(n, -1) {}

  /// Returns true when the lattice grew.
  bool insert(IntVector v);
  int dim() const { return n_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  /// Basis as a rank x n matrix in reduced row-Hermite form.
  IntMatrix basis() const;

 private:
  int n_;
  std::vector<int> row_of_pivot_;
  std::vector<IntVector> rows_;
  std::vector<int> pivots_;
};

/// Floor division and the matching non-negative remainder.
Int floor_div(const Int& a, const Int& b);
Int mod_floor(const Int& a, const Int& b);

}  // namespace twext
