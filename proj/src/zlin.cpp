#include "twext/zlin.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace twext {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
  data_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols_) throw DomainError("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<long>& d) {
  const int n = static_cast<int>(d.size());
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[i];
  return m;
}

IntVector IntMatrix::column(int j) const {
  IntVector v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

IntVector IntMatrix::row(int i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i) * cols_,
                   data_.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols_);
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntVector IntMatrix::apply(const IntVector& x) const {
  if (static_cast<int>(x.size()) != cols_) throw DomainError("matrix-vector size mismatch");
  IntVector y(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const Int& a = (*this)(i, j);
      if (sgn(a) != 0 && sgn(x[j]) != 0) mpz_addmul(y[i].get_mpz_t(), a.get_mpz_t(), x[j].get_mpz_t());
    }
  return y;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& v) { return sgn(v) == 0; });
}

void IntMatrix::swap_rows(int r, int s) {
  if (r == s) return;
  for (int j = 0; j < cols_; ++j) std::swap((*this)(r, j), (*this)(s, j));
}

void IntMatrix::swap_cols(int r, int s) {
  if (r == s) return;
  for (int i = 0; i < rows_; ++i) std::swap((*this)(i, r), (*this)(i, s));
}

void IntMatrix::add_row_multiple(int r, int s, const Int& q) {
  if (sgn(q) == 0) return;
  for (int j = 0; j < cols_; ++j) {
    const Int& src = (*this)(s, j);
    if (sgn(src) != 0) mpz_addmul((*this)(r, j).get_mpz_t(), q.get_mpz_t(), src.get_mpz_t());
  }
}

void IntMatrix::add_col_multiple(int r, int s, const Int& q) {
  if (sgn(q) == 0) return;
  for (int i = 0; i < rows_; ++i) {
    const Int& src = (*this)(i, s);
    if (sgn(src) != 0) mpz_addmul((*this)(i, r).get_mpz_t(), q.get_mpz_t(), src.get_mpz_t());
  }
}

void IntMatrix::negate_row(int r) {
  for (int j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

void IntMatrix::negate_col(int r) {
  for (int i = 0; i < rows_; ++i) (*this)(i, r) = -(*this)(i, r);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix product size mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Int& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (int j = 0; j < b.cols(); ++j)
        if (sgn(b(k, j)) != 0) mpz_addmul(c(i, j).get_mpz_t(), x.get_mpz_t(), b(k, j).get_mpz_t());
    }
  return c;
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  const int n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (sgn(a(k, k)) == 0) {
      int p = k + 1;
      while (p < n && sgn(a(p, k)) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Int v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int mod_floor(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

namespace {

int cmpabs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

Int trunc_div(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const int r = m.rows(), c = m.cols();
  SmithForm s{m, IntMatrix::identity(r), IntMatrix::identity(c), IntMatrix::identity(c)};
  IntMatrix& a = s.D;

  auto row_op = [&](int i, int t, const Int& q) {  // row i += q row t
    a.add_row_multiple(i, t, q);
    s.U.add_row_multiple(i, t, q);
  };
  auto col_op = [&](int j, int t, const Int& q) {  // col j += q col t
    a.add_col_multiple(j, t, q);
    s.V.add_col_multiple(j, t, q);
    s.V_inv.add_row_multiple(t, j, -q);
  };
  auto swap_r = [&](int i, int k) {
    a.swap_rows(i, k);
    s.U.swap_rows(i, k);
  };
  auto swap_c = [&](int j, int k) {
    a.swap_cols(j, k);
    s.V.swap_cols(j, k);
    s.V_inv.swap_rows(j, k);
  };

  for (int t = 0; t < std::min(r, c); ++t) {
    int bi = -1, bj = -1;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j)
        if (sgn(a(i, j)) != 0 && (bi < 0 || cmpabs(a(i, j), a(bi, bj)) < 0)) {
          bi = i;
          bj = j;
        }
    if (bi < 0) break;
    swap_r(t, bi);
    swap_c(t, bj);
    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < r; ++i)
        if (sgn(a(i, t)) != 0) {
          row_op(i, t, -trunc_div(a(i, t), a(t, t)));
          if (sgn(a(i, t)) != 0) clean = false;
        }
      for (int j = t + 1; j < c; ++j)
        if (sgn(a(t, j)) != 0) {
          col_op(j, t, -trunc_div(a(t, j), a(t, t)));
          if (sgn(a(t, j)) != 0) clean = false;
        }
      if (!clean) {
        int pi = -1, pj = -1;
        for (int i = t + 1; i < r; ++i)
          if (sgn(a(i, t)) != 0 && (pi < 0 || cmpabs(a(i, t), a(pi, t)) < 0)) pi = i;
        for (int j = t + 1; j < c; ++j)
          if (sgn(a(t, j)) != 0 && (pj < 0 || cmpabs(a(t, j), a(t, pj)) < 0)) pj = j;
        const bool use_row = pi >= 0 && (pj < 0 || cmpabs(a(pi, t), a(t, pj)) <= 0);
        if (use_row)
          swap_r(t, pi);
        else
          swap_c(t, pj);
        continue;
      }
      int bad = -1;
      for (int i = t + 1; i < r && bad < 0; ++i)
        for (int j = t + 1; j < c; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_op(t, bad, Int(1));
    }
    if (sgn(a(t, t)) < 0) {
      a.negate_row(t);
      s.U.negate_row(t);
    }
  }
  return s;
}

HermiteForm row_hermite_form(const IntMatrix& in, bool want_inverse) {
  const int n = in.rows(), c = in.cols();
  HermiteForm h{in, IntMatrix::identity(n), want_inverse ? IntMatrix::identity(n) : IntMatrix(), 0, {}};
  IntMatrix& a = h.H;

  auto row_op = [&](int i, int k, const Int& q) {  // row i += q row k
    a.add_row_multiple(i, k, q);
    h.U.add_row_multiple(i, k, q);
    if (want_inverse) h.U_inv.add_col_multiple(k, i, -q);
  };
  auto swap_r = [&](int i, int k) {
    a.swap_rows(i, k);
    h.U.swap_rows(i, k);
    if (want_inverse) h.U_inv.swap_cols(i, k);
  };

  int r = 0;
  for (int j = 0; j < c && r < n; ++j) {
    bool found = false;
    for (;;) {
      int best = -1;
      for (int i = r; i < n; ++i)
        if (sgn(a(i, j)) != 0 && (best < 0 || cmpabs(a(i, j), a(best, j)) < 0)) best = i;
      if (best < 0) break;
      found = true;
      swap_r(r, best);
      bool done = true;
      for (int i = r + 1; i < n; ++i)
        if (sgn(a(i, j)) != 0) {
          row_op(i, r, -trunc_div(a(i, j), a(r, j)));
          if (sgn(a(i, j)) != 0) done = false;
        }
      if (done) break;
    }
    if (!found) continue;
    if (sgn(a(r, j)) < 0) {
      a.negate_row(r);
      h.U.negate_row(r);
      if (want_inverse) h.U_inv.negate_col(r);
    }
    for (int i = 0; i < r; ++i)
      if (sgn(a(i, j)) != 0) row_op(i, r, -floor_div(a(i, j), a(r, j)));
    h.pivot_cols.push_back(j);
    ++r;
  }
  h.rank = r;
  return h;
}

IntMatrix kernel_basis(const IntMatrix& m) {
  const auto h = row_hermite_form(m.transpose());
  const int n = m.cols(), k = n - h.rank;
  IntMatrix out(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) out(i, j) = h.U(h.rank + j, i);
  return out;
}

std::optional<IntVector> solve_in_image(const IntMatrix& m, const IntVector& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw DomainError("solve_in_image: size mismatch");
  const auto h = row_hermite_form(m.transpose());
  IntVector residual = b;
  IntVector x(m.cols());
  for (int i = 0; i < h.rank; ++i) {
    const int p = h.pivot_cols[i];
    if (sgn(residual[p]) == 0) continue;
    if (!mpz_divisible_p(residual[p].get_mpz_t(), h.H(i, p).get_mpz_t())) return std::nullopt;
    Int y = residual[p] / h.H(i, p);
    for (int j = 0; j < m.rows(); ++j)
      if (sgn(h.H(i, j)) != 0) mpz_submul(residual[j].get_mpz_t(), y.get_mpz_t(), h.H(i, j).get_mpz_t());
    for (int j = 0; j < m.cols(); ++j)
      if (sgn(h.U(i, j)) != 0) mpz_addmul(x[j].get_mpz_t(), y.get_mpz_t(), h.U(i, j).get_mpz_t());
  }
  for (const auto& v : residual)
    if (sgn(v) != 0) return std::nullopt;
  return x;
}

AbelianInvariants cokernel_invariants(const IntMatrix& m) {
  const auto s = smith_normal_form(m);
  std::vector<std::int64_t> orders;
  int rank = 0;
  for (int i = 0; i < std::min(m.rows(), m.cols()); ++i) {
    const Int& d = s.D(i, i);
    if (sgn(d) == 0) break;
    ++rank;
    if (!d.fits_slong_p()) throw ResourceCap("invariant factor does not fit in 64 bits");
    orders.push_back(d.get_si());
  }
  return AbelianInvariants::from_cyclic_orders(orders, m.rows() - rank);
}

AbelianInvariants AbelianInvariants::from_cyclic_orders(const std::vector<std::int64_t>& orders, int extra_free) {
  AbelianInvariants out;
  out.free_rank = extra_free;
  std::map<std::int64_t, std::vector<std::int64_t>> primary;
  for (auto d : orders) {
    if (d < 0) throw DomainError("cyclic order must be non-negative");
    if (d == 0) {
      ++out.free_rank;
      continue;
    }
    for (auto [p, e] : factor(d)) {
      std::int64_t q = 1;
      for (int i = 0; i < e; ++i) q *= p;
      primary[p].push_back(q);
    }
  }
  std::size_t k = 0;
  for (auto& [p, qs] : primary) {
    std::sort(qs.begin(), qs.end(), std::greater<>());
    k = std::max(k, qs.size());
  }
  out.torsion.assign(k, 1);
  for (const auto& [p, qs] : primary)
    for (std::size_t i = 0; i < qs.size(); ++i) out.torsion[k - 1 - i] *= qs[i];
  return out;
}

std::int64_t AbelianInvariants::order() const {
  if (free_rank) throw DomainError("order of an infinite abelian group");
  std::int64_t n = 1;
  for (auto d : torsion) n *= d;
  return n;
}

std::string AbelianInvariants::to_string() const {
  std::string s;
  for (auto d : torsion) s += (s.empty() ? "" : " + ") + std::string("Z/") + std::to_string(d);
  if (free_rank) s += (s.empty() ? "" : " + ") + std::string("Z^") + std::to_string(free_rank);
  return s.empty() ? "0" : s;
}

AbelianInvariants ext_group(const AbelianInvariants& a, const AbelianInvariants& b) {
  std::vector<std::int64_t> orders;
  for (auto m : a.torsion) {
    for (auto n : b.torsion) orders.push_back(std::gcd(m, n));
    for (int i = 0; i < b.free_rank; ++i) orders.push_back(m);
  }
  return AbelianInvariants::from_cyclic_orders(orders);
}

AbelianInvariants torsion_free_quotient(const AbelianInvariants& a) { return AbelianInvariants{{}, a.free_rank}; }

bool LatticeEchelon::insert(IntVector v) {
  if (static_cast<int>(v.size()) != n_) throw DomainError("lattice vector has wrong length");
  bool grew = false;
  Int q, g, s, t, a_g, b_g;
  for (int p = 0; p < n_; ++p) {
    if (sgn(v[p]) == 0) continue;
    const int k = row_of_pivot_[p];
    if (k < 0) {
      if (sgn(v[p]) < 0)
        for (auto& x : v) x = -x;
      row_of_pivot_[p] = static_cast<int>(rows_.size());
      rows_.push_back(std::move(v));
      pivots_.push_back(p);
      return true;
    }
    IntVector& row = rows_[k];
    mpz_fdiv_q(q.get_mpz_t(), v[p].get_mpz_t(), row[p].get_mpz_t());
    if (sgn(q) != 0)
      for (int j = p; j < n_; ++j)
        if (sgn(row[j]) != 0) mpz_submul(v[j].get_mpz_t(), q.get_mpz_t(), row[j].get_mpz_t());
    if (sgn(v[p]) == 0) continue;
    // gcd step: row <- s row + t v, v <- (a/g) v - (b/g) row
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), row[p].get_mpz_t(), v[p].get_mpz_t());
    mpz_divexact(a_g.get_mpz_t(), row[p].get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b_g.get_mpz_t(), v[p].get_mpz_t(), g.get_mpz_t());
    for (int j = p; j < n_; ++j) {
      Int nr = s * row[j] + t * v[j];
      Int nv = a_g * v[j] - b_g * row[j];
      row[j] = std::move(nr);
      v[j] = std::move(nv);
    }
    grew = true;
  }
  return grew;
}

IntMatrix LatticeEchelon::basis() const {
  std::vector<int> order(rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return pivots_[x] < pivots_[y]; });
  const int r = static_cast<int>(order.size());
  IntMatrix b(r, n_);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n_; ++j) b(i, j) = rows_[order[i]][j];
  for (int i = 0; i < r; ++i)
    for (int k = i + 1; k < r; ++k) {
      const int p = pivots_[order[k]];
      if (sgn(b(i, p)) != 0) b.add_row_multiple(i, k, -floor_div(b(i, p), b(k, p)));
    }
  return b;
}

}  // namespace twext
