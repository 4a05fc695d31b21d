#include "twext/staralg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace twext {

namespace {

cd phase(const Angle& a) { return std::polar(1.0, a.radians()); }

double defect(const CMatrix& a, const CMatrix& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

CSparse to_sparse(const CMatrix& m) {
  std::vector<Eigen::Triplet<cd>> trip;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (std::abs(m(r, c)) > 1e-14) trip.emplace_back(static_cast<int>(r), static_cast<int>(c), m(r, c));
  CSparse s(m.rows(), m.cols());
  s.setFromTriplets(trip.begin(), trip.end());
  return s;
}

CVector gaussian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = cd(nd(rng), nd(rng));
  return v;
}

CMatrix random_self_adjoint(const StarAlgebra& a, std::mt19937_64& rng) {
  const CMatrix x = a.element(gaussian(a.dim(), rng));
  return x + x.adjoint();
}

/// Groups sorted eigenvalues into clusters; returns the cluster sizes.
std::vector<int> clusters(const Eigen::VectorXd& ev) {
  std::vector<int> sizes;
  if (ev.size() == 0) return sizes;
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  sizes.push_back(1);
  for (Eigen::Index i = 1; i < ev.size(); ++i) {
    if (ev(i) - ev(i - 1) > kEigenGap * scale)
      sizes.push_back(1);
    else
      ++sizes.back();
  }
  return sizes;
}

void check_cap(long long dim) {
  if (dim > kMaxAlgebraDim) throw ResourceCap("algebra dimension " + std::to_string(dim) + " exceeds 4096");
}

std::vector<CMatrix> dense_basis(const StarAlgebra& a) {
  std::vector<CMatrix> out;
  out.reserve(a.basis.size());
  for (const auto& b : a.basis) out.emplace_back(CMatrix(b));
  return out;
}

CMatrix combine(const std::vector<CMatrix>& basis, const CVector& c) {
  CMatrix x = CMatrix::Zero(basis.front().rows(), basis.front().cols());
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (c(i) != cd(0)) x += c(i) * basis[static_cast<std::size_t>(i)];
  return x;
}

}  // namespace

CMatrix StarAlgebra::element(const CVector& coords) const {
  if (coords.size() != dim()) throw DomainError("coordinate vector has wrong length");
  CMatrix x = CMatrix::Zero(rep_dim, rep_dim);
  for (int i = 0; i < dim(); ++i)
    if (coords(i) != cd(0)) x += coords(i) * basis[static_cast<std::size_t>(i)];
  return x;
}

cd StarAlgebra::trace_of(const CVector& coords) const {
  cd t = 0;
  for (int i = 0; i < dim(); ++i) t += coords(i) * trace[static_cast<std::size_t>(i)];
  return t;
}

CoordinateMap::CoordinateMap(const StarAlgebra& a) : d_(a.rep_dim) {
  vecs_.resize(static_cast<Eigen::Index>(d_) * d_, a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    const CMatrix b(a.basis[static_cast<std::size_t>(i)]);
    vecs_.col(i) = Eigen::Map<const CVector>(b.data(), b.size());
  }
  qr_.compute(vecs_);
  if (qr_.rank() != a.dim()) throw DomainError("algebra basis is linearly dependent");
}

CVector CoordinateMap::operator()(const CMatrix& x) const {
  const Eigen::Map<const CVector> v(x.data(), x.size());
  CVector c = qr_.solve(CVector(v));
  const double res = (vecs_ * c - v).norm();
  if (res > kIdentityTol * std::max(1.0, v.norm())) throw AxiomViolation("matrix is not in the algebra");
  return c;
}

StarAlgebra matrix_algebra(int k) {
  if (k < 1) throw DomainError("matrix algebra needs k >= 1");
  StarAlgebra a;
  a.rep_dim = k;
  a.unit = CVector::Zero(k * k);
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q) {
      CSparse e(k, k);
      e.insert(p, q) = 1.0;
      a.basis.push_back(std::move(e));
      a.trace.emplace_back(p == q ? 1.0 / k : 0.0);
      if (p == q) a.unit(p * k + q) = 1.0;
    }
  a.label = "M" + std::to_string(k);
  return a;
}

StarAlgebra diagonal_algebra(int k) {
  if (k < 1) throw DomainError("diagonal algebra needs k >= 1");
  StarAlgebra a;
  a.rep_dim = k;
  a.unit = CVector::Ones(k);
  for (int p = 0; p < k; ++p) {
    CSparse e(k, k);
    e.insert(p, p) = 1.0;
    a.basis.push_back(std::move(e));
    a.trace.emplace_back(1.0 / k);
  }
  a.label = k == 1 ? "C" : "C^" + std::to_string(k);
  return a;
}

StarAlgebra tensor_matrix(const StarAlgebra& a, int k) {
  check_cap(static_cast<long long>(a.dim()) * k * k);
  StarAlgebra t;
  t.rep_dim = a.rep_dim * k;
  t.unit = CVector::Zero(a.dim() * k * k);
  for (int i = 0; i < a.dim(); ++i) {
    const auto& b = a.basis[static_cast<std::size_t>(i)];
    for (int p = 0; p < k; ++p)
      for (int q = 0; q < k; ++q) {
        std::vector<Eigen::Triplet<cd>> trip;
        for (int c = 0; c < b.outerSize(); ++c)
          for (CSparse::InnerIterator it(b, c); it; ++it)
            trip.emplace_back(static_cast<int>(it.row()) * k + p, static_cast<int>(it.col()) * k + q, it.value());
        CSparse e(t.rep_dim, t.rep_dim);
        e.setFromTriplets(trip.begin(), trip.end());
        t.basis.push_back(std::move(e));
        t.trace.push_back(p == q ? a.trace[static_cast<std::size_t>(i)] / static_cast<double>(k) : cd(0));
        if (p == q && a.unit.size() == a.dim()) t.unit((i * k + p) * k + q) = a.unit(i);
      }
  }
  t.label = a.label + "(x)M" + std::to_string(k);
  return t;
}

StarAlgebra twisted_group_algebra(const FiniteGroup& g, const Cocycle2& omega) {
  if (!(omega.group() == g)) throw DomainError("cocycle and group do not match");
  const Cocycle2 w = omega.is_normalized() ? omega : normalize(omega).cocycle;
  const int m = g.order();
  StarAlgebra a;
  a.rep_dim = m;
  a.unit = CVector::Zero(m);
  a.unit(0) = 1.0;
  for (int x = 0; x < m; ++x) {
    CSparse u(m, m);
    u.reserve(Eigen::VectorXi::Constant(m, 1));
    for (int h = 0; h < m; ++h) u.insert(g.mul(x, h), h) = phase(w(x, h));
    u.makeCompressed();
    a.trace.push_back(u.coeff(0, 0));
    a.basis.push_back(std::move(u));
  }
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      const CSparse lhs = a.basis[x] * a.basis[y];
      const CSparse rhs = phase(w(x, y)) * a.basis[g.mul(x, y)];
      if ((lhs - rhs).norm() > kIdentityTol) throw std::logic_error("twisted group algebra relation fails");
    }
  a.label = "C[" + (g.name().empty() ? std::string("G") : g.name()) + ",w]";
  return a;
}

StarAlgebra group_algebra(const FiniteGroup& g) {
  auto a = twisted_group_algebra(g, trivial_cocycle(g));
  a.label = "C[" + (g.name().empty() ? std::string("G") : g.name()) + "]";
  return a;
}

CMatrix center_basis(const StarAlgebra& a, std::mt19937_64& rng) {
  const int n = a.dim();
  const int d = a.rep_dim;
  constexpr int probes = 3;
  const int s = std::max(2, (n + 8 + probes * d - 1) / (probes * d));
  const CMatrix q = [&] {
    CMatrix m(d, s);
    for (int c = 0; c < s; ++c) m.col(c) = gaussian(d, rng);
    return m;
  }();
  std::vector<CMatrix> h, hq;
  for (int j = 0; j < probes; ++j) {
    h.push_back(random_self_adjoint(a, rng));
    hq.push_back(h.back() * q);
  }
  const Eigen::Index block = static_cast<Eigen::Index>(d) * s;
  CMatrix m(probes * block, n);
  // commutators of a commutative algebra vanish, so measure rank against the size of the products
  double scale = 0;
  for (int k = 0; k < n; ++k) {
    const auto& b = a.basis[static_cast<std::size_t>(k)];
    const CMatrix bq = b * q;
    for (int j = 0; j < probes; ++j) {
      const CMatrix bh = b * hq[j];
      const CMatrix hb = h[j] * bq;
      scale = std::max({scale, bh.norm(), hb.norm()});
      const CMatrix c = bh - hb;
      m.col(k).segment(j * block, block) = Eigen::Map<const CVector>(c.data(), c.size());
    }
  }
  Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  while (rank < sv.size() && sv(rank) > 1e-9 * scale) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

BlockProfile block_profile(const StarAlgebra& a, std::uint64_t seed) {
  const int n = a.dim();
  if (n == 0) throw DomainError("empty algebra");
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x5bd1e995ULL);
  for (int attempt = 0; attempt < kDecompositionRetries; ++attempt) {
    const CMatrix z = center_basis(a, rng);
    if (z.cols() == 0) continue;
    const CMatrix c = a.element(z * gaussian(z.cols(), rng));
    const Eigen::SelfAdjointEigenSolver<CMatrix> central(c + c.adjoint());
    const auto sizes = clusters(central.eigenvalues());
    if (static_cast<Eigen::Index>(sizes.size()) != z.cols()) continue;

    const CMatrix y = random_self_adjoint(a, rng);
    std::vector<int> blocks;
    bool ok = true;
    int start = 0;
    for (int r : sizes) {
      const CMatrix v = central.eigenvectors().middleCols(start, r);
      start += r;
      const Eigen::SelfAdjointEigenSolver<CMatrix> inner(v.adjoint() * y * v, Eigen::EigenvaluesOnly);
      const auto inner_sizes = clusters(inner.eigenvalues());
      const int di = static_cast<int>(inner_sizes.size());
      const int mult = inner_sizes.front();
      if (std::any_of(inner_sizes.begin(), inner_sizes.end(), [&](int x) { return x != mult; }) || di * mult != r) {
        ok = false;
        break;
      }
      blocks.push_back(di);
    }
    if (!ok) continue;
    const int total = std::accumulate(blocks.begin(), blocks.end(), 0, [](int acc, int x) { return acc + x * x; });
    if (total != n) continue;
    std::sort(blocks.begin(), blocks.end());
    return BlockProfile{std::move(blocks), n, seed};
  }
  throw DecompositionUnstable("block decomposition of " + a.label + " did not stabilize after " +
                              std::to_string(kDecompositionRetries) + " attempts");
}

void validate_system(const TwistedSystem& sys) {
  const auto& a = sys.algebra;
  const int n = a.dim();
  const int m = sys.group.order();
  if (static_cast<int>(sys.alpha.size()) != m || static_cast<int>(sys.omega.size()) != m * m)
    throw AxiomViolation("twisted system tables have wrong size");
  if (a.unit.size() != n) throw AxiomViolation("twisted system needs a unital algebra");
  for (const auto& al : sys.alpha)
    if (al.rows() != n || al.cols() != n) throw AxiomViolation("action matrix has wrong shape");
  for (const auto& w : sys.omega)
    if (w.size() != n) throw AxiomViolation("cocycle value has wrong length");

  const auto basis = dense_basis(a);
  const CoordinateMap coords(a);
  const CMatrix one = combine(basis, a.unit);
  std::vector<CMatrix> w(static_cast<std::size_t>(m) * m);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = combine(basis, sys.omega[i]);
  auto wm = [&](int s, int t) -> const CMatrix& { return w[static_cast<std::size_t>(s) * m + t]; };

  if ((sys.alpha[0] - CMatrix::Identity(n, n)).norm() > kIdentityTol) throw AxiomViolation("alpha_e is not the identity");
  for (int s = 0; s < m; ++s) {
    if (defect(wm(s, 0), one) > kIdentityTol || defect(wm(0, s), one) > kIdentityTol)
      throw AxiomViolation("omega(s,e) or omega(e,s) is not 1");
    for (int t = 0; t < m; ++t)
      if (defect(wm(s, t) * wm(s, t).adjoint(), one) > kIdentityTol ||
          defect(wm(s, t).adjoint() * wm(s, t), one) > kIdentityTol)
        throw AxiomViolation("omega(" + std::to_string(s) + "," + std::to_string(t) + ") is not unitary");
  }

  std::mt19937_64 rng(0x7157);
  std::vector<CVector> probes;
  for (int i = 0; i < 3; ++i) probes.push_back(gaussian(n, rng));
  for (int s = 0; s < m; ++s) {
    const auto& al = sys.alpha[s];
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const CMatrix x = combine(basis, probes[i]);
      const CMatrix y = combine(basis, probes[(i + 1) % probes.size()]);
      const CMatrix ax = combine(basis, al * probes[i]);
      const CMatrix ay = combine(basis, al * probes[(i + 1) % probes.size()]);
      if (defect(ax * ay, combine(basis, al * coords(x * y))) > kIdentityTol)
        throw AxiomViolation("alpha_" + std::to_string(s) + " is not multiplicative");
      if (defect(ax.adjoint(), combine(basis, al * coords(x.adjoint()))) > kIdentityTol)
        throw AxiomViolation("alpha_" + std::to_string(s) + " does not preserve the adjoint");
    }
    if (defect(combine(basis, al * a.unit), one) > kIdentityTol)
      throw AxiomViolation("alpha_" + std::to_string(s) + " is not unital");
  }
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t) {
      const int st = sys.group.mul(s, t);
      for (const auto& p : probes) {
        const CMatrix lhs = combine(basis, sys.alpha[s] * (sys.alpha[t] * p));
        const CMatrix rhs = wm(s, t) * combine(basis, sys.alpha[st] * p) * wm(s, t).adjoint();
        if (defect(lhs, rhs) > kIdentityTol)
          throw AxiomViolation("alpha_s alpha_t != Ad(omega(s,t)) alpha_st at (" + std::to_string(s) + "," +
                               std::to_string(t) + ")");
      }
      for (int r = 0; r < m; ++r) {
        const CMatrix lhs = combine(basis, sys.alpha[r] * sys.w(s, t)) * wm(r, st);
        const CMatrix rhs = wm(r, s) * wm(sys.group.mul(r, s), t);
        if (defect(lhs, rhs) > kIdentityTol)
          throw AxiomViolation("twisted cocycle identity fails at (" + std::to_string(r) + "," + std::to_string(s) +
                               "," + std::to_string(t) + ")");
      }
    }
}

TwistedSystem trivial_system(const StarAlgebra& a, const FiniteGroup& f) {
  const int m = f.order();
  TwistedSystem sys{a, f, std::vector<CMatrix>(m, CMatrix::Identity(a.dim(), a.dim())),
                    std::vector<CVector>(static_cast<std::size_t>(m) * m, a.unit)};
  return sys;
}

TwistedSystem scalar_system(const StarAlgebra& a, const Cocycle2& omega) {
  const Cocycle2 w = omega(0, 0).is_zero() ? omega : normalize(omega).cocycle;
  auto sys = trivial_system(a, w.group());
  const int m = w.group().order();
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t) sys.omega[static_cast<std::size_t>(s) * m + t] = phase(w(s, t)) * a.unit;
  return sys;
}

StarAlgebra crossed_product(const TwistedSystem& sys) {
  const auto& a = sys.algebra;
  const int n = a.dim();
  const int m = sys.group.order();
  check_cap(static_cast<long long>(n) * m);
  validate_system(sys);
  const int da = a.rep_dim;
  const auto basis = dense_basis(a);

  // pa[t][i] = pi(alpha_t(a_i)), w[t][s] = pi(omega(t,s))
  std::vector<std::vector<CMatrix>> pa(m), w(m);
  for (int t = 0; t < m; ++t) {
    for (int i = 0; i < n; ++i) pa[t].push_back(combine(basis, sys.alpha[t].col(i)));
    for (int s = 0; s < m; ++s) w[t].push_back(combine(basis, sys.w(t, s)));
  }

  StarAlgebra out;
  out.rep_dim = da * m;
  out.unit = CVector::Zero(static_cast<Eigen::Index>(n) * m);
  out.unit.head(n) = a.unit;
  for (int s = 0; s < m; ++s)
    for (int i = 0; i < n; ++i) {
      std::vector<Eigen::Triplet<cd>> trip;
      for (int t = 0; t < m; ++t) {
        const CMatrix blk = pa[t][i] * w[t][s];
        const int col0 = sys.group.mul(t, s) * da;
        for (int c = 0; c < da; ++c)
          for (int r = 0; r < da; ++r)
            if (std::abs(blk(r, c)) > 1e-14) trip.emplace_back(t * da + r, col0 + c, blk(r, c));
      }
      CSparse e(out.rep_dim, out.rep_dim);
      e.setFromTriplets(trip.begin(), trip.end());
      out.basis.push_back(std::move(e));
      out.trace.push_back(s == 0 ? a.trace[static_cast<std::size_t>(i)] : cd(0));
    }
  out.label = a.label + " x " + (sys.group.name().empty() ? std::string("F") : sys.group.name());
  return out;
}

TwistedSystem decompose_group_algebra(const FiniteGroup& g, const Subgroup& n) {
  if (!is_normal(g, n)) throw DomainError("decomposition needs a normal subgroup");
  const auto nn = subgroup_as_group(g, n);
  const auto q = quotient(g, n);
  const int k = n.order();
  const int m = q.group.order();
  TwistedSystem sys{group_algebra(nn), q.group, {}, {}};
  for (int s = 0; s < m; ++s) {
    const int c = q.lift[s];
    CMatrix al = CMatrix::Zero(k, k);
    for (int i = 0; i < k; ++i) al(n.position(g.mul(g.mul(c, n.members[i]), g.inv(c))), i) = 1.0;
    sys.alpha.push_back(std::move(al));
  }
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t) {
      const int x = g.mul(g.mul(q.lift[s], q.lift[t]), g.inv(q.lift[q.group.mul(s, t)]));
      CVector v = CVector::Zero(k);
      v(n.position(x)) = 1.0;
      sys.omega.push_back(std::move(v));
    }
  validate_system(sys);
  return sys;
}

StarAlgebra fiber_algebra(const FiniteGroup& g, const Subgroup& n, const SubgroupCharacter& chi) {
  const auto z = center(g);
  for (int x : n.members)
    if (!z.contains(x)) throw DomainError("fibers need a central subgroup");
  if (static_cast<int>(chi.values.size()) != n.order()) throw DomainError("character has wrong length");
  const auto cg = group_algebra(g);
  const auto q = quotient(g, n);
  const int k = n.order();
  // e_chi = (1/|N|) sum_n conj(chi(n)) u_n, then compress to its range
  CMatrix p = CMatrix::Zero(g.order(), g.order());
  for (int i = 0; i < k; ++i) p += std::conj(phase(chi.values[i])) * CMatrix(cg.basis[n.members[i]]);
  p /= static_cast<double>(k);
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(p);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 0.5) cols.push_back(i);
  CMatrix v(g.order(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) v.col(static_cast<Eigen::Index>(i)) = es.eigenvectors().col(cols[i]);

  StarAlgebra f;
  f.rep_dim = static_cast<int>(v.cols());
  const cd tp = p(0, 0);
  for (int s = 0; s < q.group.order(); ++s) {
    const CMatrix u(cg.basis[q.lift[s]]);
    f.basis.push_back(to_sparse(v.adjoint() * u * v));
    f.trace.push_back((p * u)(0, 0) / tp);
  }
  f.unit = CVector::Zero(q.group.order());
  f.unit(0) = 1.0;
  f.label = "e_chi " + cg.label;
  return f;
}

std::vector<Fiber> fiber_decomposition(const FiniteGroup& g, const Subgroup& n, std::uint64_t seed) {
  const auto z = center(g);
  for (int x : n.members)
    if (!z.contains(x)) throw DomainError("fiber decomposition needs a central subgroup");
  const auto q = quotient(g, n);
  std::vector<Fiber> out;
  for (const auto& chi : subgroup_characters(g, n)) {
    Fiber fib{chi, fiber_algebra(g, n, chi), {}, {}, false};
    fib.profile = block_profile(fib.algebra, seed);
    fib.expected = block_profile(twisted_group_algebra(q.group, sigma_chi(g, n, chi)), seed);
    fib.matches = fib.profile.same_blocks(fib.expected);
    out.push_back(std::move(fib));
  }
  return out;
}

CVector random_unitary(const StarAlgebra& a, const CoordinateMap& coords, std::mt19937_64& rng) {
  const CMatrix h = random_self_adjoint(a, rng);
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  CVector f(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = std::polar(1.0, es.eigenvalues()(i)) - 1.0;
  const CMatrix u = a.element(a.unit) + es.eigenvectors() * f.asDiagonal() * es.eigenvectors().adjoint();
  return coords(u);
}

TwistedSystem perturb(const TwistedSystem& sys, const std::vector<CVector>& v) {
  const int m = sys.group.order();
  const int n = sys.algebra.dim();
  if (static_cast<int>(v.size()) != m) throw DomainError("one unitary per group element is required");
  if ((v[0] - sys.algebra.unit).norm() > kIdentityTol) throw DomainError("perturbation must have v_e = 1");
  const auto basis = dense_basis(sys.algebra);
  const CoordinateMap coords(sys.algebra);
  std::vector<CMatrix> vm;
  for (const auto& c : v) vm.push_back(combine(basis, c));
  TwistedSystem out{sys.algebra, sys.group, {}, {}};
  for (int s = 0; s < m; ++s) {
    CMatrix al(n, n);
    for (int i = 0; i < n; ++i) al.col(i) = coords(vm[s] * combine(basis, sys.alpha[s].col(i)) * vm[s].adjoint());
    out.alpha.push_back(std::move(al));
  }
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t) {
      const CMatrix x = vm[s] * combine(basis, sys.alpha[s] * v[t]) * combine(basis, sys.w(s, t)) *
                        vm[sys.group.mul(s, t)].adjoint();
      out.omega.push_back(coords(x));
    }
  // clean exact identities so that alpha_e and omega(e,.) stay exact
  out.alpha[0] = CMatrix::Identity(n, n);
  for (int s = 0; s < m; ++s) {
    out.omega[s] = sys.algebra.unit;
    out.omega[static_cast<std::size_t>(s) * m] = sys.algebra.unit;
  }
  return out;
}

TwistedSystem induce_system(const FiniteGroup& g, const Subgroup& h, const TwistedSystem& sys) {
  if (sys.group.order() != h.order()) throw DomainError("system group does not match the subgroup");
  const auto& b = sys.algebra;
  const int nb = b.dim();
  const int db = b.rep_dim;
  // left cosets xH, ordered by minimal representative
  std::vector<int> coset_of(g.order(), -1), rep;
  for (int x = 0; x < g.order(); ++x) {
    if (coset_of[x] >= 0) continue;
    const int id = static_cast<int>(rep.size());
    rep.push_back(x);
    for (int y : h.members) coset_of[g.mul(x, y)] = id;
  }
  const int k = static_cast<int>(rep.size());
  check_cap(static_cast<long long>(k) * nb * g.order());
  // h(s,x) = c(sx)^-1 s c(x) as a position in H
  auto hcoc = [&](int s, int x) {
    const int target = rep[coset_of[g.mul(s, rep[x])]];
    return h.position(g.mul(g.inv(target), g.mul(s, rep[x])));
  };
  auto act = [&](int s, int x) { return coset_of[g.mul(s, rep[x])]; };

  StarAlgebra a;
  a.rep_dim = k * db;
  a.unit = CVector::Zero(k * nb);
  for (int x = 0; x < k; ++x)
    for (int j = 0; j < nb; ++j) {
      const auto& bj = b.basis[static_cast<std::size_t>(j)];
      std::vector<Eigen::Triplet<cd>> trip;
      for (int c = 0; c < bj.outerSize(); ++c)
        for (CSparse::InnerIterator it(bj, c); it; ++it)
          trip.emplace_back(x * db + static_cast<int>(it.row()), x * db + static_cast<int>(it.col()), it.value());
      CSparse e(a.rep_dim, a.rep_dim);
      e.setFromTriplets(trip.begin(), trip.end());
      a.basis.push_back(std::move(e));
      a.trace.push_back(b.trace[static_cast<std::size_t>(j)] / static_cast<double>(k));
      a.unit(x * nb + j) = b.unit(j);
    }
  a.label = "Ind(" + b.label + ")";

  TwistedSystem out{std::move(a), g, {}, {}};
  const int m = g.order();
  for (int s = 0; s < m; ++s) {
    CMatrix al = CMatrix::Zero(k * nb, k * nb);
    for (int x = 0; x < k; ++x) al.block(act(s, x) * nb, x * nb, nb, nb) = sys.alpha[hcoc(s, x)];
    out.alpha.push_back(std::move(al));
  }
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t) {
      const int st_inv = g.inv(g.mul(s, t));
      CVector w(k * nb);
      for (int y = 0; y < k; ++y) {
        const int x = act(st_inv, y);
        w.segment(y * nb, nb) = sys.w(hcoc(s, act(t, x)), hcoc(t, x));
      }
      out.omega.push_back(std::move(w));
    }
  return out;
}

ImprimitivityReport verify_imprimitivity(const FiniteGroup& g, const Subgroup& h, const TwistedSystem& sys,
                                         std::uint64_t seed) {
  const auto induced = induce_system(g, h, sys);
  ImprimitivityReport rep;
  rep.index = g.order() / h.order();
  rep.big = block_profile(crossed_product(induced), seed);
  rep.small = block_profile(crossed_product(sys), seed);
  rep.dims_match = rep.big.dim == rep.small.dim * rep.index * rep.index;
  auto scaled = rep.small.blocks;
  for (auto& d : scaled) d *= rep.index;
  rep.profiles_match = scaled == rep.big.blocks;
  return rep;
}

bool StabilizationReport::ok() const {
  return action_defect <= kIdentityTol && conjugation_defect <= kIdentityTol && cocycle_defect <= kIdentityTol &&
         left.same_blocks(right);
}

StabilizationReport verify_stabilization(const TwistedSystem& sys, std::uint64_t seed) {
  const auto& a = sys.algebra;
  const int n = a.dim();
  const int m = sys.group.order();
  check_cap(static_cast<long long>(n) * m * m);
  validate_system(sys);
  const int da = a.rep_dim;
  const auto basis = dense_basis(a);
  auto kron = [&](const CMatrix& x, int p, int q) {
    CMatrix out = CMatrix::Zero(da * m, da * m);
    for (int c = 0; c < da; ++c)
      for (int r = 0; r < da; ++r) out(r * m + p, c * m + q) = x(r, c);
    return out;
  };

  // lambda_s = sum_g omega(s,g)^* (x) e_{sg,g};  twisted(s,t) is alpha_s applied to lambda_t
  std::vector<CMatrix> lambda(m, CMatrix::Zero(da * m, da * m));
  std::vector<CMatrix> moved(static_cast<std::size_t>(m) * m, CMatrix::Zero(da * m, da * m));
  for (int s = 0; s < m; ++s)
    for (int x = 0; x < m; ++x) {
      lambda[s] += kron(combine(basis, sys.w(s, x)).adjoint(), sys.group.mul(s, x), x);
      for (int r = 0; r < m; ++r)
        moved[static_cast<std::size_t>(r) * m + s] +=
            kron(combine(basis, sys.alpha[r] * sys.w(s, x)).adjoint(), sys.group.mul(s, x), x);
    }

  const auto am = tensor_matrix(a, m);
  const auto tb = dense_basis(am);
  const CoordinateMap coords(am);
  // (alpha_s (x) id)(a_i (x) e_pq) = alpha_s(a_i) (x) e_pq
  auto lifted = [&](int s, int idx) {
    const int i = idx / (m * m), p = (idx / m) % m, q = idx % m;
    return kron(combine(basis, sys.alpha[s].col(i)), p, q);
  };
  TwistedSystem right{am, sys.group, {}, std::vector<CVector>(static_cast<std::size_t>(m) * m, am.unit)};
  StabilizationReport rep;
  for (int s = 0; s < m; ++s) {
    CMatrix al(am.dim(), am.dim());
    for (int idx = 0; idx < am.dim(); ++idx) {
      const CMatrix target = lambda[s] * lifted(s, idx) * lambda[s].adjoint();
      al.col(idx) = coords(target);
      rep.conjugation_defect = std::max(rep.conjugation_defect, defect(combine(tb, al.col(idx)), target));
    }
    right.alpha.push_back(std::move(al));
  }
  right.alpha[0] = CMatrix::Identity(am.dim(), am.dim());

  const CMatrix one = CMatrix::Identity(da * m, da * m);
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < m; ++t) {
      const int st = sys.group.mul(s, t);
      rep.action_defect = std::max(rep.action_defect, defect(right.alpha[s] * right.alpha[t], right.alpha[st]));
      CMatrix w = CMatrix::Zero(da * m, da * m);
      const CMatrix ws = combine(basis, sys.w(s, t));
      for (int p = 0; p < m; ++p) w += kron(ws, p, p);
      const CMatrix sigma = lambda[s] * moved[static_cast<std::size_t>(s) * m + t] * w * lambda[st].adjoint();
      rep.cocycle_defect = std::max(rep.cocycle_defect, defect(sigma, one));
    }

  rep.left = block_profile(tensor_matrix(crossed_product(sys), m), seed);
  rep.right = block_profile(crossed_product(right), seed);
  return rep;
}

TwistedSystem random_system(const FiniteGroup& f, std::mt19937_64& rng, int max_dim) {
  const int m = f.order();
  std::vector<int> kinds{0, 2, 3};
  std::vector<Subgroup> coset_sources;
  for (const auto& k : all_subgroups(f)) {
    const int idx = m / k.order();
    if (idx >= 2 && idx <= max_dim) coset_sources.push_back(k);
  }
  if (!coset_sources.empty()) kinds.push_back(1);
  const int kind = kinds[rng() % kinds.size()];

  StarAlgebra b;
  std::vector<CMatrix> alpha;
  if (kind == 1) {
    const auto& k = coset_sources[rng() % coset_sources.size()];
    std::vector<int> coset_of(m, -1), rep;
    for (int x = 0; x < m; ++x) {
      if (coset_of[x] >= 0) continue;
      for (int y : k.members) coset_of[f.mul(x, y)] = static_cast<int>(rep.size());
      rep.push_back(x);
    }
    const int idx = static_cast<int>(rep.size());
    b = diagonal_algebra(idx);
    for (int s = 0; s < m; ++s) {
      CMatrix p = CMatrix::Zero(idx, idx);
      for (int x = 0; x < idx; ++x) p(coset_of[f.mul(s, rep[x])], x) = 1.0;
      alpha.push_back(std::move(p));
    }
  } else {
    if (kind == 0)
      b = diagonal_algebra(1);
    else if (kind == 2 || max_dim < 2)
      b = max_dim >= 4 ? matrix_algebra(2) : diagonal_algebra(1);
    else
      b = group_algebra(cyclic(2 + static_cast<int>(rng() % static_cast<unsigned>(std::min(3, max_dim - 1)))));
    alpha.assign(m, CMatrix::Identity(b.dim(), b.dim()));
  }

  const auto split = make_splitting(f, rng() % 16);
  const auto chars = characters_of_h2(split.h2);
  const auto& chi = chars[rng() % chars.size()];
  const auto w = normalize(cocycle_from_character(split, chi) * coboundary(f, random_cochain(f, rng))).cocycle;
  auto base = scalar_system(b, w);
  base.alpha = std::move(alpha);

  const CoordinateMap coords(b);
  std::vector<CVector> v{b.unit};
  for (int s = 1; s < m; ++s) v.push_back(random_unitary(b, coords, rng));
  auto out = perturb(base, v);
  validate_system(out);
  return out;
}

}  // namespace twext
