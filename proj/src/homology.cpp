#include "twext/homology.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

namespace twext {

namespace {

// Adds c * (d2 applied to basis element t of C2) into an m-vector.
void add_d2_column(const FiniteGroup& g, int t, long c, std::vector<long>& out) {
  const int m = g.order();
  const int a = t / m, b = t % m;
  out[a] += c;
  out[g.mul(a, b)] -= c;
  out[b] += c;
}

std::int64_t reduce_mod(const Int& v, std::int64_t d) {
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(d));
  return r.get_si();
}

}  // namespace

ChainData build_chain(const FiniteGroup& g) {
  const int m = g.order();
  if (m > kMaxChainOrder)
    throw ResourceCap("bar complex is capped at order " + std::to_string(kMaxChainOrder));
  ChainData c{g, IntMatrix(m, m * m), {}, {}};
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const int t = a * m + b;
      c.d2(a, t) += 1;
      c.d2(g.mul(a, b), t) -= 1;
      c.d2(b, t) += 1;
    }
  c.d3.resize(static_cast<std::size_t>(m) * m * m);
  std::map<int, int> acc;
  std::vector<long> check(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int e = 0; e < m; ++e) {
        acc.clear();
        acc[b * m + e] += 1;
        acc[g.mul(a, b) * m + e] -= 1;
        acc[a * m + g.mul(b, e)] += 1;
        acc[a * m + b] -= 1;
        auto& col = c.d3[c.c3_index(a, b, e)];
        std::fill(check.begin(), check.end(), 0);
        for (auto [t, v] : acc)
          if (v != 0) {
            col.emplace_back(t, v);
            add_d2_column(g, t, v, check);
          }
        for (long v : check)
          if (v != 0) throw std::logic_error("d2 * d3 != 0");
      }
  c.d2t = row_hermite_form(c.d2.transpose(), true);
  return c;
}

IntMatrix ChainData::d3_dense() const {
  const int m = order();
  IntMatrix d(m * m, m * m * m);
  for (int j = 0; j < static_cast<int>(d3.size()); ++j)
    for (auto [t, v] : d3[j]) d(t, j) = v;
  return d;
}

IntMatrix ChainData::z2_basis() const {
  const int n = d2.cols(), r = rank_b1(), k = rank_z2();
  IntMatrix z(n, k);
  for (int l = 0; l < k; ++l)
    for (int t = 0; t < n; ++t) z(t, l) = d2t.U(r + l, t);
  return z;
}

IntMatrix ChainData::b1_basis() const {
  const int m = order(), r = rank_b1();
  IntMatrix b(m, r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < m; ++i) b(i, j) = d2t.H(j, i);
  return b;
}

IntVector ChainData::split_coordinates(int t) const { return d2t.U_inv.row(t); }

AbelianInvariants h1(const FiniteGroup& g) {
  if (g.order() > kMaxChainOrder)
    throw ResourceCap("bar complex is capped at order " + std::to_string(kMaxChainOrder));
  return cokernel_invariants(build_chain(g).d2);
}

H2Data compute_h2(const ChainData& chain) {
  const int n = chain.d2.cols(), r = chain.rank_b1(), k = chain.rank_z2();
  std::vector<IntVector> zc(n);
  for (int t = 0; t < n; ++t) {
    const auto& u = chain.d2t.U_inv;
    zc[t].resize(k);
    for (int l = 0; l < k; ++l) zc[t][l] = u(t, r + l);
  }
  LatticeEchelon lattice(k);
  IntVector v(k);
  for (const auto& col : chain.d3) {
    for (auto& x : v) x = 0;
    bool nonzero = false;
    for (auto [t, c] : col) {
      const Int cc = c;
      for (int l = 0; l < k; ++l)
        if (sgn(zc[t][l]) != 0) {
          mpz_addmul(v[l].get_mpz_t(), cc.get_mpz_t(), zc[t][l].get_mpz_t());
          nonzero = true;
        }
    }
    if (nonzero) lattice.insert(v);
  }
  if (lattice.rank() != k) throw std::logic_error("B2 does not have full rank in Z2");
  const auto s = smith_normal_form(lattice.basis());

  H2Data h;
  std::vector<int> idx;
  for (int i = 0; i < k; ++i)
    if (s.D(i, i) != 1) {
      if (!s.D(i, i).fits_slong_p()) throw ResourceCap("H2 invariant factor too large");
      idx.push_back(i);
      h.moduli.push_back(s.D(i, i).get_si());
    }
  h.invariants = AbelianInvariants{h.moduli, 0};
  const int g = static_cast<int>(idx.size());
  h.coord_map = IntMatrix(k, g);
  for (int j = 0; j < g; ++j)
    for (int l = 0; l < k; ++l) h.coord_map(l, j) = s.V(l, idx[j]);
  const auto z = chain.z2_basis();
  h.generator_cycles = IntMatrix(n, g);
  for (int j = 0; j < g; ++j)
    for (int l = 0; l < k; ++l) {
      const Int& w = s.V_inv(idx[j], l);
      if (sgn(w) == 0) continue;
      for (int t = 0; t < n; ++t)
        if (sgn(z(t, l)) != 0) mpz_addmul(h.generator_cycles(t, j).get_mpz_t(), w.get_mpz_t(), z(t, l).get_mpz_t());
    }
  return h;
}

AbelianInvariants h2(const FiniteGroup& g) { return compute_h2(build_chain(g)).invariants; }

IntVector SplittingData::pi_vector(int t) const {
  const int n = chain->d2.cols(), r = chain->rank_b1(), k = chain->rank_z2();
  IntVector out(n);
  for (int l = 0; l < k; ++l) {
    const Int& w = pi_coords[t][l];
    if (sgn(w) == 0) continue;
    for (int s = 0; s < n; ++s) {
      const Int& u = chain->d2t.U(r + l, s);
      if (sgn(u) != 0) mpz_addmul(out[s].get_mpz_t(), w.get_mpz_t(), u.get_mpz_t());
    }
  }
  return out;
}

H2Element SplittingData::h2_add(const H2Element& a, const H2Element& b) const {
  H2Element c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % h2.moduli[i];
  return c;
}

H2Element SplittingData::h2_neg(const H2Element& a) const {
  H2Element c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = (h2.moduli[i] - a[i]) % h2.moduli[i];
  return c;
}

H2Element SplittingData::pibar_chain(const IntVector& c) const {
  const auto g = h2.moduli.size();
  std::vector<Int> acc(g);
  for (std::size_t t = 0; t < c.size(); ++t) {
    if (sgn(c[t]) == 0) continue;
    for (std::size_t i = 0; i < g; ++i) acc[i] += c[t] * pibar[t][i];
  }
  H2Element out(g);
  for (std::size_t i = 0; i < g; ++i) out[i] = reduce_mod(acc[i], h2.moduli[i]);
  return out;
}

SplittingData make_splitting(std::shared_ptr<const ChainData> chain, const H2Data& h2,
                             std::optional<std::uint64_t> seed) {
  const auto& c = *chain;
  const int n = c.d2.cols(), r = c.rank_b1(), k = c.rank_z2(), m = c.order();
  SplittingData s;
  s.chain = chain;
  s.h2 = h2;
  s.seed = seed;
  s.delta = IntMatrix(k, r);
  if (seed) {
    std::mt19937_64 rng(*seed);
    for (int l = 0; l < k; ++l)
      for (int j = 0; j < r; ++j) s.delta(l, j) = static_cast<long>(rng() % 5) - 2;
  }
  const auto& U = c.d2t.U;
  s.sigma = IntMatrix(n, r);
  for (int j = 0; j < r; ++j)
    for (int t = 0; t < n; ++t) {
      Int& out = s.sigma(t, j);
      out = U(j, t);
      for (int l = 0; l < k; ++l)
        if (sgn(s.delta(l, j)) != 0 && sgn(U(r + l, t)) != 0)
          mpz_addmul(out.get_mpz_t(), s.delta(l, j).get_mpz_t(), U(r + l, t).get_mpz_t());
    }

  const auto g = h2.moduli.size();
  s.pi_coords.resize(n);
  s.pibar.resize(n);
  for (int t = 0; t < n; ++t) {
    const auto coords = c.split_coordinates(t);
    IntVector z(coords.begin() + r, coords.end());
    for (int l = 0; l < k; ++l)
      for (int j = 0; j < r; ++j)
        if (sgn(s.delta(l, j)) != 0 && sgn(coords[j]) != 0)
          mpz_submul(z[l].get_mpz_t(), s.delta(l, j).get_mpz_t(), coords[j].get_mpz_t());
    H2Element x(g);
    for (std::size_t i = 0; i < g; ++i) {
      Int acc = 0;
      for (int l = 0; l < k; ++l)
        if (sgn(z[l]) != 0) mpz_addmul(acc.get_mpz_t(), z[l].get_mpz_t(), h2.coord_map(l, i).get_mpz_t());
      x[i] = reduce_mod(acc, h2.moduli[i]);
    }
    s.pi_coords[t] = std::move(z);
    s.pibar[t] = std::move(x);
  }

  // Cheap invariant checks; the exhaustive ones live in verify_splitting.
  if (!(c.d2 * s.sigma == c.b1_basis())) throw std::logic_error("d2 * sigma != id on B1");
  for (int l = 0; l < k; ++l) {
    std::vector<Int> col(m);
    for (int t = 0; t < n; ++t) {
      const Int& u = U(r + l, t);
      if (sgn(u) == 0) continue;
      const int a = t / m, b = t % m;
      col[a] += u;
      col[c.group.mul(a, b)] -= u;
      col[b] += u;
    }
    for (const auto& v : col)
      if (sgn(v) != 0) throw std::logic_error("Z2 basis is not in ker d2");
  }
  for (const auto& col : c.d3) {
    H2Element sum(g);
    for (auto [t, v] : col)
      for (std::size_t i = 0; i < g; ++i) sum[i] = ((sum[i] + v * s.pibar[t][i]) % h2.moduli[i] + h2.moduli[i]) % h2.moduli[i];
    for (auto x : sum)
      if (x != 0) throw std::logic_error("pibar does not vanish on B2");
  }
  return s;
}

SplittingData make_splitting(const FiniteGroup& g, std::optional<std::uint64_t> seed) {
  auto chain = std::make_shared<const ChainData>(build_chain(g));
  const auto h = compute_h2(*chain);
  return make_splitting(chain, h, seed);
}

SplittingReport verify_splitting(const SplittingData& s) {
  const auto& c = *s.chain;
  const auto& g = c.group;
  const int m = c.order(), n = c.d2.cols(), k = c.rank_z2();
  SplittingReport rep;

  rep.d2_d3_zero = true;
  std::vector<long> acc(m);
  for (const auto& col : c.d3) {
    std::fill(acc.begin(), acc.end(), 0);
    for (auto [t, v] : col) add_d2_column(g, t, v, acc);
    for (long v : acc) rep.d2_d3_zero = rep.d2_d3_zero && v == 0;
  }

  rep.d2_sigma_identity = c.d2 * s.sigma == c.b1_basis();

  std::vector<IntVector> pis(n);
  rep.d2_pi_zero = true;
  for (int t = 0; t < n; ++t) {
    pis[t] = s.pi_vector(t);
    const auto boundary = c.d2.apply(pis[t]);
    rep.d2_pi_zero = rep.d2_pi_zero && std::all_of(boundary.begin(), boundary.end(),
                                                     [](const Int& v) { return sgn(v) == 0; });
  }

  const auto z = c.z2_basis();
  rep.pi_identity_on_z2 = true;
  for (int l = 0; l < k && rep.pi_identity_on_z2; ++l) {
    IntVector img(n);
    for (int t = 0; t < n; ++t) {
      if (sgn(z(t, l)) == 0) continue;
      for (int u = 0; u < n; ++u)
        if (sgn(pis[t][u]) != 0) mpz_addmul(img[u].get_mpz_t(), z(t, l).get_mpz_t(), pis[t][u].get_mpz_t());
    }
    rep.pi_identity_on_z2 = img == z.column(l);
  }

  rep.pibar_kills_b2 = true;
  for (const auto& col : c.d3) {
    IntVector chain(n);
    for (auto [t, v] : col) chain[t] += v;
    for (auto x : s.pibar_chain(chain)) rep.pibar_kills_b2 = rep.pibar_kills_b2 && x == 0;
  }
  return rep;
}

Angle Character::operator()(const H2Element& x) const {
  Angle a;
  for (std::size_t i = 0; i < values.size(); ++i) a += x[i] * values[i];
  return a;
}

bool Character::is_trivial() const {
  return std::all_of(values.begin(), values.end(), [](const Angle& a) { return a.is_zero(); });
}

std::vector<Character> characters_of_h2(const H2Data& h2) {
  std::vector<Character> out;
  const auto g = h2.moduli.size();
  std::vector<std::int64_t> c(g, 0);
  for (;;) {
    Character chi;
    for (std::size_t i = 0; i < g; ++i) chi.values.emplace_back(c[i], h2.moduli[i]);
    out.push_back(std::move(chi));
    std::size_t i = 0;
    while (i < g && c[i] == h2.moduli[i] - 1) c[i++] = 0;
    if (i == g) break;
    ++c[i];
  }
  return out;
}

std::vector<Character> characters_of_h2(const FiniteGroup& g) { return characters_of_h2(compute_h2(build_chain(g))); }

}  // namespace twext
