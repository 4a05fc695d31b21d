#include "twext/cocycle.hpp"

#include <algorithm>
#include <numeric>

namespace twext {

IdentityViolation::IdentityViolation(int g1, int g2, int g3)
    : DomainError("cocycle identity fails at (" + std::to_string(g1) + "," + std::to_string(g2) + "," +
                  std::to_string(g3) + ")"),
      triple{g1, g2, g3} {}

std::vector<std::vector<Angle>> Cocycle2::table() const {
  const int m = group_.order();
  std::vector<std::vector<Angle>> t(m);
  for (int i = 0; i < m; ++i) t[i].assign(angles_.begin() + i * m, angles_.begin() + (i + 1) * m);
  return t;
}

bool Cocycle2::is_normalized() const {
  for (int g = 0; g < group_.order(); ++g)
    if (!(*this)(g, group_.inv(g)).is_zero()) return false;
  return (*this)(0, 0).is_zero();
}

Cocycle2 Cocycle2::operator*(const Cocycle2& other) const {
  if (!(group_ == other.group_)) throw DomainError("cocycles on different groups");
  auto a = angles_;
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += other.angles_[i];
  return Cocycle2(group_, std::move(a));
}

Cocycle2 Cocycle2::conjugate() const {
  auto a = angles_;
  for (auto& x : a) x = -x;
  return Cocycle2(group_, std::move(a));
}

Cocycle2 check_cocycle(const FiniteGroup& g, const std::vector<std::vector<Angle>>& table) {
  const int m = g.order();
  if (static_cast<int>(table.size()) != m) throw DomainError("cocycle table has wrong size");
  std::vector<Angle> a;
  a.reserve(static_cast<std::size_t>(m) * m);
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != m) throw DomainError("cocycle table has wrong size");
    a.insert(a.end(), row.begin(), row.end());
  }
  auto w = [&](int x, int y) -> const Angle& { return a[static_cast<std::size_t>(x) * m + y]; };
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z)
        if (w(x, g.mul(y, z)) + w(y, z) != w(g.mul(x, y), z) + w(x, y)) throw IdentityViolation(x, y, z);
  return Cocycle2(g, std::move(a));
}

Cocycle2 trivial_cocycle(const FiniteGroup& g) {
  return check_cocycle(g, std::vector<std::vector<Angle>>(g.order(), std::vector<Angle>(g.order())));
}

Cocycle2 coboundary(const FiniteGroup& g, const Cochain1& gamma) {
  const int m = g.order();
  if (static_cast<int>(gamma.angles.size()) != m) throw DomainError("cochain has wrong length");
  std::vector<std::vector<Angle>> t(m, std::vector<Angle>(m));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) t[x][y] = gamma.angles[x] + gamma.angles[y] - gamma.angles[g.mul(x, y)];
  return check_cocycle(g, t);
}

Cochain1 random_cochain(const FiniteGroup& g, std::mt19937_64& rng, std::int64_t den) {
  Cochain1 c;
  for (int x = 0; x < g.order(); ++x) c.angles.emplace_back(static_cast<std::int64_t>(rng() % den), den);
  return c;
}

Normalized normalize(const Cocycle2& omega) {
  const auto& g = omega.group();
  const int m = g.order();
  Cochain1 gamma{std::vector<Angle>(m)};
  const Angle ee = omega(0, 0);
  gamma.angles[0] = -ee;
  for (int x = 1; x < m; ++x) {
    const int y = g.inv(x);
    const Angle fix = -ee - omega(x, y);
    if (x == y)
      gamma.angles[x] = fix.half();
    else if (x < y)
      gamma.angles[x] = fix;
  }
  auto out = omega * coboundary(g, gamma);
  if (!out.is_normalized()) throw std::logic_error("normalization failed");
  return Normalized{std::move(out), std::move(gamma)};
}

Character induced_character(const Cocycle2& omega, const H2Data& h2) {
  const int m = omega.group().order();
  if (h2.generator_cycles.rows() != m * m) throw DomainError("cocycle and H2 data belong to different groups");
  Character chi;
  for (int i = 0; i < h2.generator_cycles.cols(); ++i) {
    Angle a;
    for (int t = 0; t < m * m; ++t) {
      const Int& c = h2.generator_cycles(t, i);
      if (sgn(c) == 0) continue;
      const Angle& w = omega(t / m, t % m);
      // reduce the coefficient mod den before multiplying
      const auto k = mod_floor(c, Int(static_cast<long>(w.den()))).get_si();
      a += k * w;
    }
    chi.values.push_back(a);
  }
  return chi;
}

Character induced_character(const Cocycle2& omega, const SplittingData& split) {
  if (!(omega.group() == split.group())) throw DomainError("cocycle and splitting belong to different groups");
  return induced_character(omega, split.h2);
}

bool cohomologous(const Cocycle2& a, const Cocycle2& b, const H2Data& h2) {
  return induced_character(a, h2) == induced_character(b, h2);
}

bool cohomologous(const Cocycle2& a, const Cocycle2& b) {
  if (!(a.group() == b.group())) throw DomainError("cocycles on different groups");
  return cohomologous(a, b, compute_h2(build_chain(a.group())));
}

Cocycle2 cocycle_from_character(const SplittingData& split, const Character& chi) {
  const int m = split.group().order();
  std::vector<std::vector<Angle>> t(m, std::vector<Angle>(m));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) t[x][y] = chi(split.pibar_of(x, y));
  return check_cocycle(split.group(), t);
}

bool SubgroupCharacter::is_trivial() const {
  return std::all_of(values.begin(), values.end(), [](const Angle& a) { return a.is_zero(); });
}

std::vector<SubgroupCharacter> subgroup_characters(const FiniteGroup& g, const Subgroup& n) {
  const auto h = subgroup_as_group(g, n);
  if (!h.is_abelian()) throw DomainError("characters requested for a nonabelian subgroup");
  const auto gens = generating_set(h);
  const int k = h.order();
  std::vector<SubgroupCharacter> out;
  std::vector<std::int64_t> choice(gens.size(), 0);
  for (;;) {
    std::vector<Angle> val(k);
    std::vector<char> set(k);
    set[0] = 1;
    std::vector<int> queue{0};
    bool ok = true;
    for (std::size_t qi = 0; qi < queue.size() && ok; ++qi)
      for (std::size_t s = 0; s < gens.size() && ok; ++s) {
        const int y = h.mul(queue[qi], gens[s]);
        const Angle v = val[queue[qi]] + Angle(choice[s], h.element_order(gens[s]));
        if (!set[y]) {
          set[y] = 1;
          val[y] = v;
          queue.push_back(y);
        } else if (val[y] != v) {
          ok = false;
        }
      }
    if (ok) out.push_back(SubgroupCharacter{std::move(val)});
    std::size_t i = 0;
    while (i < gens.size() && choice[i] == h.element_order(gens[i]) - 1) choice[i++] = 0;
    if (i == gens.size()) break;
    ++choice[i];
  }
  if (static_cast<int>(out.size()) != k) throw std::logic_error("character enumeration incomplete");
  return out;
}

Cocycle2 sigma_chi(const FiniteGroup& g, const Subgroup& n, const SubgroupCharacter& chi) {
  const auto z = center(g);
  for (int x : n.members)
    if (!z.contains(x)) throw DomainError("sigma_chi needs a central subgroup");
  if (static_cast<int>(chi.values.size()) != n.order()) throw DomainError("character has wrong length");
  for (int i = 0; i < n.order(); ++i)
    for (int j = 0; j < n.order(); ++j)
      if (chi.values[n.position(g.mul(n.members[i], n.members[j]))] != chi.values[i] + chi.values[j])
        throw DomainError("character is not multiplicative on N");
  const auto q = quotient(g, n);
  const int k = q.group.order();
  std::vector<std::vector<Angle>> t(k, std::vector<Angle>(k));
  for (int s = 0; s < k; ++s)
    for (int u = 0; u < k; ++u) {
      const int x = g.mul(g.mul(q.lift[s], q.lift[u]), g.inv(q.lift[q.group.mul(s, u)]));
      t[s][u] = chi.values[n.position(x)];
    }
  return check_cocycle(q.group, t);
}

Cocycle2 named_cocycle(const std::string& name, const FiniteGroup& g) {
  if (name == "trivial") return trivial_cocycle(g);
  if (name == "paper-klein") {
    if (!(g == klein())) throw DomainError("paper-klein is defined on the Klein four-group only");
    std::vector<std::vector<Angle>> t(4, std::vector<Angle>(4));
    for (int x = 0; x < 4; ++x)
      for (int y = 0; y < 4; ++y) t[x][y] = Angle((x / 2) * (y % 2), 2);
    return check_cocycle(g, t);
  }
  throw DomainError("unknown cocycle name '" + name + "'");
}

}  // namespace twext
