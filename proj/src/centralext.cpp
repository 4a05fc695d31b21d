#include "twext/centralext.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace twext {

H2Element CentralExtension::h2_element(int index) const {
  H2Element x;
  for (auto d : split.h2.moduli) {
    x.push_back(index % d);
    index = static_cast<int>(index / d);
  }
  return x;
}

int CentralExtension::h2_index(const H2Element& x) const {
  int idx = 0, radix = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    idx += static_cast<int>(x[i]) * radix;
    radix *= static_cast<int>(split.h2.moduli[i]);
  }
  return idx;
}

int CentralExtension::element(const H2Element& x, int g) const { return from_raw[h2_index(x) * base.order() + g]; }

std::pair<H2Element, int> CentralExtension::pair(int e) const {
  const int raw = to_raw[e];
  return {h2_element(raw / base.order()), raw % base.order()};
}

Subgroup CentralExtension::kernel() const {
  std::vector<int> members(embed.map);
  std::sort(members.begin(), members.end());
  return Subgroup{std::move(members)};
}

CentralExtension build_extension(const FiniteGroup& g, const SplittingData& split) {
  if (!(split.group() == g)) throw DomainError("splitting belongs to a different group");
  const int m = g.order();
  long long k = 1;
  for (auto d : split.h2.moduli) k *= d;
  if (k * m > kMaxExtensionOrder)
    throw ResourceCap("extension of order " + std::to_string(k * m) + " exceeds " + std::to_string(kMaxExtensionOrder));

  CentralExtension ext{g, split.h2.invariants, split, FiniteGroup(), {}, {}, {}, {}, {}};
  const int n = static_cast<int>(k * m);
  ext.offset = split.h2_neg(split.pibar_of(0, 0));
  const int id_raw = ext.h2_index(ext.offset) * m;
  ext.to_raw.push_back(id_raw);
  for (int r = 0; r < n; ++r)
    if (r != id_raw) ext.to_raw.push_back(r);
  ext.from_raw.assign(n, 0);
  for (int e = 0; e < n; ++e) ext.from_raw[ext.to_raw[e]] = e;

  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    const auto [x1, g1] = ext.pair(a);
    for (int b = 0; b < n; ++b) {
      const auto [x2, g2] = ext.pair(b);
      table[a][b] = ext.element(split.h2_add(split.h2_add(x1, x2), split.pibar_of(g1, g2)), g.mul(g1, g2));
    }
  }
  // the constructor re-verifies the identity, Latin-square and associativity laws
  ext.total = FiniteGroup(table, "E(" + (g.name().empty() ? std::string("G") : g.name()) + ")");

  for (int z = 0; z < static_cast<int>(k); ++z) ext.embed.map.push_back(ext.element(split.h2_add(ext.h2_element(z), ext.offset), 0));
  for (int e = 0; e < n; ++e) ext.project.map.push_back(ext.pair(e).second);

  if (!is_homomorphism(ext.total, g, ext.project)) throw std::logic_error("projection is not a homomorphism");
  const auto kern = ext.kernel();
  std::vector<int> expected;
  for (int e = 0; e < n; ++e)
    if (ext.project(e) == 0) expected.push_back(e);
  if (kern.members != expected) throw std::logic_error("embedded H2 is not the kernel of the projection");
  for (int z : kern.members)
    for (int e = 0; e < n; ++e)
      if (ext.total.mul(z, e) != ext.total.mul(e, z)) throw std::logic_error("embedded H2 is not central");
  return ext;
}

std::vector<std::pair<std::string, FiniteGroup>> classification_targets(int n) {
  static const std::vector<std::string> exprs{
      "cyclic(1)",
      "cyclic(2)",
      "cyclic(3)",
      "cyclic(4)",
      "klein",
      "cyclic(5)",
      "cyclic(6)",
      "symmetric(3)",
      "cyclic(7)",
      "cyclic(8)",
      "direct_product(cyclic(2),cyclic(4))",
      "direct_product(klein,cyclic(2))",
      "dihedral(4)",
      "quaternion8",
      "cyclic(9)",
      "direct_product(cyclic(3),cyclic(3))",
      "cyclic(10)",
      "dihedral(5)",
      "cyclic(11)",
      "cyclic(12)",
      "direct_product(cyclic(2),cyclic(6))",
      "dihedral(6)",
      "semidirect(cyclic(3),cyclic(4),2)",
      "direct_product(cyclic(2),cyclic(2),cyclic(3))",
      "cyclic(13)",
      "cyclic(14)",
      "dihedral(7)",
      "cyclic(15)",
      "cyclic(16)",
      "direct_product(cyclic(4),cyclic(4))",
      "direct_product(cyclic(2),cyclic(8))",
      "direct_product(klein,cyclic(4))",
      "direct_product(klein,klein)",
      "dihedral(8)",
      "direct_product(dihedral(4),cyclic(2))",
      "direct_product(quaternion8,cyclic(2))",
      "wreath(cyclic(2),cyclic(2))",
      "semidirect(cyclic(4),cyclic(4),3)",
      "semidirect(cyclic(8),cyclic(2),5)",
      "semidirect(cyclic(8),cyclic(2),3)",
  };
  std::vector<std::pair<std::string, FiniteGroup>> out;
  for (const auto& e : exprs) {
    FiniteGroup g;
    try {
      g = builtin(e);
    } catch (const DomainError&) {
      continue;
    }
    if (g.order() == n) out.emplace_back(e, std::move(g));
  }
  return out;
}

namespace {

std::string fingerprint(const FiniteGroup& e) {
  std::ostringstream os;
  os << "order" << e.order() << (e.is_abelian() ? "-abelian" : "-nonabelian") << "-center" << center(e).order()
     << "-orders";
  for (int x : element_order_profile(e)) os << '.' << x;
  return os.str();
}

}  // namespace

ExtensionClass classify_extension(const CentralExtension& ext) {
  const auto& e = ext.total;
  if (e.order() > kMaxClassifyOrder)
    throw ResourceCap("classification is limited to order " + std::to_string(kMaxClassifyOrder));
  ExtensionClass cls;
  bool exponent_two = true;
  for (int g = 1; g < ext.base.order(); ++g) exponent_two = exponent_two && ext.base.element_order(g) == 2;
  if (exponent_two)
    for (int g = 1; g < ext.base.order(); ++g)
      if (e.element_order(ext.element(ext.offset, g)) == 4) cls.order4_lifts.push_back(g);

  if (ext.base == klein() && e.order() == 8 && !e.is_abelian()) {
    if (is_isomorphic_small(e, quaternion8())) {
      cls.label = "Q8";
      return cls;
    }
    if (is_isomorphic_small(e, dihedral(4)) && cls.order4_lifts.size() == 1) {
      static const char* names[] = {"", "a", "b", "ab"};
      cls.label = std::string("D4(") + names[cls.order4_lifts[0]] + ")";
      return cls;
    }
  }
  for (const auto& [label, target] : classification_targets(e.order()))
    if (is_isomorphic_small(e, target)) {
      cls.label = label;
      return cls;
    }
  cls.label = fingerprint(e);
  cls.fingerprint = true;
  return cls;
}

ExtensionCounts count_extension_classes(const FiniteGroup& g) {
  const auto a = h1(g);
  const auto b = h2(g);
  return ExtensionCounts{ext_group(a, b), ext_group(a, torsion_free_quotient(b))};
}

SubgroupCharacter kernel_character(const CentralExtension& ext, const Character& chi) {
  const auto n = ext.kernel();
  SubgroupCharacter out{std::vector<Angle>(n.order())};
  for (int z = 0; z < ext.h2_order(); ++z) out.values[n.position(ext.embed(z))] = chi(ext.h2_element(z));
  return out;
}

StarAlgebra fiber_of_extension(const CentralExtension& ext, const Character& chi) {
  if (chi.values.size() != ext.split.h2.moduli.size()) throw DomainError("character does not match H2");
  auto f = fiber_algebra(ext.total, ext.kernel(), kernel_character(ext, chi));
  f.label = "e_chi C[" + ext.total.name() + "]";
  return f;
}

}  // namespace twext
