#pragma once

#include <string>
#include <utility>
#include <vector>

#include "twext/homology.hpp"
#include "twext/staralg.hpp"
#include "twext/zlin.hpp"

namespace twext {

constexpr int kMaxExtensionOrder = 256;
constexpr int kMaxClassifyOrder = 16;

/**
 * E = H2 x G with (x1,g1)(x2,g2) = (x1 + x2 + pibar(g1,g2), g1 g2).
 *
 * H2 elements are numbered in mixed radix over the moduli, first coordinate
 * fastest.  The raw pair (x,g) has number x |G| + g; the identity (o,e) is
 * moved to index 0 and the remaining pairs keep their relative order.
 */
struct CentralExtension {
  FiniteGroup base;
  AbelianInvariants h2;
  SplittingData split;
  FiniteGroup total;
  Homomorphism embed;    // H2 index -> E
  Homomorphism project;  // E -> G
  H2Element offset;      // o = -pibar(e,e)

  int h2_order() const { return static_cast<int>(embed.map.size()); }
  H2Element h2_element(int index) const;
  int h2_index(const H2Element& x) const;
  /// E index of the pair (x,g).
  int element(const H2Element& x, int g) const;
  /// The pair (x,g) of an E index.
  std::pair<H2Element, int> pair(int e) const;
  Subgroup kernel() const;

  std::vector<int> to_raw;  // E index -> raw pair number
  std::vector<int> from_raw;
};

CentralExtension build_extension(const FiniteGroup& g, const SplittingData& split);

struct ExtensionClass {
  std::string label;
  /// Base elements whose lifts have order 4 (base of exponent 2 only).
  std::vector<int> order4_lifts;
  bool fingerprint = false;
};

/// Iso-class label against the builtins of the same order; the Klein base gets
/// Q8 or D4(a|b|ab) according to which of a=1, b=2, ab=3 lift to order 4.
ExtensionClass classify_extension(const CentralExtension& ext);

/// Builtin groups of order n <= 16 used as classification targets, with labels.
std::vector<std::pair<std::string, FiniteGroup>> classification_targets(int n);

struct ExtensionCounts {
  AbelianInvariants strong;  // Ext(H1, H2)
  AbelianInvariants weak;    // Ext(H1, H2 / torsion)
};

ExtensionCounts count_extension_classes(const FiniteGroup& g);

/// The subgroup character on embed(H2) induced by a character of H2.
SubgroupCharacter kernel_character(const CentralExtension& ext, const Character& chi);

/// e_chi C[E], compressed; isomorphic to C[G, chi o pibar].
StarAlgebra fiber_of_extension(const CentralExtension& ext, const Character& chi);

}  // namespace twext
