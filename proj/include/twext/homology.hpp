#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "twext/angle.hpp"
#include "twext/grp.hpp"
#include "twext/zlin.hpp"

namespace twext {

constexpr int kMaxChainOrder = 24;

/**
 * Low-degree bar complex C3 -> C2 -> C1 of a finite group.
 *
 * Basis order is lexicographic in element indices: (g) -> g,
 * (g1,g2) -> g1 m + g2, (g1,g2,g3) -> (g1 m + g2) m + g3.
 */
struct ChainData {
  FiniteGroup group;
  /// m x m^2.
  IntMatrix d2;
  /// d3 column by column as (row, coefficient) pairs; duplicates already merged.
  std::vector<std::vector<std::pair<int, int>>> d3;

  /// Row-Hermite form of d2^T with its inverse transform: the first rank rows
  /// of U map onto a basis of B1, the remaining rows span Z2.
  HermiteForm d2t;

  int order() const { return group.order(); }
  int c2_index(int g1, int g2) const { return g1 * order() + g2; }
  int c3_index(int g1, int g2, int g3) const { return (g1 * order() + g2) * order() + g3; }
  int rank_b1() const { return d2t.rank; }
  int rank_z2() const { return d2.cols() - d2t.rank; }

  IntMatrix d3_dense() const;
  /// Columns form a Z-basis of Z2 (m^2 x rank_z2).
  IntMatrix z2_basis() const;
  /// Basis of B1 in C1 coordinates (m x rank_b1); column j is d2 applied to column j of sigma.
  IntMatrix b1_basis() const;
  /// Coordinates of basis vector t of C2 in the (B1-preimage, Z2) decomposition.
  IntVector split_coordinates(int t) const;
};

ChainData build_chain(const FiniteGroup& g);

AbelianInvariants h1(const FiniteGroup& g);

/// H2 as a quotient of Z2 with explicit coordinates.
struct H2Data {
  AbelianInvariants invariants;
  /// Moduli d_i > 1 of the cyclic factors, in invariant-factor order.
  std::vector<std::int64_t> moduli;
  /// rank_z2 x moduli.size(): Z2-coordinates z map to (z * coord_map)_i mod d_i.
  IntMatrix coord_map;
  /// m^2 x moduli.size(): a cycle representing each generator.
  IntMatrix generator_cycles;
};

H2Data compute_h2(const ChainData& chain);
AbelianInvariants h2(const FiniteGroup& g);

/// An element of H2 in the coordinates of H2Data, entries reduced mod d_i.
using H2Element = std::vector<std::int64_t>;

struct SplittingData {
  std::shared_ptr<const ChainData> chain;
  H2Data h2;
  std::optional<std::uint64_t> seed;
  /// rank_z2 x rank_b1 perturbation in Hom(B1, Z2) (zero for the default splitting).
  IntMatrix delta;
  /// m^2 x rank_b1: sigma applied to the basis of B1.
  IntMatrix sigma;
  /// m^2 rows of Z2-coordinates of pi(e_t).
  std::vector<IntVector> pi_coords;
  /// pibar[t] = H2-coordinates of pi(e_t).
  std::vector<H2Element> pibar;

  const FiniteGroup& group() const { return chain->group; }
  const H2Element& pibar_of(int g1, int g2) const { return pibar[chain->c2_index(g1, g2)]; }
  /// pi(e_t) as a vector of C2.
  IntVector pi_vector(int t) const;
  H2Element h2_add(const H2Element& a, const H2Element& b) const;
  H2Element h2_neg(const H2Element& a) const;
  /// H2-coordinates of an arbitrary integer chain in C2.
  H2Element pibar_chain(const IntVector& c) const;
};

/// Default splitting (nullopt) or the default plus a seeded perturbation with
/// entries in [-2, 2].
SplittingData make_splitting(std::shared_ptr<const ChainData> chain, const H2Data& h2,
                             std::optional<std::uint64_t> seed = std::nullopt);
SplittingData make_splitting(const FiniteGroup& g, std::optional<std::uint64_t> seed = std::nullopt);

struct SplittingReport {
  bool d2_d3_zero = false;
  bool d2_sigma_identity = false;
  bool d2_pi_zero = false;
  bool pi_identity_on_z2 = false;
  bool pibar_kills_b2 = false;
  bool ok() const { return d2_d3_zero && d2_sigma_identity && d2_pi_zero && pi_identity_on_z2 && pibar_kills_b2; }
};

/// Exhaustive check of the splitting identities (intended for tests and audits).
SplittingReport verify_splitting(const SplittingData& s);

/// A homomorphism H2 -> Q/Z given by its values on the generators.
struct Character {
  std::vector<Angle> values;

  Angle operator()(const H2Element& x) const;
  bool is_trivial() const;
  bool operator==(const Character&) const = default;
};

std::vector<Character> characters_of_h2(const H2Data& h2);
std::vector<Character> characters_of_h2(const FiniteGroup& g);

}  // namespace twext
