#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "twext/angle.hpp"
#include "twext/grp.hpp"
#include "twext/homology.hpp"

namespace twext {

using TorusValue = Angle;

class IdentityViolation : public DomainError {
 public:
  IdentityViolation(int g1, int g2, int g3);
  std::array<int, 3> triple;
};

/// A T-valued function on G x G, entry (i,j) = omega(g_i, g_j).  Values of this
/// type always satisfy the cocycle identity.
class Cocycle2 {
 public:
  const FiniteGroup& group() const { return group_; }
  const Angle& operator()(int g, int h) const { return angles_[static_cast<std::size_t>(g) * group_.order() + h]; }
  std::vector<std::vector<Angle>> table() const;

  bool is_normalized() const;
  /// Pointwise product (sum of angles).
  Cocycle2 operator*(const Cocycle2& other) const;
  /// Pointwise complex conjugate.
  Cocycle2 conjugate() const;
  bool operator==(const Cocycle2& o) const { return group_ == o.group_ && angles_ == o.angles_; }

 private:
  friend Cocycle2 check_cocycle(const FiniteGroup&, const std::vector<std::vector<Angle>>&);
  Cocycle2(FiniteGroup g, std::vector<Angle> a) : group_(std::move(g)), angles_(std::move(a)) {}
  FiniteGroup group_;
  std::vector<Angle> angles_;
};

struct Cochain1 {
  std::vector<Angle> angles;
};

/// Validates the cocycle identity over all triples; throws IdentityViolation.
Cocycle2 check_cocycle(const FiniteGroup& g, const std::vector<std::vector<Angle>>& table);

Cocycle2 trivial_cocycle(const FiniteGroup& g);

/// (d gamma)(g,h) = gamma(g) + gamma(h) - gamma(gh).
Cocycle2 coboundary(const FiniteGroup& g, const Cochain1& gamma);

/// Uniform random 1-cochain with angles k/den.
Cochain1 random_cochain(const FiniteGroup& g, std::mt19937_64& rng, std::int64_t den = 12);

struct Normalized {
  Cocycle2 cocycle;
  /// cocycle = input * coboundary(gamma)
  Cochain1 gamma;
};

/// Cohomologous representative with omega(e,e) = 0 and omega(g,g^-1) = 0 for all g.
Normalized normalize(const Cocycle2& omega);

/// The character of H2 obtained by pairing omega with the generator cycles.
Character induced_character(const Cocycle2& omega, const SplittingData& split);
Character induced_character(const Cocycle2& omega, const H2Data& h2);

bool cohomologous(const Cocycle2& a, const Cocycle2& b);
bool cohomologous(const Cocycle2& a, const Cocycle2& b, const H2Data& h2);

/// The cocycle (g1,g2) -> chi(pibar(g1,g2)) attached to a splitting.
Cocycle2 cocycle_from_character(const SplittingData& split, const Character& chi);

/// A character of an abelian subgroup N, stored as one angle per member of N
/// (in the order of N.members).
struct SubgroupCharacter {
  std::vector<Angle> values;
  bool is_trivial() const;
  bool operator==(const SubgroupCharacter&) const = default;
};

/// All |N| characters of an abelian subgroup, trivial first.
std::vector<SubgroupCharacter> subgroup_characters(const FiniteGroup& g, const Subgroup& n);

/**
 * sigma_chi([s],[t]) = chi(c([s]) c([t]) c([st])^-1) on the quotient G/N,
 * with c the minimal-index lift.
 */
Cocycle2 sigma_chi(const FiniteGroup& g, const Subgroup& n, const SubgroupCharacter& chi);

/// Named cocycles: "trivial", and "paper-klein" (klein only), the bicharacter
/// omega(a^i b^j, a^k b^l) = jk/2.
Cocycle2 named_cocycle(const std::string& name, const FiniteGroup& g);

}  // namespace twext
