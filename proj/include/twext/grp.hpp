#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twext/errors.hpp"

namespace twext {

/**
 * A finite group stored as its Cayley table.
 *
 * Elements are the indices 0..order()-1 and index 0 is always the identity.
 * The constructor validates the identity, Latin-square and associativity
 * invariants, so a FiniteGroup value is always a group.
 */
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(std::vector<std::vector<int>>{{0}}) {}

  /// Takes a table with the identity already at index 0.
  explicit FiniteGroup(const std::vector<std::vector<int>>& table, std::string name = {});

  /// Locates the identity in an arbitrary valid table and relabels it to 0
  /// (swapping labels with whatever element was at 0).
  static FiniteGroup from_table_reindexed(const std::vector<std::vector<int>>& table,
                                          std::string name = {});

  int order() const { return order_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  int inv(int a) const { return inverse_[a]; }
  int element_order(int a) const;
  /// a^k for k >= 0.
  int power(int a, int k) const;
  bool is_abelian() const;

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  std::vector<std::vector<int>> table() const;
  const std::vector<int>& flat_table() const { return table_; }

  bool operator==(const FiniteGroup& other) const {
    return order_ == other.order_ && table_ == other.table_;
  }

 private:
  FiniteGroup(int order, std::vector<int> flat, std::string name, bool check);
  void validate() const;

  int order_ = 1;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::string name_;
};

/// A subgroup given by its sorted member list; always contains 0.
struct Subgroup {
  std::vector<int> members;

  int order() const { return static_cast<int>(members.size()); }
  bool contains(int g) const;
  /// Position of g inside `members`, or -1.
  int position(int g) const;
  bool operator==(const Subgroup&) const = default;
};

struct Homomorphism {
  std::vector<int> map;

  int operator()(int g) const { return map[g]; }
  bool operator==(const Homomorphism&) const = default;
};

bool is_homomorphism(const FiniteGroup& dom, const FiniteGroup& cod, const Homomorphism& f);

/// Validates closure under the group law and inverses; throws DomainError otherwise.
Subgroup make_subgroup(const FiniteGroup& g, std::vector<int> members);
Subgroup generated_subgroup(const FiniteGroup& g, std::span<const int> generators);
Subgroup trivial_subgroup();
Subgroup whole_group(const FiniteGroup& g);
bool is_normal(const FiniteGroup& g, const Subgroup& n);
/// Re-indexes a subgroup as a standalone group (members in sorted order).
FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h, std::string name = {});
/// Every subgroup, each once, sorted by (order, members).  Intended for small groups.
std::vector<Subgroup> all_subgroups(const FiniteGroup& g);

// ---------------------------------------------------------------------------
// Builtin constructions.  Element orderings:
//   cyclic(n)            index k  <-> g^k
//   klein                index i + 2j <-> a^i b^j   (0=e, 1=a, 2=b, 3=ab)
//   dihedral(n)          index k + n f <-> r^k s^f, order 2n, s r s = r^-1
//   quaternion8          index 2q + s <-> (-1)^s * {1, i, j, k}[q]
//   symmetric(n)         permutations of {0..n-1} in lexicographic order,
//                        (pq)(x) = p(q(x))
//   direct_product(A,B)  index a |B| + b
//   semidirect(N,H,phi)  (n,h) -> index n |H| + h, (n1,h1)(n2,h2) = (n1 phi_h1(n2), h1 h2)
//   wreath(K,H)          (f,h) with f: H -> K; index = h + |H| * sum_x f(x) |K|^x,
//                        H acts on functions by left translation
// ---------------------------------------------------------------------------

constexpr int kMaxBuiltinOrder = 256;

FiniteGroup cyclic(int n);
FiniteGroup klein();
FiniteGroup dihedral(int n);
FiniteGroup quaternion8();
FiniteGroup symmetric(int n);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
/// `action[h]` is the automorphism of N attached to h, as an element permutation.
FiniteGroup semidirect(const FiniteGroup& n, const FiniteGroup& h,
                       const std::vector<std::vector<int>>& action);
FiniteGroup wreath(const FiniteGroup& k, const FiniteGroup& h);

/**
 * Parses a group expression such as `klein`, `cyclic(4)`, `dihedral(4)`,
 * `quaternion8`, `symmetric(3)`, `direct_product(cyclic(2),cyclic(2))`,
 * `wreath(cyclic(2),cyclic(2))` or `semidirect(cyclic(n),cyclic(m),k)`, the
 * latter meaning that the generator of Z/m acts on Z/n by x -> kx.
 * Aliases: Q8 = quaternion8, D4 = dihedral(4), S3 = symmetric(3), Cn = cyclic(n).
 */
FiniteGroup builtin(std::string_view expr);

// ---------------------------------------------------------------------------
// Structural queries.
// ---------------------------------------------------------------------------

Subgroup center(const FiniteGroup& g);

struct QuotientResult {
  FiniteGroup group;
  Homomorphism projection;
  /// lift[x] is the minimal element index of coset x; lift[0] == 0.
  std::vector<int> lift;
};

/// Cosets are ordered by their minimal representative, so the identity coset is 0.
QuotientResult quotient(const FiniteGroup& g, const Subgroup& n);

/// Sorted multiset of element orders.
std::vector<int> element_order_profile(const FiniteGroup& g);

constexpr int kMaxIsomorphismOrder = 16;

/// Exact isomorphism test by backtracking over generator images.
bool is_isomorphic_small(const FiniteGroup& g, const FiniteGroup& h);

/// A small generating set chosen greedily (largest element order first).
std::vector<int> generating_set(const FiniteGroup& g);

}  // namespace twext
