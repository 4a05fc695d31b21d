#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "twext/errors.hpp"
#include "twext/zlin.hpp"

namespace twext {

class IndeterminateHirsch : public DomainError {
 public:
  using DomainError::DomainError;
};

enum class Tri { False, True, Unknown };

std::string to_string(Tri t);

struct GroupFlags {
  Tri finitely_generated = Tri::Unknown;
  Tri virt_nilpotent = Tri::Unknown;
  Tri virt_polycyclic = Tri::Unknown;
  Tri elementary_amenable = Tri::Unknown;

  static GroupFlags all(Tri t) { return {t, t, t, t}; }
  bool operator==(const GroupFlags&) const = default;
};

/// A Hirsch length: a non-negative integer or infinity.
class HirschValue {
 public:
  HirschValue() = default;
  explicit HirschValue(Int v);
  static HirschValue infinite();

  bool is_infinite() const { return infinite_; }
  const Int& value() const;
  std::string to_string() const;

  friend HirschValue operator+(const HirschValue& a, const HirschValue& b);
  /// Product with the convention 0 * inf = 0.
  friend HirschValue operator*(const HirschValue& a, const HirschValue& b);
  bool operator==(const HirschValue& o) const { return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_); }

 private:
  bool infinite_ = false;
  Int value_ = 0;
};

struct Cardinality {
  enum class Kind { Finite, Infinite, Unknown };
  Kind kind = Kind::Unknown;
  Int value = 0;

  static Cardinality finite(Int n) { return {Kind::Finite, std::move(n)}; }
  static Cardinality infinite() { return {Kind::Infinite, 0}; }
  static Cardinality unknown() { return {Kind::Unknown, 0}; }
  bool is_finite() const { return kind == Kind::Finite; }
  bool is_trivial() const { return kind == Kind::Finite && value == 1; }
  std::string to_string() const;
};

struct GroupDescriptor;
using Descriptor = std::shared_ptr<const GroupDescriptor>;

struct GroupDescriptor {
  enum class Kind { Finite, FreeAbelian, Atom, Extension, Quotient, Wreath, DirectSum };
  Kind kind;
  Int n = 0;  // order for Finite, rank for FreeAbelian
  std::string label;
  HirschValue atom_hirsch;
  Cardinality atom_card;
  GroupFlags atom_flags;
  /// Extension: {N, Q}; Quotient: {G, N}; Wreath: {K, H}; DirectSum: summands.
  std::vector<Descriptor> children;
};

Descriptor finite_group(Int n);
Descriptor free_abelian(Int d);
Descriptor atom(std::string label, HirschValue h, Cardinality card, GroupFlags flags);
/// Z[1/p]: Hirsch length 1, countably infinite, abelian, not finitely generated.
Descriptor zinv(int p);
Descriptor extension(Descriptor n, Descriptor q);
Descriptor quotient(Descriptor g, Descriptor n);
Descriptor wreath(Descriptor k, Descriptor h);
Descriptor direct_sum(std::vector<Descriptor> summands);

/// The two groups of the Hall example: H = ((Z[1/p]^2) . Z[1/p]) . Z and G = H / Z.
std::pair<Descriptor, Descriptor> hall_groups(int p);

HirschValue hirsch_length(const Descriptor& d);
Cardinality cardinality(const Descriptor& d);
GroupFlags flags(const Descriptor& d);
std::string describe(const Descriptor& d);

struct Derivation {
  std::string node;
  std::string rule;
  std::string value;
  std::vector<Derivation> children;
};

Derivation derive_hirsch(const Descriptor& d);
/// Indented text rendering, one node per line.
std::string render(const Derivation& d);

// Bound formulas.

/// Recursion f(n) = 9^n (n+1) (f(n-1)+1) - 1 with f(0) = 0 and f(1) = 1.
Int f_bound(int n);
/// (n+1)! 9^((n+2)(n-1)/2) - 1 for n >= 1, and f(0) = 0.
Int f_closed_form(int n);
/// a * l * (dstab + 1) - 1, where a and l are the "+1" quantities.
Int hw_product_bound(const Int& asdim_p1, const Int& ltc_p1, const Int& dstab);
/// (3^k, 3^k (dimX + 1)).
std::pair<Int, Int> nilpotent_input_bounds(int k, int dim_x);
/// f(h_g + h_h2).
Int twisted_bound(int h_g, int h_h2);
/// 2 * 9^k.
Int wreath_bound_finite_K(int k);

enum class Verdict { Finite, Infinite, OutOfHypotheses };
std::string to_string(Verdict v);

/// Finite nuclear dimension of C*(K wr H) for K virtually polycyclic and H
/// finitely generated virtually nilpotent: finite iff K or H is finite.
Verdict wreath_dimnuc_verdict(const Descriptor& k, const Descriptor& h);
/// Finite decomposition rank for K, H finitely generated virtually nilpotent:
/// finite iff H is finite or K is trivial.
Verdict wreath_dr_verdict(const Descriptor& k, const Descriptor& h);

}  // namespace twext
