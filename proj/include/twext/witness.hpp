#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "twext/errors.hpp"

namespace twext {

class OracleInconsistent : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Elements are integer tuples in a canonical normal form, so equality is
/// tuple equality.
using Elem = std::vector<std::int64_t>;

/// A concretely represented, possibly infinite group.
struct ElementOracle {
  std::string name;
  std::function<Elem(const Elem&, const Elem&)> multiply;
  std::function<Elem(const Elem&)> invert;
  Elem identity;
  std::vector<Elem> generators;
  /// Fixed non-identity element and its order (nullopt for infinite order).
  Elem g;
  std::optional<std::int64_t> g_order;
  /// i-th representative of a left coset of <g>; distinct i give distinct
  /// cosets and coset_rep(0) is the identity.  Only consulted when g has
  /// finite order.
  std::function<Elem(std::int64_t)> coset_rep;
};

ElementOracle integers_oracle();
ElementOracle z2_oracle();
ElementOracle dinf_oracle();
ElementOracle z_times_c2_oracle();
/// "Z", "Z2", "Dinf" or "ZxZ2".
ElementOracle oracle_by_name(const std::string& name);
std::vector<std::string> oracle_names();

/// Every element of word length <= radius in the generators, sorted.
std::vector<Elem> word_ball(const ElementOracle& o, int radius);

/// Group axioms on all triples from a small ball; throws OracleInconsistent.
void check_oracle(const ElementOracle& o, int radius = 2);

struct WitnessSet {
  std::vector<Elem> elements;
  /// 1 when g has infinite order, 2 otherwise.
  int construction = 1;
};

/// Infinite order: F = {g^j : 0 <= j < n}.  Order m: F is the union of n
/// cosets g_i<g> with g_0 = e, minus e, so |F| = n m - 1.
WitnessSet finite_subset_witness(const ElementOracle& o, int n);

struct WitnessReport {
  bool passed = true;
  int radius = 0;
  long long checked = 0;
  std::optional<Elem> violation;
};

/// Checks hF != F for every non-identity h in the word ball.
WitnessReport verify_witness(const ElementOracle& o, const WitnessSet& f, int radius);

std::string to_string(const Elem& e);

}  // namespace twext
