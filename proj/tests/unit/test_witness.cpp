#include <algorithm>
#include <set>

#include "doctest.h"
#include "twext/witness.hpp"

using namespace twext;

namespace {

// hF == F compared as sorted lists, independent of the library check
bool translate_fixes(const ElementOracle& o, const Elem& h, std::vector<Elem> f) {
  std::vector<Elem> hf;
  for (const auto& x : f) hf.push_back(o.multiply(h, x));
  std::sort(f.begin(), f.end());
  std::sort(hf.begin(), hf.end());
  return f == hf;
}

bool distinct(const std::vector<Elem>& xs) { return std::set<Elem>(xs.begin(), xs.end()).size() == xs.size(); }

}  // namespace

TEST_CASE("shipped oracles are groups") {
  for (const auto& name : oracle_names()) {
    CAPTURE(name);
    CHECK_NOTHROW(check_oracle(oracle_by_name(name), 3));
  }
  CHECK_THROWS_AS(oracle_by_name("Q"), DomainError);
}

TEST_CASE("inconsistent oracles are rejected") {
  auto o = integers_oracle();
  o.multiply = [](const Elem& a, const Elem& b) { return Elem{a[0] - b[0]}; };
  CHECK_THROWS_AS(finite_subset_witness(o, 3), OracleInconsistent);
  auto p = z_times_c2_oracle();
  p.g_order = 3;
  CHECK_THROWS_AS(finite_subset_witness(p, 3), OracleInconsistent);
  auto q = z2_oracle();
  q.g = q.identity;
  CHECK_THROWS_AS(finite_subset_witness(q, 3), OracleInconsistent);
}

TEST_CASE("word balls") {
  CHECK(word_ball(integers_oracle(), 20).size() == 41);
  // |x| + |y| <= r has 2r^2 + 2r + 1 points
  CHECK(word_ball(z2_oracle(), 20).size() == 841);
  CHECK(word_ball(z_times_c2_oracle(), 20).size() == 80);
  CHECK(word_ball(dinf_oracle(), 0).size() == 1);
}

TEST_CASE("first construction on the integers") {
  const auto w = finite_subset_witness(integers_oracle(), 5);
  CHECK(w.construction == 1);
  CHECK(w.elements == std::vector<Elem>{{0}, {1}, {2}, {3}, {4}});
  const auto rep = verify_witness(integers_oracle(), w, 20);
  CHECK(rep.passed);
  CHECK(rep.checked == 40);
}

TEST_CASE("second construction on Z x Z/2") {
  const auto o = z_times_c2_oracle();
  const auto w = finite_subset_witness(o, 3);
  CHECK(w.construction == 2);
  CHECK(w.elements.size() == 5);
  CHECK(distinct(w.elements));
  CHECK(std::count(w.elements.begin(), w.elements.end(), o.identity) == 0);
  CHECK(verify_witness(o, w, 10).passed);
  for (const auto& h : word_ball(o, 10))
    if (h != o.identity) CHECK_FALSE(translate_fixes(o, h, w.elements));
}

TEST_CASE("Dinf uses the translation") {
  const auto o = dinf_oracle();
  const auto w = finite_subset_witness(o, 10);
  CHECK(w.construction == 1);
  REQUIRE(w.elements.size() == 10);
  for (int j = 0; j < 10; ++j) CHECK(w.elements[j] == Elem{j, 1});
}

TEST_CASE("witness property on all oracles") {
  long long total = 0;
  for (const auto& name : oracle_names()) {
    const auto o = oracle_by_name(name);
    const auto ball = word_ball(o, 20);
    for (int n = 1; n <= 50; ++n) {
      CAPTURE(name);
      CAPTURE(n);
      const auto w = finite_subset_witness(o, n);
      CHECK(static_cast<int>(w.elements.size()) >= n);
      CHECK(distinct(w.elements));
      if (o.g_order) CHECK(static_cast<std::int64_t>(w.elements.size()) == n * *o.g_order - 1);
      const auto rep = verify_witness(o, w, 20);
      CHECK(rep.passed);
      CHECK(rep.checked == static_cast<long long>(ball.size()) - 1);
      if (n == 50) total += rep.checked;
    }
    // spot check against the sorted-list comparison
    const auto w = finite_subset_witness(o, 7);
    for (const auto& h : ball)
      if (h != o.identity) CHECK_FALSE(translate_fixes(o, h, w.elements));
  }
  CHECK(total >= 500);
}

TEST_CASE("the full cyclic subgroup is not a witness") {
  const auto o = z_times_c2_oracle();
  const WitnessSet sub{{o.identity, o.g}, 2};
  REQUIRE(translate_fixes(o, o.g, sub.elements));
  const auto rep = verify_witness(o, sub, 5);
  CHECK_FALSE(rep.passed);
  REQUIRE(rep.violation);
  CHECK(*rep.violation == o.g);
}
