#include <random>

#include "doctest.h"
#include "twext/hirsch.hpp"

using namespace twext;

namespace {

// (n+1)! * 9^((n+2)(n-1)/2) - 1 by plain repeated multiplication
Int closed_form_by_hand(int n) {
  Int fact = 1;
  for (int i = 2; i <= n + 1; ++i) fact *= i;
  Int p = 1;
  for (int i = 0; i < (n + 2) * (n - 1) / 2; ++i) p *= 9;
  return fact * p - 1;
}

Descriptor random_leaf(std::mt19937_64& rng, int& expected) {
  switch (rng() % 3) {
    case 0:
      return finite_group(1 + static_cast<int>(rng() % 6));
    case 1: {
      const int d = static_cast<int>(rng() % 4);
      expected += d;
      return free_abelian(d);
    }
    default:
      expected += 1;
      return zinv(2 + static_cast<int>(rng() % 5));
  }
}

Descriptor bracket(const std::vector<Descriptor>& xs, std::size_t lo, std::size_t hi, std::mt19937_64& rng) {
  if (hi - lo == 1) return xs[lo];
  const std::size_t mid = lo + 1 + rng() % (hi - lo - 1);
  return extension(bracket(xs, lo, mid, rng), bracket(xs, mid, hi, rng));
}

}  // namespace

TEST_CASE("Hall groups") {
  for (int p : {2, 3, 5}) {
    const auto [h, g] = hall_groups(p);
    CHECK(hirsch_length(h) == HirschValue(4));
    CHECK(hirsch_length(g) == HirschValue(3));
    CHECK(flags(h).finitely_generated == Tri::Unknown);
    CHECK(flags(h).elementary_amenable == Tri::True);
  }
}

TEST_CASE("wreath rule") {
  const auto z = free_abelian(1);
  CHECK(hirsch_length(wreath(z, z)).is_infinite());
  for (int k : {1, 2, 7})
    for (const auto& h : {free_abelian(0), free_abelian(3), zinv(3), finite_group(5)})
      CHECK(hirsch_length(wreath(finite_group(k), h)) == hirsch_length(h));
  CHECK(hirsch_length(wreath(free_abelian(2), finite_group(3))) == HirschValue(6));
  CHECK(hirsch_length(wreath(z, free_abelian(0))) == HirschValue(1));
  // lamplighter
  const auto ll = wreath(finite_group(2), z);
  CHECK(hirsch_length(ll) == HirschValue(1));
  CHECK(flags(ll).finitely_generated == Tri::True);
  CHECK(flags(ll).virt_nilpotent == Tri::False);
  CHECK(flags(ll).virt_polycyclic == Tri::False);
  CHECK(cardinality(ll).kind == Cardinality::Kind::Infinite);
  CHECK(cardinality(wreath(finite_group(2), finite_group(3))).value == 24);
}

TEST_CASE("quotients") {
  const auto z = free_abelian(1);
  CHECK(hirsch_length(quotient(free_abelian(3), z)) == HirschValue(2));
  CHECK_THROWS_AS(hirsch_length(quotient(wreath(z, z), wreath(z, z))), IndeterminateHirsch);
  CHECK(hirsch_length(quotient(wreath(z, z), z)).is_infinite());
  CHECK_THROWS_AS(hirsch_length(quotient(z, free_abelian(2))), DomainError);
  CHECK(cardinality(quotient(finite_group(12), finite_group(4))).value == 3);
  CHECK_THROWS_AS(cardinality(quotient(finite_group(12), finite_group(5))), DomainError);
}

TEST_CASE("additivity under re-bracketing") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    int expected = 0;
    std::vector<Descriptor> xs;
    const int len = 1 + static_cast<int>(rng() % 7);
    for (int i = 0; i < len; ++i) xs.push_back(random_leaf(rng, expected));
    const auto a = bracket(xs, 0, xs.size(), rng);
    const auto b = bracket(xs, 0, xs.size(), rng);
    CHECK(hirsch_length(a) == HirschValue(expected));
    CHECK(hirsch_length(a) == hirsch_length(b));
    CHECK(hirsch_length(direct_sum(xs)) == HirschValue(expected));
  }
}

TEST_CASE("flags") {
  CHECK(flags(finite_group(6)) == GroupFlags::all(Tri::True));
  CHECK(flags(free_abelian(4)) == GroupFlags::all(Tri::True));
  CHECK(flags(zinv(3)).finitely_generated == Tri::False);
  CHECK(flags(zinv(3)).virt_polycyclic == Tri::False);
  const auto e = extension(free_abelian(2), free_abelian(1));
  CHECK(flags(e).finitely_generated == Tri::True);
  CHECK(flags(e).virt_polycyclic == Tri::True);
  CHECK(flags(e).virt_nilpotent == Tri::Unknown);
  CHECK(flags(extension(finite_group(2), free_abelian(3))).virt_nilpotent == Tri::True);
  CHECK(flags(extension(free_abelian(3), finite_group(2))).virt_nilpotent == Tri::True);
  CHECK(flags(extension(zinv(2), free_abelian(1))).virt_polycyclic == Tri::False);
  CHECK(flags(quotient(free_abelian(2), free_abelian(1))).virt_nilpotent == Tri::True);
  CHECK(flags(wreath(free_abelian(1), finite_group(3))).virt_polycyclic == Tri::True);
  CHECK(flags(wreath(finite_group(1), zinv(2))) == flags(zinv(2)));
}

TEST_CASE("f bound") {
  CHECK(f_bound(0) == 0);
  CHECK(f_bound(1) == 1);
  CHECK(f_bound(2) == 485);
  CHECK(f_bound(2) == 9 * 9 * 3 * 2 - 1);
  CHECK(f_closed_form(2) == 3 * 2 * 9 * 9 - 1);
  for (int n = 0; n <= 64; ++n) {
    CAPTURE(n);
    CHECK(f_bound(n) == f_closed_form(n));
    if (n >= 1) CHECK(f_bound(n) == closed_form_by_hand(n));
    if (n >= 1) CHECK(f_bound(n) > f_bound(n - 1));
  }
  CHECK_THROWS_AS(f_bound(-1), DomainError);
}

TEST_CASE("product bounds") {
  CHECK(nilpotent_input_bounds(0, 0) == std::pair<Int, Int>{1, 1});
  CHECK(nilpotent_input_bounds(1, 2) == std::pair<Int, Int>{3, 9});
  CHECK(nilpotent_input_bounds(2, 2) == std::pair<Int, Int>{9, 27});
  const auto [a, l] = nilpotent_input_bounds(1, 2);
  const Int first = hw_product_bound(a, l, 0);
  CHECK(first == 26);
  CHECK(hw_product_bound(2, 1, first) == 53);
  for (int d = 0; d < 10; ++d) CHECK(hw_product_bound(1, 1, d) == d);
  // k = n, dimX = n, dstab = f(n-1) reproduces the recursion
  for (int n = 2; n <= 20; ++n) {
    const auto [an, ln] = nilpotent_input_bounds(n, n);
    CHECK(hw_product_bound(an, ln, f_bound(n - 1)) == f_bound(n));
  }
}

TEST_CASE("twisted and wreath bounds") {
  CHECK(twisted_bound(1, 0) == 1);
  CHECK(twisted_bound(2, 0) == 485);
  CHECK(twisted_bound(1, 1) == 485);
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) CHECK(twisted_bound(a, b) == f_bound(a + b));
  CHECK(wreath_bound_finite_K(0) == 2);
  CHECK(wreath_bound_finite_K(1) == 18);
  CHECK(wreath_bound_finite_K(2) == 162);
}

TEST_CASE("verdicts") {
  const auto z = free_abelian(1);
  CHECK(wreath_dimnuc_verdict(z, z) == Verdict::Infinite);
  CHECK(wreath_dimnuc_verdict(finite_group(3), free_abelian(2)) == Verdict::Finite);
  CHECK(wreath_dimnuc_verdict(zinv(2), z) == Verdict::OutOfHypotheses);
  CHECK(wreath_dimnuc_verdict(z, zinv(2)) == Verdict::OutOfHypotheses);

  CHECK(wreath_dr_verdict(finite_group(2), z) == Verdict::Infinite);
  CHECK(wreath_dr_verdict(z, finite_group(4)) == Verdict::Finite);
  CHECK(wreath_dr_verdict(free_abelian(3), finite_group(4)) == Verdict::Finite);
  CHECK(wreath_dr_verdict(finite_group(1), free_abelian(5)) == Verdict::Finite);
  CHECK(wreath_dr_verdict(zinv(3), finite_group(2)) == Verdict::OutOfHypotheses);
}

TEST_CASE("verdict agrees with Hirsch finiteness") {
  const std::vector<std::pair<Descriptor, Descriptor>> pairs{
      {free_abelian(1), free_abelian(1)},
      {finite_group(2), free_abelian(1)},
      {finite_group(3), free_abelian(2)},
      {free_abelian(2), finite_group(3)},
      {free_abelian(1), finite_group(1)},
      {extension(free_abelian(2), free_abelian(1)), free_abelian(1)},
      {finite_group(1), free_abelian(3)},
      {extension(free_abelian(1), finite_group(2)), extension(finite_group(2), free_abelian(2))},
  };
  for (const auto& [k, h] : pairs) {
    CAPTURE(describe(wreath(k, h)));
    const auto v = wreath_dimnuc_verdict(k, h);
    REQUIRE(v != Verdict::OutOfHypotheses);
    CHECK((v == Verdict::Finite) == !hirsch_length(wreath(k, h)).is_infinite());
  }
}

TEST_CASE("derivation tree") {
  const auto [h, g] = hall_groups(2);
  const auto d = derive_hirsch(g);
  CHECK(d.value == "3");
  CHECK(d.rule == "h(G) - h(N)");
  REQUIRE(d.children.size() == 2);
  CHECK(d.children[0].value == "4");
  const auto text = render(d);
  CHECK(text.find("axiom") != std::string::npos);
  CHECK(text.find("Z[1/2]") != std::string::npos);
  const auto w = derive_hirsch(wreath(free_abelian(1), free_abelian(1)));
  CHECK(w.value == "inf");
  CHECK(w.rule.find("#H = inf") != std::string::npos);
}
