#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "twext/staralg.hpp"

using namespace twext;

namespace {

std::vector<int> profile(const StarAlgebra& a, std::uint64_t seed = 0) { return block_profile(a, seed).blocks; }

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

CMatrix crossed_element(const StarAlgebra& cp, int n, int s, const CVector& a) {
  CVector c = CVector::Zero(cp.dim());
  c.segment(s * n, n) = a;
  return cp.element(c);
}

std::vector<FiniteGroup> groups_up_to_8() {
  return {cyclic(2),   cyclic(3),   cyclic(4), cyclic(5), cyclic(6), cyclic(7),     cyclic(8),
          klein(),     symmetric(3), dihedral(4), quaternion8(), builtin("direct_product(cyclic(2),cyclic(4))"),
          builtin("direct_product(klein,cyclic(2))")};
}

}  // namespace

TEST_CASE("elementary algebras") {
  CHECK(profile(matrix_algebra(3)) == std::vector<int>{3});
  CHECK(profile(diagonal_algebra(4)) == std::vector<int>{1, 1, 1, 1});
  CHECK(profile(tensor_matrix(matrix_algebra(2), 3)) == std::vector<int>{6});
  CHECK(profile(tensor_matrix(diagonal_algebra(2), 2)) == std::vector<int>{2, 2});
  auto bp = block_profile(matrix_algebra(2), 5);
  CHECK(bp.dim == 4);
  CHECK(bp.seed == 5);
}

TEST_CASE("non-semisimple input is rejected") {
  StarAlgebra nil;
  nil.rep_dim = 2;
  CSparse e(2, 2);
  e.insert(0, 1) = 1.0;
  nil.basis.push_back(e);
  nil.trace.push_back(0.0);
  nil.label = "nil";
  CHECK_THROWS_AS(block_profile(nil), DecompositionUnstable);
}

TEST_CASE("twisted group algebra examples") {
  CHECK(profile(twisted_group_algebra(klein(), trivial_cocycle(klein()))) == std::vector<int>{1, 1, 1, 1});
  CHECK(profile(twisted_group_algebra(klein(), named_cocycle("paper-klein", klein()))) == std::vector<int>{2});
  CHECK(profile(group_algebra(symmetric(3))) == sorted(oracle::character_degrees(symmetric(3))));
  CHECK(profile(group_algebra(quaternion8())) == std::vector<int>{1, 1, 1, 1, 2});
  CHECK(profile(group_algebra(dihedral(4))) == std::vector<int>{1, 1, 1, 1, 2});
  CHECK_THROWS_AS(twisted_group_algebra(cyclic(4), trivial_cocycle(klein())), DomainError);
}

TEST_CASE("group algebras match character degrees") {
  for (const auto& g : oracle::small_corpus()) {
    CAPTURE(g.name());
    const auto bp = block_profile(group_algebra(g), 3);
    CHECK(bp.blocks == sorted(oracle::character_degrees(g)));
    int sq = 0;
    for (int d : bp.blocks) sq += d * d;
    CHECK(sq == g.order());
  }
}

TEST_CASE("trace of twisted group algebras") {
  std::mt19937_64 rng(2);
  for (const auto& g : {klein(), quaternion8(), dihedral(4), symmetric(3)}) {
    auto s = make_splitting(g);
    for (const auto& chi : characters_of_h2(s.h2)) {
      const auto a = twisted_group_algebra(g, cocycle_from_character(s, chi));
      CHECK(a.trace_of(a.unit) == cd(1.0));
      for (int x = 1; x < g.order(); ++x) CHECK(a.trace[x] == cd(0.0));
      // tau(x) = <x delta_e, delta_e>, and tau(x^* x) >= 0
      std::normal_distribution<double> nd;
      CVector c(g.order());
      for (auto& v : c) v = cd(nd(rng), nd(rng));
      const CMatrix x = a.element(c);
      const CMatrix xx = x.adjoint() * x;
      CHECK(xx(0, 0).real() >= 0);
      CHECK(std::abs(xx(0, 0) - c.squaredNorm()) < 1e-9);
    }
  }
}

TEST_CASE("cohomologous cocycles give equal profiles") {
  std::mt19937_64 rng(11);
  for (const auto& g : {klein(), dihedral(4), builtin("direct_product(cyclic(2),cyclic(4))")}) {
    auto s = make_splitting(g);
    for (const auto& chi : characters_of_h2(s.h2)) {
      const auto w = cocycle_from_character(s, chi);
      const auto base = profile(twisted_group_algebra(g, w));
      for (int i = 0; i < 20; ++i)
        CHECK(profile(twisted_group_algebra(g, w * coboundary(g, random_cochain(g, rng))), i) == base);
    }
  }
}

TEST_CASE("nontrivial classes on C3 x C3") {
  // H2 = Z/3 and each nontrivial class is nondegenerate
  const auto g = builtin("direct_product(cyclic(3),cyclic(3))");
  auto s = make_splitting(g);
  for (const auto& chi : characters_of_h2(s.h2)) {
    const auto p = profile(twisted_group_algebra(g, cocycle_from_character(s, chi)));
    if (chi.is_trivial())
      CHECK(p == std::vector<int>(9, 1));
    else
      CHECK(p == std::vector<int>{3});
  }
}

TEST_CASE("crossed product basics") {
  for (const auto& f : {cyclic(3), klein(), symmetric(3), quaternion8()}) {
    const auto cp = crossed_product(trivial_system(diagonal_algebra(1), f));
    CHECK(cp.dim() == f.order());
    CHECK(profile(cp) == profile(group_algebra(f)));
  }
  CHECK(profile(crossed_product(trivial_system(matrix_algebra(2), cyclic(2)))) == std::vector<int>{2, 2});
  const auto tw = crossed_product(scalar_system(diagonal_algebra(1), named_cocycle("paper-klein", klein())));
  CHECK(profile(tw) == std::vector<int>{2});
}

TEST_CASE("crossed product relations") {
  std::mt19937_64 rng(5);
  for (const auto& f : {cyclic(2), cyclic(3), klein(), symmetric(3)}) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto sys = random_system(f, rng);
      const auto cp = crossed_product(sys);
      const int n = sys.algebra.dim();
      const int m = f.order();
      CHECK(cp.dim() == n * m);
      std::vector<CMatrix> u;
      for (int s = 0; s < m; ++s) u.push_back(crossed_element(cp, n, s, sys.algebra.unit));
      const CMatrix one = CMatrix::Identity(cp.rep_dim, cp.rep_dim);
      for (int s = 0; s < m; ++s) {
        CHECK((u[s] * u[s].adjoint() - one).norm() < 1e-8);
        for (int t = 0; t < m; ++t) {
          const CMatrix w = crossed_element(cp, n, 0, sys.w(s, t));
          CHECK((u[s] * u[t] - w * u[f.mul(s, t)]).norm() < 1e-8);
        }
        for (int i = 0; i < n; ++i) {
          CVector e = CVector::Zero(n);
          e(i) = 1.0;
          const CMatrix lhs = u[s] * crossed_element(cp, n, 0, e) * u[s].adjoint();
          CHECK((lhs - crossed_element(cp, n, 0, sys.alpha[s].col(i))).norm() < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("decompose and reassemble") {
  const auto d4 = dihedral(4);
  const auto q8 = quaternion8();
  const auto s3 = symmetric(3);
  const std::vector<std::pair<FiniteGroup, Subgroup>> cases{
      {d4, center(d4)}, {q8, center(q8)}, {s3, make_subgroup(s3, {0, 3, 4})}};
  for (const auto& [g, n] : cases) {
    const auto sys = decompose_group_algebra(g, n);
    const auto cp = crossed_product(sys);
    CHECK(cp.dim() == g.order());
    CHECK(profile(cp) == profile(group_algebra(g)));
  }
  CHECK_THROWS_AS(decompose_group_algebra(s3, make_subgroup(s3, {0, 1})), DomainError);
}

TEST_CASE("fiber decomposition") {
  const auto c4 = cyclic(4);
  auto f = fiber_decomposition(c4, make_subgroup(c4, {0, 2}));
  REQUIRE(f.size() == 2);
  for (const auto& x : f) {
    CHECK(x.profile.blocks == std::vector<int>{1, 1});
    CHECK(x.matches);
  }

  const auto q8 = quaternion8();
  auto fq = fiber_decomposition(q8, center(q8));
  REQUIRE(fq.size() == 2);
  CHECK(fq[0].chi.is_trivial());
  CHECK(fq[0].profile.blocks == std::vector<int>{1, 1, 1, 1});
  CHECK(fq[1].profile.blocks == std::vector<int>{2});
  for (const auto& x : fq) CHECK(x.matches);

  for (const auto& g : {dihedral(4), builtin("direct_product(cyclic(2),cyclic(4))"), dihedral(6)}) {
    const auto z = center(g);
    int total = 0;
    std::vector<int> all;
    for (const auto& x : fiber_decomposition(g, z)) {
      total += x.algebra.dim();
      CHECK(x.matches);
      CHECK(std::abs(x.algebra.trace_of(x.algebra.unit) - 1.0) < 1e-12);
      all.insert(all.end(), x.profile.blocks.begin(), x.profile.blocks.end());
    }
    CHECK(total == g.order());
    CHECK(sorted(all) == sorted(oracle::character_degrees(g)));
  }
  const auto s3 = symmetric(3);
  CHECK_THROWS_AS(fiber_decomposition(s3, make_subgroup(s3, {0, 3, 4})), DomainError);
}

TEST_CASE("system validation") {
  const auto k = klein();
  auto sys = scalar_system(diagonal_algebra(1), named_cocycle("paper-klein", k));
  CHECK_NOTHROW(validate_system(sys));
  auto bad = sys;
  bad.omega[5] *= 2.0;
  CHECK_THROWS_AS(validate_system(bad), AxiomViolation);
  auto bad2 = sys;
  bad2.omega[0] = -bad2.omega[0];
  CHECK_THROWS_AS(validate_system(bad2), AxiomViolation);
  // a non-cocycle phase table
  auto bad3 = sys;
  bad3.omega[1 * 4 + 1] = std::polar(1.0, 0.3) * sys.algebra.unit;
  CHECK_THROWS_AS(validate_system(bad3), AxiomViolation);
  // swapping coordinates of C^2 is fine for C2 but alpha_s alpha_s != id is not
  auto perm = trivial_system(diagonal_algebra(2), cyclic(3));
  perm.alpha[1] = CMatrix{{0, 1}, {1, 0}};
  perm.alpha[2] = CMatrix{{0, 1}, {1, 0}};
  CHECK_THROWS_AS(validate_system(perm), AxiomViolation);
  auto notmult = trivial_system(matrix_algebra(2), cyclic(2));
  notmult.alpha[1] = CMatrix::Identity(4, 4) * 2.0;
  CHECK_THROWS_AS(validate_system(notmult), AxiomViolation);
}

TEST_CASE("imprimitivity examples") {
  const auto c2 = cyclic(2);
  const auto h = trivial_subgroup();
  auto r = verify_imprimitivity(c2, h, trivial_system(diagonal_algebra(1), subgroup_as_group(c2, h)));
  CHECK(r.ok());
  CHECK(r.big.blocks == std::vector<int>{2});
  CHECK(r.small.blocks == std::vector<int>{1});

  const auto k = klein();
  const auto h2 = make_subgroup(k, {0, 1});
  const auto hg = subgroup_as_group(k, h2);
  auto r2 = verify_imprimitivity(k, h2, trivial_system(group_algebra(cyclic(2)), hg));
  CHECK(r2.ok());
  CHECK(r2.index == 2);
  CHECK(r2.small.blocks == std::vector<int>{1, 1, 1, 1});
  CHECK(r2.big.blocks == std::vector<int>{2, 2, 2, 2});
}

TEST_CASE("induced system is valid and restricts correctly") {
  std::mt19937_64 rng(9);
  const auto g = dihedral(4);
  const auto h = make_subgroup(g, {0, 4});
  const auto sys = random_system(subgroup_as_group(g, h), rng);
  const auto ind = induce_system(g, h, sys);
  CHECK_NOTHROW(validate_system(ind));
  const int nb = sys.algebra.dim();
  // on the identity coset, H acts through the original system
  for (int i = 0; i < h.order(); ++i) {
    const int x = h.members[i];
    CHECK((ind.alpha[x].topLeftCorner(nb, nb) - sys.alpha[i]).norm() < 1e-12);
    for (int j = 0; j < h.order(); ++j)
      CHECK((ind.w(x, h.members[j]).head(nb) - sys.w(i, j)).norm() < 1e-12);
  }
}

TEST_CASE("randomized imprimitivity") {
  std::mt19937_64 rng(2024);
  const auto groups = groups_up_to_8();
  int passed = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto& g = groups[rng() % groups.size()];
    const auto subs = all_subgroups(g);
    const auto& h = subs[rng() % subs.size()];
    const auto sys = random_system(subgroup_as_group(g, h), rng, 4);
    CAPTURE(trial);
    const auto r = verify_imprimitivity(g, h, sys, trial);
    CHECK(r.ok());
    passed += r.ok();
  }
  CHECK(passed == 50);
}

TEST_CASE("stabilization examples") {
  const auto k = klein();
  auto r = verify_stabilization(scalar_system(diagonal_algebra(1), named_cocycle("paper-klein", k)));
  CHECK(r.ok());
  CHECK(r.left.blocks == std::vector<int>{8});
  CHECK(r.right.blocks == std::vector<int>{8});

  auto triv = verify_stabilization(trivial_system(diagonal_algebra(2), cyclic(3)));
  CHECK(triv.ok());
  CHECK(triv.left.blocks == std::vector<int>(6, 3));

  const auto q8 = quaternion8();
  auto rq = verify_stabilization(decompose_group_algebra(q8, center(q8)));
  CHECK(rq.ok());
  CHECK(rq.left.blocks == std::vector<int>{4, 4, 4, 4, 8});
}

TEST_CASE("randomized stabilization") {
  std::mt19937_64 rng(77);
  const std::vector<FiniteGroup> groups{cyclic(2), cyclic(3), cyclic(4), klein(), symmetric(3)};
  int passed = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto& f = groups[rng() % groups.size()];
    const auto sys = random_system(f, rng, f.order() > 4 ? 2 : 4);
    CAPTURE(trial);
    const auto r = verify_stabilization(sys, trial);
    CHECK(r.action_defect < 1e-8);
    CHECK(r.conjugation_defect < 1e-8);
    CHECK(r.cocycle_defect < 1e-8);
    CHECK(r.ok());
    passed += r.ok();
  }
  CHECK(passed == 50);
}

TEST_CASE("resource caps") {
  CHECK_THROWS_AS(tensor_matrix(matrix_algebra(8), 9), ResourceCap);
}
