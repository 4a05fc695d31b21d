#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "twext/cocycle.hpp"
#include "twext/grp.hpp"

namespace twext {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using CSparse = Eigen::SparseMatrix<cd>;

constexpr double kIdentityTol = 1e-8;
constexpr double kEigenGap = 1e-6;
constexpr int kDecompositionRetries = 8;
constexpr int kMaxAlgebraDim = 4096;

class DecompositionUnstable : public DomainError {
 public:
  using DomainError::DomainError;
};

class AxiomViolation : public DomainError {
 public:
  using DomainError::DomainError;
};

/**
 * A finite-dimensional *-algebra given by a faithful representation: each
 * basis element is a rep_dim x rep_dim complex matrix.  `trace` holds the
 * distinguished trace on the basis and `unit` the coordinates of 1.
 */
struct StarAlgebra {
  int rep_dim = 0;
  std::vector<CSparse> basis;
  std::vector<cd> trace;
  CVector unit;
  std::string label;

  int dim() const { return static_cast<int>(basis.size()); }
  CMatrix element(const CVector& coords) const;
  cd trace_of(const CVector& coords) const;
};

/// Least-squares coordinates with respect to an algebra basis; throws when a
/// matrix is not (numerically) in the span.
class CoordinateMap {
 public:
  explicit CoordinateMap(const StarAlgebra& a);
  CVector operator()(const CMatrix& x) const;

 private:
  int d_ = 0;
  CMatrix vecs_;
  Eigen::ColPivHouseholderQR<CMatrix> qr_;
};

struct BlockProfile {
  std::vector<int> blocks;
  int dim = 0;
  std::uint64_t seed = 0;

  /// Multiset equality (the seed is bookkeeping only).
  bool same_blocks(const BlockProfile& o) const { return blocks == o.blocks && dim == o.dim; }
};

// Elementary algebras.
StarAlgebra matrix_algebra(int k);
StarAlgebra diagonal_algebra(int k);
/// A (x) M_k on C^D (x) C^k, basis a_i (x) e_{pq} at index (i k + p) k + q.
StarAlgebra tensor_matrix(const StarAlgebra& a, int k);

/// C[G, omega] on l2(G): u_g delta_h = omega(g,h) delta_{gh}.  The cocycle is
/// normalized first when needed.
StarAlgebra twisted_group_algebra(const FiniteGroup& g, const Cocycle2& omega);
StarAlgebra group_algebra(const FiniteGroup& g);

/// Wedderburn block dimensions by a randomized numerical decomposition.
BlockProfile block_profile(const StarAlgebra& a, std::uint64_t seed = 0);

/// Coordinates of the center (columns), computed from commutators with random elements.
CMatrix center_basis(const StarAlgebra& a, std::mt19937_64& rng);

/**
 * Twisted action of a finite group F on A.  alpha[s] maps coordinates to
 * coordinates; omega[s |F| + t] holds the coordinates of omega(s,t).
 */
struct TwistedSystem {
  StarAlgebra algebra;
  FiniteGroup group;
  std::vector<CMatrix> alpha;
  std::vector<CVector> omega;

  const CVector& w(int s, int t) const { return omega[static_cast<std::size_t>(s) * group.order() + t]; }
};

/// Checks every twisted-system axiom within kIdentityTol; throws AxiomViolation.
void validate_system(const TwistedSystem& sys);

/// Trivial action and trivial cocycle.
TwistedSystem trivial_system(const StarAlgebra& a, const FiniteGroup& f);
/// Scalar cocycle omega(s,t) * 1 with trivial action.
TwistedSystem scalar_system(const StarAlgebra& a, const Cocycle2& omega);

/**
 * The twisted crossed product on A_rep (x) l2(F):
 *   a       -> blockdiag_t pi(alpha_t(a))
 *   (u_s xi)(t) = pi(omega(t,s)) xi(ts)
 * Basis element a_i u_s sits at index s dim(A) + i.
 */
StarAlgebra crossed_product(const TwistedSystem& sys);

/// C[G] as C[N] x_(alpha,omega) G/N for a normal N: alpha_s = Ad(u_c(s)),
/// omega(s,t) = u_c(s) u_c(t) u_c(st)^*, c the minimal-index lift.
TwistedSystem decompose_group_algebra(const FiniteGroup& g, const Subgroup& n);

struct Fiber {
  SubgroupCharacter chi;
  StarAlgebra algebra;
  BlockProfile profile;
  BlockProfile expected;
  bool matches = false;
};

/// e_chi C[G] compressed to the range of e_chi, with basis e_chi u_c(s) over
/// the minimal-index coset lifts and trace renormalized to 1.
StarAlgebra fiber_algebra(const FiniteGroup& g, const Subgroup& n, const SubgroupCharacter& chi);

/// Cut-downs of C[G] by the central idempotents e_chi of a central N, each
/// compared with C[G/N, sigma_chi].
std::vector<Fiber> fiber_decomposition(const FiniteGroup& g, const Subgroup& n, std::uint64_t seed = 0);

/// A random unitary of A: exp(i h) for a random self-adjoint h.
CVector random_unitary(const StarAlgebra& a, const CoordinateMap& coords, std::mt19937_64& rng);

/// Exterior perturbation by unitaries v_s (v_e = 1):
///   alpha'_s = Ad(v_s) alpha_s,  omega'(s,t) = v_s alpha_s(v_t) omega(s,t) v_st^*.
TwistedSystem perturb(const TwistedSystem& sys, const std::vector<CVector>& v);

/// Induced system on functions G/H -> B from a twisted system over H.
/// The system's group must be subgroup_as_group(g, h).
TwistedSystem induce_system(const FiniteGroup& g, const Subgroup& h, const TwistedSystem& sys);

struct ImprimitivityReport {
  BlockProfile big;    // A x_(alpha,omega) G
  BlockProfile small;  // B x_(beta,omega) H
  int index = 0;       // [G:H]
  bool dims_match = false;
  bool profiles_match = false;
  bool ok() const { return dims_match && profiles_match; }
};

ImprimitivityReport verify_imprimitivity(const FiniteGroup& g, const Subgroup& h, const TwistedSystem& sys,
                                         std::uint64_t seed = 0);

struct StabilizationReport {
  double action_defect = 0;        // max |alpha^w_s alpha^w_t - alpha^w_st|
  double conjugation_defect = 0;   // max |beta_s - Ad(v_s) alpha_s|
  double cocycle_defect = 0;       // max |v_s alpha_s(v_t) omega(s,t) v_st^* - 1|
  BlockProfile left;               // (A x F) (x) M_|F|
  BlockProfile right;              // (A (x) M_|F|) x_(alpha^w) F
  bool ok() const;
};

StabilizationReport verify_stabilization(const TwistedSystem& sys, std::uint64_t seed = 0);

/// Random twisted system over F for property tests: B is one of C, C^k, M_2,
/// C[Z_k]; the base action permutes coordinates through a coset action; the
/// scalar cocycle is a random representative of a random class; the result is
/// perturbed by random unitaries.
TwistedSystem random_system(const FiniteGroup& f, std::mt19937_64& rng, int max_dim = 4);

}  // namespace twext
