#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpdind/algebra.hpp"
#include "gpdind/induction.hpp"

namespace gpdind {

struct CommutantReport {
  std::size_t dimension = 0;
  std::vector<Matrix> basis;
  // Largest discarded and smallest kept singular value, both relative to the
  // largest one. The rank decision is only as good as the gap between them.
  double largest_null_sv = 0.0;
  double smallest_kept_sv = 1.0;
};

/// Solves T A_x = A_x T for all basis deltas; singular values below
/// rank_tol * sigma_max span the commutant.
CommutantReport commutant(const Representation& rep, double rank_tol = 1e-8);
CommutantReport commutant(std::span<const Matrix> ops, double rank_tol = 1e-8);

bool is_irreducible(const Representation& rep, double rank_tol = 1e-8);

struct IrrepOptions {
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  double rank_tol = 1e-8;
  double cluster_tol = 1e-8;
  int max_retries = 8;
};

/// All irreducible representations of a group algebra, up to equivalence,
/// split off the regular representation with random Hermitian elements of its
/// commutant. Sorted by dimension, then by character. Throws Error(NotAGroup)
/// or Error(DecompositionFailure).
std::vector<Representation> group_irreps(const AlgebraPtr& group, const IrrepOptions& opts = {});

struct TheoremOptions {
  InductionOptions induction;
  double rank_tol = 1e-8;
  double residual_tol = 1e-10;
  int transfer_samples = 20;
  std::uint64_t seed = 0x5eed;
};

struct TheoremVerdict {
  std::size_t induced_dim = 0;
  std::size_t commutant_dim = 0;
  std::size_t xind_commutant_dim = 0;
  double transfer_residual = 0.0;
  // max over samples of ||transfer(F)||_I - ||F||_I
  double transfer_inorm_excess = 0.0;
  bool pass = false;
};

/// Induces an irreducible L of G(u) to G and checks that the result is
/// irreducible and that Ind L(transfer(F)) = xind(F) for random F.
/// `inner` must live on C_c(G(u)); throws Error(NotIrreducibleInput).
TheoremVerdict main_theorem_check(const AlgebraPtr& g_algebra, Index unit,
                                  const Representation& inner, const TheoremOptions& opts = {});

/// C_c(G(u)) with the restricted Haar system, ready for group_irreps.
AlgebraPtr isotropy_algebra(const AlgebraPtr& g_algebra, Index unit);

}  // namespace gpdind
