#pragma once

#include <memory>

#include "gpdind/algebra.hpp"
#include "gpdind/imprimitivity.hpp"

namespace gpdind {

struct InductionOptions {
  // Gram eigenvalues below null_tol * (largest eigenvalue) count as zero.
  double null_tol = 1e-9;
  // Bound on the Gram norm of images of null vectors.
  double descent_tol = 1e-9;
};

/// The completion of C_c(G_sH) (x) H_L for the pre-inner product
/// (phi(x)h | psi(x)k) = (L(<psi,phi>_R) h | k).
///
/// The spanning family is delta_z (x) e_i for z in G_sH and i < dim L, ordered
/// with the carrier index slow. gram = factor * factor^*, factor has rank()
/// columns, and factor^* * lift = I.
struct InducedSpace {
  ImprimitivityPtr data;
  std::shared_ptr<const Representation> inner;
  Matrix gram;
  Matrix factor;
  Matrix lift;
  Matrix null_basis;
  std::size_t rank = 0;

  std::size_t family_size() const { return static_cast<std::size_t>(gram.rows()); }
  /// Quotient matrix of the carrier operator a, acting as a (x) I on the family.
  /// Throws Error(QuotientInconsistency) if a does not preserve the null space.
  Matrix descend(const Matrix& carrier_op, double descent_tol) const;
};

InducedSpace induced_space(ImprimitivityPtr data, const Representation& inner,
                           const InductionOptions& opts = {});

struct InducedRep {
  InducedSpace space;
  Representation rep;  // of C_c(G)
};

/// Ind_H^G L, with delta_x acting by phi (x) h -> (delta_x . phi) (x) h.
InducedRep induce(ImprimitivityPtr data, const Representation& inner,
                  const InductionOptions& opts = {});

/// (X-Ind L)(F): phi (x) h -> (F . phi) (x) h on the quotient.
Matrix xind(const AlgebraElement& F, const InducedSpace& space,
            const InductionOptions& opts = {});

/// X-Ind L as a representation of C_c(H^G).
Representation xind_representation(const InducedSpace& space, const InductionOptions& opts = {});

/// theta(phi (x) psi)(x) = sum_{k in K^{s(x)}} phi(xk) psi(k^{-1}) beta(k), with
/// outer = (G, K), inner = (K, H) and direct = (G, H).
/// Throws Error(ChainViolation) if the three data do not form a chain.
BimoduleVector theta(const ImprimitivityData& outer, const ImprimitivityData& inner,
                     const ImprimitivityData& direct, const BimoduleVector& phi,
                     const BimoduleVector& psi);

struct StagesReport {
  std::size_t direct_dim = 0;  // dim Ind_H^G L
  std::size_t staged_dim = 0;  // dim Ind_K^G(Ind_H^K L)
  double intertwining_residual = 0.0;
  double unitarity_defect = 0.0;
  Matrix v;  // V = theta o U in the quotient bases
};

/// Builds V for H subset K subset G and measures
/// max_x ||V Ind_K^G(Ind_H^K L)(delta_x) - Ind_H^G L(delta_x) V|| and
/// max(||V^*V - I||, ||VV^* - I||).
/// `k_algebra` is C_c(K) on the local groupoid of `k`; L lives on C_c(H).
StagesReport stages_check(const AlgebraPtr& g_algebra, const Subgroupoid& k,
                          const AlgebraPtr& k_algebra, const Subgroupoid& h,
                          const Representation& inner, const InductionOptions& opts = {});

}  // namespace gpdind
