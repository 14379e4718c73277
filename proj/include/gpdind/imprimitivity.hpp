#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "gpdind/algebra.hpp"
#include "gpdind/groupoid.hpp"

namespace gpdind {

/// An element of C_c(G_sH), indexed by position in the s-fiber carrier.
struct BimoduleVector {
  std::vector<Complex> coeffs;

  std::size_t size() const noexcept { return coeffs.size(); }
  Complex operator[](Index p) const { return coeffs[p]; }
  Complex& operator[](Index p) { return coeffs[p]; }
};

/// The imprimitivity groupoid H^G together with the C_c(H^G)-C_c(H)
/// pre-imprimitivity bimodule C_c(G_sH).
///
/// H^G is the orbit space of {(x,y) in G_sH x G_sH : s(x) = s(y)} under
/// (x,y)h = (xh,yh). Each orbit is stored once, with the lexicographically
/// least pair (by element index) as its representative; functions on H^G are
/// always orbit-indexed.
class ImprimitivityData {
 public:
  /// `h_algebra` must be C_c(H) for the local groupoid of `h`.
  ImprimitivityData(AlgebraPtr g_algebra, Subgroupoid h, AlgebraPtr h_algebra);

  const AlgebraPtr& g_algebra() const noexcept { return g_; }
  const AlgebraPtr& h_algebra() const noexcept { return h_alg_; }
  /// C_c(H^G) with the Haar system beta.
  const AlgebraPtr& hg_algebra() const noexcept { return hg_; }
  const Subgroupoid& subgroupoid() const noexcept { return h_; }
  const SFiberSpace& fiber() const noexcept { return fiber_; }
  std::size_t carrier_size() const noexcept { return fiber_.size(); }

  /// Orbit of (x, y) for parent indices with s(x) = s(y) in H^(0), or kNone.
  Index orbit(Index x, Index y) const;
  std::pair<Index, Index> representative(Index orbit) const { return reps_[orbit]; }
  std::size_t orbit_count() const noexcept { return reps_.size(); }

  /// beta weight of [x,y] computed from the given representative:
  /// lambda_{s(x)}(y).
  double beta_via(Index x, Index y) const;

  BimoduleVector zero_vector() const { return {std::vector<Complex>(carrier_size())}; }
  BimoduleVector delta(Index x) const;

  /// (F.phi)(z) = sum_{y in G_{s(z)}} F([z,y]) phi(y) lambda_{s(z)}(y).
  BimoduleVector left_action(const AlgebraElement& F, const BimoduleVector& phi) const;
  /// (phi.g)(z) = sum_{h in H^{s(z)}} phi(zh) g(h^{-1}) alpha(h).
  BimoduleVector right_action(const BimoduleVector& phi, const AlgebraElement& g) const;
  /// <phi,psi>_R(h) = sum_{y in G_{r(h)}} conj phi(y) psi(yh) lambda_{r(h)}(y).
  AlgebraElement rip(const BimoduleVector& phi, const BimoduleVector& psi) const;
  /// <phi,psi>_L([x,y]) = sum_{h in H^{s(x)}} phi(xh) conj psi(yh) alpha(h).
  AlgebraElement lip(const BimoduleVector& phi, const BimoduleVector& psi) const;
  /// The same sum evaluated at an arbitrary representative (x, y).
  Complex lip_via(const BimoduleVector& phi, const BimoduleVector& psi, Index x, Index y) const;
  /// (f.phi)(z) = sum_{r(y)=r(z)} f(y) phi(y^{-1}z) lambda(y).
  BimoduleVector f_action(const AlgebraElement& f, const BimoduleVector& phi) const;

  /// Matrix of phi -> delta_x . phi on the carrier basis.
  Matrix f_action_matrix(Index x) const;
  /// Matrix of phi -> F . phi on the carrier basis.
  Matrix left_action_matrix(const AlgebraElement& F) const;

 private:
  void check_vector(const BimoduleVector& v, const char* where) const;

  AlgebraPtr g_;
  Subgroupoid h_;
  AlgebraPtr h_alg_;
  SFiberSpace fiber_;
  std::vector<Index> orbit_of_;  // carrier x carrier, kNone off s(x) = s(y)
  std::vector<std::pair<Index, Index>> reps_;
  AlgebraPtr hg_;
};

using ImprimitivityPtr = std::shared_ptr<const ImprimitivityData>;

ImprimitivityPtr build_imprimitivity(AlgebraPtr g_algebra, Subgroupoid h, AlgebraPtr h_algebra);
/// Uses the restriction of the Haar system of G as alpha.
ImprimitivityPtr build_imprimitivity(AlgebraPtr g_algebra, Subgroupoid h);

/// The injection [z,y] -> z y^{-1} for H = G(u); entry per orbit.
/// Throws Error(NotIsotropyCase) unless H is the full isotropy group at one unit.
std::vector<Index> pi_map(const ImprimitivityData& data);

/// f with f(z y^{-1}) = F([z,y]) on the image of pi_map and 0 elsewhere.
AlgebraElement transfer(const ImprimitivityData& data, const AlgebraElement& F);

}  // namespace gpdind
