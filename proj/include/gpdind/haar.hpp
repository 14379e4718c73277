#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gpdind/groupoid.hpp"
#include "gpdind/rational.hpp"

namespace gpdind {

/// Positive weights on the elements of a finite groupoid; weight(y) is the
/// mass of y in the range fiber lambda^{r(y)}. The inverted system is
/// lambda_u(y) = weight(y^{-1}).
///
/// Weights are kept exactly when they were given as rationals.
class HaarSystem {
 public:
  static HaarSystem counting(const FiniteGroupoid& g);
  /// Throws Error(NonpositiveWeight).
  static HaarSystem from_rationals(std::vector<Rational> weights);
  static HaarSystem from_doubles(std::vector<double> weights);

  std::size_t size() const noexcept { return weights_.size(); }
  double weight(Index x) const { return weights_[x]; }
  /// lambda_{s(x)}(x), the inverted system.
  double inverted_weight(const FiniteGroupoid& g, Index x) const { return weights_[g.inverse(x)]; }

  bool is_exact() const noexcept { return exact_.has_value(); }
  const Rational& exact_weight(Index x) const { return (*exact_)[x]; }
  std::span<const double> weights() const noexcept { return weights_; }

  /// Restriction to a subgroupoid, re-indexed to its local numbering.
  HaarSystem restrict_to(const Subgroupoid& h) const;
  HaarSystem scaled(const Rational& factor) const;

 private:
  HaarSystem() = default;

  std::vector<double> weights_;
  std::optional<std::vector<Rational>> exact_;
};

/// Left invariance: weight(xy) = weight(y) whenever s(x) = r(y), which is the
/// finite form of sum_{r(y)=s(x)} f(xy) w(y) = sum_{r(z)=r(x)} f(z) w(z) for
/// all f. Exact for rational weights, 1e-12 absolute otherwise.
bool check_invariance(const FiniteGroupoid& g, const HaarSystem& w);

/// Weights of the form c(s(x)) for a positive function c on the units; every
/// left-invariant system on a finite groupoid has this shape.
HaarSystem haar_from_unit_masses(const FiniteGroupoid& g, const std::vector<Rational>& unit_mass);

}  // namespace gpdind
