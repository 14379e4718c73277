#include "gpdind/haar.hpp"

#include <cmath>

#include "gpdind/error.hpp"

namespace gpdind {

HaarSystem HaarSystem::counting(const FiniteGroupoid& g) {
  return from_rationals(std::vector<Rational>(g.size(), Rational(1)));
}

HaarSystem HaarSystem::from_rationals(std::vector<Rational> weights) {
  HaarSystem w;
  w.weights_.reserve(weights.size());
  for (std::size_t x = 0; x < weights.size(); ++x) {
    if (weights[x] <= 0) {
      fail(ErrorKind::NonpositiveWeight, "weight of element " + std::to_string(x) + " is " + to_string(weights[x]));
    }
    w.weights_.push_back(to_double(weights[x]));
  }
  w.exact_ = std::move(weights);
  return w;
}

HaarSystem HaarSystem::from_doubles(std::vector<double> weights) {
  for (std::size_t x = 0; x < weights.size(); ++x) {
    if (!(weights[x] > 0.0) || !std::isfinite(weights[x])) {
      fail(ErrorKind::NonpositiveWeight, "weight of element " + std::to_string(x) + " is " + std::to_string(weights[x]));
    }
  }
  HaarSystem w;
  w.weights_ = std::move(weights);
  return w;
}

HaarSystem HaarSystem::restrict_to(const Subgroupoid& h) const {
  if (h.parent_size() != size()) fail(ErrorKind::BaseMismatch, "subgroupoid does not fit this Haar system");
  if (is_exact()) {
    std::vector<Rational> out;
    for (Index x : h.members()) out.push_back((*exact_)[x]);
    return from_rationals(std::move(out));
  }
  std::vector<double> out;
  for (Index x : h.members()) out.push_back(weights_[x]);
  return from_doubles(std::move(out));
}

HaarSystem HaarSystem::scaled(const Rational& factor) const {
  if (is_exact()) {
    std::vector<Rational> out(*exact_);
    for (auto& q : out) q *= factor;
    return from_rationals(std::move(out));
  }
  std::vector<double> out(weights_);
  for (auto& v : out) v *= to_double(factor);
  return from_doubles(std::move(out));
}

bool check_invariance(const FiniteGroupoid& g, const HaarSystem& w) {
  if (w.size() != g.size()) return false;
  for (Index x = 0; x < g.size(); ++x) {
    for (Index y : g.range_fiber(g.source(x))) {
      Index xy = g.compose(x, y);
      if (w.is_exact()) {
        if (w.exact_weight(xy) != w.exact_weight(y)) return false;
      } else if (std::abs(w.weight(xy) - w.weight(y)) > 1e-12) {
        return false;
      }
    }
  }
  return true;
}

HaarSystem haar_from_unit_masses(const FiniteGroupoid& g, const std::vector<Rational>& unit_mass) {
  if (unit_mass.size() != g.units().size()) {
    fail(ErrorKind::MalformedSpec, "need one mass per unit");
  }
  std::vector<Rational> mass_of(g.size());
  for (std::size_t i = 0; i < unit_mass.size(); ++i) mass_of[g.units()[i]] = unit_mass[i];
  std::vector<Rational> weights;
  for (Index x = 0; x < g.size(); ++x) weights.push_back(mass_of[g.source(x)]);
  return HaarSystem::from_rationals(std::move(weights));
}

}  // namespace gpdind
