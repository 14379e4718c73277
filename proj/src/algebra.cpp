#include "gpdind/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gpdind {

Algebra::Algebra(FiniteGroupoid g, HaarSystem haar) : g_(std::move(g)), haar_(std::move(haar)) {
  if (haar_.size() != g_.size()) fail(ErrorKind::BaseMismatch, "Haar system does not fit the groupoid");
  if (!check_invariance(g_, haar_)) fail(ErrorKind::AxiomViolation, "Haar system is not left invariant");
}

AlgebraPtr make_algebra(FiniteGroupoid g, HaarSystem haar) {
  return std::make_shared<const Algebra>(std::move(g), std::move(haar));
}

AlgebraPtr make_algebra(FiniteGroupoid g) {
  auto haar = HaarSystem::counting(g);
  return make_algebra(std::move(g), std::move(haar));
}

void require_same_base(const AlgebraPtr& a, const AlgebraPtr& b, const char* where) {
  if (a != b) fail(ErrorKind::BaseMismatch, std::string(where) + ": operands live on different algebras");
}

// AlgebraElement ---------------------------------------------------------------

AlgebraElement::AlgebraElement(AlgebraPtr algebra)
    : algebra_(std::move(algebra)), coeffs_(algebra_->size(), Complex(0.0)) {}

AlgebraElement::AlgebraElement(AlgebraPtr algebra, std::vector<Complex> coeffs)
    : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != algebra_->size()) {
    fail(ErrorKind::BaseMismatch, "coefficient vector does not match the groupoid size");
  }
}

AlgebraElement AlgebraElement::delta(AlgebraPtr algebra, Index x) {
  AlgebraElement f(std::move(algebra));
  f.coeffs_.at(x) = 1.0;
  return f;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  require_same_base(algebra_, other.algebra_, "operator+");
  for (Index x = 0; x < size(); ++x) coeffs_[x] += other.coeffs_[x];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  require_same_base(algebra_, other.algebra_, "operator-");
  for (Index x = 0; x < size(); ++x) coeffs_[x] -= other.coeffs_[x];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

double AlgebraElement::distance(const AlgebraElement& other) const {
  require_same_base(algebra_, other.algebra_, "distance");
  double d = 0.0;
  for (Index x = 0; x < size(); ++x) d = std::max(d, std::abs(coeffs_[x] - other.coeffs_[x]));
  return d;
}

// Operations -------------------------------------------------------------------

AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g) {
  require_same_base(f.algebra(), g.algebra(), "convolve");
  const Algebra& a = *f.algebra();
  auto out = convolve_tables<Complex>(a.groupoid(), f.coeffs(), g.coeffs(),
                                      [&](Index y) { return Complex(a.haar().weight(y)); });
  return AlgebraElement(f.algebra(), std::move(out));
}

std::vector<Rational> convolve_exact(const Algebra& algebra, std::span<const Rational> f,
                                     std::span<const Rational> g) {
  if (!algebra.haar().is_exact()) fail(ErrorKind::BaseMismatch, "exact convolution needs rational Haar weights");
  if (f.size() != algebra.size() || g.size() != algebra.size()) {
    fail(ErrorKind::BaseMismatch, "coefficient vector does not match the groupoid size");
  }
  return convolve_tables<Rational>(algebra.groupoid(), f, g,
                                   [&](Index y) { return algebra.haar().exact_weight(y); });
}

AlgebraElement involution(const AlgebraElement& f) {
  const auto& g = f.algebra()->groupoid();
  AlgebraElement out(f.algebra());
  for (Index x = 0; x < g.size(); ++x) out[x] = std::conj(f[g.inverse(x)]);
  return out;
}

double i_norm(const AlgebraElement& f) {
  const auto& g = f.algebra()->groupoid();
  const auto& haar = f.algebra()->haar();
  double best = 0.0;
  for (Index u : g.units()) {
    double r_sum = 0.0;
    for (Index y : g.range_fiber(u)) r_sum += std::abs(f[y]) * haar.weight(y);
    double s_sum = 0.0;
    for (Index y : g.source_fiber(u)) s_sum += std::abs(f[y]) * haar.inverted_weight(g, y);
    best = std::max({best, r_sum, s_sum});
  }
  return best;
}

namespace {

// Image of f in the regular representation at `unit`.
Matrix regular_image(const Algebra& a, Index unit, std::span<const Complex> f) {
  const auto& g = a.groupoid();
  const auto fiber = g.source_fiber(unit);
  std::vector<Index> pos(g.size(), kNone);
  for (Index i = 0; i < fiber.size(); ++i) pos[fiber[i]] = i;
  Matrix m = Matrix::Zero(fiber.size(), fiber.size());
  for (Index y = 0; y < g.size(); ++y) {
    if (f[y] == Complex(0.0)) continue;
    for (Index z : fiber) {
      if (!g.composable(y, z)) continue;
      Index yz = g.compose(y, z);
      double scale = a.haar().weight(y) *
                     std::sqrt(a.haar().inverted_weight(g, yz) / a.haar().inverted_weight(g, z));
      m(pos[yz], pos[z]) += f[y] * scale;
    }
  }
  return m;
}

}  // namespace

double cstar_norm(const AlgebraElement& f) {
  const Algebra& a = *f.algebra();
  double best = 0.0;
  for (Index u : a.groupoid().units()) best = std::max(best, operator_norm(regular_image(a, u, f.coeffs())));
  return best;
}

// Representation -----------------------------------------------------------------

Representation::Representation(AlgebraPtr algebra, std::size_t dim, std::vector<Matrix> ops, double tol)
    : algebra_(std::move(algebra)), dim_(dim), ops_(std::move(ops)) {
  const auto& g = algebra_->groupoid();
  const auto& haar = algebra_->haar();
  if (ops_.size() != g.size()) fail(ErrorKind::InvalidRep, "operator table does not cover every element");
  for (const auto& m : ops_) {
    if (static_cast<std::size_t>(m.rows()) != dim_ || static_cast<std::size_t>(m.cols()) != dim_) {
      fail(ErrorKind::InvalidRep, "operator has the wrong shape");
    }
  }
  if (dim_ == 0) {
    report_.ok = false;
    report_.violations.push_back("zero-dimensional carrier");
    return;
  }

  double scale = 1.0;
  for (const auto& m : ops_) scale = std::max(scale, m.cwiseAbs().maxCoeff());
  const double hom_tol = tol * scale * scale * static_cast<double>(dim_);
  const double adj_tol = tol * scale;

  for (Index x = 0; x < g.size(); ++x) {
    for (Index y = 0; y < g.size(); ++y) {
      Matrix lhs = ops_[x] * ops_[y];
      if (g.composable(x, y)) lhs -= haar.weight(x) * ops_[g.compose(x, y)];
      double defect = lhs.cwiseAbs().maxCoeff();
      report_.homomorphism_defect = std::max(report_.homomorphism_defect, defect);
      if (defect > hom_tol && report_.violations.size() < 8) {
        report_.violations.push_back("op(" + g.name(x) + ")op(" + g.name(y) + ") != op(delta_" + g.name(x) +
                                     " * delta_" + g.name(y) + ")");
      }
    }
    double adj = (ops_[x].adjoint() - ops_[g.inverse(x)]).cwiseAbs().maxCoeff();
    report_.adjoint_defect = std::max(report_.adjoint_defect, adj);
    if (adj > adj_tol && report_.violations.size() < 8) {
      report_.violations.push_back("op(" + g.name(x) + ")^* != op(" + g.name(g.inverse(x)) + ")");
    }
  }

  Matrix stacked(dim_, dim_ * g.size());
  for (Index x = 0; x < g.size(); ++x) stacked.middleCols(x * dim_, dim_) = ops_[x];
  report_.span_rank = numerical_rank(stacked, 1e-9);
  if (report_.span_rank < static_cast<Eigen::Index>(dim_)) {
    report_.violations.push_back("degenerate: images span a subspace of dimension " +
                                 std::to_string(report_.span_rank) + " < " + std::to_string(dim_));
  }
  report_.ok = report_.violations.empty() && report_.homomorphism_defect <= hom_tol &&
               report_.adjoint_defect <= adj_tol;
}

const Representation::Report& rep_validate(const Representation& rep) { return rep.report(); }

Matrix rep_apply(const Representation& rep, const AlgebraElement& f) {
  require_same_base(rep.algebra(), f.algebra(), "rep_apply");
  if (!rep.report().ok) fail(ErrorKind::InvalidRep, "representation failed validation");
  Matrix out = Matrix::Zero(rep.dim(), rep.dim());
  for (Index x = 0; x < f.size(); ++x) {
    if (f[x] != Complex(0.0)) out += f[x] * rep.op(x);
  }
  return out;
}

Representation regular_representation(const AlgebraPtr& algebra, Index unit) {
  const auto& g = algebra->groupoid();
  if (unit >= g.size() || !g.is_unit(unit)) fail(ErrorKind::NotAUnit, "regular representation needs a unit");
  std::vector<Matrix> ops;
  ops.reserve(g.size());
  std::vector<Complex> delta(g.size(), Complex(0.0));
  for (Index x = 0; x < g.size(); ++x) {
    delta[x] = 1.0;
    ops.push_back(regular_image(*algebra, unit, delta));
    delta[x] = 0.0;
  }
  return Representation(algebra, g.source_fiber(unit).size(), std::move(ops));
}

Representation trivial_representation(const AlgebraPtr& algebra) {
  const auto& g = algebra->groupoid();
  const auto& haar = algebra->haar();
  std::vector<Index> pos(g.size(), kNone);
  for (Index i = 0; i < g.units().size(); ++i) pos[g.units()[i]] = i;
  const std::size_t d = g.units().size();
  std::vector<Matrix> ops;
  for (Index x = 0; x < g.size(); ++x) {
    Matrix m = Matrix::Zero(d, d);
    m(pos[g.range(x)], pos[g.source(x)]) = std::sqrt(haar.weight(g.range(x)) * haar.weight(g.source(x)));
    ops.push_back(std::move(m));
  }
  return Representation(algebra, d, std::move(ops));
}

Representation direct_sum(const Representation& a, const Representation& b) {
  require_same_base(a.algebra(), b.algebra(), "direct_sum");
  std::vector<Matrix> ops;
  for (Index x = 0; x < a.ops().size(); ++x) ops.push_back(gpdind::direct_sum(a.op(x), b.op(x)));
  return Representation(a.algebra(), a.dim() + b.dim(), std::move(ops));
}

Representation compress(const Representation& rep, const Matrix& q) {
  std::vector<Matrix> ops;
  for (const auto& m : rep.ops()) ops.push_back(q.adjoint() * m * q);
  return Representation(rep.algebra(), static_cast<std::size_t>(q.cols()), std::move(ops));
}

std::vector<Complex> character(const Representation& rep) {
  std::vector<Complex> chi;
  chi.reserve(rep.ops().size());
  for (const auto& m : rep.ops()) chi.push_back(m.trace());
  return chi;
}

double character_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace gpdind
