#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gpdind/error.hpp"
#include "gpdind/groupoid.hpp"
#include "gpdind/haar.hpp"
#include "gpdind/linalg.hpp"

namespace gpdind {

/// C_c(G) for a finite groupoid G with a fixed left-invariant Haar system.
class Algebra {
 public:
  /// Throws Error(BaseMismatch) if the weights do not fit G and
  /// Error(AxiomViolation) if they are not left invariant.
  Algebra(FiniteGroupoid g, HaarSystem haar);

  const FiniteGroupoid& groupoid() const noexcept { return g_; }
  const HaarSystem& haar() const noexcept { return haar_; }
  std::size_t size() const noexcept { return g_.size(); }

 private:
  FiniteGroupoid g_;
  HaarSystem haar_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

AlgebraPtr make_algebra(FiniteGroupoid g, HaarSystem haar);
AlgebraPtr make_algebra(FiniteGroupoid g);  // counting Haar

/// A finitely supported function on G, i.e. an element of C_c(G).
class AlgebraElement {
 public:
  explicit AlgebraElement(AlgebraPtr algebra);
  AlgebraElement(AlgebraPtr algebra, std::vector<Complex> coeffs);

  static AlgebraElement delta(AlgebraPtr algebra, Index x);

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  Complex operator[](Index x) const { return coeffs_[x]; }
  Complex& operator[](Index x) { return coeffs_[x]; }

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(Complex scalar);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(Complex c, AlgebraElement a) { return a *= c; }

  /// Max absolute coefficient difference; throws on base mismatch.
  double distance(const AlgebraElement& other) const;

 private:
  AlgebraPtr algebra_;
  std::vector<Complex> coeffs_;
};

void require_same_base(const AlgebraPtr& a, const AlgebraPtr& b, const char* where);

/// (f*g)(x) = sum_{r(y)=r(x)} f(y) g(y^{-1}x) weight(y), for any scalar type.
template <class Scalar, class WeightFn>
std::vector<Scalar> convolve_tables(const FiniteGroupoid& g, std::span<const Scalar> f,
                                    std::span<const Scalar> h, WeightFn&& weight) {
  std::vector<Scalar> out(g.size(), Scalar(0));
  // Each composable pair (y, z) contributes f(y) h(z) w(y) at yz.
  for (Index y = 0; y < g.size(); ++y) {
    if (f[y] == Scalar(0)) continue;
    const Scalar fy = f[y] * weight(y);
    for (Index z : g.range_fiber(g.source(y))) {
      out[g.compose(y, z)] += fy * h[z];
    }
  }
  return out;
}

AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g);

/// Exact convolution of rational-valued functions; requires exact Haar weights.
std::vector<Rational> convolve_exact(const Algebra& algebra, std::span<const Rational> f,
                                     std::span<const Rational> g);

/// f*(x) = conj f(x^{-1}).
AlgebraElement involution(const AlgebraElement& f);

/// max over units u of the weighted absolute sums over G^u and over G_u.
double i_norm(const AlgebraElement& f);

/// Norm in the direct sum of the regular representations.
double cstar_norm(const AlgebraElement& f);

/// A representation of C_c(G) given by the images of the delta functions.
///
/// Validation runs once at construction; the report is kept with the
/// representation and rep_apply refuses representations that failed it.
class Representation {
 public:
  struct Report {
    bool ok = true;
    double homomorphism_defect = 0.0;
    double adjoint_defect = 0.0;
    Eigen::Index span_rank = 0;
    std::vector<std::string> violations;
  };

  Representation(AlgebraPtr algebra, std::size_t dim, std::vector<Matrix> ops,
                 double tol = 1e-9);

  const AlgebraPtr& algebra() const noexcept { return algebra_; }
  std::size_t dim() const noexcept { return dim_; }
  const Matrix& op(Index x) const { return ops_[x]; }
  std::span<const Matrix> ops() const noexcept { return ops_; }
  const Report& report() const noexcept { return report_; }

 private:
  AlgebraPtr algebra_;
  std::size_t dim_;
  std::vector<Matrix> ops_;
  Report report_;
};

const Representation::Report& rep_validate(const Representation& rep);

/// Linear extension sum_x f(x) op(delta_x). Throws Error(InvalidRep) or
/// Error(BaseMismatch).
Matrix rep_apply(const Representation& rep, const AlgebraElement& f);

/// Left regular representation on l^2(G_u), in the basis orthonormal for the
/// inner product weighted by lambda_u. Throws Error(NotAUnit).
Representation regular_representation(const AlgebraPtr& algebra, Index unit);

/// The representation on l^2(G^(0)) with delta_x acting as a multiple of the
/// matrix unit e_{r(x)} e_{s(x)}^*; for a group it is the trivial character.
Representation trivial_representation(const AlgebraPtr& algebra);

Representation direct_sum(const Representation& a, const Representation& b);

/// Restriction to the invariant subspace spanned by the orthonormal columns of q.
Representation compress(const Representation& rep, const Matrix& q);

/// Traces of op(delta_x), a complete invariant up to unitary equivalence.
std::vector<Complex> character(const Representation& rep);

double character_distance(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace gpdind
