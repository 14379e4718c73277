#include "gpdind/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gpdind/imprimitivity.hpp"

namespace gpdind {

CommutantReport commutant(std::span<const Matrix> ops, double rank_tol) {
  CommutantReport report;
  if (ops.empty()) return report;
  const Eigen::Index d = ops.front().rows();
  const Eigen::Index d2 = d * d;
  const Matrix id = Matrix::Identity(d, d);

  // vec(TA - AT) = (A^T (x) I - I (x) A) vec(T), column-major vec.
  Matrix stacked(static_cast<Eigen::Index>(ops.size()) * d2, d2);
  for (std::size_t x = 0; x < ops.size(); ++x) {
    const Matrix& a = ops[x];
    Matrix k = Matrix::Zero(d2, d2);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        k.block(i * d, j * d, d, d) += a(j, i) * id;
        if (i == j) k.block(i * d, j * d, d, d) -= a;
      }
    }
    stacked.middleRows(static_cast<Eigen::Index>(x) * d2, d2) = k;
  }
  // Squash the tall system first; R has the same singular values.
  Matrix r = stacked;
  if (stacked.rows() > d2) {
    Eigen::HouseholderQR<Matrix> qr(stacked);
    r = qr.matrixQR().topRows(d2).triangularView<Eigen::Upper>();
  }
  Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv(0) : 0.0;

  for (Eigen::Index i = 0; i < d2; ++i) {
    const double rel = top > 0.0 ? sv(i) / top : 0.0;
    if (top > 0.0 && rel > rank_tol) {
      report.smallest_kept_sv = std::min(report.smallest_kept_sv, rel);
      continue;
    }
    report.largest_null_sv = std::max(report.largest_null_sv, rel);
    const Vector v = svd.matrixV().col(i);
    report.basis.push_back(Eigen::Map<const Matrix>(v.data(), d, d));
  }
  report.dimension = report.basis.size();
  return report;
}

CommutantReport commutant(const Representation& rep, double rank_tol) {
  return commutant(std::span<const Matrix>(rep.ops()), rank_tol);
}

bool is_irreducible(const Representation& rep, double rank_tol) {
  return commutant(rep, rank_tol).dimension == 1;
}

namespace {

std::vector<Matrix> compressed_ops(const Representation& rep, const Matrix& q) {
  std::vector<Matrix> out;
  out.reserve(rep.ops().size());
  for (const auto& m : rep.ops()) out.push_back(q.adjoint() * m * q);
  return out;
}

// Splits the invariant subspace spanned by q until every piece is irreducible.
void split(const Representation& regular, const Matrix& q, const IrrepOptions& opts, std::mt19937_64& rng,
           std::vector<Matrix>& pieces) {
  const auto ops = compressed_ops(regular, q);
  const auto comm = commutant(std::span<const Matrix>(ops), opts.rank_tol);
  if (comm.dimension == 1) {
    pieces.push_back(q);
    return;
  }
  if (comm.dimension == 0) fail(ErrorKind::DecompositionFailure, "empty commutant on a nonzero subspace");

  std::normal_distribution<double> normal(0.0, 1.0);
  for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
    Matrix h = Matrix::Zero(q.cols(), q.cols());
    // Both Hermitian parts; with a real basis T + T^* alone cannot tell a
    // character from its conjugate.
    for (const auto& t : comm.basis) {
      h += normal(rng) * (t + t.adjoint());
      h += normal(rng) * Complex(0.0, 1.0) * (t - t.adjoint());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const auto& ev = es.eigenvalues();
    const double spread = std::max(1.0, ev.cwiseAbs().maxCoeff());

    std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;  // [begin, end)
    Eigen::Index begin = 0;
    for (Eigen::Index i = 1; i <= ev.size(); ++i) {
      if (i == ev.size() || ev(i) - ev(i - 1) > opts.cluster_tol * spread) {
        clusters.emplace_back(begin, i);
        begin = i;
      }
    }
    if (clusters.size() < 2) continue;
    for (auto [b, e] : clusters) {
      const Matrix sub = q * es.eigenvectors().middleCols(b, e - b);
      split(regular, sub, opts, rng, pieces);
    }
    return;
  }
  fail(ErrorKind::DecompositionFailure, "random commutant elements failed to split a reducible block");
}

// Lexicographic on (dimension, -Re chi(x), -Im chi(x), ...).
bool character_less(const Representation& a, const Representation& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  const auto ca = character(a);
  const auto cb = character(b);
  constexpr double eps = 1e-9;
  for (std::size_t x = 0; x < ca.size(); ++x) {
    if (std::abs(ca[x].real() - cb[x].real()) > eps) return ca[x].real() > cb[x].real();
    if (std::abs(ca[x].imag() - cb[x].imag()) > eps) return ca[x].imag() > cb[x].imag();
  }
  return false;
}

}  // namespace

std::vector<Representation> group_irreps(const AlgebraPtr& group, const IrrepOptions& opts) {
  const auto& g = group->groupoid();
  if (!g.is_group()) fail(ErrorKind::NotAGroup, "group_irreps needs a group");
  const Representation regular = regular_representation(group, g.units().front());

  std::mt19937_64 rng(opts.seed);
  std::vector<Matrix> pieces;
  split(regular, Matrix::Identity(regular.dim(), regular.dim()), opts, rng, pieces);

  std::vector<Representation> irreps;
  for (const auto& q : pieces) {
    Representation rep = compress(regular, q);
    const auto chi = character(rep);
    bool seen = false;
    for (const auto& other : irreps) {
      if (other.dim() == rep.dim() && character_distance(character(other), chi) < 1e-6) {
        seen = true;
        break;
      }
    }
    if (!seen) irreps.push_back(std::move(rep));
  }

  std::size_t total = 0;
  for (const auto& rep : irreps) total += rep.dim() * rep.dim();
  if (total != g.size()) {
    fail(ErrorKind::DecompositionFailure, "sum of squared dimensions is " + std::to_string(total) +
                                              ", group order is " + std::to_string(g.size()));
  }
  std::stable_sort(irreps.begin(), irreps.end(), character_less);
  return irreps;
}

AlgebraPtr isotropy_algebra(const AlgebraPtr& g_algebra, Index unit) {
  const auto iso = isotropy_group(g_algebra->groupoid(), unit);
  return make_algebra(iso.groupoid(), g_algebra->haar().restrict_to(iso));
}

TheoremVerdict main_theorem_check(const AlgebraPtr& g_algebra, Index unit, const Representation& inner,
                                  const TheoremOptions& opts) {
  if (!inner.report().ok) fail(ErrorKind::InvalidRep, "inducing representation failed validation");
  if (!is_irreducible(inner, opts.rank_tol)) fail(ErrorKind::NotIrreducibleInput, "L is not irreducible");

  auto data = build_imprimitivity(g_algebra, isotropy_group(g_algebra->groupoid(), unit), inner.algebra());
  const InducedRep ind = induce(data, inner, opts.induction);

  TheoremVerdict verdict;
  verdict.induced_dim = ind.space.rank;
  verdict.commutant_dim = commutant(ind.rep, opts.rank_tol).dimension;

  std::vector<Matrix> xops;
  const auto& hg = data->hg_algebra();
  for (Index e = 0; e < hg->size(); ++e) xops.push_back(xind(AlgebraElement::delta(hg, e), ind.space, opts.induction));
  verdict.xind_commutant_dim = commutant(std::span<const Matrix>(xops), opts.rank_tol).dimension;

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int sample = 0; sample < opts.transfer_samples; ++sample) {
    AlgebraElement f(hg);
    for (Index e = 0; e < hg->size(); ++e) f[e] = Complex(normal(rng), normal(rng));
    const AlgebraElement t = transfer(*data, f);
    const double residual = operator_norm(rep_apply(ind.rep, t) - xind(f, ind.space, opts.induction));
    verdict.transfer_residual = std::max(verdict.transfer_residual, residual);
    const double excess = i_norm(t) - i_norm(f);
    verdict.transfer_inorm_excess = sample == 0 ? excess : std::max(verdict.transfer_inorm_excess, excess);
  }
  verdict.pass = verdict.commutant_dim == 1 && verdict.transfer_residual <= opts.residual_tol &&
                 verdict.transfer_inorm_excess <= 1.0;
  return verdict;
}

}  // namespace gpdind
