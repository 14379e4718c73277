#include "gpdind/induction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gpdind {

namespace {

// a (x) I_d with the carrier index slow.
Matrix kron_identity(const Matrix& a, std::size_t d) {
  const Eigen::Index dd = static_cast<Eigen::Index>(d);
  Matrix out = Matrix::Zero(a.rows() * dd, a.cols() * dd);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) == Complex(0.0)) continue;
      for (Eigen::Index k = 0; k < dd; ++k) out(i * dd + k, j * dd + k) = a(i, j);
    }
  }
  return out;
}

}  // namespace

Matrix InducedSpace::descend(const Matrix& carrier_op, double descent_tol) const {
  const std::size_t d = inner->dim();
  const Matrix full = kron_identity(carrier_op, d);
  if (null_basis.cols() > 0) {
    // Null vectors must map to null vectors: their images have zero Gram norm.
    const Matrix images = factor.adjoint() * (full * null_basis);
    const double worst = images.colwise().norm().maxCoeff();
    const double scale = std::max(1.0, carrier_op.cwiseAbs().maxCoeff());
    if (worst > descent_tol * scale) {
      fail(ErrorKind::QuotientInconsistency,
           "operator does not preserve the Gram null space (defect " + std::to_string(worst) + ")");
    }
  }
  return factor.adjoint() * full * lift;
}

InducedSpace induced_space(ImprimitivityPtr data, const Representation& inner, const InductionOptions& opts) {
  require_same_base(inner.algebra(), data->h_algebra(), "induced_space");
  if (!inner.report().ok) fail(ErrorKind::InvalidRep, "inducing representation failed validation");

  InducedSpace space;
  space.data = data;
  space.inner = std::make_shared<const Representation>(inner);

  const std::size_t nc = data->carrier_size();
  const std::size_t d = inner.dim();
  const Eigen::Index n = static_cast<Eigen::Index>(nc * d);
  const Eigen::Index dd = static_cast<Eigen::Index>(d);

  // Block (p, q) is L(<delta_p, delta_q>_R); with inner products conjugate
  // linear in the first slot this is the Gram matrix of delta_z (x) e_i.
  space.gram = Matrix::Zero(n, n);
  std::vector<BimoduleVector> deltas;
  for (Index p = 0; p < nc; ++p) deltas.push_back(data->delta(data->fiber().carrier()[p]));
  for (Index p = 0; p < nc; ++p) {
    for (Index q = 0; q < nc; ++q) {
      const auto r = data->rip(deltas[p], deltas[q]);
      space.gram.block(static_cast<Eigen::Index>(p) * dd, static_cast<Eigen::Index>(q) * dd, dd, dd) =
          rep_apply(inner, r);
    }
  }
  space.gram = (space.gram + space.gram.adjoint()).eval() / 2.0;

  Eigen::SelfAdjointEigenSolver<Matrix> es(space.gram);
  const auto& evals = es.eigenvalues();
  const double top = n > 0 ? evals(n - 1) : 0.0;
  if (n > 0 && evals(0) < -1e-10 * std::max(1.0, top)) {
    fail(ErrorKind::InvalidRep, "pre-inner product is not positive (eigenvalue " + std::to_string(evals(0)) + ")");
  }
  std::vector<Eigen::Index> keep;
  std::vector<Eigen::Index> drop;
  for (Eigen::Index i = 0; i < n; ++i) {
    (top > 0.0 && evals(i) > opts.null_tol * top ? keep : drop).push_back(i);
  }
  space.rank = keep.size();
  space.factor.resize(n, static_cast<Eigen::Index>(keep.size()));
  space.lift.resize(n, static_cast<Eigen::Index>(keep.size()));
  // Largest eigenvalues first.
  std::reverse(keep.begin(), keep.end());
  for (std::size_t c = 0; c < keep.size(); ++c) {
    const double s = std::sqrt(evals(keep[c]));
    space.factor.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]) * s;
    space.lift.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]) / s;
  }
  space.null_basis.resize(n, static_cast<Eigen::Index>(drop.size()));
  for (std::size_t c = 0; c < drop.size(); ++c) {
    space.null_basis.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(drop[c]);
  }
  return space;
}

InducedRep induce(ImprimitivityPtr data, const Representation& inner, const InductionOptions& opts) {
  InducedSpace space = induced_space(data, inner, opts);
  const auto& g = data->g_algebra()->groupoid();
  std::vector<Matrix> ops;
  ops.reserve(g.size());
  for (Index x = 0; x < g.size(); ++x) ops.push_back(space.descend(data->f_action_matrix(x), opts.descent_tol));
  Representation rep(data->g_algebra(), space.rank, std::move(ops));
  if (!rep.report().ok) {
    std::string why = rep.report().violations.empty() ? "tolerance exceeded" : rep.report().violations.front();
    fail(ErrorKind::InvalidRep, "induced representation failed validation: " + why);
  }
  return InducedRep{std::move(space), std::move(rep)};
}

Matrix xind(const AlgebraElement& F, const InducedSpace& space, const InductionOptions& opts) {
  return space.descend(space.data->left_action_matrix(F), opts.descent_tol);
}

Representation xind_representation(const InducedSpace& space, const InductionOptions& opts) {
  const auto& hg = space.data->hg_algebra();
  std::vector<Matrix> ops;
  ops.reserve(hg->size());
  for (Index e = 0; e < hg->size(); ++e) ops.push_back(xind(AlgebraElement::delta(hg, e), space, opts));
  return Representation(hg, space.rank, std::move(ops));
}

namespace {

void check_chain(const ImprimitivityData& outer, const ImprimitivityData& inner, const ImprimitivityData& direct) {
  if (outer.g_algebra() != direct.g_algebra()) fail(ErrorKind::ChainViolation, "outer and direct data live on different groupoids");
  if (inner.g_algebra() != outer.h_algebra()) fail(ErrorKind::ChainViolation, "inner data does not start from C_c(K)");
  if (inner.h_algebra() != direct.h_algebra()) fail(ErrorKind::ChainViolation, "inner and direct data use different C_c(H)");
  const auto& k = outer.subgroupoid();
  const auto& h = direct.subgroupoid();
  if (!h.is_subset_of(k)) fail(ErrorKind::ChainViolation, "H is not contained in K");
  const auto& h_in_k = inner.subgroupoid();
  if (h_in_k.members().size() != h.members().size()) fail(ErrorKind::ChainViolation, "inner H differs from H");
  for (Index i = 0; i < h.members().size(); ++i) {
    if (k.to_parent(h_in_k.members()[i]) != h.members()[i]) fail(ErrorKind::ChainViolation, "inner H differs from H");
  }
}

}  // namespace

BimoduleVector theta(const ImprimitivityData& outer, const ImprimitivityData& inner,
                     const ImprimitivityData& direct, const BimoduleVector& phi, const BimoduleVector& psi) {
  check_chain(outer, inner, direct);
  if (phi.size() != outer.carrier_size() || psi.size() != inner.carrier_size()) {
    fail(ErrorKind::BaseMismatch, "theta: vectors do not fit the chain");
  }
  const auto& g = direct.g_algebra()->groupoid();
  const auto& k = outer.subgroupoid();
  const auto& kl = k.groupoid();
  const auto& beta = outer.h_algebra()->haar();
  BimoduleVector out = direct.zero_vector();
  for (Index p = 0; p < direct.carrier_size(); ++p) {
    const Index x = direct.fiber().carrier()[p];
    Complex acc = 0.0;
    for (Index kk : kl.range_fiber(k.to_local(g.source(x)))) {
      const Index xk = g.compose(x, k.to_parent(kk));
      acc += phi[outer.fiber().position(xk)] * psi[inner.fiber().position(kl.inverse(kk))] * beta.weight(kk);
    }
    out[p] = acc;
  }
  return out;
}

StagesReport stages_check(const AlgebraPtr& g_algebra, const Subgroupoid& k, const AlgebraPtr& k_algebra,
                          const Subgroupoid& h, const Representation& inner, const InductionOptions& opts) {
  if (!h.is_subset_of(k)) fail(ErrorKind::ChainViolation, "H is not contained in K");
  if (!(k_algebra->groupoid() == k.groupoid())) fail(ErrorKind::BaseMismatch, "C_c(K) does not match K");

  std::vector<Index> local_members;
  for (Index x : h.members()) local_members.push_back(k.to_local(x));
  Subgroupoid h_in_k(k.groupoid(), std::move(local_members));

  auto inner_data = build_imprimitivity(k_algebra, std::move(h_in_k), inner.algebra());
  auto outer_data = build_imprimitivity(g_algebra, k, k_algebra);
  auto direct_data = build_imprimitivity(g_algebra, h, inner.algebra());

  const InducedRep first = induce(inner_data, inner, opts);         // Ind_H^K L
  const InducedRep staged = induce(outer_data, first.rep, opts);    // Ind_K^G(Ind_H^K L)
  const InducedRep direct = induce(direct_data, inner, opts);       // Ind_H^G L

  const std::size_t d = inner.dim();
  const std::size_t r1 = first.space.rank;
  const auto n2 = static_cast<Eigen::Index>(outer_data->carrier_size() * r1);
  const auto n3 = static_cast<Eigen::Index>(direct_data->carrier_size() * d);
  const auto dd = static_cast<Eigen::Index>(d);

  // U re-associates delta_x (x) (delta_k (x) e_i) and theta merges the first
  // two factors; column (x, j) takes the class b_j through its lift.
  Matrix m = Matrix::Zero(n3, n2);
  for (Index px = 0; px < outer_data->carrier_size(); ++px) {
    const auto phi = outer_data->delta(outer_data->fiber().carrier()[px]);
    for (Index pk = 0; pk < inner_data->carrier_size(); ++pk) {
      const auto psi = inner_data->delta(inner_data->fiber().carrier()[pk]);
      const auto t = theta(*outer_data, *inner_data, *direct_data, phi, psi);
      for (Index py = 0; py < t.size(); ++py) {
        if (t[py] == Complex(0.0)) continue;
        for (std::size_t j = 0; j < r1; ++j) {
          for (Eigen::Index i = 0; i < dd; ++i) {
            m(static_cast<Eigen::Index>(py) * dd + i, static_cast<Eigen::Index>(px * r1 + j)) +=
                t[py] * first.space.lift(static_cast<Eigen::Index>(pk) * dd + i, static_cast<Eigen::Index>(j));
          }
        }
      }
    }
  }

  StagesReport report;
  report.direct_dim = direct.space.rank;
  report.staged_dim = staged.space.rank;
  report.v = direct.space.factor.adjoint() * m * staged.space.lift;

  const Matrix& v = report.v;
  const auto r2 = v.cols();
  const auto r3 = v.rows();
  report.unitarity_defect = std::max(operator_norm(v.adjoint() * v - Matrix::Identity(r2, r2)),
                                     operator_norm(v * v.adjoint() - Matrix::Identity(r3, r3)));
  for (Index x = 0; x < g_algebra->size(); ++x) {
    report.intertwining_residual = std::max(
        report.intertwining_residual, operator_norm(v * staged.rep.op(x) - direct.rep.op(x) * v));
  }
  return report;
}

}  // namespace gpdind
