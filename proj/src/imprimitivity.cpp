#include "gpdind/imprimitivity.hpp"

#include <algorithm>

namespace gpdind {

namespace {

Rational exact_beta(const Algebra& g, Index y) { return g.haar().exact_weight(g.groupoid().inverse(y)); }

}  // namespace

ImprimitivityData::ImprimitivityData(AlgebraPtr g_algebra, Subgroupoid h, AlgebraPtr h_algebra)
    : g_(std::move(g_algebra)),
      h_(std::move(h)),
      h_alg_(std::move(h_algebra)),
      fiber_(g_->groupoid(), h_) {
  const FiniteGroupoid& g = g_->groupoid();
  if (!(h_alg_->groupoid() == h_.groupoid())) {
    fail(ErrorKind::BaseMismatch, "Haar algebra of H does not match the subgroupoid");
  }
  const std::size_t nc = fiber_.size();
  const auto carrier = fiber_.carrier();

  // Orbits of the diagonal right H-action, scanned in lexicographic order so
  // that the first pair seen in each orbit is its least element.
  orbit_of_.assign(nc * nc, kNone);
  for (Index p = 0; p < nc; ++p) {
    for (Index q = 0; q < nc; ++q) {
      const Index x = carrier[p];
      const Index y = carrier[q];
      if (g.source(x) != g.source(y) || orbit_of_[p * nc + q] != kNone) continue;
      const Index id = reps_.size();
      reps_.emplace_back(x, y);
      for (Index k : g.range_fiber(g.source(x))) {
        if (!h_.contains(k)) continue;
        orbit_of_[fiber_.position(g.compose(x, k)) * nc + fiber_.position(g.compose(y, k))] = id;
      }
    }
  }

  const std::size_t n = reps_.size();
  FiniteGroupoid::Tables t;
  t.compose.assign(n * n, kNone);
  for (Index e = 0; e < n; ++e) {
    auto [x, y] = reps_[e];
    t.names.push_back("[" + g.name(x) + "," + g.name(y) + "]");
    t.range.push_back(orbit(x, x));
    t.source.push_back(orbit(y, y));
    t.inverse.push_back(orbit(y, x));
    if (x == y) t.units.push_back(e);
  }
  // [x,y][yk,z] = [x, z k^{-1}]
  for (Index e1 = 0; e1 < n; ++e1) {
    auto [x, y] = reps_[e1];
    for (Index e2 = 0; e2 < n; ++e2) {
      if (t.source[e1] != t.range[e2]) continue;
      auto [y2, z] = reps_[e2];
      const Index k = g.compose(g.inverse(y), y2);
      if (k == kNone || !h_.contains(k)) {
        fail(ErrorKind::AxiomViolation, "orbit composition found no H-element relating representatives");
      }
      t.compose[e1 * n + e2] = orbit(x, g.compose(z, g.inverse(k)));
    }
  }
  FiniteGroupoid hg(std::move(t));

  // beta^{x.H}([x,y]) = lambda_{s(x)}(y), checked against every representative.
  const bool exact = g_->haar().is_exact();
  std::vector<Rational> exact_w;
  std::vector<double> w;
  for (Index e = 0; e < n; ++e) {
    const Index y = reps_[e].second;
    if (exact) exact_w.push_back(exact_beta(*g_, y));
    w.push_back(beta_via(reps_[e].first, y));
  }
  for (Index p = 0; p < nc; ++p) {
    for (Index q = 0; q < nc; ++q) {
      const Index e = orbit_of_[p * nc + q];
      if (e == kNone) continue;
      const Index y = carrier[q];
      const bool same = exact ? exact_beta(*g_, y) == exact_w[e] : std::abs(beta_via(carrier[p], y) - w[e]) <= 1e-12;
      if (!same) fail(ErrorKind::AxiomViolation, "beta depends on the orbit representative at " + hg.name(e));
    }
  }
  HaarSystem beta = exact ? HaarSystem::from_rationals(std::move(exact_w)) : HaarSystem::from_doubles(std::move(w));
  hg_ = make_algebra(std::move(hg), std::move(beta));
}

Index ImprimitivityData::orbit(Index x, Index y) const {
  const Index p = fiber_.position(x);
  const Index q = fiber_.position(y);
  if (p == kNone || q == kNone) return kNone;
  return orbit_of_[p * fiber_.size() + q];
}

double ImprimitivityData::beta_via(Index /*x*/, Index y) const {
  return g_->haar().inverted_weight(g_->groupoid(), y);
}

BimoduleVector ImprimitivityData::delta(Index x) const {
  const Index p = fiber_.position(x);
  if (p == kNone) fail(ErrorKind::BaseMismatch, "element is not in G_sH");
  BimoduleVector v = zero_vector();
  v[p] = 1.0;
  return v;
}

void ImprimitivityData::check_vector(const BimoduleVector& v, const char* where) const {
  if (v.size() != fiber_.size()) {
    fail(ErrorKind::BaseMismatch, std::string(where) + ": vector does not live on this G_sH");
  }
}

BimoduleVector ImprimitivityData::left_action(const AlgebraElement& F, const BimoduleVector& phi) const {
  require_same_base(F.algebra(), hg_, "left_action");
  check_vector(phi, "left_action");
  const auto& g = g_->groupoid();
  BimoduleVector out = zero_vector();
  for (Index p = 0; p < fiber_.size(); ++p) {
    const Index z = fiber_.carrier()[p];
    Complex acc = 0.0;
    for (Index y : g.source_fiber(g.source(z))) {
      acc += F[orbit(z, y)] * phi[fiber_.position(y)] * g_->haar().inverted_weight(g, y);
    }
    out[p] = acc;
  }
  return out;
}

BimoduleVector ImprimitivityData::right_action(const BimoduleVector& phi, const AlgebraElement& gfun) const {
  require_same_base(gfun.algebra(), h_alg_, "right_action");
  check_vector(phi, "right_action");
  const auto& g = g_->groupoid();
  const auto& hl = h_alg_->groupoid();
  BimoduleVector out = zero_vector();
  for (Index p = 0; p < fiber_.size(); ++p) {
    const Index z = fiber_.carrier()[p];
    Complex acc = 0.0;
    for (Index k : hl.range_fiber(h_.to_local(g.source(z)))) {
      const Index zk = g.compose(z, h_.to_parent(k));
      acc += phi[fiber_.position(zk)] * gfun[hl.inverse(k)] * h_alg_->haar().weight(k);
    }
    out[p] = acc;
  }
  return out;
}

AlgebraElement ImprimitivityData::rip(const BimoduleVector& phi, const BimoduleVector& psi) const {
  check_vector(phi, "rip");
  check_vector(psi, "rip");
  const auto& g = g_->groupoid();
  const auto& hl = h_alg_->groupoid();
  AlgebraElement out(h_alg_);
  for (Index k = 0; k < hl.size(); ++k) {
    const Index kp = h_.to_parent(k);
    Complex acc = 0.0;
    for (Index y : g.source_fiber(g.range(kp))) {
      acc += std::conj(phi[fiber_.position(y)]) * psi[fiber_.position(g.compose(y, kp))] *
             g_->haar().inverted_weight(g, y);
    }
    out[k] = acc;
  }
  return out;
}

Complex ImprimitivityData::lip_via(const BimoduleVector& phi, const BimoduleVector& psi, Index x, Index y) const {
  const auto& g = g_->groupoid();
  const auto& hl = h_alg_->groupoid();
  Complex acc = 0.0;
  for (Index k : hl.range_fiber(h_.to_local(g.source(x)))) {
    const Index kp = h_.to_parent(k);
    acc += phi[fiber_.position(g.compose(x, kp))] * std::conj(psi[fiber_.position(g.compose(y, kp))]) *
           h_alg_->haar().weight(k);
  }
  return acc;
}

AlgebraElement ImprimitivityData::lip(const BimoduleVector& phi, const BimoduleVector& psi) const {
  check_vector(phi, "lip");
  check_vector(psi, "lip");
  AlgebraElement out(hg_);
  for (Index e = 0; e < reps_.size(); ++e) out[e] = lip_via(phi, psi, reps_[e].first, reps_[e].second);
  return out;
}

BimoduleVector ImprimitivityData::f_action(const AlgebraElement& f, const BimoduleVector& phi) const {
  require_same_base(f.algebra(), g_, "f_action");
  check_vector(phi, "f_action");
  const auto& g = g_->groupoid();
  BimoduleVector out = zero_vector();
  for (Index p = 0; p < fiber_.size(); ++p) {
    const Index z = fiber_.carrier()[p];
    Complex acc = 0.0;
    for (Index y : g.range_fiber(g.range(z))) {
      acc += f[y] * phi[fiber_.position(g.compose(g.inverse(y), z))] * g_->haar().weight(y);
    }
    out[p] = acc;
  }
  return out;
}

Matrix ImprimitivityData::f_action_matrix(Index x) const {
  const auto& g = g_->groupoid();
  Matrix m = Matrix::Zero(fiber_.size(), fiber_.size());
  for (Index z : g.range_fiber(g.source(x))) {
    if (!fiber_.contains(z)) continue;
    m(fiber_.position(g.compose(x, z)), fiber_.position(z)) = g_->haar().weight(x);
  }
  return m;
}

Matrix ImprimitivityData::left_action_matrix(const AlgebraElement& F) const {
  require_same_base(F.algebra(), hg_, "left_action_matrix");
  const auto& g = g_->groupoid();
  const std::size_t nc = fiber_.size();
  Matrix m = Matrix::Zero(nc, nc);
  for (Index q = 0; q < nc; ++q) {
    const Index y = fiber_.carrier()[q];
    const double w = g_->haar().inverted_weight(g, y);
    for (Index z : g.source_fiber(g.source(y))) m(fiber_.position(z), q) = F[orbit(z, y)] * w;
  }
  return m;
}

ImprimitivityPtr build_imprimitivity(AlgebraPtr g_algebra, Subgroupoid h, AlgebraPtr h_algebra) {
  return std::make_shared<const ImprimitivityData>(std::move(g_algebra), std::move(h), std::move(h_algebra));
}

ImprimitivityPtr build_imprimitivity(AlgebraPtr g_algebra, Subgroupoid h) {
  auto alpha = g_algebra->haar().restrict_to(h);
  auto h_algebra = make_algebra(h.groupoid(), std::move(alpha));
  return build_imprimitivity(std::move(g_algebra), std::move(h), std::move(h_algebra));
}

std::vector<Index> pi_map(const ImprimitivityData& data) {
  const auto& g = data.g_algebra()->groupoid();
  const auto& h = data.subgroupoid();
  if (h.units().size() != 1) fail(ErrorKind::NotIsotropyCase, "H has more than one unit");
  const Index u = h.units()[0];
  const auto iso = isotropy_group(g, u);
  if (!std::equal(iso.members().begin(), iso.members().end(), h.members().begin(), h.members().end())) {
    fail(ErrorKind::NotIsotropyCase, "H is not the full stability group at its unit");
  }
  std::vector<Index> image;
  std::vector<bool> hit(g.size(), false);
  for (Index e = 0; e < data.orbit_count(); ++e) {
    auto [z, y] = data.representative(e);
    const Index zy = g.compose(z, g.inverse(y));
    if (hit[zy]) fail(ErrorKind::AxiomViolation, "[z,y] -> z y^{-1} is not injective");
    hit[zy] = true;
    image.push_back(zy);
  }
  return image;
}

AlgebraElement transfer(const ImprimitivityData& data, const AlgebraElement& F) {
  require_same_base(F.algebra(), data.hg_algebra(), "transfer");
  const auto image = pi_map(data);
  AlgebraElement f(data.g_algebra());
  for (Index e = 0; e < image.size(); ++e) f[image[e]] = F[e];
  return f;
}

}  // namespace gpdind
