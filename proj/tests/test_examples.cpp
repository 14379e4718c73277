// Small worked examples, mostly on Z/2, P_2 and Z/4 acting on Z/2.

#include <gtest/gtest.h>

#include <numeric>

#include "gpdind/induction.hpp"
#include "gpdind/spectrum.hpp"
#include "support.hpp"

using namespace gpdind;
using namespace testing_support;

namespace {

AlgebraPtr local_algebra(const AlgebraPtr& g_alg, const Subgroupoid& h) {
  return make_algebra(h.groupoid(), g_alg->haar().restrict_to(h));
}

Representation character_rep(const AlgebraPtr& a, std::vector<Complex> values) {
  std::vector<Matrix> ops;
  for (auto v : values) ops.push_back(Matrix::Constant(1, 1, v));
  return Representation(a, 1, std::move(ops));
}

bool same_vector(const BimoduleVector& a, const BimoduleVector& b, double tol = 1e-12) {
  if (a.size() != b.size()) return false;
  for (Index p = 0; p < a.size(); ++p) {
    if (std::abs(a[p] - b[p]) > tol) return false;
  }
  return true;
}

// Brute-force isomorphism test between two small groupoids.
bool isomorphic(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  if (a.size() != b.size()) return false;
  std::vector<Index> perm(a.size());
  std::iota(perm.begin(), perm.end(), Index{0});
  do {
    bool ok = true;
    for (Index x = 0; ok && x < a.size(); ++x) {
      for (Index y = 0; ok && y < a.size(); ++y) {
        if (a.composable(x, y) != b.composable(perm[x], perm[y])) ok = false;
        else if (a.composable(x, y) && perm[a.compose(x, y)] != b.compose(perm[x], perm[y])) ok = false;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

// groupoid-core -------------------------------------------------------------

TEST(Examples, OnePointActionIsTheGroup) {
  auto g = transformation_groupoid(cyclic_group(2), {"*"}, {{0}, {0}});
  EXPECT_TRUE(isomorphic(g, cyclic_group(2)));
}

TEST(Examples, Z4OnZ2Shape) {
  auto g = corpus("z4_on_z2").groupoid;
  EXPECT_EQ(g.size(), 8u);
  EXPECT_EQ(g.units().size(), 2u);
  for (Index u : g.units()) EXPECT_EQ(isotropy_group(g, u).members().size(), 2u);
}

TEST(Examples, SwapActionIsPairGroupoid) {
  auto g = corpus("z2_swap").groupoid;
  EXPECT_TRUE(isomorphic(g, pair_groupoid(2)));
  for (Index u : g.units()) EXPECT_EQ(isotropy_group(g, u).members().size(), 1u);
}

TEST(Examples, IsotropyOfPairAndGroup) {
  auto p = pair_groupoid(2);
  auto iso = isotropy_group(p, p.resolve_unit("1"));
  ASSERT_EQ(iso.members().size(), 1u);
  EXPECT_EQ(p.name(iso.members()[0]), "(1,1)");
  auto s3 = symmetric_group_3();
  EXPECT_EQ(isotropy_group(s3, s3.units()[0]).members().size(), 6u);
}

TEST(Examples, SFiberCarriers) {
  auto p = pair_groupoid(2);
  SFiberSpace fiber(p, isotropy_group(p, p.resolve_unit("1")));
  std::vector<std::string> names;
  for (Index x : fiber.carrier()) names.push_back(p.name(x));
  EXPECT_EQ(names, (std::vector<std::string>{"(1,1)", "(2,1)"}));
  EXPECT_EQ(SFiberSpace(p, full_subgroupoid(p)).size(), p.size());
}

TEST(Examples, HaarScalingAndSingleChange) {
  auto g = corpus("z4_on_z2").groupoid;
  EXPECT_TRUE(check_invariance(g, HaarSystem::counting(g).scaled(Rational(2))));
  for (Index x = 0; x < g.size(); ++x) {
    if (g.range_fiber(g.range(x)).size() < 2) continue;
    std::vector<double> w(g.size(), 1.0);
    w[x] = 2.0;
    EXPECT_FALSE(check_invariance(g, HaarSystem::from_doubles(w))) << g.name(x);
  }
}

// convolution-algebra --------------------------------------------------------

TEST(Examples, Z2Convolution) {
  auto a = make_algebra(cyclic_group(2));
  std::mt19937_64 rng(1);
  auto f = random_element(a, rng);
  EXPECT_LT(convolve(AlgebraElement::delta(a, 0), f).distance(f), 1e-15);
  AlgebraElement plus(a, {1.0, 1.0});
  AlgebraElement minus(a, {1.0, -1.0});
  auto z = convolve(plus, minus);
  EXPECT_EQ(z[0], Complex(0.0));
  EXPECT_EQ(z[1], Complex(0.0));
  EXPECT_EQ(involution(AlgebraElement::delta(a, 1))[1], Complex(1.0));
}

TEST(Examples, Norms) {
  auto a = make_algebra(cyclic_group(2));
  EXPECT_DOUBLE_EQ(i_norm(AlgebraElement(a, {3.0, 4.0})), 7.0);
  EXPECT_NEAR(cstar_norm(AlgebraElement(a, {1.0, 1.0})), 2.0, 1e-12);
  auto p = algebra_of(corpus("z4_on_z2"));
  for (Index x = 0; x < p->size(); ++x) {
    EXPECT_NEAR(i_norm(AlgebraElement::delta(p, x)), 1.0, 1e-15);
    EXPECT_NEAR(cstar_norm(AlgebraElement::delta(p, x)), 1.0, 1e-12);
  }
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    auto f = random_element(p, rng);
    auto g = random_element(p, rng);
    EXPECT_LE(i_norm(convolve(f, g)), i_norm(f) * i_norm(g) * (1 + 1e-12));
  }
}

TEST(Examples, RegularRepresentationMatrices) {
  auto a = make_algebra(pair_groupoid(2));
  const auto& g = a->groupoid();
  const Index u = g.resolve_unit("1");
  auto reg = regular_representation(a, u);
  ASSERT_EQ(reg.dim(), 2u);
  // basis of l^2(G_1): (1,1), (2,1); delta_(i,j) sends (j,1) to (i,1)
  for (Index x = 0; x < g.size(); ++x) {
    Matrix want = Matrix::Zero(2, 2);
    const std::string& n = g.name(x);
    want(n[1] - '1', n[3] - '1') = 1.0;
    EXPECT_EQ(reg.op(x), want) << n;
  }
  auto z2 = make_algebra(cyclic_group(2));
  auto r2 = regular_representation(z2, 0);
  Matrix swap(2, 2);
  swap << 0, 1, 1, 0;
  EXPECT_EQ(r2.op(1), swap);
  auto r3 = regular_representation(a, g.resolve_unit("2"));
  for (Index v : g.units()) {
    const Matrix& m = r3.op(v);
    EXPECT_TRUE(m.isDiagonal());
    EXPECT_EQ(m * m, m);
  }
}

TEST(Examples, SignCharacterValidates) {
  auto a = make_algebra(cyclic_group(2));
  EXPECT_TRUE(character_rep(a, {1.0, -1.0}).report().ok);
  EXPECT_TRUE(is_irreducible(character_rep(a, {1.0, -1.0})));
  EXPECT_FALSE(is_irreducible(regular_representation(a, 0)));
}

// imprimitivity --------------------------------------------------------------

TEST(Examples, ImprimitivityGroupoidShapes) {
  auto z2 = make_algebra(cyclic_group(2));
  auto full = build_imprimitivity(z2, full_subgroupoid(z2->groupoid()));
  EXPECT_TRUE(isomorphic(full->hg_algebra()->groupoid(), cyclic_group(2)));
  // [x,y] -> xy^{-1} respects composition
  const auto& hg = full->hg_algebra()->groupoid();
  const auto& g = z2->groupoid();
  auto image = [&](Index o) {
    auto [x, y] = full->representative(o);
    return g.compose(x, g.inverse(y));
  };
  for (Index a = 0; a < hg.size(); ++a) {
    for (Index b = 0; b < hg.size(); ++b) EXPECT_EQ(image(hg.compose(a, b)), g.compose(image(a), image(b)));
  }

  auto trivial = build_imprimitivity(z2, unit_subgroupoid(z2->groupoid()));
  EXPECT_TRUE(isomorphic(trivial->hg_algebra()->groupoid(), pair_groupoid(2)));

  auto p2 = make_algebra(pair_groupoid(2));
  auto at1 = build_imprimitivity(p2, isotropy_group(p2->groupoid(), p2->groupoid().resolve_unit("1")));
  EXPECT_EQ(at1->orbit_count(), 4u);
  EXPECT_TRUE(isomorphic(at1->hg_algebra()->groupoid(), pair_groupoid(2)));
}

TEST(Examples, LeftActionOfOrbitIndicator) {
  auto z2 = make_algebra(cyclic_group(2));
  auto d = build_imprimitivity(z2, unit_subgroupoid(z2->groupoid()));
  for (Index o = 0; o < d->orbit_count(); ++o) {
    auto [x, y] = d->representative(o);
    auto got = d->left_action(AlgebraElement::delta(d->hg_algebra(), o), d->delta(y));
    EXPECT_TRUE(same_vector(got, d->delta(x)));
  }
  auto zero = d->left_action(AlgebraElement(d->hg_algebra()), d->delta(0));
  EXPECT_TRUE(same_vector(zero, d->zero_vector()));
}

TEST(Examples, RightActionOnDeltas) {
  auto doc = corpus("z4_on_z2");
  auto a = algebra_of(doc);
  const auto& g = doc.groupoid;
  auto h = isotropy_bundle(g);
  auto d = build_imprimitivity(a, h);
  std::mt19937_64 rng(3);
  for (Index z : d->fiber().carrier()) {
    for (Index hl = 0; hl < h.groupoid().size(); ++hl) {
      const Index hp = h.to_parent(hl);
      auto got = d->right_action(d->delta(z), AlgebraElement::delta(d->h_algebra(), hl));
      auto want = g.source(z) == g.range(hp) ? d->delta(g.compose(z, hp)) : d->zero_vector();
      EXPECT_TRUE(same_vector(got, want));
    }
  }
  // sum of unit deltas of H acts as the identity
  AlgebraElement one(d->h_algebra());
  for (Index v : h.groupoid().units()) one[v] = 1.0;
  auto phi = random_vector(*d, rng);
  EXPECT_TRUE(same_vector(d->right_action(phi, one), phi));
  auto g1 = random_element(d->h_algebra(), rng);
  auto g2 = random_element(d->h_algebra(), rng);
  EXPECT_TRUE(same_vector(d->right_action(d->right_action(phi, g1), g2), d->right_action(phi, convolve(g1, g2)), 1e-10));
}

TEST(Examples, InnerProductsOfDeltas) {
  auto doc = corpus("z4_on_z2");
  auto a = algebra_of(doc);
  const auto& g = doc.groupoid;
  auto h = isotropy_bundle(g);
  auto d = build_imprimitivity(a, h);
  for (Index z : d->fiber().carrier()) {
    for (Index hl = 0; hl < h.groupoid().size(); ++hl) {
      const Index hp = h.to_parent(hl);
      if (g.source(z) != g.range(hp)) continue;
      auto r = d->rip(d->delta(z), d->delta(g.compose(z, hp)));
      EXPECT_LT(r.distance(AlgebraElement::delta(d->h_algebra(), hl)), 1e-15);
    }
  }
  auto z2 = make_algebra(cyclic_group(2));
  auto full = build_imprimitivity(z2, full_subgroupoid(z2->groupoid()));
  auto l = full->lip(full->delta(0), full->delta(0));
  EXPECT_NEAR(std::abs(l[full->orbit(0, 0)] - 1.0), 0.0, 1e-15);
}

TEST(Examples, GActionIsConvolutionRestricted) {
  auto doc = corpus("s3_on_3");
  auto a = algebra_of(doc);
  const auto& g = doc.groupoid;
  auto d = build_imprimitivity(a, isotropy_group(g, g.units()[0]));
  std::mt19937_64 rng(4);
  auto f = random_element(a, rng);
  auto phi = random_vector(*d, rng);
  AlgebraElement ext(a);
  for (Index p = 0; p < d->carrier_size(); ++p) ext[d->fiber().carrier()[p]] = phi[p];
  auto conv = convolve(f, ext);
  auto got = d->f_action(f, phi);
  for (Index p = 0; p < d->carrier_size(); ++p) EXPECT_NEAR(std::abs(got[p] - conv[d->fiber().carrier()[p]]), 0.0, 1e-12);
  for (Index u : g.units()) {
    auto r = d->f_action(AlgebraElement::delta(a, u), phi);
    for (Index p = 0; p < d->carrier_size(); ++p) {
      EXPECT_EQ(r[p], g.range(d->fiber().carrier()[p]) == u ? phi[p] : Complex(0.0));
    }
  }
}

TEST(Examples, PiInjectiveOnZ4OnZ2) {
  auto doc = corpus("z4_on_z2");
  auto d = build_imprimitivity(algebra_of(doc), isotropy_group(doc.groupoid, doc.groupoid.resolve_unit("0")));
  auto pi = pi_map(*d);
  std::set<Index> image(pi.begin(), pi.end());
  EXPECT_EQ(image.size(), pi.size());
  EXPECT_EQ(pi.size(), 8u);  // transitive: every arrow is hit
}

// induction ------------------------------------------------------------------

TEST(Examples, GroupInducedFromItself) {
  auto z2 = make_algebra(cyclic_group(2));
  auto d = build_imprimitivity(z2, full_subgroupoid(z2->groupoid()));
  auto sign = character_rep(d->h_algebra(), {1.0, -1.0});
  auto ind = induce(d, sign);
  ASSERT_EQ(ind.rep.dim(), 1u);
  EXPECT_NEAR(std::abs(ind.rep.op(0)(0, 0) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(ind.rep.op(1)(0, 0) + 1.0), 0.0, 1e-12);

  auto s3 = make_algebra(symmetric_group_3());
  auto ds = build_imprimitivity(s3, full_subgroupoid(s3->groupoid()));
  for (const auto& l : group_irreps(ds->h_algebra())) {
    EXPECT_LT(character_distance(character(induce(ds, l).rep), character(l)), 1e-9);
    auto v = main_theorem_check(s3, 0, l);
    EXPECT_TRUE(v.pass);
    EXPECT_EQ(v.induced_dim, l.dim());
  }
}

TEST(Examples, GroupInducedFromUnits) {
  auto z2 = make_algebra(cyclic_group(2));
  auto d = build_imprimitivity(z2, unit_subgroupoid(z2->groupoid()));
  auto space = induced_space(d, trivial_representation(d->h_algebra()));
  EXPECT_EQ(space.rank, 2u);
  EXPECT_LT((space.gram - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Examples, ZeroVectorIsNull) {
  auto doc = corpus("p2");
  auto a = algebra_of(doc);
  auto d = build_imprimitivity(a, isotropy_group(doc.groupoid, doc.groupoid.resolve_unit("1")));
  auto space = induced_space(d, trivial_representation(d->h_algebra()));
  const auto& gram = space.gram;
  // the zero combination has zero Gram norm; the deltas are orthonormal
  EXPECT_EQ(space.rank, 2u);
  EXPECT_LT((gram - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
  Vector zero = Vector::Zero(2);
  EXPECT_EQ(std::abs(zero.dot(gram * zero)), 0.0);
}

TEST(Examples, XindIdentityZeroAndProducts) {
  auto doc = corpus("z4_on_z2");
  auto a = algebra_of(doc);
  const Index u = doc.groupoid.resolve_unit("0");
  auto iso = isotropy_algebra(a, u);
  auto d = build_imprimitivity(a, isotropy_group(doc.groupoid, u), iso);
  auto space = induced_space(d, group_irreps(iso)[1]);
  const auto r = static_cast<Eigen::Index>(space.rank);

  // F = 1 on the diagonal orbits [z,z], divided by the weight lambda_{s(z)}(z)
  AlgebraElement diag(d->hg_algebra());
  const auto& g = doc.groupoid;
  for (Index z : d->fiber().carrier()) diag[d->orbit(z, z)] = 1.0 / a->haar().inverted_weight(g, z);
  EXPECT_LT((xind(diag, space) - Matrix::Identity(r, r)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(xind(AlgebraElement(d->hg_algebra()), space), Matrix::Zero(r, r));

  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    auto f1 = random_element(d->hg_algebra(), rng);
    auto f2 = random_element(d->hg_algebra(), rng);
    EXPECT_LT((xind(convolve(f1, f2), space) - xind(f1, space) * xind(f2, space)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Examples, InducedOperatorsAreBounded) {
  std::mt19937_64 rng(6);
  for (const auto& file : corpus_files()) {
    auto doc = load_groupoid_document(file);
    auto a = algebra_of(doc);
    const Index u = doc.groupoid.units()[0];
    auto iso = isotropy_algebra(a, u);
    auto d = build_imprimitivity(a, isotropy_group(doc.groupoid, u), iso);
    auto ind = induce(d, group_irreps(iso).back());
    for (int t = 0; t < 10; ++t) {
      auto f = random_element(a, rng);
      const double n = operator_norm(rep_apply(ind.rep, f));
      EXPECT_LE(n, cstar_norm(f) + 1e-9) << file;
      EXPECT_LE(n, i_norm(f) + 1e-9) << file;
    }
  }
}

TEST(Examples, ThetaWithEqualSubgroupoidsIsRightAction) {
  auto doc = corpus("z4_on_z2");
  auto a = algebra_of(doc);
  auto h = isotropy_bundle(doc.groupoid);
  auto h_alg = local_algebra(a, h);
  auto outer = build_imprimitivity(a, h, h_alg);
  auto inner = build_imprimitivity(h_alg, full_subgroupoid(h.groupoid()), h_alg);
  std::mt19937_64 rng(7);
  auto phi = random_vector(*outer, rng);
  auto psi = random_vector(*inner, rng);
  // inner carrier is all of H in local order
  AlgebraElement g(h_alg, psi.coeffs);
  EXPECT_TRUE(same_vector(theta(*outer, *inner, *outer, phi, psi), outer->right_action(phi, g), 1e-12));
}

TEST(Examples, ThetaIsIsometricAndOnto) {
  auto doc = corpus("s3_on_3");
  auto a = algebra_of(doc);
  const auto& g = doc.groupoid;
  auto h = unit_subgroupoid(g);
  auto k = isotropy_bundle(g);
  auto h_alg = local_algebra(a, h);
  auto k_alg = local_algebra(a, k);
  std::vector<Index> local;
  for (Index x : h.members()) local.push_back(k.to_local(x));
  auto outer = build_imprimitivity(a, k, k_alg);
  auto inner = build_imprimitivity(k_alg, Subgroupoid(k.groupoid(), local), h_alg);
  auto direct = build_imprimitivity(a, h, h_alg);

  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    auto p1 = random_vector(*outer, rng);
    auto p2 = random_vector(*outer, rng);
    auto s1 = random_vector(*inner, rng);
    auto s2 = random_vector(*inner, rng);
    auto lhs = direct->rip(theta(*outer, *inner, *direct, p1, s1), theta(*outer, *inner, *direct, p2, s2));
    // internal tensor product: <s1, <p1,p2>_K . s2>_H
    auto rhs = inner->rip(s1, inner->f_action(outer->rip(p1, p2), s2));
    EXPECT_LT(lhs.distance(rhs), 1e-10);
  }

  Matrix images(static_cast<Eigen::Index>(direct->carrier_size()),
                static_cast<Eigen::Index>(outer->carrier_size() * inner->carrier_size()));
  Eigen::Index col = 0;
  for (Index x : outer->fiber().carrier()) {
    for (Index kk : inner->fiber().carrier()) {
      auto t = theta(*outer, *inner, *direct, outer->delta(x), inner->delta(kk));
      for (Index p = 0; p < t.size(); ++p) images(static_cast<Eigen::Index>(p), col) = t[p];
      ++col;
    }
  }
  EXPECT_EQ(numerical_rank(images, 1e-12), static_cast<Eigen::Index>(direct->carrier_size()));
}

TEST(Examples, StagesWithEqualSubgroupoids) {
  for (const auto& stem : {"p2", "z4_on_z2", "s3_on_3"}) {
    auto doc = corpus(stem);
    auto a = algebra_of(doc);
    auto h = isotropy_bundle(doc.groupoid);
    auto h_alg = local_algebra(a, h);
    auto r = stages_check(a, h, h_alg, h, trivial_representation(h_alg));
    EXPECT_LE(r.intertwining_residual, 1e-12) << stem;
    EXPECT_LE(r.unitarity_defect, 1e-12) << stem;
  }
}

// spectrum -------------------------------------------------------------------

TEST(Examples, CommutantOfSums) {
  auto z2 = make_algebra(cyclic_group(2));
  auto triv = character_rep(z2, {1.0, 1.0});
  auto sign = character_rep(z2, {1.0, -1.0});
  EXPECT_EQ(commutant(direct_sum(triv, sign)).dimension, 2u);
  EXPECT_EQ(commutant(direct_sum(sign, sign)).dimension, 4u);
}

TEST(Examples, Z4CharactersArePowersOfI) {
  auto irreps = group_irreps(make_algebra(cyclic_group(4)));
  ASSERT_EQ(irreps.size(), 4u);
  std::set<std::pair<long, long>> gen_values;
  for (const auto& r : irreps) {
    auto c = r.op(1)(0, 0);
    EXPECT_NEAR(std::abs(c), 1.0, 1e-12);
    gen_values.emplace(std::lround(c.real()), std::lround(c.imag()));
    for (Index k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(r.op(k)(0, 0) - std::pow(c, static_cast<int>(k))), 0.0, 1e-10);
  }
  EXPECT_EQ(gen_values, (std::set<std::pair<long, long>>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}));
}

TEST(Examples, PairGroupoidTheorem) {
  auto doc = corpus("p2");
  auto a = algebra_of(doc);
  const Index u = doc.groupoid.resolve_unit("1");
  auto v = main_theorem_check(a, u, group_irreps(isotropy_algebra(a, u))[0]);
  EXPECT_TRUE(v.pass);
  EXPECT_EQ(v.induced_dim, 2u);
  EXPECT_LE(v.transfer_residual, 1e-10);
}
