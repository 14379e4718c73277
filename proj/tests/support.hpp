#pragma once

#include <algorithm>
#include <complex>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gpdind/algebra.hpp"
#include "gpdind/document.hpp"
#include "gpdind/imprimitivity.hpp"

namespace testing_support {

using namespace gpdind;

inline std::filesystem::path corpus_dir() { return GPDIND_CORPUS_DIR; }
inline std::filesystem::path data_dir() { return GPDIND_TEST_DATA; }

inline GroupoidDocument corpus(const std::string& stem) {
  return load_groupoid_document(corpus_dir() / (stem + ".json"));
}

inline std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir())) {
    if (e.path().extension() == ".json") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline AlgebraPtr algebra_of(const GroupoidDocument& doc) {
  return make_algebra(doc.groupoid, doc.haar_or_counting());
}

inline Complex random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(rng), n(rng)};
}

inline AlgebraElement random_element(const AlgebraPtr& a, std::mt19937_64& rng) {
  AlgebraElement f(a);
  for (Index x = 0; x < a->size(); ++x) f[x] = random_complex(rng);
  return f;
}

inline BimoduleVector random_vector(const ImprimitivityData& d, std::mt19937_64& rng) {
  auto v = d.zero_vector();
  for (auto& c : v.coeffs) c = random_complex(rng);
  return v;
}

// Oracles. These go through the raw tables only.

inline Index brute_compose(const FiniteGroupoid& g, Index x, Index y) {
  return g.source(x) == g.range(y) ? g.compose(x, y) : kNone;
}

// (f*h)(x) = sum over y with r(y) = r(x) of f(y) h(y^{-1}x) w(y)
inline std::vector<Complex> brute_convolve(const FiniteGroupoid& g, std::span<const double> w,
                                           std::span<const Complex> f, std::span<const Complex> h) {
  std::vector<Complex> out(g.size());
  for (Index x = 0; x < g.size(); ++x) {
    for (Index y = 0; y < g.size(); ++y) {
      if (g.range(y) != g.range(x)) continue;
      Index z = brute_compose(g, g.inverse(y), x);
      out[x] += f[y] * h[z] * w[y];
    }
  }
  return out;
}

// Number of orbits of {(x,y): s(x) = s(y) in H^(0)} under the diagonal right H-action.
inline std::size_t brute_orbit_count(const FiniteGroupoid& g, const std::vector<Index>& h) {
  std::set<Index> h_units;
  for (Index k : h) h_units.insert(g.source(k));
  std::set<std::set<std::pair<Index, Index>>> orbits;
  for (Index x = 0; x < g.size(); ++x) {
    for (Index y = 0; y < g.size(); ++y) {
      if (g.source(x) != g.source(y) || !h_units.count(g.source(x))) continue;
      std::set<std::pair<Index, Index>> orbit;
      for (Index k : h) {
        if (g.range(k) == g.source(x)) orbit.emplace(g.compose(x, k), g.compose(y, k));
      }
      orbits.insert(orbit);
    }
  }
  return orbits.size();
}

// Character of an induced group representation:
// chi(g) = 1/|H| sum_{x in G, x^{-1} g x in H} chi_L(x^{-1} g x).
inline std::vector<Complex> frobenius_character(const FiniteGroupoid& g, const std::vector<Index>& h,
                                                const std::vector<Complex>& chi_l) {
  std::vector<Complex> out(g.size());
  for (Index a = 0; a < g.size(); ++a) {
    for (Index x = 0; x < g.size(); ++x) {
      Index c = g.compose(g.compose(g.inverse(x), a), x);
      auto it = std::find(h.begin(), h.end(), c);
      if (it != h.end()) out[a] += chi_l[static_cast<std::size_t>(it - h.begin())];
    }
    out[a] /= static_cast<double>(h.size());
  }
  return out;
}

}  // namespace testing_support
