#include "gpdind/groupoid.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "gpdind/error.hpp"

namespace gpdind {

namespace {

std::string quoted(const std::string& s) { return "'" + s + "'"; }

}  // namespace

FiniteGroupoid::FiniteGroupoid(Tables tables) : t_(std::move(tables)) {
  const std::size_t n = t_.names.size();
  if (t_.range.size() != n || t_.source.size() != n || t_.inverse.size() != n ||
      t_.compose.size() != n * n) {
    fail(ErrorKind::MalformedSpec, "groupoid tables have inconsistent sizes");
  }
  if (t_.unit_labels.empty()) t_.unit_labels.resize(n);
  if (t_.unit_labels.size() != n) fail(ErrorKind::MalformedSpec, "unit label table has wrong size");
  for (Index x = 0; x < n; ++x) {
    if (!by_name_.emplace(t_.names[x], x).second) {
      fail(ErrorKind::MalformedSpec, "duplicate element name " + quoted(t_.names[x]));
    }
  }
  is_unit_.assign(n, false);
  for (Index u : t_.units) {
    if (u >= n) fail(ErrorKind::MalformedSpec, "unit index out of range");
    if (is_unit_[u]) fail(ErrorKind::MalformedSpec, "unit " + quoted(t_.names[u]) + " listed twice");
    is_unit_[u] = true;
  }
  validate();

  range_fibers_.assign(n, {});
  source_fibers_.assign(n, {});
  for (Index x = 0; x < n; ++x) {
    range_fibers_[t_.range[x]].push_back(x);
    source_fibers_[t_.source[x]].push_back(x);
  }
  for (Index u : t_.units) {
    if (!t_.unit_labels[u].empty() && t_.unit_labels[u] != t_.names[u]) {
      by_name_.try_emplace(t_.unit_labels[u], u);
    }
  }
}

void FiniteGroupoid::validate() const {
  const std::size_t n = size();
  auto nm = [&](Index x) { return quoted(t_.names[x]); };

  for (Index x = 0; x < n; ++x) {
    if (t_.range[x] == kNone) fail(ErrorKind::AxiomViolation, "element " + nm(x) + " has no range");
    if (t_.source[x] == kNone) fail(ErrorKind::AxiomViolation, "element " + nm(x) + " has no source");
    if (t_.inverse[x] == kNone) fail(ErrorKind::AxiomViolation, "element " + nm(x) + " has no inverse");
    if (t_.range[x] >= n || t_.source[x] >= n || t_.inverse[x] >= n) {
      fail(ErrorKind::MalformedSpec, "table entry out of range for element " + nm(x));
    }
    if (!is_unit_[t_.range[x]]) fail(ErrorKind::AxiomViolation, "range of " + nm(x) + " is not a unit");
    if (!is_unit_[t_.source[x]]) fail(ErrorKind::AxiomViolation, "source of " + nm(x) + " is not a unit");
  }
  for (Index u : t_.units) {
    if (t_.range[u] != u || t_.source[u] != u || t_.inverse[u] != u) {
      fail(ErrorKind::AxiomViolation, "unit " + nm(u) + " is not fixed by r, s and inverse");
    }
  }
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      Index xy = compose(x, y);
      bool defined = xy != kNone;
      if (defined && xy >= n) fail(ErrorKind::MalformedSpec, "composition entry out of range");
      if (defined != composable(x, y)) {
        fail(ErrorKind::AxiomViolation,
             "composition of (" + nm(x) + ", " + nm(y) + ") is " +
                 (defined ? "defined although s(x) != r(y)" : "missing although s(x) = r(y)"));
      }
      if (defined && (t_.range[xy] != t_.range[x] || t_.source[xy] != t_.source[y])) {
        fail(ErrorKind::AxiomViolation,
             "product of (" + nm(x) + ", " + nm(y) + ") has the wrong range or source");
      }
    }
  }
  for (Index x = 0; x < n; ++x) {
    if (compose(t_.range[x], x) != x || compose(x, t_.source[x]) != x) {
      fail(ErrorKind::AxiomViolation, "units do not act as identities on " + nm(x));
    }
    Index xi = t_.inverse[x];
    if (t_.range[xi] != t_.source[x]) {
      fail(ErrorKind::AxiomViolation, "r(inverse(" + nm(x) + ")) != s(" + nm(x) + ")");
    }
    if (compose(xi, x) != t_.source[x] || compose(x, xi) != t_.range[x]) {
      fail(ErrorKind::AxiomViolation, "inverse of " + nm(x) + " is not a two-sided inverse");
    }
  }
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      Index xy = compose(x, y);
      if (xy == kNone) continue;
      for (Index z = 0; z < n; ++z) {
        Index yz = compose(y, z);
        if (yz == kNone) continue;
        if (compose(xy, z) != compose(x, yz)) {
          fail(ErrorKind::AxiomViolation, "associativity fails on triple (" + nm(x) + ", " + nm(y) +
                                              ", " + nm(z) + ")");
        }
      }
    }
  }
}

std::optional<Index> FiniteGroupoid::find(std::string_view name) const {
  // by_name_ also carries unit labels; only exact element names count here.
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end() || t_.names[it->second] != name) return std::nullopt;
  return it->second;
}

const std::string& FiniteGroupoid::unit_label(Index unit) const {
  const auto& label = t_.unit_labels[unit];
  return label.empty() ? t_.names[unit] : label;
}

Index FiniteGroupoid::resolve_unit(std::string_view text) const {
  auto it = by_name_.find(std::string(text));
  if (it == by_name_.end() || !is_unit_[it->second]) {
    fail(ErrorKind::NotAUnit, "'" + std::string(text) + "' does not name a unit");
  }
  return it->second;
}

// Subgroupoid ----------------------------------------------------------------

namespace {

std::vector<Index> checked_members(const FiniteGroupoid& parent, std::vector<Index> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty()) fail(ErrorKind::AxiomViolation, "subgroupoid has no elements");
  if (members.back() >= parent.size()) fail(ErrorKind::MalformedSpec, "subgroupoid member out of range");
  std::vector<bool> in(parent.size(), false);
  for (Index x : members) in[x] = true;
  for (Index x : members) {
    if (!in[parent.inverse(x)]) {
      fail(ErrorKind::AxiomViolation, "subgroupoid is not closed under inverse at '" + parent.name(x) + "'");
    }
    if (!in[parent.range(x)] || !in[parent.source(x)]) {
      fail(ErrorKind::AxiomViolation, "subgroupoid misses a unit of '" + parent.name(x) + "'");
    }
    for (Index y : members) {
      Index xy = parent.compose(x, y);
      if (xy != kNone && !in[xy]) {
        fail(ErrorKind::AxiomViolation, "subgroupoid is not closed under composition at ('" +
                                            parent.name(x) + "', '" + parent.name(y) + "')");
      }
    }
  }
  return members;
}

std::vector<Index> parent_units_in(const FiniteGroupoid& parent, const std::vector<Index>& members) {
  std::vector<Index> units;
  for (Index x : members) {
    if (parent.is_unit(x)) units.push_back(x);
  }
  return units;
}

std::vector<Index> local_index_map(std::size_t parent_size, const std::vector<Index>& members) {
  std::vector<Index> to_local(parent_size, kNone);
  for (Index i = 0; i < members.size(); ++i) to_local[members[i]] = i;
  return to_local;
}

FiniteGroupoid local_groupoid(const FiniteGroupoid& parent, const std::vector<Index>& members,
                              const std::vector<Index>& to_local) {
  const std::size_t m = members.size();
  FiniteGroupoid::Tables t;
  t.compose.assign(m * m, kNone);
  for (Index i = 0; i < m; ++i) {
    Index x = members[i];
    t.names.push_back(parent.name(x));
    t.unit_labels.push_back(parent.is_unit(x) ? parent.unit_label(x) : std::string());
    t.range.push_back(to_local[parent.range(x)]);
    t.source.push_back(to_local[parent.source(x)]);
    t.inverse.push_back(to_local[parent.inverse(x)]);
    if (parent.is_unit(x)) t.units.push_back(i);
    for (Index j = 0; j < m; ++j) {
      Index xy = parent.compose(x, members[j]);
      if (xy != kNone) t.compose[i * m + j] = to_local[xy];
    }
  }
  return FiniteGroupoid(std::move(t));
}

}  // namespace

Subgroupoid::Subgroupoid(const FiniteGroupoid& parent, std::vector<Index> members)
    : members_(checked_members(parent, std::move(members))),
      units_(parent_units_in(parent, members_)),
      to_local_(local_index_map(parent.size(), members_)),
      local_(local_groupoid(parent, members_, to_local_)) {}

bool Subgroupoid::is_subset_of(const Subgroupoid& other) const {
  if (other.parent_size() != parent_size()) return false;
  return std::all_of(members_.begin(), members_.end(), [&](Index x) { return other.contains(x); });
}

// SFiberSpace ----------------------------------------------------------------

SFiberSpace::SFiberSpace(const FiniteGroupoid& g, const Subgroupoid& h) : position_(g.size(), kNone) {
  if (h.parent_size() != g.size()) fail(ErrorKind::BaseMismatch, "subgroupoid belongs to another groupoid");
  for (Index x = 0; x < g.size(); ++x) {
    if (h.contains_unit(g.source(x))) {
      position_[x] = carrier_.size();
      carrier_.push_back(x);
    }
  }
  for (Index x : carrier_) {
    for (Index k : g.range_fiber(g.source(x))) {
      if (!h.contains(k)) continue;
      Index xk = g.compose(x, k);
      if (position_[xk] == kNone) {
        fail(ErrorKind::AxiomViolation, "G_sH is not invariant under the right H-action");
      }
      if (xk == x && !g.is_unit(k)) {
        fail(ErrorKind::AxiomViolation, "right H-action is not free at '" + g.name(x) + "'");
      }
    }
  }
}

// Constructions --------------------------------------------------------------

FiniteGroupoid group_from_cayley(std::vector<std::string> names,
                                 const std::vector<std::vector<Index>>& table) {
  const std::size_t n = names.size();
  if (n == 0) fail(ErrorKind::MalformedSpec, "group has no elements");
  if (table.size() != n) fail(ErrorKind::MalformedSpec, "Cayley table has the wrong number of rows");
  for (const auto& row : table) {
    if (row.size() != n) fail(ErrorKind::MalformedSpec, "Cayley table row has the wrong length");
    for (Index v : row) {
      if (v >= n) fail(ErrorKind::MalformedSpec, "Cayley table entry out of range");
    }
  }
  Index e = kNone;
  for (Index c = 0; c < n && e == kNone; ++c) {
    bool ok = true;
    for (Index x = 0; x < n && ok; ++x) ok = table[c][x] == x && table[x][c] == x;
    if (ok) e = c;
  }
  if (e == kNone) fail(ErrorKind::AxiomViolation, "Cayley table has no identity element");

  FiniteGroupoid::Tables t;
  t.names = std::move(names);
  t.units = {e};
  t.range.assign(n, e);
  t.source.assign(n, e);
  t.inverse.assign(n, kNone);
  t.compose.resize(n * n);
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      t.compose[x * n + y] = table[x][y];
      if (table[x][y] == e && table[y][x] == e) t.inverse[x] = y;
    }
  }
  return FiniteGroupoid(std::move(t));
}

FiniteGroupoid cyclic_group(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::vector<Index>> table(n, std::vector<Index>(n));
  for (Index a = 0; a < n; ++a) {
    names.push_back(std::to_string(a));
    for (Index b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  }
  return group_from_cayley(std::move(names), table);
}

FiniteGroupoid symmetric_group_3() {
  using Perm = std::array<int, 3>;
  // Images of (1,2,3), zero-based.
  const std::vector<std::pair<std::string, Perm>> perms = {
      {"e", {0, 1, 2}},    {"(12)", {1, 0, 2}},  {"(13)", {2, 1, 0}},
      {"(23)", {0, 2, 1}}, {"(123)", {1, 2, 0}}, {"(132)", {2, 0, 1}},
  };
  std::vector<std::string> names;
  for (const auto& p : perms) names.push_back(p.first);
  std::vector<std::vector<Index>> table(6, std::vector<Index>(6));
  for (Index a = 0; a < 6; ++a) {
    for (Index b = 0; b < 6; ++b) {
      Perm ab{};
      for (int i = 0; i < 3; ++i) ab[i] = perms[a].second[perms[b].second[i]];
      for (Index c = 0; c < 6; ++c) {
        if (perms[c].second == ab) table[a][b] = c;
      }
    }
  }
  return group_from_cayley(std::move(names), table);
}

FiniteGroupoid pair_groupoid(const std::vector<std::string>& points) {
  const std::size_t n = points.size();
  if (n == 0) fail(ErrorKind::MalformedSpec, "pair groupoid needs at least one point");
  auto idx = [n](Index i, Index j) { return i * n + j; };
  FiniteGroupoid::Tables t;
  t.compose.assign(n * n * n * n, kNone);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      t.names.push_back("(" + points[i] + "," + points[j] + ")");
      t.unit_labels.push_back(i == j ? points[i] : std::string());
      t.range.push_back(idx(i, i));
      t.source.push_back(idx(j, j));
      t.inverse.push_back(idx(j, i));
      for (Index k = 0; k < n; ++k) t.compose[idx(i, j) * n * n + idx(j, k)] = idx(i, k);
    }
    t.units.push_back(idx(i, i));
  }
  return FiniteGroupoid(std::move(t));
}

FiniteGroupoid pair_groupoid(std::size_t n) {
  std::vector<std::string> points;
  for (std::size_t i = 1; i <= n; ++i) points.push_back(std::to_string(i));
  return pair_groupoid(points);
}

FiniteGroupoid transformation_groupoid(const FiniteGroupoid& group,
                                       const std::vector<std::string>& points,
                                       const std::vector<std::vector<Index>>& action) {
  if (!group.is_group()) fail(ErrorKind::NotAGroup, "acting groupoid has more than one unit");
  const std::size_t ng = group.size();
  const std::size_t m = points.size();
  if (m == 0) fail(ErrorKind::MalformedSpec, "transformation groupoid needs a nonempty space");
  if (action.size() != ng) fail(ErrorKind::MalformedSpec, "action table has the wrong number of rows");
  for (const auto& row : action) {
    if (row.size() != m) fail(ErrorKind::MalformedSpec, "action table row has the wrong length");
    for (Index v : row) {
      if (v >= m) fail(ErrorKind::MalformedSpec, "action table entry out of range");
    }
  }
  const Index e = group.units()[0];
  for (Index x = 0; x < m; ++x) {
    if (action[e][x] != x) {
      fail(ErrorKind::NotAnAction, "identity moves point '" + points[x] + "'");
    }
    for (Index g = 0; g < ng; ++g) {
      for (Index h = 0; h < ng; ++h) {
        if (action[g][action[h][x]] != action[group.compose(g, h)][x]) {
          fail(ErrorKind::NotAnAction, "g.(h.x) != (gh).x for g='" + group.name(g) + "', h='" +
                                           group.name(h) + "', x='" + points[x] + "'");
        }
      }
    }
  }

  auto idx = [m](Index g, Index x) { return g * m + x; };
  const std::size_t n = ng * m;
  FiniteGroupoid::Tables t;
  t.compose.assign(n * n, kNone);
  for (Index g = 0; g < ng; ++g) {
    for (Index x = 0; x < m; ++x) {
      t.names.push_back("(" + group.name(g) + "," + points[x] + ")");
      t.unit_labels.push_back(g == e ? points[x] : std::string());
      t.range.push_back(idx(e, action[g][x]));
      t.source.push_back(idx(e, x));
      t.inverse.push_back(idx(group.inverse(g), action[g][x]));
      // (g, h.x)(h, x) = (gh, x)
      for (Index h = 0; h < ng; ++h) {
        Index left = idx(g, action[h][x]);
        t.compose[left * n + idx(h, x)] = idx(group.compose(g, h), x);
      }
    }
  }
  for (Index x = 0; x < m; ++x) t.units.push_back(idx(e, x));
  return FiniteGroupoid(std::move(t));
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& a, std::string_view prefix_a,
                              const FiniteGroupoid& b, std::string_view prefix_b) {
  const std::size_t na = a.size();
  const std::size_t n = na + b.size();
  FiniteGroupoid::Tables t;
  t.compose.assign(n * n, kNone);
  auto add = [&](const FiniteGroupoid& part, std::string_view prefix, Index offset) {
    const std::string p = std::string(prefix) + ".";
    for (Index x = 0; x < part.size(); ++x) {
      t.names.push_back(p + part.name(x));
      t.unit_labels.push_back(part.is_unit(x) ? p + part.unit_label(x) : std::string());
      t.range.push_back(offset + part.range(x));
      t.source.push_back(offset + part.source(x));
      t.inverse.push_back(offset + part.inverse(x));
      for (Index y = 0; y < part.size(); ++y) {
        Index xy = part.compose(x, y);
        if (xy != kNone) t.compose[(offset + x) * n + offset + y] = offset + xy;
      }
    }
    for (Index u : part.units()) t.units.push_back(offset + u);
  };
  add(a, prefix_a, 0);
  add(b, prefix_b, na);
  return FiniteGroupoid(std::move(t));
}

// Distinguished subgroupoids ------------------------------------------------

Subgroupoid isotropy_group(const FiniteGroupoid& g, Index unit) {
  if (unit >= g.size() || !g.is_unit(unit)) {
    fail(ErrorKind::NotAUnit, "element is not a unit");
  }
  std::vector<Index> members;
  for (Index x : g.source_fiber(unit)) {
    if (g.range(x) == unit) members.push_back(x);
  }
  return Subgroupoid(g, std::move(members));
}

Subgroupoid isotropy_bundle(const FiniteGroupoid& g) {
  std::vector<Index> members;
  for (Index x = 0; x < g.size(); ++x) {
    if (g.range(x) == g.source(x)) members.push_back(x);
  }
  return Subgroupoid(g, std::move(members));
}

Subgroupoid unit_subgroupoid(const FiniteGroupoid& g) {
  return Subgroupoid(g, {g.units().begin(), g.units().end()});
}

Subgroupoid full_subgroupoid(const FiniteGroupoid& g) {
  std::vector<Index> members(g.size());
  std::iota(members.begin(), members.end(), Index{0});
  return Subgroupoid(g, std::move(members));
}

}  // namespace gpdind
