#include "gpdind/document.hpp"

#include <fstream>
#include <sstream>

#include "gpdind/imprimitivity.hpp"

namespace gpdind {

namespace {

[[noreturn]] void malformed(const std::string& what) { fail(ErrorKind::MalformedSpec, what); }

const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) malformed(where + ": missing key '" + key + "'");
  return obj.at(key);
}

std::vector<std::string> string_list(const Json& j, const std::string& where) {
  if (!j.is_array()) malformed(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) malformed(where + " must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

Index lookup(const std::unordered_map<std::string, Index>& index, const Json& j, const std::string& where) {
  if (!j.is_string()) malformed(where + ": expected an element name");
  auto it = index.find(j.get<std::string>());
  if (it == index.end()) malformed(where + ": unknown element '" + j.get<std::string>() + "'");
  return it->second;
}

std::unordered_map<std::string, Index> index_names(const std::vector<std::string>& names, const std::string& where) {
  std::unordered_map<std::string, Index> out;
  for (Index i = 0; i < names.size(); ++i) {
    if (!out.emplace(names[i], i).second) malformed(where + ": duplicate name '" + names[i] + "'");
  }
  return out;
}

Index lookup_element(const FiniteGroupoid& g, const std::string& name, const std::string& where) {
  auto x = g.find(name);
  if (!x) malformed(where + ": unknown element '" + name + "'");
  return *x;
}

FiniteGroupoid parse_explicit(const Json& doc) {
  FiniteGroupoid::Tables t;
  t.names = string_list(require(doc, "elements", "groupoid"), "elements");
  const auto index = index_names(t.names, "elements");
  const std::size_t n = t.names.size();

  for (const auto& u : require(doc, "units", "groupoid")) t.units.push_back(lookup(index, u, "units"));
  auto column = [&](const char* key) {
    const Json& arr = require(doc, key, "groupoid");
    if (!arr.is_array() || arr.size() != n) malformed(std::string(key) + " must list one entry per element");
    std::vector<Index> out;
    for (const auto& v : arr) out.push_back(lookup(index, v, key));
    return out;
  };
  t.range = column("r");
  t.source = column("s");
  t.inverse = column("inv");

  t.compose.assign(n * n, kNone);
  const Json& triples = require(doc, "compose", "groupoid");
  if (!triples.is_array()) malformed("compose must be an array of [a, b, ab] triples");
  for (const auto& tr : triples) {
    if (!tr.is_array() || tr.size() != 3) malformed("compose entries must be [a, b, ab] triples");
    const Index a = lookup(index, tr[0], "compose");
    const Index b = lookup(index, tr[1], "compose");
    const Index ab = lookup(index, tr[2], "compose");
    if (t.compose[a * n + b] != kNone && t.compose[a * n + b] != ab) {
      malformed("compose lists the pair (" + t.names[a] + ", " + t.names[b] + ") twice");
    }
    t.compose[a * n + b] = ab;
  }

  if (doc.contains("unit_labels")) {
    const Json& labels = doc.at("unit_labels");
    if (!labels.is_object()) malformed("unit_labels must map unit names to labels");
    t.unit_labels.assign(n, std::string());
    for (const auto& [name, label] : labels.items()) {
      auto it = index.find(name);
      if (it == index.end()) malformed("unit_labels: unknown element '" + name + "'");
      if (!label.is_string()) malformed("unit_labels: labels must be strings");
      t.unit_labels[it->second] = label.get<std::string>();
    }
  }
  return FiniteGroupoid(std::move(t));
}

FiniteGroupoid parse_construction(const Json& c);

FiniteGroupoid parse_group_cayley(const Json& c) {
  auto names = string_list(require(c, "elements", "group_cayley"), "group_cayley.elements");
  const auto index = index_names(names, "group_cayley.elements");
  const Json& rows = require(c, "table", "group_cayley");
  if (!rows.is_array() || rows.size() != names.size()) malformed("group_cayley.table must have one row per element");
  std::vector<std::vector<Index>> table;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != names.size()) malformed("group_cayley.table rows must be full");
    std::vector<Index> r;
    for (const auto& v : row) r.push_back(lookup(index, v, "group_cayley.table"));
    table.push_back(std::move(r));
  }
  return group_from_cayley(std::move(names), table);
}

FiniteGroupoid parse_pair(const Json& c) {
  if (c.contains("points")) return pair_groupoid(string_list(c.at("points"), "pair.points"));
  const Json& n = require(c, "n", "pair");
  if (!n.is_number_unsigned() || n.get<std::size_t>() == 0) malformed("pair.n must be a positive integer");
  return pair_groupoid(n.get<std::size_t>());
}

FiniteGroupoid parse_transformation(const Json& c) {
  const FiniteGroupoid group = parse_construction(require(c, "group", "transformation"));
  auto points = string_list(require(c, "points", "transformation"), "transformation.points");
  const auto index = index_names(points, "transformation.points");
  // action: {group element name: [image of each point, in point order]}
  const Json& act = require(c, "action", "transformation");
  if (!act.is_object()) malformed("transformation.action must map group elements to point lists");
  std::vector<std::vector<Index>> action(group.size());
  for (Index g = 0; g < group.size(); ++g) {
    if (!act.contains(group.name(g))) malformed("transformation.action: no row for '" + group.name(g) + "'");
    const Json& row = act.at(group.name(g));
    if (!row.is_array() || row.size() != points.size()) malformed("transformation.action rows must list every point");
    for (const auto& v : row) action[g].push_back(lookup(index, v, "transformation.action"));
  }
  if (act.size() != group.size()) malformed("transformation.action has rows for unknown group elements");
  return transformation_groupoid(group, points, action);
}

FiniteGroupoid parse_construction(const Json& c) {
  const Json& type = require(c, "type", "construction");
  if (!type.is_string()) malformed("construction.type must be a string");
  const auto t = type.get<std::string>();
  if (t == "group_cayley") return parse_group_cayley(c);
  if (t == "pair") return parse_pair(c);
  if (t == "transformation") return parse_transformation(c);
  if (t == "cyclic") {
    const Json& n = require(c, "n", "cyclic");
    if (!n.is_number_unsigned() || n.get<std::size_t>() == 0) malformed("cyclic.n must be a positive integer");
    return cyclic_group(n.get<std::size_t>());
  }
  malformed("unknown construction type '" + t + "'");
}

// Integers and "p/q" strings stay exact; any float switches to doubles.
struct WeightValue {
  Rational exact;
  double approx = 0.0;
  bool is_exact = true;
};

WeightValue parse_weight(const Json& v, const std::string& where) {
  WeightValue w;
  if (v.is_number_integer()) {
    w.exact = Rational(v.get<long long>());
  } else if (v.is_string()) {
    w.exact = parse_rational(v.get<std::string>());
  } else if (v.is_number_float()) {
    w.is_exact = false;
    w.approx = v.get<double>();
    return w;
  } else {
    malformed(where + ": weights must be numbers or \"p/q\" strings");
  }
  w.approx = to_double(w.exact);
  return w;
}

HaarSystem parse_haar(const FiniteGroupoid& g, const Json& h) {
  if (!h.is_object()) malformed("haar must be an object");
  std::vector<WeightValue> values;
  if (h.contains("weights")) {
    const Json& ws = h.at("weights");
    if (!ws.is_object()) malformed("haar.weights must map element names to weights");
    values.resize(g.size());
    std::vector<bool> seen(g.size(), false);
    for (const auto& [name, v] : ws.items()) {
      const Index x = lookup_element(g, name, "haar.weights");
      values[x] = parse_weight(v, "haar.weights");
      seen[x] = true;
    }
    for (Index x = 0; x < g.size(); ++x) {
      if (!seen[x]) malformed("haar.weights: no weight for '" + g.name(x) + "'");
    }
  } else if (h.contains("unit_masses")) {
    const Json& ms = h.at("unit_masses");
    if (!ms.is_object()) malformed("haar.unit_masses must map units to masses");
    std::vector<WeightValue> per_unit(g.size());
    std::vector<bool> seen(g.size(), false);
    for (const auto& [name, v] : ms.items()) {
      const Index u = g.resolve_unit(name);
      per_unit[u] = parse_weight(v, "haar.unit_masses");
      seen[u] = true;
    }
    for (Index u : g.units()) {
      if (!seen[u]) malformed("haar.unit_masses: no mass for unit '" + g.unit_label(u) + "'");
    }
    for (Index x = 0; x < g.size(); ++x) values.push_back(per_unit[g.source(x)]);
  } else {
    malformed("haar needs either 'weights' or 'unit_masses'");
  }

  bool exact = true;
  for (const auto& v : values) exact = exact && v.is_exact;
  HaarSystem haar = [&] {
    if (exact) {
      std::vector<Rational> q;
      for (const auto& v : values) q.push_back(v.exact);
      return HaarSystem::from_rationals(std::move(q));
    }
    std::vector<double> d;
    for (const auto& v : values) d.push_back(v.approx);
    return HaarSystem::from_doubles(std::move(d));
  }();
  if (!check_invariance(g, haar)) fail(ErrorKind::AxiomViolation, "Haar weights are not left invariant");
  return haar;
}

std::vector<Index> parse_member_list(const FiniteGroupoid& g, const Json& j, const std::string& where) {
  std::vector<Index> out;
  for (const auto& name : string_list(j, where)) out.push_back(lookup_element(g, name, where));
  return out;
}

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex parse_complex(const Json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  malformed(where + ": expected [re, im]");
}

}  // namespace

GroupoidDocument parse_groupoid_document(const Json& doc, std::string fallback_name) {
  try {
    if (!doc.is_object()) malformed("groupoid document must be a JSON object");
    GroupoidDocument out{
        doc.contains("name") && doc.at("name").is_string() ? doc.at("name").get<std::string>() : fallback_name,
        doc.contains("construction") ? parse_construction(doc.at("construction")) : parse_explicit(doc),
        std::nullopt,
        {}};
    if (doc.contains("haar")) out.haar = parse_haar(out.groupoid, doc.at("haar"));
    if (doc.contains("subgroupoids")) {
      const Json& subs = doc.at("subgroupoids");
      if (!subs.is_object()) malformed("subgroupoids must map names to element lists");
      for (const auto& [name, members] : subs.items()) {
        auto list = parse_member_list(out.groupoid, members, "subgroupoids." + name);
        Subgroupoid check(out.groupoid, list);  // closure
        out.subgroupoids.emplace(name, std::move(list));
      }
    }
    return out;
  } catch (const Json::exception& e) {
    malformed(std::string("bad JSON structure: ") + e.what());
  }
}

GroupoidDocument load_groupoid_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    malformed(path.filename().string() + ": " + e.what());
  }
  return parse_groupoid_document(doc, path.stem().string());
}

Json serialize_groupoid(const FiniteGroupoid& g) {
  Json out;
  Json names = Json::array();
  Json r = Json::array();
  Json s = Json::array();
  Json inv = Json::array();
  Json compose = Json::array();
  Json units = Json::array();
  Json labels = Json::object();
  for (Index x = 0; x < g.size(); ++x) {
    names.push_back(g.name(x));
    r.push_back(g.name(g.range(x)));
    s.push_back(g.name(g.source(x)));
    inv.push_back(g.name(g.inverse(x)));
    for (Index y = 0; y < g.size(); ++y) {
      if (g.composable(x, y)) compose.push_back({g.name(x), g.name(y), g.name(g.compose(x, y))});
    }
  }
  for (Index u : g.units()) {
    units.push_back(g.name(u));
    if (g.unit_label(u) != g.name(u)) labels[g.name(u)] = g.unit_label(u);
  }
  out["elements"] = std::move(names);
  out["units"] = std::move(units);
  out["r"] = std::move(r);
  out["s"] = std::move(s);
  out["inv"] = std::move(inv);
  out["compose"] = std::move(compose);
  if (!labels.empty()) out["unit_labels"] = std::move(labels);
  return out;
}

Json serialize_document(const GroupoidDocument& doc) {
  Json out = serialize_groupoid(doc.groupoid);
  out["name"] = doc.name;
  if (doc.haar) {
    Json weights = Json::object();
    for (Index x = 0; x < doc.groupoid.size(); ++x) {
      if (doc.haar->is_exact()) {
        weights[doc.groupoid.name(x)] = to_string(doc.haar->exact_weight(x));
      } else {
        weights[doc.groupoid.name(x)] = doc.haar->weight(x);
      }
    }
    out["haar"] = {{"weights", std::move(weights)}};
  }
  if (!doc.subgroupoids.empty()) {
    Json subs = Json::object();
    for (const auto& [name, members] : doc.subgroupoids) {
      Json list = Json::array();
      for (Index x : members) list.push_back(doc.groupoid.name(x));
      subs[name] = std::move(list);
    }
    out["subgroupoids"] = std::move(subs);
  }
  return out;
}

Subgroupoid resolve_subgroupoid(const GroupoidDocument& doc, const std::string& name) {
  if (auto it = doc.subgroupoids.find(name); it != doc.subgroupoids.end()) {
    return Subgroupoid(doc.groupoid, it->second);
  }
  if (name == "units") return unit_subgroupoid(doc.groupoid);
  if (name == "isotropy") return isotropy_bundle(doc.groupoid);
  if (name == "full" || name == "G") return full_subgroupoid(doc.groupoid);
  const std::string prefix = "isotropy:";
  if (name.rfind(prefix, 0) == 0) {
    return isotropy_group(doc.groupoid, doc.groupoid.resolve_unit(name.substr(prefix.size())));
  }
  malformed("unknown subgroupoid '" + name + "'");
}

Json serialize_element(const AlgebraElement& f) {
  const auto& g = f.algebra()->groupoid();
  Json out = Json::object();
  for (Index x = 0; x < g.size(); ++x) out[g.name(x)] = complex_json(f[x]);
  return out;
}

AlgebraElement parse_element(const AlgebraPtr& algebra, const Json& doc) {
  if (!doc.is_object()) malformed("algebra element must map element names to [re, im]");
  AlgebraElement f(algebra);
  for (const auto& [name, v] : doc.items()) {
    f[lookup_element(algebra->groupoid(), name, "algebra element")] = parse_complex(v, name);
  }
  return f;
}

Json serialize_representation(const Representation& rep) {
  const auto& g = rep.algebra()->groupoid();
  Json ops = Json::object();
  for (Index x = 0; x < g.size(); ++x) {
    Json flat = Json::array();
    const Matrix& m = rep.op(x);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) flat.push_back(complex_json(m(i, j)));
    }
    ops[g.name(x)] = std::move(flat);
  }
  return {{"dimension", rep.dim()}, {"operators", std::move(ops)}};
}

Representation parse_representation(const AlgebraPtr& algebra, const Json& doc) {
  try {
    const auto& g = algebra->groupoid();
    const Json& dim_json = require(doc, "dimension", "representation");
    if (!dim_json.is_number_unsigned()) malformed("representation.dimension must be a nonnegative integer");
    const auto d = dim_json.get<std::size_t>();
    const Json& ops_json = require(doc, "operators", "representation");
    if (!ops_json.is_object()) malformed("representation.operators must map element names to matrices");
    std::vector<Matrix> ops(g.size());
    std::vector<bool> seen(g.size(), false);
    for (const auto& [name, flat] : ops_json.items()) {
      const Index x = lookup_element(g, name, "representation.operators");
      if (!flat.is_array() || flat.size() != d * d) malformed("operator for '" + name + "' needs d*d entries");
      ops[x].resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
      for (std::size_t k = 0; k < d * d; ++k) {
        ops[x](static_cast<Eigen::Index>(k / d), static_cast<Eigen::Index>(k % d)) = parse_complex(flat[k], name);
      }
      seen[x] = true;
    }
    for (Index x = 0; x < g.size(); ++x) {
      if (!seen[x]) malformed("representation has no operator for '" + g.name(x) + "'");
    }
    return Representation(algebra, d, std::move(ops));
  } catch (const Json::exception& e) {
    malformed(std::string("bad JSON structure: ") + e.what());
  }
}

Json serialize_orbit_table(const ImprimitivityData& data) {
  const auto& g = data.g_algebra()->groupoid();
  Json out = Json::array();
  for (Index x : data.fiber().carrier()) {
    for (Index y : data.fiber().carrier()) {
      const Index o = data.orbit(x, y);
      if (o == kNone) continue;
      out.push_back(Json::array({Json::array({g.name(x), g.name(y)}), o}));
    }
  }
  return out;
}

}  // namespace gpdind
