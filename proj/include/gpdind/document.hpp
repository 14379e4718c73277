#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "gpdind/algebra.hpp"
#include "gpdind/groupoid.hpp"
#include "gpdind/haar.hpp"

namespace gpdind {

class ImprimitivityData;

using Json = nlohmann::json;

/// A parsed groupoid definition file.
struct GroupoidDocument {
  std::string name;
  FiniteGroupoid groupoid;
  std::optional<HaarSystem> haar;
  std::map<std::string, std::vector<Index>> subgroupoids;

  HaarSystem haar_or_counting() const { return haar ? *haar : HaarSystem::counting(groupoid); }
};

/// Parses either the explicit form (elements, units, r, s, inv, compose) or a
/// `construction` block. Throws Error(MalformedSpec) for schema problems and
/// Error(AxiomViolation) etc. for tables that fail validation.
GroupoidDocument parse_groupoid_document(const Json& doc, std::string fallback_name = {});
GroupoidDocument load_groupoid_document(const std::filesystem::path& path);

/// Explicit form; parse -> serialize is a fixed point after one round.
Json serialize_groupoid(const FiniteGroupoid& g);
Json serialize_document(const GroupoidDocument& doc);

/// Named subgroupoid: "units", "isotropy", "full", "isotropy:<unit>" or a
/// key of doc.subgroupoids. Throws Error(MalformedSpec) for unknown names.
Subgroupoid resolve_subgroupoid(const GroupoidDocument& doc, const std::string& name);

Json serialize_element(const AlgebraElement& f);
AlgebraElement parse_element(const AlgebraPtr& algebra, const Json& doc);

/// {"dimension": d, "operators": {name: [[re, im], ...] row-major}}
Json serialize_representation(const Representation& rep);
Representation parse_representation(const AlgebraPtr& algebra, const Json& doc);

/// Orbit table of H^G: [[[x, y], orbit_id], ...] over every pair.
Json serialize_orbit_table(const ImprimitivityData& data);

}  // namespace gpdind
