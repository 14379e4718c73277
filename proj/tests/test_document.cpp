#include <gtest/gtest.h>

#include <fstream>

#include "gpdind/document.hpp"
#include "gpdind/spectrum.hpp"
#include "support.hpp"

using namespace gpdind;
using namespace testing_support;

namespace {

ErrorKind parse_kind(const std::string& text) {
  try {
    parse_groupoid_document(Json::parse(text));
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "parsed: " << text;
  return ErrorKind::MalformedSpec;
}

}  // namespace

TEST(Document, RoundTripIsByteStable) {
  for (const auto& file : corpus_files()) {
    auto doc = load_groupoid_document(file);
    const std::string once = serialize_document(doc).dump(2);
    auto again = parse_groupoid_document(Json::parse(once));
    EXPECT_EQ(again.groupoid, doc.groupoid) << file;
    EXPECT_EQ(serialize_document(again).dump(2), once) << file;
  }
}

TEST(Document, ExplicitAndConstructedAgree) {
  auto doc = corpus("p3");
  auto explicit_form = parse_groupoid_document(serialize_groupoid(doc.groupoid));
  EXPECT_EQ(explicit_form.groupoid, pair_groupoid(3));
  EXPECT_FALSE(explicit_form.haar.has_value());
}

TEST(Document, UnitLabelsSurvive) {
  auto doc = corpus("z4_on_z2");
  auto again = parse_groupoid_document(serialize_document(doc));
  EXPECT_EQ(again.groupoid.resolve_unit("1"), doc.groupoid.resolve_unit("1"));
  EXPECT_EQ(again.subgroupoids, doc.subgroupoids);
}

TEST(Document, ExactHaarSurvives) {
  auto doc = corpus("union_z2_p2");
  ASSERT_TRUE(doc.haar && doc.haar->is_exact());
  EXPECT_EQ(doc.haar->exact_weight(*doc.groupoid.find("p.(2,1)")), Rational(1, 3));
  EXPECT_EQ(doc.haar->exact_weight(*doc.groupoid.find("p.(1,2)")), Rational(3));
  auto again = parse_groupoid_document(serialize_document(doc));
  ASSERT_TRUE(again.haar && again.haar->is_exact());
  for (Index x = 0; x < doc.groupoid.size(); ++x) EXPECT_EQ(again.haar->exact_weight(x), doc.haar->exact_weight(x));
}

TEST(Document, FloatWeightsAreInexact) {
  auto doc = parse_groupoid_document(Json::parse(
      R"j({"construction": {"type": "pair", "n": 2}, "haar": {"unit_masses": {"1": 0.5, "2": 2}}})j"));
  ASSERT_TRUE(doc.haar);
  EXPECT_FALSE(doc.haar->is_exact());
  EXPECT_DOUBLE_EQ(doc.haar->weight(*doc.groupoid.find("(2,1)")), 0.5);
}

TEST(Document, SchemaErrors) {
  EXPECT_EQ(parse_kind(R"j([1, 2])j"), ErrorKind::MalformedSpec);
  EXPECT_EQ(parse_kind(R"j({"construction": {"type": "torus"}})j"), ErrorKind::MalformedSpec);
  EXPECT_EQ(parse_kind(R"j({"construction": {"type": "pair", "n": -1}})j"), ErrorKind::MalformedSpec);
  EXPECT_EQ(parse_kind(R"j({"elements": ["e"], "units": ["e"], "r": ["e"], "s": ["e"], "inv": ["x"],
                           "compose": [["e", "e", "e"]]})j"),
            ErrorKind::MalformedSpec);
  EXPECT_EQ(parse_kind(R"j({"elements": ["e"], "units": ["e"], "r": ["e"], "s": ["e"], "inv": ["e"],
                           "compose": [["e", "e"]]})j"),
            ErrorKind::MalformedSpec);
  EXPECT_EQ(parse_kind(R"j({"construction": {"type": "pair", "n": 2}, "haar": {"weights": {"(1,1)": 1}}})j"),
            ErrorKind::MalformedSpec);
  EXPECT_EQ(parse_kind(R"j({"construction": {"type": "pair", "n": 2}, "haar": {"unit_masses": {"1": 0, "2": 1}}})j"),
            ErrorKind::NonpositiveWeight);
  EXPECT_EQ(parse_kind(R"j({"construction": {"type": "pair", "n": 2}, "subgroupoids": {"bad": ["(1,2)"]}})j"),
            ErrorKind::AxiomViolation);
  // composition entry for a non-composable pair
  EXPECT_EQ(parse_kind(R"j({"elements": ["u", "v"], "units": ["u", "v"], "r": ["u", "v"], "s": ["u", "v"],
                           "inv": ["u", "v"], "compose": [["u", "u", "u"], ["v", "v", "v"], ["u", "v", "u"]]})j"),
            ErrorKind::AxiomViolation);
}

TEST(Document, FixtureFiles) {
  auto kind = [](const char* name) {
    try {
      load_groupoid_document(data_dir() / name);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::DecompositionFailure;  // sentinel: no error
  };
  EXPECT_EQ(kind("loop5.json"), ErrorKind::AxiomViolation);
  EXPECT_EQ(kind("truncated.json"), ErrorKind::MalformedSpec);
  EXPECT_EQ(kind("missing_inverse.json"), ErrorKind::AxiomViolation);
  EXPECT_EQ(kind("bad_haar.json"), ErrorKind::AxiomViolation);
  EXPECT_EQ(kind("no_such_file.json"), ErrorKind::MalformedSpec);
}

TEST(Document, ResolveSubgroupoid) {
  auto doc = corpus("z4_on_z2");
  EXPECT_EQ(resolve_subgroupoid(doc, "units").members().size(), 2u);
  EXPECT_EQ(resolve_subgroupoid(doc, "isotropy").members().size(), 4u);
  EXPECT_EQ(resolve_subgroupoid(doc, "full").members().size(), 8u);
  EXPECT_EQ(resolve_subgroupoid(doc, "isotropy:1").members().size(), 2u);
  EXPECT_TRUE(resolve_subgroupoid(doc, "H") == resolve_subgroupoid(doc, "units"));
  EXPECT_TRUE(resolve_subgroupoid(doc, "K") == resolve_subgroupoid(doc, "isotropy"));
  EXPECT_THROW(resolve_subgroupoid(doc, "nope"), Error);
}

TEST(Document, ElementRoundTrip) {
  auto a = algebra_of(corpus("s3"));
  std::mt19937_64 rng(6);
  auto f = random_element(a, rng);
  auto j = serialize_element(f);
  EXPECT_EQ(j.size(), a->size());
  auto g = parse_element(a, Json::parse(j.dump()));
  EXPECT_EQ(g.distance(f), 0.0);
  EXPECT_THROW(parse_element(a, Json::parse(R"j({"nope": [1, 0]})j")), Error);
}

TEST(Document, RepresentationRoundTrip) {
  auto a = algebra_of(corpus("s3"));
  auto irreps = group_irreps(a);
  const auto& rep = irreps[2];
  auto j = serialize_representation(rep);
  EXPECT_EQ(j["dimension"], 2);
  auto back = parse_representation(a, Json::parse(j.dump()));
  EXPECT_TRUE(back.report().ok);
  for (Index x = 0; x < a->size(); ++x) EXPECT_EQ(back.op(x), rep.op(x));
}

TEST(Document, RepresentationFixtures) {
  auto doc = corpus("z4_on_z2");
  auto iso = isotropy_algebra(algebra_of(doc), doc.groupoid.resolve_unit("0"));
  auto read = [&](const char* name) {
    std::ifstream in(data_dir() / name);
    return parse_representation(iso, Json::parse(in));
  };
  EXPECT_TRUE(read("sign_z4_on_z2.json").report().ok);
  EXPECT_FALSE(read("not_a_rep.json").report().ok);
}

TEST(Document, OrbitTable) {
  auto doc = corpus("z4_on_z2");
  auto a = algebra_of(doc);
  auto data = build_imprimitivity(a, isotropy_group(doc.groupoid, doc.groupoid.resolve_unit("0")));
  auto table = serialize_orbit_table(*data);
  // all pairs with equal source in H^(0): |G_u|^2
  EXPECT_EQ(table.size(), 16u);
  std::set<Index> ids;
  for (const auto& row : table) ids.insert(row[1].get<Index>());
  EXPECT_EQ(ids.size(), data->orbit_count());
}
