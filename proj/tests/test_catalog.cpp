#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "pdm/catalog.hpp"

using namespace pdm;

TEST(Catalog, ElevenSystemsInOrder) {
  ASSERT_EQ(catalog().size(), 11u);
  for (int id = 1; id <= 11; ++id) EXPECT_EQ(get_system(id).id, id);
  EXPECT_THROW(get_system(0), DomainError);
  EXPECT_THROW(get_system(12), DomainError);
}

TEST(Catalog, EmbeddedManifestMatchesDataFile) {
  std::ifstream in(std::string(PDM_SOURCE_DIR) + "/data/systems.json");
  ASSERT_TRUE(in) << "data/systems.json missing";
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), std::string(kBuiltinManifest)) << "run tools/embed_manifest.py";
}

TEST(Catalog, WriteParseRoundTrip) {
  std::string text = write_manifest(catalog());
  auto again = parse_manifest(text);
  ASSERT_EQ(again.size(), catalog().size());
  for (size_t k = 0; k < again.size(); ++k) {
    EXPECT_EQ(again[k].generators.size(), catalog()[k].generators.size());
    EXPECT_EQ(again[k].parameters, catalog()[k].parameters);
    EXPECT_EQ(again[k].box, catalog()[k].box);
    EXPECT_EQ(write_manifest({again[k]}), write_manifest({catalog()[k]}));
  }
}

TEST(Catalog, MaxwellBasisCoefficients) {
  const SystemSpec& s = get_system(1);
  const GeneratorSpec& g = s.generator("M41");
  Point p{0.3, -0.5, 0.8, 0.0, 0.0};
  auto k = detail::basis_coefficients("K1");
  auto pp = detail::basis_coefficients("P1");
  for (int a = 0; a < 3; ++a)
    EXPECT_NEAR(std::abs(g.c[a].eval(p) - 0.5 * (k.c[a].eval(p) - pp.c[a].eval(p))), 0.0, 1e-14);
}

TEST(Catalog, RolesAndLookup) {
  const SystemSpec& s = get_system(1);
  EXPECT_EQ(s.with_role(GeneratorRole::listed).size(), 6u);
  EXPECT_FALSE(s.with_role(GeneratorRole::control).empty());
  EXPECT_THROW(s.generator("nope"), DomainError);
}

TEST(Catalog, TimeDerivedGenerators) {
  for (const auto& s : catalog())
    for (const auto& g : s.generators)
      if (!g.derived_from.empty()) {
        const GeneratorSpec& base = s.generator(g.derived_from);
        EXPECT_TRUE(base.time_dependent()) << s.id << " " << g.name;
      }
}

TEST(Catalog, ParameterValidation) {
  const SystemSpec& s11 = get_system(11);
  ParameterSet ps;
  EXPECT_THROW(validate_params(s11, ps), DomainError);
  for (const auto& n : s11.parameters) ps.set(n, 1.0);
  ps.set("sigma", 2.0);
  ps.set("kappa", -3.0);
  auto v = validate_params(s11, ps);
  EXPECT_TRUE(v.has_flag("oscillator condition 2kappa=-sigma^2-3sigma-2 holds"));
  for (double bad : s11.excluded_sigma) {
    ps.set("sigma", bad);
    EXPECT_THROW(validate_params(s11, ps), DomainError);
  }
  ParameterSet p3;
  p3.set("nu", 0.0);
  EXPECT_TRUE(validate_params(get_system(3), p3).has_flag("scale-invariant sub-case"));
}

TEST(Catalog, NonSeparableRows) {
  for (int id : {4, 5}) {
    const SystemSpec& s = get_system(id);
    ASSERT_FALSE(s.nonseparable_unless_zero.empty());
    ParameterSet ps;
    for (const auto& n : s.parameters) ps.set(n, 1.0);
    EXPECT_FALSE(validate_params(s, ps).solvable) << id;
    ps.set(s.nonseparable_unless_zero, 0.0);
    EXPECT_TRUE(s.solvable(ps)) << id;
  }
}

TEST(Catalog, ManifestRejectsBadInput) {
  EXPECT_THROW(parse_manifest(R"({"format":"other","version":1,"systems":[]})"), DomainError);
  EXPECT_THROW(parse_manifest(R"({"format":"pdm-systems","version":2,"systems":[]})"), DomainError);
  std::string bad = R"({"format":"pdm-systems","version":1,"systems":[{"id":1,"inverse_mass":"1","potential":"beta",
    "separation":"spherical","box":{"lo":[-1,-1,-1],"hi":[1,1,1]},"generators":[]}]})";
  EXPECT_THROW(parse_manifest(bad), DomainError);
}
