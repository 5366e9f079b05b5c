#include <gtest/gtest.h>

#include "matord/json_io.hpp"
#include "oracles.hpp"

using namespace matord;

TEST(Json, NonFiniteReals) {
  EXPECT_EQ(real_to_json(kInf), "inf");
  EXPECT_EQ(real_from_json("inf"), kInf);
  EXPECT_EQ(real_from_json("-inf"), -kInf);
  EXPECT_TRUE(std::isnan(real_from_json("nan")));
  EXPECT_EQ(real_from_json(2.5), 2.5);
  EXPECT_THROW(real_from_json("two"), Error);
}

TEST(Json, SpacesRoundTrip) {
  std::vector<Vec> g(2, Vec::Zero(2));
  g[0](0) = 1.0;
  g[1](1) = 1.0;
  for (const BaseSpace& X :
       {BaseSpace::lattice(3, 1.5, RVec::LinSpaced(3, 1.0, 2.0)), BaseSpace::lattice(2, kInf),
        BaseSpace::schatten(2, 1.0), BaseSpace::custom(2, 2.0, g, g, true)}) {
    BaseSpace Y = space_from_json(json::parse(to_json(X).dump()));
    EXPECT_TRUE(same_space(X, Y)) << to_json(X).dump();
  }
}

TEST(Json, ElementsRoundTripBitExact) {
  Rng rng(111);
  for (int t = 0; t < 20; ++t) {
    LeveledElement x(1 + t % 3, 1 + t % 4);
    for (int k = 0; k < x.base_dim(); ++k) x.coord(k) = random_complex(rng, x.level(), x.level());
    LeveledElement y = element_from_json(json::parse(to_json(x).dump()));
    EXPECT_EQ(oracle::max_abs_diff(x, y), 0.0);
  }
}

TEST(Json, VerdictRoundTrip) {
  MatricialStructure S(BaseSpace::schatten(2, 2.0), Kind::Schatten);
  ConeVerdict v = cone_member(S, flip_element(2), 1e-9);
  ConeVerdict w = verdict_from_json(json::parse(round_numbers(to_json(v)).dump()));
  EXPECT_EQ(w.verdict, v.verdict);
  EXPECT_EQ(w.method, v.method);
  EXPECT_NEAR(w.certificate.value, -1.0, 1e-12);
}

TEST(Json, MalformedInputs) {
  EXPECT_THROW(space_from_json(json{{"model", "banach"}}), Error);
  EXPECT_THROW(space_from_json(json{{"model", "schatten"}, {"p", 0.5}, {"m", 2}}), Error);
  EXPECT_THROW(element_from_json(json{{"level", 2}, {"base_dim", 1}, {"coeffs", json::array()}}), Error);
  json bad = {{"level", 1}, {"base_dim", 1}, {"coeffs", {{{1, 0, 3}}}}};
  try {
    element_from_json(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedInput);
  }
}

TEST(Json, RoundNumbersKeepsTwelveDigits) {
  json j = {{"a", 1.0 / 3.0}, {"b", {2.0 / 3.0, "inf"}}, {"c", 7}};
  json r = round_numbers(j);
  EXPECT_EQ(r["a"].dump(), "0.333333333333");
  EXPECT_EQ(r["b"][1], "inf");
  EXPECT_EQ(r["c"], 7);
}
