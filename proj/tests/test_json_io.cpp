#include <gtest/gtest.h>

#include "rankineq/errors.hpp"
#include "rankineq/json_io.hpp"

using namespace rankineq;

TEST(Json, InequalityRoundTrip) {
  for (long n : {7, 9, 11})
    for (long t = 2; family_parameters_valid(n, t); ++t) {
      auto [nd, dv] = family_pair(n, t);
      for (const auto* e : {&nd, &dv}) {
        auto j = inequality_to_json(*e);
        auto back = inequality_from_json(parse_json(dump_json(j)));
        EXPECT_EQ(back.terms, e->terms);
        EXPECT_EQ(back.lhs, e->lhs);
        EXPECT_EQ(back.rhs, e->rhs);
        EXPECT_EQ(back.scale, e->scale);
        EXPECT_EQ(back.char_condition, e->char_condition);
        EXPECT_EQ(back.t, e->t);
        EXPECT_EQ(back.provenance, e->provenance);
        EXPECT_EQ(dump_json(inequality_to_json(back)), dump_json(j));
      }
    }
}

TEST(Json, RationalsAreStrings) {
  auto [nd, dv] = family_pair(7, 2);
  auto j = inequality_to_json(nd);
  EXPECT_TRUE(j["terms"][0]["coeff"].is_string());
  EXPECT_NE(j["terms"][0]["coeff"].get<std::string>().find('/'), std::string::npos);
  EXPECT_EQ(j["char_condition"], "not_divides");
  EXPECT_EQ(j["original"]["scale"], "4/1");
}

TEST(Json, ClearedFormWithoutOriginal) {
  auto ing = ingleton_inequality();
  auto j = inequality_to_json(ing);
  j.erase("original");
  auto back = inequality_from_json(j);
  EXPECT_EQ(back.terms, ing.terms);
}

TEST(Json, RejectsInconsistentOriginal) {
  auto [nd, dv] = family_pair(7, 2);
  auto j = inequality_to_json(nd);
  j["original"]["scale"] = "5/1";
  EXPECT_THROW(inequality_from_json(j), ParseError);
  auto k = inequality_to_json(nd);
  k["terms"][0]["vars"] = {"Q7"};
  EXPECT_THROW(inequality_from_json(k), ParseError);
  EXPECT_THROW(inequality_from_json(Json::parse(R"({"terms": 3})")), ParseError);
  EXPECT_THROW(parse_json("{nope"), ParseError);
}

TEST(Json, PairAndContainers) {
  auto seed = family_matrix(9, 2);
  auto [nd, dv] = family_pair(9, 2);
  auto p = pair_to_json(seed, nd, dv);
  EXPECT_EQ(p["inequalities"].size(), 2u);
  EXPECT_EQ(p["inequalities"][1]["char_condition"], "divides");
  EXPECT_EQ(inequalities_from_json(p).size(), 2u);
  EXPECT_EQ(inequalities_from_json(p["inequalities"]).size(), 2u);
  EXPECT_EQ(inequalities_from_json(p["inequalities"][0]).size(), 1u);
  EXPECT_EQ(p["seed"]["det_abs"], "2");
}

TEST(Json, AccessStructureRoundTrip) {
  auto s = matroid_port(figure2_representation(2, 3));
  auto j = access_structure_to_json(s);
  EXPECT_EQ(j["dealer"], "c");
  EXPECT_EQ(j["minimal_qualified"].size(), 8u);
  EXPECT_EQ(access_structure_from_json(parse_json(dump_json(j))), s);
  EXPECT_THROW(access_structure_from_json(Json::parse(R"({"participants": ["a"], "dealer": "s",
      "minimal_qualified": [["z"]]})")),
               UnknownParticipant);
}

TEST(Json, RoleMapRoundTrip) {
  RoleMap m = {{VariableLabel::a(1), "x"}, {VariableLabel::c(), "s"}};
  auto j = role_map_to_json(m);
  EXPECT_EQ(j["A1"], "x");
  EXPECT_EQ(role_map_from_json(j), m);
  EXPECT_THROW(role_map_from_json(Json::parse(R"({"Z": "x"})")), ParseError);
}

TEST(Json, LpReportShape) {
  auto s = matroid_port(figure2_representation(2, 2));
  auto [nd, dv] = family_pair(7, 2);
  auto r = kappa_bound(s, {{nd, natural_role_map(nd, s)}});
  auto j = lp_report_to_json(r, lp_ground(s), false);
  EXPECT_EQ(j["optimum"], "4/3");
  EXPECT_EQ(j["status"], "optimal");
  EXPECT_EQ(j["kind"], "kappa_star");
  EXPECT_FALSE(j.contains("primal"));
  EXPECT_FALSE(j["binding"].empty());
  auto full = lp_report_to_json(r, lp_ground(s), true);
  EXPECT_EQ(full["primal"]["v"], "4/3");
  EXPECT_EQ(full["primal"]["f(c)"], "1/1");
}

TEST(Json, CampaignDeterministicBytes) {
  auto seed = family_matrix(7, 2);
  auto [nd, dv] = family_pair(7, 2);
  std::vector<std::uint32_t> primes = {2, 3};
  auto a = dump_json(campaign_to_json(nd, fuzz_campaign(nd, primes, 50, 1, seed)));
  auto b = dump_json(campaign_to_json(nd, fuzz_campaign(nd, primes, 50, 1, seed)));
  EXPECT_EQ(a, b);
  auto j = parse_json(a);
  EXPECT_EQ(j["per_prime"][0]["first_violation"]["lhs"], "1/1");
  EXPECT_EQ(j["per_prime"][0]["first_violation"]["rhs"], "3/4");
  EXPECT_EQ(j["conforming_violation"], false);
}

TEST(Json, SchemeReport) {
  auto s = figure2_representation(2, 2);
  auto j = scheme_report_to_json(s, simulate_scheme_exhaustive(s));
  EXPECT_EQ(j["deals"], 8);
  EXPECT_EQ(j["information_ratio"], "1/1");
}
