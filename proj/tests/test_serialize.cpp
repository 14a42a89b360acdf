#include "certmenu/serialize.hpp"

#include "certmenu/optimizer.hpp"

#include <doctest.h>

#include <random>

using namespace certmenu;

namespace {
const MarketParams kBase = MarketParams::from_threshold(Rat(1, 4), Rat(1, 2));
}

TEST_CASE("solve result serialization keeps exact fractions and fixed key order") {
  SolveResult r = solve_revenue_max(AcceptanceSet({Signal(Rat(2)), Signal(Rat(1, 2))}), kBase);
  Json out = to_json(r);
  CHECK(out["revenue"] == "7/16");
  CHECK(out["rent_high"] == "1/4");
  CHECK(out["regime"] == "bad-news");
  CHECK(out["solver_path"] == "lp");
  CHECK(out["menu"]["high"]["price"] == "3/4");
  CHECK(out["menu"]["low"]["experiment"]["1"] == "5/12");

  // Byte-identical across repeated solves of the same instance.
  SolveResult again = solve_revenue_max(AcceptanceSet({Signal(Rat(2)), Signal(Rat(1, 2))}), kBase);
  CHECK(to_json(again).dump(2) == out.dump(2));
}

TEST_CASE("experiment serialization") {
  Experiment x{{{Signal(Rat(1, 2)), Rat(1, 6)}, {Signal(Rat(2)), Rat(5, 6)}}};
  Json out = to_json(x);
  CHECK(out.size() == 2);
  CHECK(out["1/2"] == "1/6");
  CHECK(out["2"] == "5/6");
  CHECK(to_json(Experiment::none()) == Json("none"));
}

TEST_CASE("obedience report serialization") {
  Experiment pooled{{{Signal(Rat(3)), Rat(1)}}};
  Menu m{PricedExperiment{pooled, Rat(1, 3)}, PricedExperiment{pooled, Rat(1, 3)}};
  Json out = to_json(check_obedience(m, AcceptanceSet({Signal(Rat(3))}), kBase));
  CHECK(out["overall"] == true);
  CHECK(out["receiver_obedience_margin"] == "0");
}

TEST_CASE("config parsing") {
  SUBCASE("threshold form") {
    RunConfig config = parse_config(Json::parse(R"({
      "market": {"mu": "1/4", "pi_star": "1/2"},
      "acceptance": ["5"]
    })"));
    CHECK(config.params.mu() == Rat(1, 4));
    CHECK(config.params.odds() == Rat(1, 3));
    REQUIRE(config.acceptance.has_value());
    CHECK(config.acceptance->contains(Signal(Rat(5))));
    CHECK(config.solver_path == "lp");
  }

  SUBCASE("utilities form derives the threshold") {
    RunConfig config = parse_config(Json::parse(R"({
      "market": {"mu": "1/4", "receiver_utilities":
        {"v_ah_h": "1", "v_al_h": "0", "v_al_l": "4", "v_ah_l": "0"}},
      "acceptance": ["9"]
    })"));
    CHECK(config.params.pi_star() == Rat(4, 5));
  }

  SUBCASE("decimals parse exactly") {
    RunConfig config = parse_config(Json::parse(R"({
      "market": {"mu": "0.25", "pi_star": "0.55"},
      "acceptance": ["0.5", "2"]
    })"));
    CHECK(config.params.mu() == Rat(1, 4));
    CHECK(config.params.pi_star() == Rat(11, 20));
    CHECK(config.acceptance->contains(Signal(Rat(1, 2))));
  }

  SUBCASE("naive acceptance and flags") {
    RunConfig config = parse_config(Json::parse(R"({
      "market": {"mu": "1/4", "pi_star": "1/2"},
      "acceptance": "naive",
      "flags": {"solver_path": "all", "grid_size": 9}
    })"));
    CHECK(config.naive);
    CHECK(config.naive_grid_size == 9);
    CHECK(config.solver_path == "all");
  }

  SUBCASE("uninformative signals need the flag") {
    CHECK_THROWS_WITH_AS(parse_config(Json::parse(R"({
      "market": {"mu": "1/4", "pi_star": "1/2"},
      "acceptance": ["1"]
    })")),
                         doctest::Contains("acceptance"), std::invalid_argument);
    RunConfig config = parse_config(Json::parse(R"({
      "market": {"mu": "1/4", "pi_star": "1/2"},
      "acceptance": ["1"],
      "flags": {"allow_uninformative": true}
    })"));
    CHECK(config.allow_uninformative);
    CHECK(config.acceptance->contains_one());
  }

  SUBCASE("field-level diagnostics") {
    CHECK_THROWS_WITH_AS(parse_config(Json::parse(R"({"acceptance": ["5"]})")),
                         doctest::Contains("market"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config(Json::parse(R"({
      "market": {"mu": "5/4", "pi_star": "1/2"}, "acceptance": ["5"]
    })")),
                         doctest::Contains("market.mu"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config(Json::parse(R"({
      "market": {"mu": "1/4", "pi_star": "1/2"}, "acceptance": ["x"]
    })")),
                         doctest::Contains("acceptance[0]"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config(Json::parse(R"({
      "market": {"mu": "1/4", "pi_star": "1/2"}, "acceptance": ["5"],
      "flags": {"solver_path": "magic"}
    })")),
                         doctest::Contains("solver_path"), std::invalid_argument);
  }
}

TEST_CASE("config serialization round trips exactly") {
  const char* docs[] = {
      R"({"market": {"mu": "1/4", "pi_star": "0.55"}, "acceptance": ["5", "1/2", "inf"]})",
      R"({"market": {"mu": "1/3", "receiver_utilities":
          {"v_ah_h": "2", "v_al_h": "1", "v_al_l": "3", "v_ah_l": "1"}},
          "acceptance": "naive", "flags": {"grid_size": 16, "solver_path": "all"}})",
      R"({"market": {"mu": "1/4", "pi_star": "1/2"}, "acceptance": ["1"],
          "flags": {"allow_uninformative": true, "single_item": true}})",
  };
  for (const char* doc : docs) {
    RunConfig first = parse_config(Json::parse(doc));
    Json serialized = to_json(first);
    RunConfig second = parse_config(serialized);
    CHECK(second.params.mu() == first.params.mu());
    CHECK(second.params.pi_star() == first.params.pi_star());
    CHECK(second.naive == first.naive);
    CHECK(second.acceptance.has_value() == first.acceptance.has_value());
    if (first.acceptance) CHECK(*second.acceptance == *first.acceptance);
    CHECK(second.solver_path == first.solver_path);
    CHECK(second.allow_uninformative == first.allow_uninformative);
    CHECK(second.single_item == first.single_item);
    CHECK(second.naive_grid_size == first.naive_grid_size);
    // Idempotent bytes.
    CHECK(to_json(second).dump() == serialized.dump());
  }
}

TEST_CASE("rational strings survive a round trip") {
  std::mt19937_64 rng(97);
  for (int i = 0; i < 200; ++i) {
    Rat value(static_cast<long>(rng() % 2000), 1 + static_cast<long>(rng() % 500));
    CHECK(parse_rat(format_rat(value)) == value);
  }
  for (int i = 0; i < 50; ++i) {
    Signal s = i % 7 == 0 ? Signal::infinity()
                          : Signal(Rat(static_cast<long>(rng() % 100), 1 + static_cast<long>(rng() % 12)));
    CHECK(Signal::parse(s.str()) == s);
  }
}
