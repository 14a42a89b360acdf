#include "certmenu/experiment.hpp"
#include "certmenu/menu.hpp"
#include "certmenu/market.hpp"
#include "certmenu/rational.hpp"
#include "certmenu/signal.hpp"

#include <doctest.h>

#include <random>

using namespace certmenu;

namespace {

Rat rat(const char* s) { return parse_rat(s); }

// Small deterministic rational sampler for property checks.
struct RatSampler {
  std::mt19937_64 rng;
  explicit RatSampler(std::uint64_t seed) : rng(seed) {}
  Rat open_unit() {  // strictly inside (0,1)
    const long den = 2 + static_cast<long>(rng() % 60);
    const long num = 1 + static_cast<long>(rng() % static_cast<unsigned long>(den - 1));
    return Rat(num, den);
  }
  Rat positive(long hi_num = 50, long hi_den = 12) {
    const long den = 1 + static_cast<long>(rng() % static_cast<unsigned long>(hi_den));
    const long num = 1 + static_cast<long>(rng() % static_cast<unsigned long>(hi_num));
    return Rat(num, den);
  }
};

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rat("5/6") == Rat(5, 6));
  CHECK(parse_rat("0.5") == Rat(1, 2));
  CHECK(parse_rat("0.55") == Rat(11, 20));
  CHECK(parse_rat("3") == Rat(3));
  CHECK(parse_rat("-3/4") == Rat(-3, 4));
  CHECK(format_rat(Rat(14, 4)) == "7/2");
  CHECK(format_rat(Rat(3)) == "3");
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
}

TEST_CASE("signal ordering, reciprocal, round trip") {
  const Signal zero{Rat(0)};
  const Signal half{Rat(1, 2)};
  const Signal one{Rat(1)};
  const Signal inf = Signal::infinity();

  CHECK(zero < half);
  CHECK(half < one);
  CHECK(one < inf);
  CHECK_FALSE(inf < inf);
  CHECK(inf == Signal::infinity());

  CHECK(zero.reciprocal() == inf);
  CHECK(inf.reciprocal() == zero);
  CHECK(half.reciprocal() == Signal(Rat(2)));
  CHECK(inf.inverse_coeff() == 0);

  CHECK(Signal::parse("inf").is_infinite());
  CHECK(Signal::parse("5/6") == Signal(Rat(5, 6)));
  CHECK(Signal::parse("0.5") == half);
  CHECK(Signal::parse(half.str()) == half);
  CHECK_THROWS_AS(Signal(Rat(-1)), std::invalid_argument);
}

TEST_CASE("derive_threshold on known payoffs") {
  CHECK(derive_threshold({rat("1"), rat("0"), rat("1"), rat("0")}) == Rat(1, 2));
  CHECK(derive_threshold({rat("1"), rat("0"), rat("4"), rat("0")}) == Rat(4, 5));
  CHECK(derive_threshold({rat("2"), rat("1"), rat("3"), rat("1")}) == Rat(2, 3));
  CHECK_THROWS_AS(ReceiverUtilities(rat("0"), rat("1"), rat("1"), rat("0")), std::invalid_argument);
  CHECK_THROWS_AS(ReceiverUtilities(rat("1"), rat("0"), rat("0"), rat("1")), std::invalid_argument);
}

TEST_CASE("derive_threshold is invariant under positive affine rescaling") {
  RatSampler sampler(11);
  for (int i = 0; i < 50; ++i) {
    Rat base[4] = {sampler.positive(), sampler.positive(), sampler.positive(), sampler.positive()};
    // Force the strict orderings.
    ReceiverUtilities u{base[0] + base[1] + 1, base[1], base[2] + base[3] + 1, base[3]};
    const Rat scale = sampler.positive();
    const Rat shift = sampler.positive() - 2;
    ReceiverUtilities scaled{scale * u.accept_high + shift, scale * u.reject_high + shift,
                             scale * u.reject_low + shift, scale * u.accept_low + shift};
    CHECK(derive_threshold(u) == derive_threshold(scaled));
  }
}

TEST_CASE("odds factor") {
  CHECK(odds_factor(rat("1/4"), rat("1/2")) == Rat(1, 3));
  CHECK(odds_factor(rat("3/10"), rat("3/10")) == Rat(1));
  CHECK(odds_factor(rat("1/2"), rat("4/5")) == Rat(1, 4));
  CHECK_THROWS_AS(odds_factor(rat("0"), rat("1/2")), std::invalid_argument);
  CHECK_THROWS_AS(odds_factor(rat("1/2"), rat("1")), std::invalid_argument);
}

TEST_CASE("posterior updating") {
  CHECK(posterior(rat("1/4"), Signal(Rat(1))) == Rat(1, 4));
  CHECK(posterior(rat("1/4"), Signal(Rat(3))) == Rat(1, 2));
  CHECK(posterior(rat("1/4"), Signal::infinity()) == Rat(1));
  CHECK(posterior(rat("1/4"), Signal(Rat(0))) == Rat(0));
}

TEST_CASE("receiver best response breaks ties toward acceptance") {
  CHECK(receiver_best_response(rat("1/2"), rat("1/2")) == Action::accept);
  CHECK(receiver_best_response(rat("1/4"), rat("1/2")) == Action::reject);
  CHECK(receiver_best_response(rat("1"), rat("9/10")) == Action::accept);
}

TEST_CASE("acceptance threshold identity: posterior >= pi* iff e >= 1/l(mu)") {
  RatSampler sampler(23);
  for (int i = 0; i < 200; ++i) {
    const Rat mu = sampler.open_unit();
    const Rat pi_star = sampler.open_unit();
    const Rat l = odds_factor(mu, pi_star);
    Signal e = (i % 17 == 0) ? Signal::infinity() : Signal(sampler.positive());
    if (i % 23 == 0) e = Signal(Rat(0));
    const bool above = posterior(mu, e) >= pi_star;
    const bool cutoff = e >= Signal(Rat(1) / l);
    CHECK(above == cutoff);
  }
}

TEST_CASE("posterior is monotone in the signal") {
  RatSampler sampler(37);
  for (int i = 0; i < 100; ++i) {
    const Rat mu = sampler.open_unit();
    Rat a = sampler.positive();
    Rat b = sampler.positive();
    if (a > b) std::swap(a, b);
    CHECK(posterior(mu, Signal(a)) <= posterior(mu, Signal(b)));
    CHECK(posterior(mu, Signal(b)) <= posterior(mu, Signal::infinity()));
  }
}

TEST_CASE("market params") {
  auto p = MarketParams::from_threshold(rat("1/4"), rat("1/2"));
  CHECK(p.odds() == Rat(1, 3));
  CHECK(p.pessimistic());
  CHECK(p.threshold_signal() == Signal(Rat(3)));

  auto q = MarketParams::from_utilities(rat("1/4"), {rat("1"), rat("0"), rat("1"), rat("0")});
  CHECK(q.pi_star() == Rat(1, 2));
  CHECK(q.utilities().has_value());

  auto optimistic = MarketParams::from_threshold(rat("3/5"), rat("1/2"));
  CHECK_FALSE(optimistic.pessimistic());
}

TEST_CASE("experiment masses and the e = 0 residual") {
  Experiment x{{{Signal(Rat(3)), Rat(1)}}};
  CHECK(x.mass_h(Signal(Rat(3))) == 1);
  CHECK(x.mass_l(Signal(Rat(3))) == Rat(1, 3));
  CHECK(x.mass_l(Signal(Rat(0))) == Rat(2, 3));
  CHECK(low_state_mass(x, Signal(Rat(0))) == Rat(2, 3));
  CHECK(x.mass_l(Signal(Rat(5))) == 0);

  Experiment revealing{{{Signal::infinity(), Rat(1)}}};
  CHECK(revealing.mass_l(Signal(Rat(0))) == 1);
  CHECK(revealing.mass_l(Signal::infinity()) == 0);
  CHECK(revealing.mass_h(Signal::infinity()) == 1);
}

TEST_CASE("experiment invariants are enforced") {
  auto make = [](std::map<Signal, Rat> atoms) { return Experiment(std::move(atoms)); };
  CHECK_THROWS_AS(make({{Signal(Rat(3)), Rat(1, 2)}}), std::invalid_argument);
  CHECK_THROWS_AS(make({{Signal(Rat(3)), Rat(-1)}}), std::invalid_argument);
  CHECK_THROWS_AS(make({{Signal(Rat(0)), Rat(1)}}), std::invalid_argument);
  // State-l masses may not exceed 1: all mass on a signal below 1 implies 1/e > 1.
  CHECK_THROWS_AS(make({{Signal(Rat(1, 2)), Rat(1)}}), std::invalid_argument);
  // Zero-mass atoms are dropped.
  Experiment x{{{Signal(Rat(3)), Rat(1)}, {Signal(Rat(5)), Rat(0)}}};
  CHECK(x.atoms().size() == 1);
}

TEST_CASE("experiments are normalized under both states") {
  RatSampler sampler(53);
  for (int i = 0; i < 60; ++i) {
    // Random two-atom experiment above 1 plus optional mass at infinity.
    Rat e1 = 1 + sampler.positive();
    Rat e2 = e1 + sampler.positive();
    Rat m1 = sampler.open_unit();
    Rat m2 = (1 - m1) * sampler.open_unit();
    Rat minf = 1 - m1 - m2;
    Experiment x{{{Signal(e1), m1}, {Signal(e2), m2}, {Signal::infinity(), minf}}};
    Rat total_h = x.mass_h(Signal(e1)) + x.mass_h(Signal(e2)) + x.mass_h(Signal::infinity());
    Rat total_l = x.mass_l(Signal(e1)) + x.mass_l(Signal(e2)) + x.mass_l(Signal::infinity()) +
                  x.mass_l(Signal(Rat(0)));
    CHECK(total_h == 1);
    CHECK(total_l == 1);
  }
}

TEST_CASE("menu prices live in [0,1] and the free option stays free") {
  Experiment top{{{Signal(Rat(5)), Rat(1)}}};
  CHECK_THROWS_AS(Menu(PricedExperiment{top, Rat(3, 2)}, PricedExperiment{top, Rat(0)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Menu(PricedExperiment{top, Rat(-1, 2)}, PricedExperiment{top, Rat(0)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Menu(PricedExperiment{top, Rat(1)}, PricedExperiment{Experiment::none(), Rat(1, 2)}),
                  std::invalid_argument);
  CHECK_NOTHROW(Menu(PricedExperiment{top, Rat(1)}, PricedExperiment{Experiment::none(), Rat(0)}));
}

TEST_CASE("acceptance set guards") {
  CHECK_THROWS_AS(AcceptanceSet({Signal(Rat(0))}), std::invalid_argument);
  CHECK_THROWS_AS(AcceptanceSet({Signal(Rat(1))}), std::invalid_argument);
  CHECK_NOTHROW(AcceptanceSet({Signal(Rat(1))}, /*allow_uninformative=*/true));
  AcceptanceSet set({Signal(Rat(5)), Signal(Rat(1, 2))});
  CHECK(set.infimum() == Signal(Rat(1, 2)));
  CHECK(set.contains(Signal(Rat(5))));
  CHECK_FALSE(set.contains(Signal(Rat(2))));
}
