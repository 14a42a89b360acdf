#include "certmenu/serialize.hpp"

#include <stdexcept>

namespace certmenu {

Json to_json(const Experiment& x) {
  if (x.is_none()) return Json("none");
  Json out = Json::object();
  for (const auto& [signal, mass] : x.atoms()) out[signal.str()] = format_rat(mass);
  return out;
}

Json to_json(const Menu& m) {
  Json out;
  out["high"] = {{"experiment", to_json(m.high().experiment)}, {"price", format_rat(m.high().price)}};
  out["low"] = {{"experiment", to_json(m.low().experiment)}, {"price", format_rat(m.low().price)}};
  return out;
}

Json to_json(const WelfareAccount& account) {
  Json out;
  out["revenue"] = format_rat(account.revenue);
  out["rent_high"] = format_rat(account.rent_high);
  out["rent_low"] = format_rat(account.rent_low);
  if (account.receiver_payoff) out["receiver_payoff"] = format_rat(*account.receiver_payoff);
  out["accept_prob_h"] = format_rat(account.accept_prob_h);
  out["accept_prob_l"] = format_rat(account.accept_prob_l);
  if (account.hypothetical) out["hypothetical"] = true;
  return out;
}

namespace {

void put_margin(Json& out, const std::string& key, const CheckMargin& margin) {
  out[key] = margin.pass;
  out[key + "_margin"] = format_rat(margin.margin);
}

}  // namespace

Json to_json(const ObedienceReport& report) {
  Json out;
  put_margin(out, "sender_ic_high", report.sender_ic_high);
  put_margin(out, "sender_ic_low", report.sender_ic_low);
  put_margin(out, "sender_ir_high", report.sender_ir_high);
  put_margin(out, "sender_ir_low", report.sender_ir_low);
  put_margin(out, "receiver_obedience", report.receiver_obedience);
  out["overall"] = report.overall;
  return out;
}

Json to_json(const SolveResult& result) {
  Json out;
  out["menu"] = to_json(result.menu);
  out["revenue"] = format_rat(result.welfare.revenue);
  out["rent_high"] = format_rat(result.welfare.rent_high);
  out["rent_low"] = format_rat(result.welfare.rent_low);
  if (result.welfare.receiver_payoff) {
    out["receiver_payoff"] = format_rat(*result.welfare.receiver_payoff);
  }
  out["accept_prob_h"] = format_rat(result.welfare.accept_prob_h);
  out["accept_prob_l"] = format_rat(result.welfare.accept_prob_l);
  out["regime"] = std::string(to_string(result.regime));
  out["solver_path"] = std::string(to_string(result.solver_path));
  return out;
}

Json to_json(const RunConfig& config) {
  Json out;
  Json market;
  market["mu"] = format_rat(config.params.mu());
  if (config.params.utilities()) {
    const ReceiverUtilities& u = *config.params.utilities();
    market["receiver_utilities"] = {{"v_ah_h", format_rat(u.accept_high)},
                                    {"v_al_h", format_rat(u.reject_high)},
                                    {"v_al_l", format_rat(u.reject_low)},
                                    {"v_ah_l", format_rat(u.accept_low)}};
  } else {
    market["pi_star"] = format_rat(config.params.pi_star());
  }
  out["market"] = std::move(market);
  if (config.naive) {
    out["acceptance"] = "naive";
  } else {
    Json atoms = Json::array();
    if (config.acceptance) {
      for (const Signal& e : config.acceptance->signals()) atoms.push_back(e.str());
    }
    out["acceptance"] = std::move(atoms);
  }
  out["flags"] = {{"allow_uninformative", config.allow_uninformative},
                  {"single_item", config.single_item},
                  {"solver_path", config.solver_path},
                  {"grid_size", config.naive_grid_size}};
  return out;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument("config." + where + ": " + what);
}

Rat field_rat(const Json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) fail(where + "." + key, "missing");
  const Json& v = obj.at(key);
  try {
    if (v.is_string()) return parse_rat(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<long long>());
  } catch (const std::exception& e) {
    fail(where + "." + key, e.what());
  }
  fail(where + "." + key, "expected a fraction string or integer");
}

}  // namespace

RunConfig parse_config(const Json& doc) {
  RunConfig config;
  if (!doc.is_object()) fail("", "expected a JSON object");
  if (!doc.contains("market")) fail("market", "missing");
  const Json& market = doc.at("market");
  if (!market.is_object()) fail("market", "expected an object");

  Rat mu = field_rat(market, "market", "mu");
  if (mu <= 0 || mu >= 1) fail("market.mu", "must lie strictly in (0,1)");

  if (market.contains("pi_star")) {
    Rat pi_star = field_rat(market, "market", "pi_star");
    if (pi_star <= 0 || pi_star >= 1) fail("market.pi_star", "must lie strictly in (0,1)");
    config.params = MarketParams::from_threshold(std::move(mu), std::move(pi_star));
  } else if (market.contains("receiver_utilities")) {
    const Json& u = market.at("receiver_utilities");
    if (!u.is_object()) fail("market.receiver_utilities", "expected an object");
    try {
      ReceiverUtilities utilities{
          field_rat(u, "market.receiver_utilities", "v_ah_h"),
          field_rat(u, "market.receiver_utilities", "v_al_h"),
          field_rat(u, "market.receiver_utilities", "v_al_l"),
          field_rat(u, "market.receiver_utilities", "v_ah_l"),
      };
      config.params = MarketParams::from_utilities(std::move(mu), std::move(utilities));
    } catch (const std::invalid_argument& e) {
      std::string what = e.what();
      if (what.rfind("config.", 0) == 0) throw;
      fail("market.receiver_utilities", what);
    }
  } else {
    fail("market", "needs pi_star or receiver_utilities");
  }

  if (doc.contains("flags")) {
    const Json& flags = doc.at("flags");
    if (!flags.is_object()) fail("flags", "expected an object");
    if (flags.contains("allow_uninformative")) {
      if (!flags.at("allow_uninformative").is_boolean()) fail("flags.allow_uninformative", "expected a boolean");
      config.allow_uninformative = flags.at("allow_uninformative").get<bool>();
    }
    if (flags.contains("single_item")) {
      if (!flags.at("single_item").is_boolean()) fail("flags.single_item", "expected a boolean");
      config.single_item = flags.at("single_item").get<bool>();
    }
    if (flags.contains("solver_path")) {
      if (!flags.at("solver_path").is_string()) fail("flags.solver_path", "expected a string");
      config.solver_path = flags.at("solver_path").get<std::string>();
    }
    if (flags.contains("grid_size")) {
      if (!flags.at("grid_size").is_number_integer()) fail("flags.grid_size", "expected an integer");
      config.naive_grid_size = flags.at("grid_size").get<int>();
      if (config.naive_grid_size < 1) fail("flags.grid_size", "must be positive");
    }
  }
  if (config.solver_path != "lp" && config.solver_path != "closed-form" &&
      config.solver_path != "support-enum" && config.solver_path != "all") {
    fail("flags.solver_path", "expected lp, closed-form, support-enum, or all");
  }

  if (!doc.contains("acceptance")) fail("acceptance", "missing");
  const Json& acceptance = doc.at("acceptance");
  if (acceptance.is_string() && acceptance.get<std::string>() == "naive") {
    config.naive = true;
  } else if (acceptance.is_array()) {
    std::vector<Signal> signals;
    for (std::size_t i = 0; i < acceptance.size(); ++i) {
      const Json& item = acceptance.at(i);
      if (!item.is_string()) fail("acceptance[" + std::to_string(i) + "]", "expected a signal string");
      try {
        signals.push_back(Signal::parse(item.get<std::string>()));
      } catch (const std::exception& e) {
        fail("acceptance[" + std::to_string(i) + "]", e.what());
      }
    }
    try {
      config.acceptance = AcceptanceSet(std::move(signals), config.allow_uninformative);
    } catch (const std::exception& e) {
      fail("acceptance", e.what());
    }
  } else {
    fail("acceptance", "expected a signal list or \"naive\"");
  }
  return config;
}

}  // namespace certmenu
