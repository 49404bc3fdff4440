#ifndef DISCLOSURE_IO_HPP_
#define DISCLOSURE_IO_HPP_

// Structured-text (JSON) forms of the library's value types. All reals are
// rounded to 12 significant digits on the way out.

#include <optional>
#include <string>

#include "json.hpp"

#include "disclosure/benchmarks.hpp"
#include "disclosure/experiments.hpp"
#include "disclosure/mechanisms.hpp"
#include "disclosure/numerics.hpp"
#include "disclosure/sim.hpp"

namespace disclosure {

using Json = nlohmann::ordered_json;

inline Json number(double x) { return round_sig12(x); }

inline Json number(const std::optional<double>& x) {
  return x ? Json(round_sig12(*x)) : Json(nullptr);
}

inline Json numbers(const std::vector<double>& xs) {
  Json arr = Json::array();
  for (double x : xs) arr.push_back(round_sig12(x));
  return arr;
}

inline Json to_json(const ModelParams& p) {
  return Json{{"mu", number(p.prior_good)},
              {"q", number(p.hazard)},
              {"T", p.horizon},
              {"c", number(p.delay_cost)}};
}

inline Json to_json(const TbpMechanism& m) {
  return Json{{"n_p", m.threshold()}, {"q_np", number(m.bad_silence())}};
}

inline Json to_json(const SilentPathPolicy& p) {
  return Json{{"rho_g", numbers(p.good)}, {"rho_b", numbers(p.bad)}};
}

inline Json to_json(const BenchmarkSuite& b) {
  return Json{{"no_info_utility", number(b.no_info_utility)},
              {"full_info_utility", number(b.full_info_utility)},
              {"static_rho_hat", number(b.static_rho_hat)},
              {"static_utility", number(b.static_utility)}};
}

inline Json to_json(const SimReport& r) {
  return Json{{"episodes", r.episodes},
              {"mean_principal_utility", number(r.mean_principal_utility)},
              {"stderr_utility", number(r.stderr_utility)},
              {"mean_detector_cost", number(r.mean_detector_cost)},
              {"stderr_cost", number(r.stderr_cost)},
              {"false_alarm_rate", number(r.false_alarm_rate)},
              {"mean_delay", number(r.mean_delay)}};
}

inline TbpMechanism mechanism_from_json(const Json& j, int horizon) {
  if (!j.contains("n_p") || !j.contains("q_np")) {
    throw ParameterError("policy", "mechanism document needs n_p and q_np");
  }
  return TbpMechanism(j.at("n_p").get<int>(), j.at("q_np").get<double>(), horizon);
}

inline SilentPathPolicy policy_from_json(const Json& j) {
  if (!j.contains("rho_g") || !j.contains("rho_b")) {
    throw ParameterError("policy", "policy document needs rho_g and rho_b");
  }
  SilentPathPolicy p{j.at("rho_g").get<std::vector<double>>(),
                     j.at("rho_b").get<std::vector<double>>()};
  p.validate();
  return p;
}

// Accepts a bare {n_p, q_np} or {rho_g, rho_b} object, or a result document
// carrying one under "mechanism" or "policy". A document that records its
// model must have been produced for the same horizon.
inline SilentPathPolicy any_policy_from_json(const Json& j, int horizon) {
  if (j.contains("model") && j.at("model").contains("T") &&
      j.at("model").at("T").get<int>() != horizon) {
    throw ParameterError("policy-file", "document was produced for T = " +
                                            std::to_string(j.at("model").at("T").get<int>()));
  }
  if (j.contains("rho_g")) return policy_from_json(j);
  if (j.contains("n_p")) return tbp_to_silent_path(mechanism_from_json(j, horizon));
  if (j.contains("result")) return any_policy_from_json(j.at("result"), horizon);
  if (j.contains("policy")) return any_policy_from_json(j.at("policy"), horizon);
  if (j.contains("mechanism")) return any_policy_from_json(j.at("mechanism"), horizon);
  throw ParameterError("policy", "document holds neither a mechanism nor a policy");
}

}  // namespace disclosure

#endif  // DISCLOSURE_IO_HPP_
