#pragma once

#include <cmath>
#include <json.hpp>

#include "benford/conformance.hpp"
#include "benford/csv.hpp"
#include "benford/fourier.hpp"
#include "benford/harness.hpp"
#include "benford/spectrum.hpp"

namespace benford {

// JSON emission with the stable field names the CLI documents. Non-finite
// values (the +inf upper-bound sentinel) are encoded as null.

inline nlohmann::json to_json(const IngestionSummary& s) {
  return {{"rows_read", s.rows_read},
          {"rows_used", s.rows_used},
          {"rows_dropped_nonpositive", s.rows_dropped_nonpositive},
          {"rows_dropped_unparseable", s.rows_dropped_unparseable},
          {"column", s.column}};
}

inline nlohmann::json to_json(const RankBound& r) {
  return {{"N", r.N}, {"bound", r.bound}, {"observed", r.observed_sup}, {"ok", r.satisfied}};
}

inline nlohmann::json to_json(const ConformanceReport& r) {
  nlohmann::json j{{"base", r.base},
                   {"m", r.m},
                   {"ks", r.ks_distance},
                   {"hill_p", r.hill_p},
                   {"hill_residual", r.hill_residual}};
  if (r.digit_freqs) {
    nlohmann::json digits = nlohmann::json::array();
    for (const auto& d : *r.digit_freqs)
      digits.push_back({{"digit", d.digit}, {"freq", d.freq}, {"benford", d.benford_freq}});
    j["digits"] = std::move(digits);
  }
  if (r.rank_bound) j["rank"] = to_json(*r.rank_bound);
  j["verdict"] = r.verdict == Verdict::periodic
                     ? std::string("periodic(") + std::to_string(r.period) + ")"
                     : to_string(r.verdict);
  return j;
}

inline nlohmann::json to_json(const SpectrumEstimate& e) {
  nlohmann::json j{{"grid", e.grid},
                   {"residuals", e.residuals},
                   {"detected", e.detected},
                   {"n_max", e.n_max},
                   {"tol", e.tol}};
  if (std::isfinite(e.upper_bound))
    j["upper_bound"] = e.upper_bound;
  else
    j["upper_bound"] = nullptr;
  return j;
}

inline nlohmann::json to_json(const FourierSpectrum& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (int n = 0; n <= s.n_max; ++n) {
    const auto& c = s.coeffs[static_cast<std::size_t>(n)];
    coeffs.push_back({{"n", n}, {"re", c.real()}, {"im", c.imag()}});
  }
  nlohmann::json j{{"coeffs", std::move(coeffs)}};
  if (s.mean)
    j["mean"] = *s.mean;
  else
    j["mean"] = nullptr;
  return j;
}

inline nlohmann::json to_json(const ExperimentResult& r) {
  nlohmann::json stats = nlohmann::json::object();
  for (const auto& [k, v] : r.statistics) stats[k] = v;
  nlohmann::json j{{"name", r.name},       {"seed", r.seed},        {"m", r.m},
                   {"statistics", stats},  {"threshold", r.threshold},
                   {"passed", r.passed}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace benford
