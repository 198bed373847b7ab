// Copyright 2026 The pfdqc1 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON conversion of reports, and a writer that prints every float with 17
// significant digits.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "json.hpp"
#include "pfdqc1/estimators.hpp"
#include "pfdqc1/validate.hpp"

namespace pfdqc1 {

using Json = nlohmann::ordered_json;

namespace detail {

inline void write_json(const Json& j, std::string& out, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out.push_back('\n');
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write_json(it.value(), out, indent, depth + 1);
      }
      newline(depth);
      out.push_back('}');
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out.push_back('[');
      bool first = true;
      for (const auto& v : j) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        write_json(v, out, indent, depth + 1);
      }
      newline(depth);
      out.push_back(']');
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      std::string s = buf;
      if (s.find_first_of(".eE") == std::string::npos) s += ".0";
      out += s;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace detail

/// Serializes with floats at 17 significant digits; indent < 0 gives one line.
inline std::string to_json_text(const Json& j, int indent = 2) {
  std::string out;
  detail::write_json(j, out, indent, 0);
  return out;
}

/// Formats a double the way the JSON writer does (used for CSV too).
inline std::string format_double(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Whole counts stay integers while exactly representable.
inline Json count_json(double x) {
  if (x >= 0.0 && x <= 9.0e15 && x == std::floor(x)) return static_cast<std::uint64_t>(x);
  return x;
}

inline Json to_json(const CostModel& c) {
  Json j;
  j["method"] = to_string(c.method);
  j["m"] = c.qubits;
  j["beta"] = c.beta;
  j["eps_abs"] = c.eps_abs;
  if (c.method == Method::Chebyshev) {
    j["K"] = c.expansion_terms;
  } else {
    j["J"] = c.expansion_terms;
    j["delta_y"] = c.delta_y;
  }
  j["num_terms"] = c.num_terms;
  j["per_term_epsilon"] = c.per_term_epsilon;
  j["delta0"] = c.delta0;
  j["Q"] = count_json(c.shots_per_term);
  j["n"] = c.circuit_qubits;
  j["m_prime"] = c.m_prime;
  j["hoeffding_exponent"] = c.hoeffding_exponent;
  j["total_shots"] = count_json(c.total_shots);
  j["shot_cap"] = c.shot_cap;
  j["infeasible"] = !c.feasible;
  j["asymptotic_indicative"] = {{"cost_prefactor", c.cost_prefactor},
                                {"dominating_factor", c.dominating_factor},
                                {"additive_complexity", c.additive_complexity}};
  return j;
}

inline Json to_json(const RelativeTrace& t) {
  Json j;
  j["R"] = t.R;
  j["eps_rel"] = t.eps_rel;
  j["delta"] = t.delta;
  Json rounds = Json::array();
  for (const auto& r : t.rounds) {
    rounds.push_back({{"r", r.r},
                      {"threshold", r.threshold},
                      {"eps_abs", r.eps_abs},
                      {"delta_prime", r.delta_prime},
                      {"z_hat", r.estimate},
                      {"total_shots", r.shots},
                      {"total_terms", r.terms}});
  }
  j["rounds"] = std::move(rounds);
  return j;
}

inline Json to_json(const EstimationReport& r) {
  Json j;
  j["method"] = to_string(r.method);
  j["mode"] = to_string(r.mode);
  j["m"] = r.qubits;
  j["beta_working"] = r.beta;
  j["eps_abs"] = r.eps_abs;
  j["delta"] = r.delta;
  j["z_max"] = r.z_max;
  j["y_hat"] = r.y_hat;
  j["z_hat"] = r.z_hat;
  j["clamped"] = to_string(r.clamped);
  j["log_offset"] = r.log_offset;
  j["z_hat_original"] = r.z_hat_original;
  Json terms = Json::array();
  for (const auto& t : r.per_term) {
    terms.push_back({{"index", t.index}, {"chi_hat", t.chi_hat}, {"exact_trace", t.exact_trace},
                     {"shots", t.shots}});
  }
  j["per_term"] = std::move(terms);
  j["total_shots"] = r.total_shots;
  j["total_terms"] = r.total_terms;
  j["predicted_cost"] = to_json(r.cost);
  if (r.relative) j["relative_trace"] = to_json(*r.relative);
  return j;
}

inline Json to_json(const PropertyResult& p) {
  return {{"name", p.name},           {"module", p.module},   {"residual", p.residual},
          {"threshold", p.threshold}, {"passed", p.passed},   {"detail", p.detail}};
}

}  // namespace pfdqc1
