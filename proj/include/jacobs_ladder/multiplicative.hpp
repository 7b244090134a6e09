// Copyright 2026 The jacobs-ladder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Mean values of products of |zeta(1/2 + i phi_1^k(t))|^2 over [T, T + U]
// against products of means over the image intervals, both for the exact
// derivative weights d phi_1 / dt and for plain Z^2, plus the interval-shrink
// bounds and the second-moment law. Results are VerificationReports.

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "jacobs_ladder/errors.hpp"
#include "jacobs_ladder/ladder.hpp"
#include "jacobs_ladder/quadrature.hpp"

namespace jl {

enum class Formula { exact_identity, theorem, telescope, shrink_bounds, hl_law };

inline std::string_view formula_name(Formula f) {
  switch (f) {
    case Formula::exact_identity: return "exact_identity";
    case Formula::theorem: return "theorem";
    case Formula::telescope: return "telescope";
    case Formula::shrink_bounds: return "shrink_bounds";
    case Formula::hl_law: return "hl_law";
  }
  return "unknown";
}

// Accepts both `exact_identity` and `exact-identity` spellings.
inline std::optional<Formula> parse_formula(std::string_view s) {
  std::string key(s);
  for (char& ch : key) {
    if (ch == '-') ch = '_';
  }
  for (Formula f : {Formula::exact_identity, Formula::theorem, Formula::telescope, Formula::shrink_bounds,
                    Formula::hl_law}) {
    if (key == formula_name(f)) return f;
  }
  return std::nullopt;
}

struct AcceptanceWindows {
  double identity = 1e-6;   // |ratio - 1| for exact_identity
  double telescope = 1e-6;  // relative mismatch of lhs * U against the top-iterate increment
  double theorem = 0.2;     // |ratio - 1| for theorem
  double hl_low = 0.75;     // F(T) / (T log T) must lie in (hl_low, hl_high)
  double hl_high = 1.0;
};

// Largest U admitted: T / log^2 T, or T / log T with allow_wide_u.
inline double max_window(double T, bool allow_wide_u) {
  const double L = std::log(T);
  return allow_wide_u ? T / L : T / (L * L);
}

struct VerificationRequest {
  double T = 1e5;
  double U = 0.0;
  int n = 0;
  double tol = 1e-9;  // absolute or relative tolerance on each mean value, whichever is looser
  Formula formula = Formula::exact_identity;
  bool allow_wide_u = false;
  bool reverse_product = false;  // multiply factors k = n..0 instead of 0..n

  void validate(const Constants& k) const {
    if (!(T >= k.T0) || !std::isfinite(T)) throw std::invalid_argument("T must be a finite value >= T0");
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    if (formula == Formula::hl_law) return;
    if (!(U > 0.0) || !std::isfinite(U)) throw std::invalid_argument("U must be a finite value > 0");
    if (U > max_window(T, allow_wide_u)) {
      throw std::invalid_argument(allow_wide_u ? "U exceeds T/log T" : "U exceeds T/log^2 T");
    }
  }
};

struct FactorDetail {
  int k = 0;
  double lo = 0.0;
  double hi = 0.0;
  double mean = 0.0;
};

struct VerificationReport {
  Formula formula = Formula::exact_identity;
  double T = 0.0;
  double U = 0.0;
  int n = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double tolerance_used = 0.0;  // acceptance window applied to the ratio
  double quad_tol = 0.0;
  bool pass = false;
  bool inconclusive = false;
  std::optional<double> telescope;  // phi^{n+1}(T+U) - phi^{n+1}(T), over U
  std::vector<FactorDetail> details;
  std::vector<std::string> notes;
};

namespace detail {

inline double safe_ratio(double lhs, double rhs) {
  return rhs != 0.0 ? lhs / rhs : std::numeric_limits<double>::quiet_NaN();
}

// (1 / (b - a)) * integral of f over [a, b]; `length` overrides b - a as the
// divisor. The mean is resolved to tol absolute or tol relative, whichever
// is looser: products of n + 1 factors span many orders of magnitude.
template <class F>
double mean_value(const F& f, double a, double b, double length, double tol, QuadratureOptions options) {
  options.rel_tol = tol;
  const IntegralResult r = adaptive_integrate(f, a, b, tol * length, z_sq_panel_width(b), options);
  return r.value / length;
}

// Rejects image intervals too short to resolve in double precision.
inline double image_length(double lo, double hi, int k) {
  const double length = hi - lo;
  if (!(length > 1e3 * std::numeric_limits<double>::epsilon() * std::fabs(hi))) {
    throw PrecisionLossError("image interval " + std::to_string(k) + " has no resolvable length; U too small");
  }
  return length;
}

inline double product(const double* factors, int count, bool reverse) {
  double p = 1.0;
  if (reverse) {
    for (int k = count - 1; k >= 0; --k) p *= factors[k];
  } else {
    for (int k = 0; k < count; ++k) p *= factors[k];
  }
  return p;
}

// (1/U) * integral over [T, T+U] of prod_k w(phi^k(t)), w = Z^2 or the
// derivative weight Z^2 / G'(phi_1).
inline double lhs_mean(const LadderWindow* window, const VerificationRequest& req, bool derivative_weight,
                       const QuadratureOptions& options) {
  const int n = req.n;
  if (n == 0 && !derivative_weight) {
    return mean_value([](double t) { return zeta_sq(t); }, req.T, req.T + req.U, req.U, req.tol, options);
  }
  const int depth = derivative_weight ? n + 1 : n;
  auto integrand = [&](double t) {
    double chain[64];
    double factors[64];
    window->chain(t, depth, chain);
    for (int k = 0; k <= n; ++k) {
      factors[k] = zeta_sq(chain[k]);
      if (derivative_weight) factors[k] /= g_derivative(chain[k + 1], window->constants());
    }
    return product(factors, n + 1, req.reverse_product);
  };
  return mean_value(integrand, req.T, req.T + req.U, req.U, req.tol, options);
}

// prod_k of the mean of w over [phi^k(T), phi^k(T+U)]; the k = 0 length is U.
inline double rhs_means(const LadderWindow* window, const VerificationRequest& req, bool derivative_weight,
                        const QuadratureOptions& options, std::vector<FactorDetail>& details) {
  details.clear();
  std::vector<double> factors;
  for (int k = 0; k <= req.n; ++k) {
    FactorDetail d;
    d.k = k;
    double length = req.U;
    if (k == 0) {
      d.lo = req.T;
      d.hi = req.T + req.U;
    } else {
      std::tie(d.lo, d.hi) = window->interval(k);
      length = image_length(d.lo, d.hi, k);
    }
    if (derivative_weight) {
      d.mean = mean_value([&](double x) { return window->derivative(k, x); }, d.lo, d.hi, length, req.tol, options);
    } else {
      d.mean = mean_value([](double t) { return zeta_sq(t); }, d.lo, d.hi, length, req.tol, options);
    }
    details.push_back(d);
    factors.push_back(d.mean);
  }
  return product(factors.data(), static_cast<int>(factors.size()), req.reverse_product);
}

inline std::optional<LadderWindow> make_window(Ladder& ladder, const VerificationRequest& req, int levels) {
  if (levels == 0) return std::nullopt;
  if (levels > 62) throw std::invalid_argument("n too large");
  return LadderWindow(ladder, req.T, req.T + req.U, levels);
}

inline VerificationReport start_report(const VerificationRequest& req, double window, double quad_tol) {
  VerificationReport r;
  r.formula = req.formula;
  r.T = req.T;
  r.U = req.U;
  r.n = req.n;
  r.tolerance_used = window;
  r.quad_tol = quad_tol;
  return r;
}

}  // namespace detail

// (1/U) * integral over [T, T+U] of prod_{k=0}^n Z^2(phi_1^k(t)).
inline double lhs_product_integral(Ladder& ladder, const VerificationRequest& req) {
  req.validate(ladder.constants());
  const auto window = detail::make_window(ladder, req, req.n);
  return detail::lhs_mean(window ? &*window : nullptr, req, false, ladder.options());
}

// prod_{k=0}^n of the mean of Z^2 over [phi_1^k(T), phi_1^k(T+U)].
inline double rhs_product_means(Ladder& ladder, const VerificationRequest& req,
                                std::vector<FactorDetail>* details = nullptr) {
  req.validate(ladder.constants());
  const auto window = detail::make_window(ladder, req, req.n);
  std::vector<FactorDetail> local;
  const double r = detail::rhs_means(window ? &*window : nullptr, req, false, ladder.options(), local);
  if (details) *details = std::move(local);
  return r;
}

// Both sides with the derivative weight Z~^2 = d phi_1 / dt. The chain rule
// makes them equal to (phi^{n+1}(T+U) - phi^{n+1}(T)) / U, reported as
// `telescope`; pass needs |ratio - 1| and the telescope mismatch within window.
inline VerificationReport exact_identity_check(Ladder& ladder, const VerificationRequest& req,
                                               const AcceptanceWindows& windows = {}) {
  req.validate(ladder.constants());
  const auto window = detail::make_window(ladder, req, req.n + 1);
  VerificationReport r = detail::start_report(req, windows.identity, req.tol);
  r.lhs = detail::lhs_mean(&*window, req, true, ladder.options());
  r.rhs = detail::rhs_means(&*window, req, true, ladder.options(), r.details);
  r.ratio = detail::safe_ratio(r.lhs, r.rhs);
  const auto [top_lo, top_hi] = window->interval(req.n + 1);
  r.telescope = (top_hi - top_lo) / req.U;
  const double mismatch = std::fabs(r.lhs - *r.telescope) / std::fabs(*r.telescope);
  char buf[96];
  std::snprintf(buf, sizeof buf, "telescope relative mismatch %.3e", mismatch);
  r.notes.emplace_back(buf);
  r.pass = std::fabs(r.ratio - 1.0) <= windows.identity && mismatch <= windows.telescope;
  return r;
}

// lhs = (1/U) * integral of the derivative-weight product, rhs = the top-iterate
// increment over U; ratio 1 up to quadrature error.
inline VerificationReport telescope_check(Ladder& ladder, const VerificationRequest& req,
                                          const AcceptanceWindows& windows = {}) {
  req.validate(ladder.constants());
  const auto window = detail::make_window(ladder, req, req.n + 1);
  VerificationReport r = detail::start_report(req, windows.telescope, req.tol);
  r.lhs = detail::lhs_mean(&*window, req, true, ladder.options());
  const auto [top_lo, top_hi] = window->interval(req.n + 1);
  r.rhs = (top_hi - top_lo) / req.U;
  r.telescope = r.rhs;
  r.ratio = detail::safe_ratio(r.lhs, r.rhs);
  r.pass = std::fabs(r.ratio - 1.0) <= windows.telescope;
  return r;
}

// Mean of the product of Z^2 over the chain against the product of means.
inline VerificationReport theorem_check(Ladder& ladder, const VerificationRequest& req,
                                        const AcceptanceWindows& windows = {}) {
  req.validate(ladder.constants());
  const auto window = detail::make_window(ladder, req, req.n);
  const LadderWindow* w = window ? &*window : nullptr;
  VerificationReport r = detail::start_report(req, windows.theorem, req.tol);
  r.lhs = detail::lhs_mean(w, req, false, ladder.options());
  r.rhs = detail::rhs_means(w, req, false, ladder.options(), r.details);
  r.ratio = detail::safe_ratio(r.lhs, r.rhs);
  r.pass = std::fabs(r.ratio - 1.0) <= windows.theorem;
  return r;
}

// For k = 1..n: phi^k(T+U) - phi^k(T) < (2k+1)/(2n+1) * T/log T, and
// |phi^1(T+U) - phi^1(T) - U| < 2/(2n+1) * T/log T. Needs log T > 2n + 1 and
// the gap ratio at T within 1/(2n+1) of 1; otherwise the report is
// inconclusive. lhs/rhs hold the largest length-to-bound quotient and 1.
inline VerificationReport shrink_bounds_check(Ladder& ladder, double T, double U, int n) {
  VerificationRequest req;
  req.T = T;
  req.U = U;
  req.n = n;
  req.formula = Formula::shrink_bounds;
  req.validate(ladder.constants());
  VerificationReport r = detail::start_report(req, 0.0, ladder.quad_tol());
  const double L = std::log(T);
  const double scale = T / L;
  const double denom = 2.0 * n + 1.0;
  char buf[192];
  if (!(L > denom)) {
    r.inconclusive = true;
    std::snprintf(buf, sizeof buf, "precheck failed: log T = %.6g is not above 2n + 1 = %d", L, 2 * n + 1);
    r.notes.emplace_back(buf);
    return r;
  }
  const double gap = ladder.gap_report(T);
  if (!(std::fabs(gap - 1.0) < 1.0 / denom)) {
    r.inconclusive = true;
    std::snprintf(buf, sizeof buf, "precheck failed: gap ratio %.6g not within 1/(2n+1) of 1", gap);
    r.notes.emplace_back(buf);
    return r;
  }

  r.pass = true;
  double worst = 0.0;
  auto record = [&](double value, double bound, const std::string& what) {
    worst = std::max(worst, value / bound);
    if (!(value < bound)) {
      r.pass = false;
      std::snprintf(buf, sizeof buf, "%s: %.17g not below %.17g", what.c_str(), value, bound);
      r.notes.emplace_back(buf);
    }
  };
  FactorDetail zero{0, T, T + U, U};
  r.details.push_back(zero);
  record(U, scale / denom, "k = 0 length");
  if (n >= 1) {
    const IterationChain lo = ladder.phi1_iterate(T, n - 1);
    const IterationChain hi = ladder.phi1_iterate(T + U, n - 1);
    for (int k = 1; k <= n; ++k) {
      const double a = lo.values[static_cast<std::size_t>(k)];
      const double b = hi.values[static_cast<std::size_t>(k)];
      r.details.push_back({k, a, b, b - a});
      record(b - a, (2.0 * k + 1.0) / denom * scale, "k = " + std::to_string(k) + " length");
      if (!(b - a > 0.0)) {
        r.pass = false;
        r.notes.emplace_back("image interval not increasing at k = " + std::to_string(k));
      }
    }
    const double shift = r.details[1].hi - r.details[1].lo - U;
    record(std::fabs(shift), 2.0 / denom * scale, "k = 1 shift");
  }
  r.lhs = worst;
  r.rhs = 1.0;
  r.ratio = worst;
  r.tolerance_used = 1.0;
  return r;
}

// F(T) / (T log T) inside (hl_low, hl_high).
inline VerificationReport hl_law_check(Ladder& ladder, double T, const AcceptanceWindows& windows = {}) {
  VerificationRequest req;
  req.T = T;
  req.formula = Formula::hl_law;
  req.tol = ladder.quad_tol();
  req.validate(ladder.constants());
  VerificationReport r = detail::start_report(req, windows.hl_high - windows.hl_low, ladder.quad_tol());
  r.lhs = ladder.F(T).value;
  r.rhs = T * std::log(T);
  r.ratio = r.lhs / r.rhs;
  r.pass = r.ratio > windows.hl_low && r.ratio < windows.hl_high;
  return r;
}

inline VerificationReport verify(Ladder& ladder, const VerificationRequest& req,
                                 const AcceptanceWindows& windows = {}) {
  switch (req.formula) {
    case Formula::exact_identity: return exact_identity_check(ladder, req, windows);
    case Formula::theorem: return theorem_check(ladder, req, windows);
    case Formula::telescope: return telescope_check(ladder, req, windows);
    case Formula::shrink_bounds: return shrink_bounds_check(ladder, req.T, req.U, req.n);
    case Formula::hl_law: return hl_law_check(ladder, req.T, windows);
  }
  throw std::invalid_argument("unknown formula");
}

// Non-finite numbers become null.
inline nlohmann::ordered_json to_json_value(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["formula"] = formula_name(r.formula);
  j["T"] = r.T;
  j["U"] = r.U;
  j["n"] = r.n;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["ratio"] = r.ratio;
  j["tolerance_used"] = r.tolerance_used;
  j["pass"] = r.pass;
  j["details"] = nlohmann::ordered_json::array();
  for (const FactorDetail& d : r.details) {
    j["details"].push_back({{"k", d.k}, {"interval", {d.lo, d.hi}}, {"mean", d.mean}});
  }
  j["quad_tol"] = r.quad_tol;
  if (r.telescope) j["telescope"] = *r.telescope;
  if (r.inconclusive) j["inconclusive"] = true;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

inline std::string to_json(const VerificationReport& r) { return to_json_value(r).dump(); }

}  // namespace jl
