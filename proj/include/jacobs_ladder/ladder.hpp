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

// Jacob's ladder phi_1: the increasing solution V of
//   G(V) = V log V + (c - log 2 pi) V + c0 = F(T),
// its iterates phi_1^k and derivative F'(t) / G'(phi_1(t)).

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "jacobs_ladder/errors.hpp"
#include "jacobs_ladder/quadrature.hpp"
#include "jacobs_ladder/zeta_core.hpp"

namespace jl {

struct Constants {
  double c = kEulerGamma;
  double ln2pi = kLnTwoPi;
  double c0 = 0.0;
  double eps = 0.01;
  double T0 = 1e3;

  // Minimiser of G; G is increasing to the right of it.
  double v_star() const { return std::exp(ln2pi - 1.0 - c); }

  void validate() const {
    if (!(1.0 - c > 0.0 && 1.0 - c < 1.0)) throw std::invalid_argument("Constants: need 0 < 1 - c < 1");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("Constants: eps must lie in (0, 1)");
    if (!(T0 > v_star())) throw std::invalid_argument("Constants: T0 must exceed the minimiser of G");
    if (!std::isfinite(c0) || !std::isfinite(ln2pi)) throw std::invalid_argument("Constants: non-finite value");
  }
};

struct LadderPoint {
  double T = 0.0;
  double phi = 0.0;
  double residual = 0.0;  // G(phi) - F(T)
  double f_err = 0.0;     // quadrature error of F(T) carried into phi
};

struct IterationChain {
  double t = 0.0;
  int n = 0;
  std::vector<double> values;     // phi_1^0(t), ..., phi_1^{n+1}(t)
  std::vector<double> residuals;  // residual of each solve, same indexing, 0 at k = 0
};

inline double g_function(double V, const Constants& k) {
  if (!(V > 0.0)) throw DomainError("g_function: V must be > 0");
  return V * std::log(V) + (k.c - k.ln2pi) * V + k.c0;
}

inline double g_derivative(double V, const Constants& k) {
  if (!(V > 0.0)) throw DomainError("g_derivative: V must be > 0");
  return std::log(V) + 1.0 + k.c - k.ln2pi;
}

struct InverseResult {
  double V = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Solves G(V) = target on the increasing branch V > V*. `guess` seeds Newton
// and, halved, the left end of the initial bracket [guess / 2, guess]; both
// ends are widened as needed. Newton steps that leave the bracket are
// replaced by bisection. Stops once a step is below `rtol * V`, after taking it.
inline InverseResult g_inverse(double target, double guess, const Constants& k, double rtol = 1e-12) {
  if (!std::isfinite(target)) throw DomainError("g_inverse: non-finite target");
  const double v_star = k.v_star();
  if (target < g_function(v_star, k)) throw BracketError("g_inverse: target below the minimum of G");
  double hi = std::max(guess, 2.0 * v_star);
  double lo = std::max(0.5 * hi, v_star);
  for (int i = 0; g_function(hi, k) < target; ++i) {
    if (i > 1100) throw BracketError("g_inverse: cannot bracket target from above");
    lo = hi;
    hi *= 2.0;
  }
  while (g_function(lo, k) > target) {
    if (lo == v_star) throw BracketError("g_inverse: target below G on the increasing branch");
    hi = lo;
    lo = std::max(0.5 * lo, v_star);
  }

  InverseResult out;
  double V = std::clamp(guess, lo, hi);
  constexpr int kMaxIterations = 200;
  for (out.iterations = 1; out.iterations <= kMaxIterations; ++out.iterations) {
    const double r = g_function(V, k) - target;
    if (r == 0.0) break;
    if (r > 0.0) {
      hi = V;
    } else {
      lo = V;
    }
    double next = V - r / g_derivative(V, k);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = next - V;
    V = next;
    if (std::fabs(step) <= rtol * V || lo == hi) break;
  }
  if (out.iterations > kMaxIterations) throw ConvergenceError("g_inverse: Newton iteration did not converge");
  // Polish: the stopping rule leaves at most one quadratically small step.
  const double r = g_function(V, k) - target;
  const double polished = V - r / g_derivative(V, k);
  if (std::fabs(g_function(polished, k) - target) < std::fabs(r)) V = polished;
  out.V = V;
  out.residual = g_function(V, k) - target;
  return out;
}

// Leading-order estimate of phi_1(T) from the gap law.
inline double ladder_guess(double T, const Constants& k) {
  const double L = std::log(T);
  return L > 1.0 ? T * (1.0 - (1.0 - k.c) / L) : T;
}

// Smallest residual |G(V) - F| attainable in double precision for F.
inline double residual_floor(double F) { return 8.0 * std::numeric_limits<double>::epsilon() * std::fabs(F); }

// Ladder over a shared checkpoint table. F(T) comes from hl_integral at the
// quadrature tolerance `quad_tol`; the table is mutated (new points cached), so
// one Ladder per thread or external locking.
class Ladder {
 public:
  Ladder(Constants constants, CheckpointTable& table, double quad_tol = 1e-9, QuadratureOptions options = {})
      : k_(constants), table_(&table), quad_tol_(quad_tol), options_(options) {
    k_.validate();
    if (!(quad_tol > 0.0)) throw std::invalid_argument("Ladder: quad_tol must be > 0");
  }

  const Constants& constants() const noexcept { return k_; }
  CheckpointTable& table() noexcept { return *table_; }
  double quad_tol() const noexcept { return quad_tol_; }
  const QuadratureOptions& options() const noexcept { return options_; }

  IntegralResult F(double T) { return hl_integral(T, quad_tol_, *table_, options_); }

  // phi_1(T) with |G(phi) - F(T)| <= max(tol, residual_floor(F)).
  LadderPoint phi1(double T, double tol = 1e-6) {
    if (!(T >= k_.T0)) throw DomainError("phi1: T = " + std::to_string(T) + " is below T0");
    return solve(T, F(T), tol);
  }

  // The chain t, phi_1(t), ..., phi_1^{n+1}(t). Level k solves use tol / 2^k.
  IterationChain phi1_iterate(double t, int n, double tol = 1e-6) {
    if (n < 0) throw std::invalid_argument("phi1_iterate: n must be >= 0");
    IterationChain chain;
    chain.t = t;
    chain.n = n;
    chain.values.reserve(static_cast<std::size_t>(n) + 2);
    chain.values.push_back(t);
    chain.residuals.push_back(0.0);
    for (int depth = 0; depth <= n; ++depth) {
      const double x = chain.values.back();
      if (!(x >= k_.T0)) throw DomainExitError(depth, x, k_.T0);
      const LadderPoint p = solve(x, F(x), std::ldexp(tol, -(depth + 1)));
      chain.values.push_back(p.phi);
      chain.residuals.push_back(p.residual);
    }
    return chain;
  }

  // d phi_1 / dt = Z(t)^2 / G'(phi_1(t)).
  double phi1_derivative(double t, double tol = 1e-6) {
    const LadderPoint p = phi1(t, tol);
    return zeta_sq(t) / g_derivative(p.phi, k_);
  }

  // (t - phi_1(t)) / ((1 - c) t / log t).
  double gap_report(double t, double tol = 1e-6) {
    const LadderPoint p = phi1(t, tol);
    return (t - p.phi) / ((1.0 - k_.c) * t / std::log(t));
  }

  // (phi_1^k(T), phi_1^k(T + U)).
  std::pair<double, double> image_interval(double T, double U, int k, double tol = 1e-6) {
    if (k < 0) throw std::invalid_argument("image_interval: k must be >= 0");
    if (!(U > 0.0)) throw DomainError("image_interval: U must be > 0");
    if (k == 0) return {T, T + U};
    const IterationChain a = phi1_iterate(T, k - 1, tol);
    const IterationChain b = phi1_iterate(T + U, k - 1, tol);
    return {a.values.back(), b.values.back()};
  }

 private:
  LadderPoint solve(double T, const IntegralResult& f, double tol) const {
    const InverseResult inv = g_inverse(f.value, ladder_guess(T, k_), k_);
    const double allowed = std::max(tol, residual_floor(f.value));
    if (std::fabs(inv.residual) > allowed) {
      throw ConvergenceError("phi1: residual " + std::to_string(inv.residual) + " exceeds tolerance");
    }
    LadderPoint p;
    p.T = T;
    p.phi = inv.V;
    p.residual = inv.residual;
    p.f_err = f.err_estimate / g_derivative(inv.V, k_);
    return p;
  }

  Constants k_;
  CheckpointTable* table_;
  double quad_tol_;
  QuadratureOptions options_;
};

// Dense ladder over a window [lo, hi]: level k carries a primitive of Z^2 on
// the image [phi_1^k(lo), phi_1^k(hi)], so phi_1 at any point of that image is
// a Clenshaw sum plus a few Newton steps. Used where the chain is needed at
// every quadrature node.
class LadderWindow {
 public:
  static constexpr double kMargin = 1.0;

  LadderWindow(Ladder& ladder, double lo, double hi, int levels) : k_(ladder.constants()) {
    if (!(lo >= k_.T0) || !(hi > lo)) throw DomainError("LadderWindow: need T0 <= lo < hi");
    if (levels < 1) throw std::invalid_argument("LadderWindow: levels must be >= 1");
    ends_.push_back({lo, hi});
    for (int level = 0; level < levels; ++level) {
      const auto [a, b] = ends_.back();
      if (!(a >= k_.T0)) throw DomainExitError(level, a, k_.T0);
      const double left = std::max(a - kMargin, kRiemannSiegelSwitch);
      const IntegralResult f_left = ladder.F(left);
      primitives_.emplace_back(left, b + kMargin, f_left.value, f_left.err_estimate);
      seeds_.push_back(solve_with(primitives_.back()(a), ladder_guess(a, k_)));
      ends_.push_back({seeds_.back(), phi1(level, b)});
    }
  }

  int levels() const noexcept { return static_cast<int>(primitives_.size()); }
  const Constants& constants() const noexcept { return k_; }
  const HardyPrimitive& primitive(int level) const { return primitives_.at(static_cast<std::size_t>(level)); }

  // (phi_1^k(lo), phi_1^k(hi)) for k = 0..levels.
  std::pair<double, double> interval(int k) const { return ends_.at(static_cast<std::size_t>(k)); }

  // F(x) for x in the level-k image (with margin).
  double F(int level, double x) const { return primitive(level)(x); }

  // phi_1(x) for x in the level-k image.
  double phi1(int level, double x) const {
    const double seed = seeds_.at(static_cast<std::size_t>(level));
    const double target = F(level, x);
    const double guess = seed + (target - g_function(seed, k_)) / g_derivative(seed, k_);
    return solve_with(target, guess);
  }

  // out[0] = t, out[k] = phi_1^k(t) for k = 1..depth; depth <= levels.
  void chain(double t, int depth, double* out) const {
    out[0] = t;
    for (int level = 0; level < depth; ++level) out[level + 1] = phi1(level, out[level]);
  }

  // d phi_1 / dx = Z(x)^2 / G'(phi_1(x)) for x in the level-k image.
  double derivative(int level, double x) const { return zeta_sq(x) / g_derivative(phi1(level, x), k_); }

 private:
  double solve_with(double target, double guess) const { return g_inverse(target, guess, k_, 1e-15).V; }

  Constants k_;
  std::vector<HardyPrimitive> primitives_;
  std::vector<double> seeds_;  // phi_1^{k+1}(lo), Newton seed for level k
  std::vector<std::pair<double, double>> ends_;
};

struct BoundsReport {
  int checks = 0;
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

// Ordering t > phi_1(t) > ... > phi_1^{n+1}(t), the lower bound
// phi_1^k(t) >= (1 - eps) T for t in [T, T + U], k <= n + 1, and the sandwich
// (1 - eps) T < phi_1^{n+1}(T) < T, on `samples` equally spaced t.
inline BoundsReport check_chain_bounds(Ladder& ladder, double T, double U, int n, int samples = 5) {
  BoundsReport report;
  const double floor_value = (1.0 - ladder.constants().eps) * T;
  char buf[256];
  for (int i = 0; i < samples; ++i) {
    const double t = samples == 1 ? T : T + U * static_cast<double>(i) / (samples - 1);
    const IterationChain chain = ladder.phi1_iterate(t, n);
    for (std::size_t k = 1; k < chain.values.size(); ++k) {
      ++report.checks;
      if (!(chain.values[k] < chain.values[k - 1])) {
        std::snprintf(buf, sizeof buf, "ordering: phi^%zu(%.17g) = %.17g not below phi^%zu = %.17g", k, t,
                      chain.values[k], k - 1, chain.values[k - 1]);
        report.violations.emplace_back(buf);
      }
      ++report.checks;
      if (!(chain.values[k] >= floor_value)) {
        std::snprintf(buf, sizeof buf, "lower bound: phi^%zu(%.17g) = %.17g < (1 - eps) T = %.17g", k, t,
                      chain.values[k], floor_value);
        report.violations.emplace_back(buf);
      }
    }
    if (i == 0) {
      const double top = chain.values.back();
      ++report.checks;
      if (!(top > floor_value && top < T)) {
        std::snprintf(buf, sizeof buf, "sandwich: phi^%d(T) = %.17g outside ((1 - eps) T, T) = (%.17g, %.17g)",
                      n + 1, top, floor_value, T);
        report.violations.emplace_back(buf);
      }
    }
  }
  return report;
}

}  // namespace jl
