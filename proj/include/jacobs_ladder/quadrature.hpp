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

// Integration of Z(t)^2: adaptive Gauss–Kronrod over arbitrary intervals, the
// cumulative Hardy–Littlewood integral F(T) with persisted checkpoints, and a
// dense Chebyshev primitive for repeated F lookups inside a window.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "jacobs_ladder/errors.hpp"
#include "jacobs_ladder/zeta_core.hpp"

namespace jl {

struct IntegralResult {
  double value = 0.0;
  double err_estimate = 0.0;
  long panels = 0;
  double a = 0.0;
  double b = 0.0;
};

struct QuadratureOptions {
  long max_panels = 10'000'000;
  // Also accept an error below rel_tol * |integral|; 0 means absolute only.
  double rel_tol = 0.0;
  // Worker threads for independent initial panels; 0 means hardware concurrency.
  unsigned threads = 1;
};

// Initial panel width for Z^2 on [., b]: a fraction of the local quasi-period
// 2 pi / log(t / 2 pi) of the highest frequency in Z(t)^2.
inline double z_sq_panel_width(double b) {
  return std::min(1.0, 0.5 * kTwoPi / std::log(b / kTwoPi + std::numbers::e));
}

namespace detail {

// Gauss–Kronrod 7/15 nodes and weights on [-1, 1] (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
  double value = 0.0;
  double error = 0.0;
  bool at_roundoff = false;  // error estimate is the floating-point floor
  double resabs = 0.0;       // integral of |f| over the panel
};

// One G7/K15 panel with the QUADPACK error heuristic.
template <class F>
PanelEstimate gauss_kronrod_15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 15> fv{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[static_cast<std::size_t>(j)];
    fv[static_cast<std::size_t>(2 * j)] = f(center - dx);
    fv[static_cast<std::size_t>(2 * j + 1)] = f(center + dx);
  }
  fv[14] = f(center);

  double kronrod = kKronrodWeights[7] * fv[14];
  double gauss = kGaussWeights[3] * fv[14];
  double abs_sum = std::fabs(kronrod);
  for (int j = 0; j < 7; ++j) {
    const double pair = fv[static_cast<std::size_t>(2 * j)] + fv[static_cast<std::size_t>(2 * j + 1)];
    kronrod += kKronrodWeights[static_cast<std::size_t>(j)] * pair;
    abs_sum += kKronrodWeights[static_cast<std::size_t>(j)] *
               (std::fabs(fv[static_cast<std::size_t>(2 * j)]) + std::fabs(fv[static_cast<std::size_t>(2 * j + 1)]));
    if (j % 2 == 1) gauss += kGaussWeights[static_cast<std::size_t>(j / 2)] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::fabs(fv[14] - mean);
  for (int j = 0; j < 7; ++j) {
    asc += kKronrodWeights[static_cast<std::size_t>(j)] *
           (std::fabs(fv[static_cast<std::size_t>(2 * j)] - mean) + std::fabs(fv[static_cast<std::size_t>(2 * j + 1)] - mean));
  }
  asc *= half;
  double err = std::fabs((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  const double resabs = abs_sum * half;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  bool at_roundoff = false;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps) && 50.0 * eps * resabs >= err) {
    err = 50.0 * eps * resabs;
    at_roundoff = true;
  }
  return {kronrod * half, err, at_roundoff, resabs};
}

// Relative level below which a panel error that stops shrinking under
// bisection is taken to be evaluation noise of the integrand (the
// Riemann–Siegel phases carry ~t * eps absolute error).
inline constexpr double kNoiseRelative = 1e-6;
// Panels with error below this fraction of their |f| integral are never split.
inline constexpr double kPanelFloor = 1e3 * std::numeric_limits<double>::epsilon();
// Panels narrower than this fraction of |t| have only ~1000 distinct abscissae.
inline constexpr double kMinWidthRelative = 1e3 * std::numeric_limits<double>::epsilon();

struct Leaf {
  double a = 0.0;
  double b = 0.0;
  PanelEstimate est;
  int depth = 0;
  bool final = false;  // no further bisection
};

inline void classify(Leaf& leaf, double parent_error) {
  constexpr int kMaxDepth = 60;
  const double mid = 0.5 * (leaf.a + leaf.b);
  const bool narrow = leaf.b - leaf.a <= kMinWidthRelative * std::max(std::fabs(leaf.a), std::fabs(leaf.b));
  const bool stalled = leaf.est.error <= kNoiseRelative * leaf.est.resabs && leaf.est.error >= 0.25 * parent_error;
  leaf.final = leaf.est.at_roundoff || stalled || leaf.est.error <= kPanelFloor * leaf.est.resabs || narrow || leaf.depth >= kMaxDepth || !(mid > leaf.a && mid < leaf.b);
}

// Pairwise sum over [lo, hi); the result does not depend on scheduling.
inline double pairwise_sum(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

}  // namespace detail

// Adaptive integral of f over [a, b] to absolute tolerance `tol`. The interval
// is cut into equal initial panels no wider than `initial_width`; then the
// panel with the largest error is bisected until the summed error meets tol
// or every remaining panel is at its noise floor. Leaf sums are combined
// pairwise in left-to-right order. Only the initial panels use `threads`.
template <class F>
IntegralResult adaptive_integrate(const F& f, double a, double b, double tol, double initial_width,
                                  const QuadratureOptions& options = {}) {
  if (!(a <= b)) throw DomainError("adaptive_integrate: need a <= b");
  if (!(tol > 0.0)) throw DomainError("adaptive_integrate: tol must be > 0");
  IntegralResult out;
  out.a = a;
  out.b = b;
  if (a == b) return out;

  const double length = b - a;
  const auto count = static_cast<long>(std::max(1.0, std::ceil(length / initial_width)));
  if (count > options.max_panels) throw ConvergenceError("quadrature panel budget exhausted");
  const double width = length / static_cast<double>(count);

  std::vector<detail::Leaf> leaves(static_cast<std::size_t>(count));
  auto work = [&](long first, long last) {
    for (long i = first; i < last; ++i) {
      detail::Leaf& leaf = leaves[static_cast<std::size_t>(i)];
      leaf.a = a + width * static_cast<double>(i);
      leaf.b = i + 1 == count ? b : a + width * static_cast<double>(i + 1);
      leaf.est = detail::gauss_kronrod_15(f, leaf.a, leaf.b);
      detail::classify(leaf, std::numeric_limits<double>::infinity());
    }
  };
  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  threads = static_cast<unsigned>(std::min<long>(threads, count));
  if (threads <= 1) {
    work(0, count);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(threads);
    const long chunk = (count + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const long first = std::min(count, static_cast<long>(w) * chunk);
      const long last = std::min(count, first + chunk);
      pool.emplace_back([&, w, first, last] {
        try {
          work(first, last);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : failures) {
      if (e) std::rethrow_exception(e);
    }
  }

  auto total_error = [&] {
    std::vector<double> errors(leaves.size());
    for (std::size_t i = 0; i < leaves.size(); ++i) errors[i] = leaves[i].est.error;
    return detail::pairwise_sum(errors.data(), errors.size());
  };

  // Max-heap on (error, index); ties resolve by index, so the order is fixed.
  std::vector<std::pair<double, std::size_t>> heap;
  double open_error = 0.0;  // error still held by panels that may be split
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (!leaves[i].final) {
      heap.emplace_back(leaves[i].est.error, i);
      open_error += leaves[i].est.error;
    }
  }
  std::make_heap(heap.begin(), heap.end());
  auto target = [&] {
    if (!(options.rel_tol > 0.0)) return tol;
    double sum = 0.0;
    for (const auto& leaf : leaves) sum += leaf.est.value;
    return std::max(tol, options.rel_tol * std::fabs(sum));
  };
  double goal = target();
  double error = total_error();
  long evaluations = count;
  long since_resum = 0;
  // Stop at tol, or once the splittable part is negligible next to tol or to
  // the error already frozen in panels at their noise floor.
  constexpr double kNegligible = 0.05;
  auto worth_splitting = [&] { return open_error > kNegligible * std::max(goal, error - open_error); };
  while (error > goal && worth_splitting() && !heap.empty()) {
    std::pop_heap(heap.begin(), heap.end());
    const std::size_t i = heap.back().second;
    heap.pop_back();
    const detail::Leaf parent = leaves[i];
    evaluations += 2;
    if (evaluations > options.max_panels) throw ConvergenceError("quadrature panel budget exhausted");
    const double mid = 0.5 * (parent.a + parent.b);
    detail::Leaf left{parent.a, mid, detail::gauss_kronrod_15(f, parent.a, mid), parent.depth + 1, false};
    detail::Leaf right{mid, parent.b, detail::gauss_kronrod_15(f, mid, parent.b), parent.depth + 1, false};
    detail::classify(left, parent.est.error);
    detail::classify(right, parent.est.error);
    error += left.est.error + right.est.error - parent.est.error;
    open_error -= parent.est.error;
    leaves[i] = left;
    leaves.push_back(right);
    if (!left.final) {
      heap.emplace_back(left.est.error, i);
      std::push_heap(heap.begin(), heap.end());
      open_error += left.est.error;
    }
    if (!right.final) {
      heap.emplace_back(right.est.error, leaves.size() - 1);
      std::push_heap(heap.begin(), heap.end());
      open_error += right.est.error;
    }
    // Running sums drift by cancellation; resum before trusting them.
    if (error <= goal || !worth_splitting() || ++since_resum == 4096) {
      goal = target();
      error = total_error();
      std::vector<double> open(heap.size());
      for (std::size_t h = 0; h < heap.size(); ++h) open[h] = heap[h].first;
      open_error = detail::pairwise_sum(open.data(), open.size());
      since_resum = 0;
    }
  }

  std::sort(leaves.begin(), leaves.end(), [](const detail::Leaf& x, const detail::Leaf& y) { return x.a < y.a; });
  std::vector<double> values(leaves.size());
  for (std::size_t i = 0; i < leaves.size(); ++i) values[i] = leaves[i].est.value;
  out.value = detail::pairwise_sum(values.data(), values.size());
  out.err_estimate = total_error();
  out.panels = static_cast<long>(leaves.size());
  return out;
}

// Integral of Z(t)^2 over [a, b] to absolute tolerance `tol`.
inline IntegralResult integrate_z_sq(double a, double b, double tol, const QuadratureOptions& options = {}) {
  if (!(a >= 0.0) || !(a <= b)) throw DomainError("integrate_z_sq: need 0 <= a <= b");
  if (!(tol > 0.0)) throw DomainError("integrate_z_sq: tol must be > 0");
  auto result = adaptive_integrate([](double t) { return zeta_sq(t); }, a, b, tol, z_sq_panel_width(b), options);
  result.value = std::max(result.value, 0.0);
  return result;
}

struct Checkpoint {
  double T = 0.0;
  double F = 0.0;
  double err = 0.0;  // accumulated absolute error estimate of F
};

// Cumulative values F(T_i) on an ascending grid. Canonical checkpoints sit at
// every multiple of kBlock and are always integrated block by block from the
// previous canonical point, so their values do not depend on call history.
// Other points are cached user requests. One writer or many readers.
class CheckpointTable {
 public:
  static constexpr double kBlock = 1024.0;
  static constexpr double kDefaultTol = 1e-9;

  explicit CheckpointTable(double tol = kDefaultTol) : tol_(tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("checkpoint tolerance must be > 0");
    grid_.push_back({0.0, 0.0, 0.0});
  }

  double tol() const noexcept { return tol_; }
  const std::vector<Checkpoint>& grid() const noexcept { return grid_; }
  double canonical_end() const noexcept { return canonical_end_; }

  // Largest checkpoint with T_i <= T.
  const Checkpoint& floor(double T) const {
    auto it = std::upper_bound(grid_.begin(), grid_.end(), T,
                               [](double x, const Checkpoint& c) { return x < c.T; });
    return *std::prev(it);
  }

  const Checkpoint* find(double T) const {
    const Checkpoint& c = floor(T);
    return c.T == T ? &c : nullptr;
  }

  void insert(const Checkpoint& c) {
    auto it = std::lower_bound(grid_.begin(), grid_.end(), c.T,
                               [](const Checkpoint& x, double v) { return x.T < v; });
    if (it != grid_.end() && it->T == c.T) return;
    grid_.insert(it, c);
    if (is_canonical(c.T) && c.T == canonical_end_ + kBlock) canonical_end_ = c.T;
  }

  static bool is_canonical(double T) { return std::fmod(T, kBlock) == 0.0; }

  // Writes `# hl-checkpoints v1 tol=<tol>` then `T<TAB>F` rows, via a
  // temporary file renamed into place.
  void save(const std::filesystem::path& path) const {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write checkpoint file " + tmp.string());
      char line[96];
      std::snprintf(line, sizeof line, "# hl-checkpoints v1 tol=%.17g\n", tol_);
      out << line;
      for (const auto& c : grid_) {
        std::snprintf(line, sizeof line, "%.17g\t%.17g\n", c.T, c.F);
        out << line;
      }
      if (!out.flush()) throw std::runtime_error("cannot write checkpoint file " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  }

  static CheckpointTable load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open checkpoint file " + path.string());
    std::string header;
    std::getline(in, header);
    constexpr std::string_view prefix = "# hl-checkpoints v1 tol=";
    if (header.rfind(prefix, 0) != 0) throw FormatError("bad checkpoint header: " + header);
    double tol = 0.0;
    try {
      tol = std::stod(header.substr(prefix.size()));
    } catch (const std::exception&) {
      throw FormatError("bad checkpoint tolerance: " + header);
    }
    CheckpointTable table(tol);
    table.grid_.clear();
    std::string line;
    double last_T = -1.0;
    double last_F = -1.0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream row(line);
      Checkpoint c;
      if (!(row >> c.T >> c.F)) throw FormatError("bad checkpoint row: " + line);
      if (!(c.T > last_T) || c.F < last_F) throw FormatError("checkpoint rows must ascend: " + line);
      if (table.grid_.empty() && (c.T != 0.0 || c.F != 0.0)) throw FormatError("first checkpoint must be 0\t0");
      // Per-block tolerance bound for values read back from disk.
      c.err = std::ceil(c.T / kBlock) * tol;
      table.grid_.push_back(c);
      last_T = c.T;
      last_F = c.F;
    }
    if (table.grid_.empty()) throw FormatError("checkpoint file has no rows");
    table.canonical_end_ = 0.0;
    for (const auto& c : table.grid_) {
      if (is_canonical(c.T) && c.T == table.canonical_end_ + kBlock) table.canonical_end_ = c.T;
    }
    return table;
  }

  // Missing file means an empty table; a file built at another tolerance is ignored.
  static CheckpointTable load_or_empty(const std::filesystem::path& path, double tol = kDefaultTol) {
    if (!std::filesystem::exists(path)) return CheckpointTable(tol);
    CheckpointTable table = load(path);
    if (table.tol() != tol) return CheckpointTable(tol);
    return table;
  }

 private:
  double tol_;
  double canonical_end_ = 0.0;
  std::vector<Checkpoint> grid_;
};

// Extends the canonical checkpoints through the last multiple of the block
// size not exceeding T. Returns the panel count spent.
inline long extend_checkpoints(CheckpointTable& table, double T, const QuadratureOptions& options = {}) {
  long panels = 0;
  const double last = std::floor(T / CheckpointTable::kBlock) * CheckpointTable::kBlock;
  while (table.canonical_end() < last) {
    const double a = table.canonical_end();
    const double b = a + CheckpointTable::kBlock;
    const Checkpoint& base = table.floor(a);
    const IntegralResult block = integrate_z_sq(a, b, table.tol(), options);
    table.insert({b, base.F + block.value, base.err + block.err_estimate});
    panels += block.panels;
  }
  return panels;
}

// F(T) = integral of Z^2 over [0, T], reusing the largest checkpoint <= T and
// caching T itself as a new checkpoint.
inline IntegralResult hl_integral(double T, double tol, CheckpointTable& table,
                                  const QuadratureOptions& options = {}) {
  if (!(T >= 0.0)) throw DomainError("hl_integral: T must be >= 0");
  if (!(tol > 0.0)) throw DomainError("hl_integral: tol must be > 0");
  IntegralResult out;
  out.a = 0.0;
  out.b = T;
  if (T == 0.0) return out;
  if (const Checkpoint* hit = table.find(T)) {
    out.value = hit->F;
    out.err_estimate = hit->err;
    return out;
  }
  out.panels = extend_checkpoints(table, T, options);
  const Checkpoint base = table.floor(T);
  const IntegralResult rest = integrate_z_sq(base.T, T, std::min(tol, table.tol()), options);
  out.value = base.F + rest.value;
  out.err_estimate = base.err + rest.err_estimate;
  out.panels += rest.panels;
  table.insert({T, out.value, out.err_estimate});
  return out;
}

// F(T) / (T log T).
inline double hl_ratio(double T, double tol, CheckpointTable& table, const QuadratureOptions& options = {}) {
  if (!(T >= 10.0)) throw DomainError("hl_ratio: T must be >= 10");
  return hl_integral(T, tol, table, options).value / (T * std::log(T));
}

// Dense primitive of Z^2 on [lo, hi]: Chebyshev interpolants of degree
// kDegree on equal panels, integrated exactly and anchored at F(lo). Lookups
// of F(x) cost one Clenshaw recurrence instead of a quadrature.
class HardyPrimitive {
 public:
  static constexpr int kDegree = 24;

  HardyPrimitive() = default;

  HardyPrimitive(double lo, double hi, double f_lo, double f_lo_err = 0.0) : lo_(lo), hi_(hi) {
    if (!(lo >= kRiemannSiegelSwitch) || !(hi > lo)) {
      throw DomainError("HardyPrimitive needs kRiemannSiegelSwitch <= lo < hi");
    }
    const double quasi_period = kTwoPi / std::log(hi / kTwoPi + std::numbers::e);
    const auto count = static_cast<std::size_t>(std::ceil((hi - lo) / std::min(1.0, quasi_period)));
    width_ = (hi - lo) / static_cast<double>(count);
    panels_.resize(count);
    err_ = f_lo_err;

    std::array<double, kDegree + 1> nodes{};
    for (int j = 0; j <= kDegree; ++j) nodes[static_cast<std::size_t>(j)] = std::cos(std::numbers::pi * j / kDegree);

    double running = f_lo;
    double carry = 0.0;  // Neumaier compensation
    double shared_left = zeta_sq(lo);
    for (std::size_t i = 0; i < count; ++i) {
      const double a = lo + width_ * static_cast<double>(i);
      const double b = i + 1 == count ? hi : lo + width_ * static_cast<double>(i + 1);
      std::array<double, kDegree + 1> values{};
      // nodes run from u = 1 (b) down to u = -1 (a)
      values[kDegree] = shared_left;
      for (int j = 0; j < kDegree; ++j) {
        const double x = 0.5 * (a + b) + 0.5 * (b - a) * nodes[static_cast<std::size_t>(j)];
        values[static_cast<std::size_t>(j)] = j == 0 ? zeta_sq(b) : zeta_sq(x);
      }
      shared_left = values[0];
      Panel& panel = panels_[i];
      panel.f_a = running + carry;
      fit(values, b - a, panel, err_);
      const double inc = panel.increment;
      const double sum = running + inc;
      carry += std::fabs(running) >= std::fabs(inc) ? (running - sum) + inc : (inc - sum) + running;
      running = sum;
    }
    f_hi_ = running + carry;
  }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double err_estimate() const noexcept { return err_; }
  bool contains(double x) const noexcept { return x >= lo_ && x <= hi_; }
  std::size_t panel_count() const noexcept { return panels_.size(); }

  // F(x) for x in [lo, hi].
  double operator()(double x) const {
    if (!contains(x)) throw DomainError("HardyPrimitive: argument outside the tabulated window");
    if (x == hi_) return f_hi_;
    auto i = static_cast<std::size_t>((x - lo_) / width_);
    i = std::min(i, panels_.size() - 1);
    const Panel& panel = panels_[i];
    const double a = lo_ + width_ * static_cast<double>(i);
    const double b = i + 1 == panels_.size() ? hi_ : a + width_;
    const double u = std::clamp((2.0 * x - a - b) / (b - a), -1.0, 1.0);
    return panel.f_a + 0.5 * (b - a) * (clenshaw(panel.antiderivative, u) - panel.at_left);
  }

 private:
  struct Panel {
    double f_a = 0.0;                                  // F at the left end
    std::array<double, kDegree + 2> antiderivative{};  // Chebyshev coefficients in u
    double at_left = 0.0;                              // antiderivative at u = -1
    double increment = 0.0;                            // integral over the panel
  };

  static double clenshaw(const std::array<double, kDegree + 2>& c, double u) {
    double b1 = 0.0;
    double b2 = 0.0;
    for (int k = kDegree + 1; k >= 1; --k) {
      const double b0 = 2.0 * u * b1 - b2 + c[static_cast<std::size_t>(k)];
      b2 = b1;
      b1 = b0;
    }
    return u * b1 - b2 + c[0];
  }

  static void fit(const std::array<double, kDegree + 1>& values, double width, Panel& panel, double& err) {
    constexpr int d = kDegree;
    // Interpolant coefficients a_k with f(u) = sum_k a_k T_k(u).
    std::array<double, d + 1> coef{};
    for (int k = 0; k <= d; ++k) {
      double s = 0.0;
      for (int j = 0; j <= d; ++j) {
        const double w = (j == 0 || j == d) ? 0.5 : 1.0;
        s += w * values[static_cast<std::size_t>(j)] * std::cos(std::numbers::pi * j * k / d);
      }
      coef[static_cast<std::size_t>(k)] = 2.0 * s / d;
    }
    coef[0] *= 0.5;
    coef[d] *= 0.5;

    // Antiderivative: b_k = (c_{k-1} - c_{k+1}) / (2k) with c_0 = 2 a_0.
    auto c = [&](int k) -> double {
      if (k > d) return 0.0;
      return k == 0 ? 2.0 * coef[0] : coef[static_cast<std::size_t>(k)];
    };
    panel.antiderivative.fill(0.0);
    for (int k = 1; k <= d + 1; ++k) {
      panel.antiderivative[static_cast<std::size_t>(k)] = (c(k - 1) - c(k + 1)) / (2.0 * k);
    }
    double left = 0.0;
    double right = 0.0;
    for (int k = 1; k <= d + 1; ++k) {
      const double bk = panel.antiderivative[static_cast<std::size_t>(k)];
      right += bk;
      left += (k % 2 == 0) ? bk : -bk;
    }
    panel.at_left = left;
    panel.increment = 0.5 * width * (right - left);
    err += 0.5 * width * (std::fabs(coef[d - 1]) + std::fabs(coef[d]));
  }

  double lo_ = 0.0;
  double hi_ = 0.0;
  double width_ = 1.0;
  double f_hi_ = 0.0;
  double err_ = 0.0;
  std::vector<Panel> panels_;
};

}  // namespace jl
