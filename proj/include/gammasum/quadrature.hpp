#pragma once

// Globally adaptive Gauss-Kronrod (10/21 point) quadrature for real- or
// complex-valued integrands over a set of finite intervals. The interval with
// the largest error estimate is bisected until the summed estimate meets
// max(abs_tol, rel_tol * |integral|). Error estimates follow QUADPACK's qk21,
// including its round-off floor.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <type_traits>
#include <vector>

namespace gammasum::quad {

struct Interval {
  double a;
  double b;
};

template <typename T>
struct Result {
  T value{};
  double abs_error = 0.0;
  double abs_integral = 0.0;  // integral of |f|, used for round-off floors
  std::size_t n_evals = 0;
  bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};

inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600310962557, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights for the odd-indexed Kronrod nodes kXgk[1], kXgk[3], ...
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <typename T>
struct Segment {
  double a;
  double b;
  T value;
  double error;
  double abs_value;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename T, typename F>
Segment<T> gk21(F& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<T, 21> fv;
  fv[20] = f(center);
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    fv[2 * j] = f(center - dx);
    fv[2 * j + 1] = f(center + dx);
  }

  T kronrod = kWgk[10] * fv[20];
  T gauss{};
  double resabs = kWgk[10] * std::abs(fv[20]);
  for (std::size_t j = 0; j < 10; ++j) {
    const T pair = fv[2 * j] + fv[2 * j + 1];
    kronrod += kWgk[j] * pair;
    resabs += kWgk[j] * (std::abs(fv[2 * j]) + std::abs(fv[2 * j + 1]));
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  const T mean = 0.5 * kronrod;
  double resasc = kWgk[10] * std::abs(fv[20] - mean);
  for (std::size_t j = 0; j < 10; ++j) {
    resasc +=
        kWgk[j] * (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));
  }

  const double scale = std::abs(half);
  resabs *= scale;
  resasc *= scale;
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(err, 50.0 * eps * resabs);
  }
  if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
  return {a, b, kronrod * half, err, resabs};
}

}  // namespace detail

// Integrates f over the union of `pieces`. `max_segments` caps the total
// number of live subintervals.
template <typename T, typename F>
Result<T> integrate(F&& f, std::span<const Interval> pieces, double abs_tol,
                    double rel_tol, std::size_t max_segments = 4000) {
  static_assert(std::is_invocable_r_v<T, F&, double>);
  std::vector<detail::Segment<T>> heap;  // max-heap on error
  Result<T> out;
  double total_err = 0.0;
  for (const auto& p : pieces) {
    if (p.a == p.b) continue;
    auto seg = detail::gk21<T>(f, p.a, p.b);
    out.n_evals += 21;
    out.value += seg.value;
    total_err += seg.error;
    heap.push_back(seg);
    std::push_heap(heap.begin(), heap.end());
  }

  // Sums over the live set; the running totals drift when large errors are
  // replaced by small ones, so any apparent convergence is re-checked.
  auto resum = [&] {
    T value{};
    double err = 0.0;
    for (const auto& seg : heap) {
      value += seg.value;
      err += seg.error;
    }
    out.value = value;
    total_err = err;
  };

  while (!heap.empty()) {
    if (total_err <= std::max(abs_tol, rel_tol * std::abs(out.value))) {
      resum();
      if (total_err <= std::max(abs_tol, rel_tol * std::abs(out.value))) {
        out.converged = true;
        break;
      }
    }
    if (heap.size() >= max_segments) break;
    std::pop_heap(heap.begin(), heap.end());
    const auto worst = heap.back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
      std::push_heap(heap.begin(), heap.end());
      break;  // interval exhausted at machine resolution
    }
    heap.pop_back();
    auto left = detail::gk21<T>(f, worst.a, mid);
    auto right = detail::gk21<T>(f, mid, worst.b);
    out.n_evals += 42;
    out.value += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());
  }

  resum();
  out.abs_error = total_err;
  out.abs_integral = 0.0;
  for (const auto& seg : heap) out.abs_integral += seg.abs_value;
  if (!out.converged) {
    out.converged = total_err <= std::max(abs_tol, rel_tol * std::abs(out.value));
  }
  return out;
}

template <typename T, typename F>
Result<T> integrate(F&& f, double a, double b, double abs_tol, double rel_tol,
                    std::size_t max_segments = 4000) {
  const Interval piece{a, b};
  return integrate<T>(std::forward<F>(f), std::span<const Interval>(&piece, 1),
                      abs_tol, rel_tol, max_segments);
}

// Integral of f over [a, inf) through x = a + w / (1 - w), w in [0, 1).
template <typename T, typename F>
Result<T> integrate_to_infinity(F&& f, double a, double abs_tol,
                                double rel_tol,
                                std::size_t max_segments = 4000) {
  auto mapped = [&](double w) -> T {
    const double one_minus = 1.0 - w;
    const double x = a + w / one_minus;
    const T v = f(x);
    if (v == T{}) return v;
    return v / (one_minus * one_minus);
  };
  return integrate<T>(mapped, 0.0, 1.0, abs_tol, rel_tol, max_segments);
}

}  // namespace gammasum::quad
