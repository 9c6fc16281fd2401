#pragma once

// Monte Carlo reference for the Gamma sum: sampling, Kolmogorov-Smirnov
// distance to the analytic CDF, and conditional-error BER estimates.
//
// Samples are produced in fixed-size chunks. Chunk c of branch l draws from its
// own mt19937_64 seeded by mixing (seed, l, c), so the stream depends only on
// the seed and never on the number of threads.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "gammasum/errors.hpp"
#include "gammasum/gamma_sum.hpp"
#include "gammasum/mrc.hpp"
#include "gammasum/parallel.hpp"

namespace gammasum {

struct SimConfig {
  std::uint64_t n_samples = 1'000'000;
  std::uint64_t seed = 1;
  int histogram_bins = 100;
  // Grid of the validate table; lo == hi selects [0, 99.9% sample quantile].
  std::pair<double, double> y_range{0.0, 0.0};

  void validate() const {
    if (n_samples < 1) throw DomainError("n_samples must be >= 1");
    if (histogram_bins < 1) throw DomainError("histogram_bins must be >= 1");
    if (y_range.second < y_range.first) throw DomainError("y_range is reversed");
  }
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
};

struct KsResult {
  double ks = 0.0;
  std::uint64_t n = 0;
  double at = 0.0;  // sample value where the supremum is attained
};

namespace detail {

inline constexpr std::size_t kChunk = std::size_t{1} << 16;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t branch,
                                    std::uint64_t chunk) {
  return splitmix64(splitmix64(splitmix64(seed) ^ branch) ^ (chunk * 0xd1b54a32d192ed03ULL));
}

inline std::size_t chunk_count(std::uint64_t n) {
  return static_cast<std::size_t>((n + kChunk - 1) / kChunk);
}

// Adds Gamma draws of every branch into out[0 .. len) for chunk `c`.
inline void fill_chunk(const BranchParams& params, std::uint64_t seed, std::size_t c,
                       std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t l = 0; l < params.size(); ++l) {
    const auto& b = params[l];
    std::mt19937_64 eng(substream_seed(seed, l, c));
    std::gamma_distribution<double> dist(b.m, b.omega / b.m);
    for (double& v : out) v += dist(eng);
  }
}

// Pairwise sum; the result depends only on the order of `xs`.
inline double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace detail

// n draws of Y = sum of the branch variates.
inline std::vector<double> sample_sum(const BranchParams& params, std::uint64_t n,
                                      std::uint64_t seed) {
  std::vector<double> out(static_cast<std::size_t>(n));
  const std::size_t chunks = detail::chunk_count(n);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = c * detail::kChunk;
    const std::size_t len = std::min(detail::kChunk, out.size() - begin);
    detail::fill_chunk(params, seed, c, std::span<double>(out).subspan(begin, len));
  });
  return out;
}

// Gamma(shape m, scale omega / m) draws.
inline std::vector<double> sample_gamma(double m, double omega, std::uint64_t n,
                                        std::uint64_t seed) {
  return sample_sum(BranchParams({Branch{m, omega}}), n, seed);
}

// sup |F_n - F| for sorted samples.
template <typename Cdf>
KsResult ks_statistic(std::span<const double> sorted, Cdf&& cdf) {
  KsResult r;
  r.n = sorted.size();
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double d = std::max(static_cast<double>(i + 1) / n - f,
                              f - static_cast<double>(i) / n);
    if (d > r.ks) {
      r.ks = d;
      r.at = sorted[i];
    }
  }
  return r;
}

// Analytic CDF on nodes placed at sample quantiles, interpolated by cubic
// Hermite polynomials through (F, F' = pdf). With ~1000 nodes the CDF moves
// by ~1e-3 between nodes and the interpolation error is far below any KS
// threshold, while only ~2000 contour integrals are needed.
class CdfInterpolant {
 public:
  CdfInterpolant(const BranchParams& params, std::span<const double> sorted,
                 std::size_t max_nodes = 1000) {
    if (sorted.empty()) throw DomainError("no samples");
    const std::size_t n = sorted.size();
    const std::size_t k = std::min(max_nodes, n);
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t idx = k == 1 ? 0 : j * (n - 1) / (k - 1);
      if (nodes_.empty() || sorted[idx] > nodes_.back()) nodes_.push_back(sorted[idx]);
    }
    cdf_.resize(nodes_.size());
    pdf_.resize(nodes_.size());
    parallel_for(nodes_.size(), [&](std::size_t j) {
      cdf_[j] = cdf(params, nodes_[j]);
      pdf_[j] = nodes_[j] > 0.0 ? pdf(params, nodes_[j]) : 0.0;
    });
  }

  double operator()(double y) const {
    if (y <= nodes_.front()) return cdf_.front();
    if (y >= nodes_.back()) return cdf_.back();
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), y);
    const std::size_t j = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    const double h = nodes_[j + 1] - nodes_[j];
    const double t = (y - nodes_[j]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double v = (2 * t3 - 3 * t2 + 1) * cdf_[j] + (t3 - 2 * t2 + t) * h * pdf_[j] +
                     (-2 * t3 + 3 * t2) * cdf_[j + 1] + (t3 - t2) * h * pdf_[j + 1];
    return std::clamp(v, cdf_[j], cdf_[j + 1]);
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> cdf_;
  std::vector<double> pdf_;
};

// KS distance between samples of `sampled` and the analytic CDF of `analytic`
// (the two differ only in negative controls).
inline KsResult empirical_cdf_distance(const BranchParams& sampled,
                                       const BranchParams& analytic,
                                       const SimConfig& cfg) {
  cfg.validate();
  auto ys = sample_sum(sampled, cfg.n_samples, cfg.seed);
  std::sort(ys.begin(), ys.end());
  const CdfInterpolant f(analytic, ys);
  return ks_statistic(ys, f);
}

inline KsResult empirical_cdf_distance(const BranchParams& params, const SimConfig& cfg) {
  return empirical_cdf_distance(params, params, cfg);
}

struct CdfRow {
  double y = 0.0;
  double empirical = 0.0;
  double analytic = 0.0;
  double diff = 0.0;
};

struct CdfComparison {
  std::vector<CdfRow> rows;
  KsResult ks;
};

// Empirical vs analytic CDF on cfg.histogram_bins + 1 equally spaced points,
// plus the KS distance over all samples.
inline CdfComparison cdf_comparison(const BranchParams& params, const SimConfig& cfg) {
  cfg.validate();
  auto ys = sample_sum(params, cfg.n_samples, cfg.seed);
  std::sort(ys.begin(), ys.end());
  auto [lo, hi] = cfg.y_range;
  if (lo == hi) {
    lo = 0.0;
    hi = ys[static_cast<std::size_t>(0.999 * static_cast<double>(ys.size() - 1))];
  }
  CdfComparison out;
  const auto points = static_cast<std::size_t>(cfg.histogram_bins) + 1;
  out.rows.resize(points);
  parallel_for(points, [&](std::size_t i) {
    auto& row = out.rows[i];
    row.y = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    const auto count = std::upper_bound(ys.begin(), ys.end(), row.y) - ys.begin();
    row.empirical = static_cast<double>(count) / static_cast<double>(ys.size());
    row.analytic = cdf(params, std::max(row.y, 0.0));
    row.diff = std::abs(row.empirical - row.analytic);
  });
  const CdfInterpolant f(params, ys);
  out.ks = ks_statistic(ys, f);
  return out;
}

// Conditional-error averages: mean of cep(mod, Y) over simulated Y, for each
// modulation, sharing one set of samples.
inline std::vector<McEstimate> simulate_ber(const BranchParams& params,
                                            std::span<const Modulation> mods,
                                            const SimConfig& cfg) {
  cfg.validate();
  const std::size_t chunks = detail::chunk_count(cfg.n_samples);
  const std::size_t k = mods.size();
  std::vector<double> sums(chunks * k);
  std::vector<double> squares(chunks * k);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = c * detail::kChunk;
    const std::size_t len =
        std::min<std::size_t>(detail::kChunk, static_cast<std::size_t>(cfg.n_samples) - begin);
    std::vector<double> ys(len);
    detail::fill_chunk(params, cfg.seed, c, ys);
    std::vector<double> vals(len);
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < len; ++i) vals[i] = cep(mods[j], ys[i]);
      sums[j * chunks + c] = detail::pairwise_sum(vals);
      for (double& v : vals) v *= v;
      squares[j * chunks + c] = detail::pairwise_sum(vals);
    }
  });
  std::vector<McEstimate> out(k);
  const double n = static_cast<double>(cfg.n_samples);
  for (std::size_t j = 0; j < k; ++j) {
    const std::span<const double> s(sums.data() + j * chunks, chunks);
    const std::span<const double> q(squares.data() + j * chunks, chunks);
    const double mean = detail::pairwise_sum(s) / n;
    const double second = detail::pairwise_sum(q) / n;
    const double var = n > 1 ? std::max(0.0, second - mean * mean) * n / (n - 1) : 0.0;
    out[j] = {mean, std::sqrt(var / n), cfg.n_samples};
  }
  return out;
}

inline McEstimate simulate_ber(const BranchParams& params, const Modulation& mod,
                               const SimConfig& cfg) {
  return simulate_ber(params, std::span<const Modulation>(&mod, 1), cfg).front();
}

}  // namespace gammasum
