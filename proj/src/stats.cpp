#include "mvmc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mvmc {

double mean_of(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean_of: empty");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double variance_of(std::span<const double> xs) {
  if (xs.size() < 2) throw std::invalid_argument("variance_of: need n >= 2");
  const double m = mean_of(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < a.size() && ib < b.size()) {
    const double x = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] <= x) ++ia;
    while (ib < b.size() && b[ib] <= x) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / na -
                             static_cast<double>(ib) / nb));
  }
  return d;
}

double ks_one_sample(std::vector<double> xs,
                     const std::function<double(double)>& cdf) {
  if (xs.empty()) throw std::invalid_argument("ks: empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::max((static_cast<double>(i) + 1.0) / n - f,
                             f - static_cast<double>(i) / n));
  }
  return d;
}

namespace {
double ks_c(double alpha) { return std::sqrt(-0.5 * std::log(alpha / 2.0)); }
}  // namespace

double ks_two_sample_critical(std::size_t n1, std::size_t n2, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("ks critical: alpha in (0,1)");
  }
  const double h = (static_cast<double>(n1) + static_cast<double>(n2)) /
                   (static_cast<double>(n1) * static_cast<double>(n2));
  return ks_c(alpha) * std::sqrt(h);
}

double ks_one_sample_critical(std::size_t n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("ks critical: alpha in (0,1)");
  }
  return ks_c(alpha) / std::sqrt(static_cast<double>(n));
}

std::vector<double> histogram_density(std::span<const double> xs, double lo,
                                      double hi, int bins) {
  if (!(hi > lo) || bins < 1) {
    throw std::invalid_argument("histogram: bad range or bin count");
  }
  std::vector<double> dens(static_cast<std::size_t>(bins), 0.0);
  const double width = (hi - lo) / bins;
  std::size_t inside = 0;
  for (double x : xs) {
    if (x < lo || x > hi) continue;
    int b = static_cast<int>((x - lo) / width);
    if (b == bins) b = bins - 1;
    dens[static_cast<std::size_t>(b)] += 1.0;
    ++inside;
  }
  if (inside == 0) return dens;
  const double norm = 1.0 / (static_cast<double>(inside) * width);
  for (double& d : dens) d *= norm;
  return dens;
}

double tv_histogram_estimate(std::span<const double> a,
                             std::span<const double> b, int bins) {
  double lo = a[0], hi = a[0];
  for (double x : a) lo = std::min(lo, x), hi = std::max(hi, x);
  for (double x : b) lo = std::min(lo, x), hi = std::max(hi, x);
  if (hi == lo) return 0.0;
  const auto da = histogram_density(a, lo, hi, bins);
  const auto db = histogram_density(b, lo, hi, bins);
  const double width = (hi - lo) / bins;
  double l1 = 0.0;
  for (int i = 0; i < bins; ++i) {
    l1 += std::abs(da[static_cast<std::size_t>(i)] -
                   db[static_cast<std::size_t>(i)]) *
          width;
  }
  return 0.5 * l1;
}

double least_squares_slope(std::span<const double> x,
                           std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope: need matching n >= 2");
  }
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope: degenerate x");
  return sxy / sxx;
}

StationaryMoments reference_stationary_moments(std::span<const double> run) {
  if (run.size() < 6) {
    throw std::invalid_argument("stationary moments: run too short");
  }
  const std::size_t start = run.size() - run.size() / 3;
  const auto tail = run.subspan(start);
  return {mean_of(tail), std::sqrt(variance_of(tail))};
}

std::optional<int> estimate_burn_in(std::span<const double> trajectory,
                                    double stat_mean, double stat_sd,
                                    const BurnInRule& rule) {
  const double band = rule.band_sds * stat_sd;
  const std::size_t window = static_cast<std::size_t>(rule.window);
  if (trajectory.size() < window) return std::nullopt;
  std::size_t run = 0;
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    if (std::abs(trajectory[i] - stat_mean) <= band) {
      ++run;
      if (run == window) return static_cast<int>(i + 1 - window);
    } else {
      run = 0;
    }
  }
  return std::nullopt;
}

}  // namespace mvmc
