#ifndef MVMC_STATS_HPP_
#define MVMC_STATS_HPP_

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace mvmc {

double mean_of(std::span<const double> xs);
double variance_of(std::span<const double> xs);  // denominator n-1

// sup |F_a - F_b| over the pooled sample.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// sup |F_n - F| against a reference CDF.
double ks_one_sample(std::vector<double> xs,
                     const std::function<double(double)>& cdf);

// Asymptotic critical values: c(alpha) = sqrt(-ln(alpha/2)/2).
double ks_two_sample_critical(std::size_t n1, std::size_t n2, double alpha);
double ks_one_sample_critical(std::size_t n, double alpha);

// Equal-width histogram normalized to a density on [lo, hi].
std::vector<double> histogram_density(std::span<const double> xs, double lo,
                                      double hi, int bins);

// Total-variation estimate between two sample sets: half the L1 distance of
// histogram densities on a common grid spanning the pooled range.
double tv_histogram_estimate(std::span<const double> a,
                             std::span<const double> b, int bins = 100);

// Least-squares slope of y against x.
double least_squares_slope(std::span<const double> x,
                           std::span<const double> y);

// Stationary mean/sd read off the final third of a long reference run.
struct StationaryMoments {
  double mean;
  double sd;
};
StationaryMoments reference_stationary_moments(std::span<const double> run);

// Burn-in rule: first m such that the trajectory stays within
// band_sds stationary standard deviations of the stationary mean for
// `window` consecutive steps. nullopt when no such window exists.
struct BurnInRule {
  double band_sds = 2.0;
  int window = 50;
};
std::optional<int> estimate_burn_in(std::span<const double> trajectory,
                                    double stat_mean, double stat_sd,
                                    const BurnInRule& rule = {});

}  // namespace mvmc

#endif  // MVMC_STATS_HPP_
