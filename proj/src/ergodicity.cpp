#include "mvmc/ergodicity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mvmc/chains.hpp"
#include "mvmc/polya.hpp"
#include "mvmc/quadrature.hpp"

namespace mvmc {

namespace {
constexpr double kPi = 3.14159265358979323846;

// E[theta^s] for theta ~ Beta(n, a).
double theta_pow_moment(int n, double a, double s) {
  return std::exp(std::lgamma(n + s) + std::lgamma(a + n) - std::lgamma(n) -
                  std::lgamma(a + n + s));
}
}  // namespace

double drift_lambda_lower(int n, double a, double s) {
  return std::exp(std::lgamma(a + s) + std::lgamma(a + n) - std::lgamma(a) -
                  std::lgamma(a + s + n));
}

void DriftSpec::validate() const {
  if (n < 1) throw std::invalid_argument("drift: n >= 1");
  if (!(a > 0.0)) throw std::invalid_argument("drift: a > 0");
  if (!(s_exponent > 0.0 && s_exponent <= 1.0)) {
    throw std::invalid_argument("drift: s in (0, 1]");
  }
  if (!(mean_abs_y >= 0.0) || !std::isfinite(mean_abs_y)) {
    throw std::invalid_argument(
        "drift: finite moment of |Y| required (use s < 1 for heavy tails)");
  }
  const double lower = drift_lambda_lower(n, a, s_exponent);
  if (!(lambda > lower && lambda < 1.0)) {
    throw std::invalid_argument("drift: lambda outside admissible interval");
  }
}

double drift_b_constant(const DriftSpec& spec) {
  spec.validate();
  const double coef =
      spec.s_exponent == 1.0
          ? static_cast<double>(spec.n) / (spec.n + spec.a)
          : spec.n * theta_pow_moment(spec.n, spec.a, spec.s_exponent);
  return 1.0 - spec.lambda + coef * spec.mean_abs_y;
}

double small_set_radius(const DriftSpec& spec) {
  spec.validate();
  const double numer = drift_b_constant(spec);
  const double denom =
      spec.lambda - drift_lambda_lower(spec.n, spec.a, spec.s_exponent);
  const double radius_pow_s = numer / denom;
  if (spec.s_exponent == 1.0) return radius_pow_s;
  return std::pow(radius_pow_s, 1.0 / spec.s_exponent);
}

DriftReport drift_verify(const DriftSpec& spec, const BaseMeasure& base,
                         std::span<const double> x_grid, int mc_samples,
                         Rng& rng) {
  spec.validate();
  if (mc_samples < 2) throw std::invalid_argument("drift_verify: samples");
  DriftReport report;
  report.lambda = spec.lambda;
  report.b = drift_b_constant(spec);
  report.radius = small_set_radius(spec);
  report.all_pass = true;
  const double s = spec.s_exponent;
  for (double x : x_grid) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int rep = 0; rep < mc_samples; ++rep) {
      const Innovation inn = draw_innovation(spec.n, base, rng);
      const double next =
          inn.theta * innovation_value(inn) + (1.0 - inn.theta) * x;
      const double v = 1.0 + std::pow(std::abs(next), s);
      sum += v;
      sum_sq += v * v;
    }
    DriftPoint point;
    point.x = x;
    point.pv_estimate = sum / mc_samples;
    const double var = std::max(
        0.0, sum_sq / mc_samples - point.pv_estimate * point.pv_estimate);
    point.std_error = std::sqrt(var / mc_samples);
    point.bound = spec.lambda * (1.0 + std::pow(std::abs(x), s)) +
                  (std::abs(x) <= report.radius ? report.b : 0.0);
    point.pass = point.pv_estimate <= point.bound + 3.0 * point.std_error;
    report.all_pass = report.all_pass && point.pass;
    report.points.push_back(point);
  }
  return report;
}

double t_density(const AtomConfiguration& config, double abs_tol) {
  const std::size_t n = config.atoms.size();
  if (n < 2) throw std::invalid_argument("t_density: n >= 2");
  std::vector<double> d(n);
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = config.atoms[j] - config.point;
    if (d[j] == 0.0) {
      throw std::domain_error("t_density: evaluation point equals an atom");
    }
  }

  // After t = tan(u) the integrand is bounded on [0, pi/2]; at the right
  // endpoint it vanishes for n > 2 and tends to cos(phi_inf)/prod|d_j| for
  // n = 2.
  const double u_hi = 0.5 * kPi;
  auto integrand = [&](double u) -> double {
    if (u >= u_hi - 1e-12) {
      if (n > 2) return 0.0;
      double log_abs = 0.0;
      double phase = 0.0;
      for (double dj : d) {
        log_abs -= std::log(std::abs(dj));
        phase += (dj > 0.0 ? 1.0 : -1.0) * 0.5 * kPi;
      }
      return std::exp(log_abs) * std::cos(phase);
    }
    const double t = std::tan(u);
    const double t2 = t * t;
    double log_env = std::log1p(t2);
    double phase = 0.0;
    for (double dj : d) {
      log_env -= 0.5 * std::log1p(t2 * dj * dj);
      phase += std::atan(t * dj);
    }
    return std::exp(log_env) * std::cos(phase);
  };

  // Panel boundaries: a uniform subdivision keeps the error estimator
  // honest on the oscillatory part (the phase swings by up to n*pi), and a
  // cut at arctan(1/|d_j|) marks where each envelope factor turns over, so
  // near-atom configurations stay resolved.
  std::vector<double> cuts;
  for (int p = 0; p <= 16; ++p) cuts.push_back(u_hi * p / 16.0);
  for (double dj : d) {
    const double cut = std::atan(1.0 / std::abs(dj));
    if (cut > 1e-12 && cut < u_hi - 1e-12) cuts.push_back(cut);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return b - a < 1e-13; }),
             cuts.end());

  const double prefactor = (static_cast<double>(n) - 1.0) / kPi;
  const double panel_tol =
      abs_tol / prefactor * 0.5 / static_cast<double>(cuts.size());
  double integral = 0.0;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    integral += adaptive_simpson(integrand, cuts[p], cuts[p + 1], panel_tol);
  }
  const double value = prefactor * integral;
  // The exact density is nonnegative; quadrature noise may dip slightly
  // below zero outside the convex hull of the atoms.
  if (value < 0.0 && value > -50.0 * abs_tol) return 0.0;
  return value;
}

McQuadEstimate transition_density(int n, double a, double x, double z,
                                  const BaseMeasure& base, int mc_outer,
                                  Rng& rng, double abs_tol) {
  if (n < 2) throw std::invalid_argument("transition_density: n >= 2");
  if (!(a > 0.0)) throw std::invalid_argument("transition_density: a > 0");
  if (mc_outer < 2) throw std::invalid_argument("transition_density: outer");
  const double log_beta =
      std::lgamma(static_cast<double>(n)) + std::lgamma(a) -
      std::lgamma(a + n);
  const double inv_beta = std::exp(-log_beta);

  double sum = 0.0;
  double sum_sq = 0.0;
  for (int rep = 0; rep < mc_outer; ++rep) {
    double value = 0.0;
    // Singular atom configurations have probability zero; on the rare exact
    // hit the block is redrawn.
    for (int attempt = 0;; ++attempt) {
      AtomConfiguration config;
      config.atoms = polya_block(base, n, rng);
      bool all_tied = true;
      for (double y : config.atoms) all_tied = all_tied && y == config.atoms[0];
      if (all_tied) {
        // The urn tied the whole block, so T is the point mass at the
        // shared atom and the one-step density is the Beta pushforward
        // z = theta y + (1 - theta) x in closed form.
        const double y = config.atoms[0];
        if (y == x) {
          if (attempt >= 8) {
            throw std::domain_error("transition_density: degenerate block");
          }
          continue;
        }
        const double th = (z - x) / (y - x);
        value = (th > 0.0 && th < 1.0)
                    ? inv_beta * std::pow(th, n - 1) *
                          std::pow(1.0 - th, a - 1.0) / std::abs(y - x)
                    : 0.0;
        break;
      }
      try {
        // u = (1-t)^a absorbs the Beta(n, a) edge weight at t = 1. The
        // integrand carries quadrature noise of order abs_tol/10 from the
        // inner density evaluations, so the outer pass is a fixed composite
        // Simpson rule rather than an adaptive one that would chase noise.
        auto inner = [&](double u) -> double {
          const double t = 1.0 - std::pow(u, 1.0 / a);
          if (t <= 0.0) return 0.0;
          config.point = (z - (1.0 - t) * x) / t;
          // Nodes almost on an atom make the density quadrature lose all
          // precision to a 1/d-tall spike; shifting by an f_T-negligible
          // amount keeps the outer integral at its own accuracy scale.
          for (double y : config.atoms) {
            const double pad = 1e-7 * std::max(1.0, std::abs(y));
            if (std::abs(config.point - y) < pad) {
              config.point = config.point >= y ? y + pad : y - pad;
              break;
            }
          }
          const double ft = t_density(config, abs_tol * 0.1);
          return std::pow(t, n - 2) * ft;
        };
        const int panels = 128;
        double acc = inner(0.0) + inner(1.0);
        for (int p = 1; p < panels; ++p) {
          acc += 2.0 * (1.0 + (p % 2)) * inner(static_cast<double>(p) / panels);
        }
        value = inv_beta / a * acc / (3.0 * panels);
        break;
      } catch (const std::domain_error&) {
        if (attempt >= 8) throw;
      } catch (const std::runtime_error&) {
        // Residual non-convergence for this block; redraw, bounded.
        if (attempt >= 8) throw;
      }
    }
    sum += value;
    sum_sq += value * value;
  }
  const double mean = sum / mc_outer;
  const double var = std::max(0.0, sum_sq / mc_outer - mean * mean);
  return {mean, std::sqrt(var / mc_outer)};
}

double epsilon_lower_bound(int n, double a, double k_deriv, double lambda,
                           double mean_y, std::optional<int> reference_n0) {
  if (n < 2) throw std::invalid_argument("epsilon bound: n >= 2");
  if (!(a > 0.0)) throw std::invalid_argument("epsilon bound: a > 0");
  if (!(lambda > a / (n + a) && lambda < 1.0)) {
    throw std::invalid_argument("epsilon bound: lambda outside interval");
  }
  DriftSpec spec{.n = n, .a = a, .mean_abs_y = mean_y, .lambda = lambda};
  double radius = small_set_radius(spec);
  if (reference_n0) {
    const int n0 = *reference_n0;
    if (!(lambda > a / (a + n0))) {
      throw std::invalid_argument("epsilon bound: lambda <= a/(a+n0)");
    }
    radius = std::min(radius, (1.0 - lambda + mean_y) / (lambda - a / (a + n0)));
  }
  return static_cast<double>(n) / (a + n) -
         a * k_deriv * radius / (static_cast<double>(n) - 1.0);
}

double tv_decay_bound(double epsilon, int m) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("tv_decay_bound: epsilon in (0, 1]");
  }
  if (m < 0) throw std::invalid_argument("tv_decay_bound: m >= 0");
  return std::pow(1.0 - epsilon, m);
}

}  // namespace mvmc
