#include "mvmc/base_measure.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace mvmc {

BaseMeasure::BaseMeasure(BaseFamily family, double total_mass, double p1,
                         double p2, std::vector<double> atoms,
                         std::vector<double> probs)
    : family_(family),
      total_mass_(total_mass),
      p1_(p1),
      p2_(p2),
      atoms_(std::move(atoms)),
      probs_(std::move(probs)) {
  if (!(total_mass_ > 0.0) || !std::isfinite(total_mass_)) {
    throw std::invalid_argument("BaseMeasure: total mass must be positive");
  }
}

BaseMeasure BaseMeasure::Uniform(double lo, double hi, double total_mass) {
  if (!(lo < hi)) throw std::invalid_argument("uniform: requires lo < hi");
  return BaseMeasure(BaseFamily::kUniform, total_mass, lo, hi, {}, {});
}

BaseMeasure BaseMeasure::Gaussian(double mean, double sd, double total_mass) {
  if (!(sd > 0.0)) throw std::invalid_argument("gaussian: requires sd > 0");
  return BaseMeasure(BaseFamily::kGaussian, total_mass, mean, sd, {}, {});
}

BaseMeasure BaseMeasure::Cauchy(double location, double scale,
                                double total_mass) {
  if (!(scale > 0.0)) throw std::invalid_argument("cauchy: requires scale > 0");
  return BaseMeasure(BaseFamily::kCauchy, total_mass, location, scale, {}, {});
}

BaseMeasure BaseMeasure::Discrete(std::vector<double> atoms,
                                  std::vector<double> probs,
                                  double total_mass) {
  if (atoms.empty() || atoms.size() != probs.size()) {
    throw std::invalid_argument("discrete: atoms/probs size mismatch");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument("discrete: probs must be nonnegative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("discrete: probs must sum to 1");
  }
  return BaseMeasure(BaseFamily::kDiscrete, total_mass, 0.0, 0.0,
                     std::move(atoms), std::move(probs));
}

double BaseMeasure::sample(Rng& rng) const {
  switch (family_) {
    case BaseFamily::kUniform:
      return rng.uniform(p1_, p2_);
    case BaseFamily::kGaussian:
      return rng.gaussian(p1_, p2_);
    case BaseFamily::kCauchy:
      return rng.cauchy(p1_, p2_);
    case BaseFamily::kDiscrete: {
      const double u = rng.uniform01();
      double cum = 0.0;
      for (std::size_t i = 0; i + 1 < probs_.size(); ++i) {
        cum += probs_[i];
        if (u < cum) return atoms_[i];
      }
      return atoms_.back();
    }
  }
  throw std::logic_error("BaseMeasure: unknown family");
}

double BaseMeasure::mean_abs() const {
  switch (family_) {
    case BaseFamily::kUniform: {
      const double lo = p1_, hi = p2_;
      if (lo >= 0.0) return 0.5 * (lo + hi);
      if (hi <= 0.0) return -0.5 * (lo + hi);
      return 0.5 * (hi * hi + lo * lo) / (hi - lo);
    }
    case BaseFamily::kGaussian: {
      // Folded normal mean.
      const double mu = p1_, sd = p2_;
      const double z = mu / sd;
      const double phi = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
      const double cdf = 0.5 * std::erfc(-z / std::sqrt(2.0));
      return sd * 2.0 * phi + mu * (2.0 * cdf - 1.0);
    }
    case BaseFamily::kCauchy:
      return std::numeric_limits<double>::infinity();
    case BaseFamily::kDiscrete: {
      double s = 0.0;
      for (std::size_t i = 0; i < atoms_.size(); ++i) {
        s += probs_[i] * std::abs(atoms_[i]);
      }
      return s;
    }
  }
  throw std::logic_error("BaseMeasure: unknown family");
}

double BaseMeasure::mean() const {
  switch (family_) {
    case BaseFamily::kUniform:
      return 0.5 * (p1_ + p2_);
    case BaseFamily::kGaussian:
      return p1_;
    case BaseFamily::kCauchy:
      return std::numeric_limits<double>::quiet_NaN();
    case BaseFamily::kDiscrete: {
      double s = 0.0;
      for (std::size_t i = 0; i < atoms_.size(); ++i) {
        s += probs_[i] * atoms_[i];
      }
      return s;
    }
  }
  throw std::logic_error("BaseMeasure: unknown family");
}

std::string BaseMeasure::describe() const {
  std::ostringstream os;
  switch (family_) {
    case BaseFamily::kUniform:
      os << "uniform(" << p1_ << "," << p2_ << ")";
      break;
    case BaseFamily::kGaussian:
      os << "gaussian(" << p1_ << "," << p2_ << ")";
      break;
    case BaseFamily::kCauchy:
      os << "cauchy(" << p1_ << "," << p2_ << ")";
      break;
    case BaseFamily::kDiscrete:
      os << "discrete(" << atoms_.size() << " atoms)";
      break;
  }
  os << " a=" << total_mass_;
  return os.str();
}

}  // namespace mvmc
