#include "mvmc/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "mvmc/chains.hpp"
#include "mvmc/polya.hpp"

namespace mvmc {

double pochhammer_rising(double x, int n) {
  if (n < 0) throw std::invalid_argument("pochhammer: n >= 0");
  double p = 1.0;
  for (int i = 0; i < n; ++i) p *= x + i;
  return p;
}

double log_pochhammer_rising(double x, int n) {
  if (n < 0) throw std::invalid_argument("pochhammer: n >= 0");
  if (!(x > 0.0)) throw std::invalid_argument("log pochhammer: x > 0");
  return std::lgamma(x + n) - std::lgamma(x);
}

double falling_factorial(double x, int s) {
  if (s < 0) throw std::invalid_argument("falling factorial: s >= 0");
  double p = 1.0;
  for (int i = 0; i < s; ++i) p *= x - i;
  return p;
}

StirlingTables::StirlingTables() {
  const int r_max = max_order();
  s1_.assign(r_max + 1, std::vector<unsigned __int128>(r_max + 1, 0));
  s2_.assign(r_max + 1, std::vector<unsigned __int128>(r_max + 1, 0));
  s1_[0][0] = 1;
  s2_[0][0] = 1;
  for (int r = 1; r <= r_max; ++r) {
    for (int t = 1; t <= r; ++t) {
      // |s(r,t)| = |s(r-1,t-1)| + (r-1)|s(r-1,t)|
      s1_[r][t] = s1_[r - 1][t - 1] +
                  static_cast<unsigned __int128>(r - 1) * s1_[r - 1][t];
      // S(r,t) = S(r-1,t-1) + t S(r-1,t)
      s2_[r][t] = s2_[r - 1][t - 1] +
                  static_cast<unsigned __int128>(t) * s2_[r - 1][t];
    }
  }
}

const StirlingTables& StirlingTables::instance() {
  static const StirlingTables tables;
  return tables;
}

namespace {
void check_order(int v) {
  if (v < 0 || v > StirlingTables::max_order()) {
    throw std::invalid_argument("stirling: order must be in [0, 30]");
  }
}
}  // namespace

double StirlingTables::first_kind_abs(int r, int t) const {
  check_order(r);
  check_order(t);
  return static_cast<double>(s1_[r][t]);
}

double StirlingTables::second_kind(int t, int s) const {
  check_order(t);
  check_order(s);
  return static_cast<double>(s2_[t][s]);
}

double StirlingTables::rising_to_falling(int r, int s) const {
  check_order(r);
  check_order(s);
  unsigned __int128 acc = 0;
  for (int t = s; t <= r; ++t) acc += s1_[r][t] * s2_[t][s];
  return static_cast<double>(acc);
}

double MomentQuery::total_mass() const {
  double a = 0.0;
  for (double m : masses) a += m;
  return a;
}

void MomentQuery::validate() const {
  if (n < 1) throw std::invalid_argument("moment query: n >= 1");
  if (masses.size() < 2 || masses.size() != orders.size()) {
    throw std::invalid_argument("moment query: need k >= 2 matching cells");
  }
  for (double m : masses) {
    if (!(m > 0.0)) {
      throw std::invalid_argument("moment query: masses must be positive");
    }
  }
  for (int r : orders) {
    if (r < 0) throw std::invalid_argument("moment query: orders >= 0");
    if (r > StirlingTables::max_order()) {
      throw std::invalid_argument("moment query: order above 30");
    }
  }
}

double c_coefficient(int n, std::span<const double> masses,
                     std::span<const int> s) {
  if (masses.size() != s.size()) {
    throw std::invalid_argument("c_coefficient: size mismatch");
  }
  int sigma = 0;
  double a = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0) throw std::invalid_argument("c_coefficient: s >= 0");
    sigma += s[i];
    a += masses[i];
  }
  if (sigma > n) return 0.0;
  double log_num = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    log_num += log_pochhammer_rising(masses[i], s[i]);
  }
  const double fall = falling_factorial(static_cast<double>(n), sigma);
  return std::exp(log_num - log_pochhammer_rising(a, sigma)) * fall;
}

bool c_recursion_check(int n, std::span<const double> masses,
                       std::span<const int> s, double rel_tol) {
  const std::size_t k = s.size();
  double a = 0.0;
  for (double m : masses) a += m;
  std::vector<int> sv(s.begin(), s.end());
  const double c_next = c_coefficient(n + 1, masses, sv);
  const double c_same = c_coefficient(n, masses, sv);
  bool any_positive = false;
  for (std::size_t i = 0; i < k; ++i) {
    if (sv[i] < 1) continue;
    any_positive = true;
    sv[i] -= 1;
    const double c_down = c_coefficient(n, masses, sv);
    sv[i] += 1;
    const double rhs =
        (n + 1.0) * (masses[i] + sv[i] - 1.0) / (a + n) * c_down +
        (n + 1.0) / (a + n) * c_same;
    const double scale = std::max({std::abs(c_next), std::abs(rhs), 1e-300});
    if (std::abs(c_next - rhs) / scale > rel_tol) return false;
  }
  if (!any_positive) {
    // All-zero multi-index: C is identically 1.
    return std::abs(c_next - 1.0) <= rel_tol && std::abs(c_same - 1.0) <= rel_tol;
  }
  return true;
}

double polya_mixed_moment(const MomentQuery& query) {
  query.validate();
  const auto& tables = StirlingTables::instance();
  const std::size_t k = query.masses.size();
  int r_total = 0;
  for (int r : query.orders) r_total += r;
  if (r_total == 0) return 1.0;

  // (j)_{r^1} = sum_s rising_to_falling(r, s) (j)_{s_1}, so the moment is a
  // polynomial in the C coefficients with product weights.
  std::vector<std::vector<double>> coef(k);
  for (std::size_t i = 0; i < k; ++i) {
    coef[i].resize(static_cast<std::size_t>(query.orders[i]) + 1);
    for (int s = 0; s <= query.orders[i]; ++s) {
      coef[i][static_cast<std::size_t>(s)] =
          tables.rising_to_falling(query.orders[i], s);
    }
  }

  std::vector<int> s(k, 0);
  double total = 0.0;
  for (;;) {
    double w = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      w *= coef[i][static_cast<std::size_t>(s[i])];
    }
    if (w != 0.0) {
      total += w * c_coefficient(query.n, query.masses, s);
    }
    std::size_t pos = 0;
    while (pos < k) {
      if (s[pos] < query.orders[pos]) {
        ++s[pos];
        break;
      }
      s[pos] = 0;
      ++pos;
    }
    if (pos == k) break;
  }
  return total / pochhammer_rising(static_cast<double>(query.n), r_total);
}

double dirichlet_moment(std::span<const double> masses,
                        std::span<const int> orders) {
  if (masses.size() != orders.size() || masses.empty()) {
    throw std::invalid_argument("dirichlet_moment: size mismatch");
  }
  double a = 0.0;
  int r_total = 0;
  double log_num = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    a += masses[i];
    r_total += orders[i];
    log_num += log_pochhammer_rising(masses[i], orders[i]);
  }
  return std::exp(log_num - log_pochhammer_rising(a, r_total));
}

double brute_force_moment_exact(const MomentQuery& query) {
  query.validate();
  const std::size_t k = query.masses.size();
  if (query.n > 12 || k > 3) {
    throw std::invalid_argument("brute force exact: budget is n <= 12, k <= 3");
  }
  int r_total = 0;
  for (int r : query.orders) r_total += r;
  const double denom =
      pochhammer_rising(static_cast<double>(query.n), r_total);

  // Conditionally on the cell counts, the cell masses of Q_n are Dirichlet
  // with the empirical parameter, so the moment is
  //   sum_j pmf(j) prod_i (j_i)_{r_i^1} / (n)_{(sum r)^1}.
  // Odometer over the first k-1 counts; the last takes the remainder.
  std::vector<int> j(k, 0);
  double total = 0.0;
  for (;;) {
    int partial = 0;
    for (std::size_t i = 0; i + 1 < k; ++i) partial += j[i];
    if (partial <= query.n) {
      j[k - 1] = query.n - partial;
      double prod = 1.0;
      for (std::size_t i = 0; i < k; ++i) {
        prod *= pochhammer_rising(static_cast<double>(j[i]), query.orders[i]);
      }
      if (prod != 0.0) {
        total += polya_partition_pmf(query.masses, j) * prod / denom;
      }
    }
    std::size_t pos = 0;
    while (pos + 1 < k && j[pos] == query.n) {
      j[pos] = 0;
      ++pos;
    }
    if (pos + 1 == k) break;
    ++j[pos];
  }
  return total;
}

McEstimate brute_force_moment_mc(const MomentQuery& query,
                                 std::uint64_t samples, Rng& rng) {
  query.validate();
  if (samples == 0) {
    throw std::invalid_argument("brute force mc: samples >= 1");
  }
  const std::size_t k = query.masses.size();
  const double a = query.total_mass();
  std::vector<double> cell_atoms(k);
  std::vector<double> cell_probs(k);
  for (std::size_t i = 0; i < k; ++i) {
    cell_atoms[i] = static_cast<double>(i);
    cell_probs[i] = query.masses[i] / a;
  }
  const BaseMeasure base = BaseMeasure::Discrete(cell_atoms, cell_probs, a);

  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<double> cell_weight(k);
  for (std::uint64_t rep = 0; rep < samples; ++rep) {
    Rng child = rng.split(rep);
    const QnState state = qn_run(query.n, SourceKind::kPolya, base, child);
    std::fill(cell_weight.begin(), cell_weight.end(), 0.0);
    for (std::size_t i = 0; i < state.atoms.size(); ++i) {
      cell_weight[static_cast<std::size_t>(state.atoms[i])] +=
          state.weights[i];
    }
    double prod = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      for (int r = 0; r < query.orders[i]; ++r) prod *= cell_weight[i];
    }
    sum += prod;
    sum_sq += prod * prod;
  }
  const double mean = sum / static_cast<double>(samples);
  const double var =
      std::max(0.0, sum_sq / static_cast<double>(samples) - mean * mean);
  return {mean, std::sqrt(var / static_cast<double>(samples))};
}

}  // namespace mvmc
