#include "mvmc/quadrature.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mvmc {

namespace {

struct SimpsonWork {
  const std::function<double(double)>& f;
  double defect = 0.0;

  double recurse(double a, double b, double fa, double fm, double fb,
                 double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double err = (left + right - whole) / 15.0;
    if (std::abs(err) <= tol) return left + right + err;
    if (depth <= 0) {
      defect += std::abs(err);
      return left + right + err;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }
};

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth) {
  if (!(b > a)) throw std::invalid_argument("adaptive_simpson: b > a");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("adaptive_simpson: tol");
  SimpsonWork work{f};
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double result =
      work.recurse(a, b, fa, fm, fb, whole, abs_tol, max_depth);
  if (work.defect > abs_tol) {
    std::ostringstream os;
    os << "adaptive_simpson: did not converge, achieved tolerance "
       << work.defect << " > " << abs_tol;
    throw std::runtime_error(os.str());
  }
  return result;
}

}  // namespace mvmc
