#include "fragmine/chi2.hpp"

#include <cmath>

namespace fragmine {

double chi2(const ContingencyTable& t) {
  double a = t.p, b = t.n, c = t.P - t.p, d = t.N - t.n;
  double m = static_cast<double>(t.P) + t.N;
  double denom = (a + b) * (c + d) * (a + c) * (b + d);
  if (denom == 0.0) return 0.0;
  double det = a * d - b * c;
  return m * det * det / denom;
}

double chi2_upper_bound(const ContingencyTable& t) {
  double hi_p = chi2({t.p, 0, t.P, t.N});
  double hi_n = chi2({0, t.n, t.P, t.N});
  return hi_p > hi_n ? hi_p : hi_n;
}

double chi2_quantile(double confidence) {
  bool supported = std::abs(confidence - 0.95) < 1e-12 || std::abs(confidence - 0.99) < 1e-12 ||
                   std::abs(confidence - 0.999) < 1e-12;
  if (!supported) throw std::invalid_argument("unsupported confidence level");
  // CDF of chi-square with 1 df is erf(sqrt(x/2)); invert by bisection.
  double lo = 0.0, hi = 100.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (std::erf(std::sqrt(mid / 2.0)) < confidence)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace fragmine
