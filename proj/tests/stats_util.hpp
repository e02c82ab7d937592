#pragma once

// Goodness-of-fit helpers shared by the statistical tests.

#include <cstddef>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace testutil {

struct ChiSquare {
  double statistic = 0.0;
  std::size_t dof = 0;
  double critical = 0.0;
  bool pass = false;
};

/// Pearson chi-square of observed counts against expected counts. Adjacent
/// cells are pooled left to right until each pooled cell expects >= 5.
inline ChiSquare chi_square(const std::vector<double>& observed, const std::vector<double>& expected,
                            double level) {
  std::vector<double> o;
  std::vector<double> e;
  double acc_o = 0.0;
  double acc_e = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    acc_o += observed[i];
    acc_e += expected[i];
    if (acc_e >= 5.0) {
      o.push_back(acc_o);
      e.push_back(acc_e);
      acc_o = acc_e = 0.0;
    }
  }
  if (acc_e > 0.0 || acc_o > 0.0) {
    if (e.empty()) {
      o.push_back(acc_o);
      e.push_back(acc_e);
    } else {
      o.back() += acc_o;
      e.back() += acc_e;
    }
  }
  ChiSquare r;
  for (std::size_t i = 0; i < o.size(); ++i) r.statistic += (o[i] - e[i]) * (o[i] - e[i]) / e[i];
  r.dof = o.size() > 1 ? o.size() - 1 : 1;
  boost::math::chi_squared dist(static_cast<double>(r.dof));
  r.critical = boost::math::quantile(boost::math::complement(dist, level));
  r.pass = r.statistic <= r.critical;
  return r;
}

/// Binomial(n, q) probabilities for k = 0..n.
inline std::vector<double> binomial_pmf(std::size_t n, double q) {
  std::vector<double> pmf(n + 1, 0.0);
  pmf[0] = 1.0;
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t k = t + 2; k-- > 0;) pmf[k] = pmf[k] * (1.0 - q) + (k > 0 ? pmf[k - 1] * q : 0.0);
  }
  return pmf;
}

}  // namespace testutil
