/*
 * Copyright 2026 The nftsignal Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Reference implementations used as independent oracles in tests. They
// avoid the library's numerical paths on purpose: least squares goes through
// long-double normal equations and distributions come from Boost.Math.
#ifndef NFTSIGNAL_TESTS_ORACLES_H_
#define NFTSIGNAL_TESTS_ORACLES_H_

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/math/distributions/fisher_f.hpp>

namespace nftsignal::oracle {

using Row = std::vector<long double>;

// Solves (X'X) b = X'y by Gaussian elimination with partial pivoting and
// returns the residual sum of squares.
inline long double NormalEquationsSsr(const std::vector<Row>& x,
                                      const std::vector<long double>& y) {
  const std::size_t k = x.front().size();
  std::vector<Row> a(k, Row(k + 1, 0.0L));
  for (std::size_t r = 0; r < x.size(); ++r) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) a[i][j] += x[r][i] * x[r][j];
      a[i][k] += x[r][i] * y[r];
    }
  }
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < k; ++r) {
      if (std::fabs(a[r][c]) > std::fabs(a[pivot][c])) pivot = r;
    }
    std::swap(a[c], a[pivot]);
    if (a[c][c] == 0.0L) throw std::runtime_error("singular normal equations");
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c) continue;
      const long double f = a[r][c] / a[c][c];
      for (std::size_t j = c; j <= k; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<long double> beta(k);
  for (std::size_t i = 0; i < k; ++i) beta[i] = a[i][k] / a[i][i];
  long double ssr = 0.0L;
  for (std::size_t r = 0; r < x.size(); ++r) {
    long double fit = 0.0L;
    for (std::size_t i = 0; i < k; ++i) fit += x[r][i] * beta[i];
    ssr += (y[r] - fit) * (y[r] - fit);
  }
  return ssr;
}

struct FTestResult {
  double f = 0.0;
  double p = 0.0;
  int df_num = 0;
  int df_den = 0;
};

// SSR F-test of "x does not Granger-cause y" with `lags` lags: regress y_t on
// a constant and y_{t-1..t-lags}, then add x_{t-1..t-lags}.
inline FTestResult GrangerFTest(std::span<const double> y,
                                std::span<const double> x, int lags) {
  const std::size_t p = static_cast<std::size_t>(lags);
  std::vector<Row> restricted, unrestricted;
  std::vector<long double> target;
  for (std::size_t t = p; t < y.size(); ++t) {
    Row r = {1.0L};
    for (std::size_t l = 1; l <= p; ++l) r.push_back(y[t - l]);
    Row u = r;
    for (std::size_t l = 1; l <= p; ++l) u.push_back(x[t - l]);
    restricted.push_back(r);
    unrestricted.push_back(u);
    target.push_back(y[t]);
  }
  const long double ssr_r = NormalEquationsSsr(restricted, target);
  const long double ssr_u = NormalEquationsSsr(unrestricted, target);
  FTestResult out;
  out.df_num = lags;
  out.df_den = static_cast<int>(target.size()) - 2 * lags - 1;
  out.f = static_cast<double>(((ssr_r - ssr_u) / p) / (ssr_u / out.df_den));
  boost::math::fisher_f dist(out.df_num, out.df_den);
  out.p = boost::math::cdf(boost::math::complement(dist, out.f));
  return out;
}

inline double RelativeError(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

}  // namespace nftsignal::oracle

#endif  // NFTSIGNAL_TESTS_ORACLES_H_
