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

#include "nftsignal/stats.h"

#include <vector>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include "oracles.h"

namespace nftsignal {
namespace {

TEST(IncompleteBeta, MatchesBoostOnAGrid) {
  for (double a : {0.5, 1.0, 2.5, 10.0, 97.0}) {
    for (double b : {0.5, 1.0, 3.0, 40.0, 250.0}) {
      for (double x : {0.0, 1e-6, 0.01, 0.2, 0.5, 0.77, 0.999, 1.0}) {
        const double expected = boost::math::ibeta(a, b, x);
        EXPECT_LT(oracle::RelativeError(stats::RegularizedIncompleteBeta(a, b, x),
                                        expected),
                  1e-10)
            << "a=" << a << " b=" << b << " x=" << x;
      }
    }
  }
}

TEST(FSurvival, MatchesBoostFisherF) {
  for (double d1 : {1.0, 2.0, 3.0}) {
    for (double d2 : {5.0, 60.0, 194.0}) {
      for (double f : {0.01, 0.5, 1.0, 3.9, 29.0, 150.0}) {
        boost::math::fisher_f dist(d1, d2);
        const double expected =
            boost::math::cdf(boost::math::complement(dist, f));
        EXPECT_LT(oracle::RelativeError(stats::FSurvival(f, d1, d2), expected),
                  1e-9)
            << d1 << "," << d2 << "," << f;
      }
    }
  }
}

TEST(FSurvival, NonPositiveStatisticIsOne) {
  EXPECT_EQ(stats::FSurvival(0.0, 2, 10), 1.0);
}

TEST(Moments, MeanAndVariance) {
  const std::vector<double> v = {1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(stats::Mean(v), 2.5);
  EXPECT_DOUBLE_EQ(stats::Variance(v, 0), 1.25);
  EXPECT_DOUBLE_EQ(stats::Variance(v, 1), 5.0 / 3.0);
}

}  // namespace
}  // namespace nftsignal
