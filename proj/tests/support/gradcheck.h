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

// Central finite-difference check of the penalized-MAE backward pass.
#ifndef NFTSIGNAL_TESTS_GRADCHECK_H_
#define NFTSIGNAL_TESTS_GRADCHECK_H_

#include <algorithm>
#include <cmath>
#include <vector>

#include "nftsignal/model.h"

namespace nftsignal::oracle {

inline double Loss(const Mlp& net, const Eigen::MatrixXd& x,
                   const std::vector<double>& y) {
  const Eigen::VectorXd pred = net.Predict(x);
  return PenalizedMaeLoss(y, std::vector<double>(pred.data(), pred.data() + pred.size()));
}

// Relative error ||analytic - numeric|| / max(||analytic||, ||numeric||) over
// every parameter of `net`.
inline double GradientRelativeError(const Mlp& net, const Eigen::MatrixXd& x,
                                    const std::vector<double>& y,
                                    double h = 1e-6) {
  const Gradients g = Backward(net, x, y);
  Mlp probe = net;
  double diff = 0.0, analytic_norm = 0.0, numeric_norm = 0.0;
  const auto visit = [&](double& param, double analytic) {
    const double saved = param;
    param = saved + h;
    const double up = Loss(probe, x, y);
    param = saved - h;
    const double down = Loss(probe, x, y);
    param = saved;
    const double numeric = (up - down) / (2 * h);
    diff += (analytic - numeric) * (analytic - numeric);
    analytic_norm += analytic * analytic;
    numeric_norm += numeric * numeric;
  };
  auto& layers = probe.mutable_layers();
  for (std::size_t l = 0; l < layers.size(); ++l) {
    for (Eigen::Index i = 0; i < layers[l].weights.size(); ++i) {
      visit(layers[l].weights.data()[i], g.layers[l].weights.data()[i]);
    }
    for (Eigen::Index i = 0; i < layers[l].bias.size(); ++i) {
      visit(layers[l].bias.data()[i], g.layers[l].bias.data()[i]);
    }
  }
  const double scale = std::sqrt(std::max(analytic_norm, numeric_norm));
  return scale == 0.0 ? 0.0 : std::sqrt(diff) / scale;
}

}  // namespace nftsignal::oracle

#endif  // NFTSIGNAL_TESTS_GRADCHECK_H_
