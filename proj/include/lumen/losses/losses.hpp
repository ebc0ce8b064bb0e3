// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>

namespace lumen::losses {

// Training objective weights. depth = alpha*SSI + beta*L1; total adds
// gamma times the adversarial term. grl_lambda scales the reversed
// gradient that the discriminator feeds back into the feature extractor.
struct LossWeights {
  double alpha = 1.0;
  double beta = 100.0;
  double gamma = 0.1;
  double grl_lambda = 1.0;

  void validate() const;
};

// Least-squares alignment pred -> gt: minimizes sum_mask (s*pred + t - gt)^2.
struct AlignmentParams {
  double s = 1.0;
  double t = 0.0;
};

inline constexpr double kVarEpsilon = 1e-12;   // degenerate prediction variance
inline constexpr double kProbEpsilon = 1e-7;   // probability clamp before logs

// All functions take flat per-image buffers; mask entries are 0/1 and all
// spans must have equal length. Math is done in double so the invariance and
// finite-difference suites hold at 64-bit tolerances.

AlignmentParams align_scale_shift(std::span<const double> pred,
                                  std::span<const double> gt,
                                  std::span<const uint8_t> mask);

double ssi_loss(std::span<const double> pred, std::span<const double> gt,
                std::span<const uint8_t> mask);
// Returns the loss and writes dLoss/dpred (zero outside the mask).
double ssi_loss_grad(std::span<const double> pred, std::span<const double> gt,
                     std::span<const uint8_t> mask, std::span<double> grad_pred);

double l1_loss(std::span<const double> pred, std::span<const double> gt,
               std::span<const uint8_t> mask);
double l1_loss_grad(std::span<const double> pred, std::span<const double> gt,
                    std::span<const uint8_t> mask, std::span<double> grad_pred);

double depth_loss(std::span<const double> pred, std::span<const double> gt,
                  std::span<const uint8_t> mask, const LossWeights& w);
double depth_loss_grad(std::span<const double> pred, std::span<const double> gt,
                       std::span<const uint8_t> mask, const LossWeights& w,
                       std::span<double> grad_pred);

// -mean(log d_source) - mean(log(1 - d_target)), probabilities clamped to
// [eps, 1-eps] first. Source carries domain label 1, target label 0.
double adversarial_loss(std::span<const double> d_source,
                        std::span<const double> d_target);
double adversarial_loss_grad(std::span<const double> d_source,
                             std::span<const double> d_target,
                             std::span<double> grad_source,
                             std::span<double> grad_target);

// l_d is absent for target-only batches.
double total_loss(std::optional<double> l_d, double l_adv, const LossWeights& w);

// Gradient reversal: the forward pass is the identity; this is the backward
// transform. lambda values of 0, 0.5, 1, 2 scale exactly in binary fp.
template <class T>
void gradient_reversal_backward(std::span<const T> upstream, double lambda,
                                std::span<T> out) {
  const T neg = static_cast<T>(-lambda);
  for (size_t i = 0; i < upstream.size(); ++i) out[i] = neg * upstream[i];
}

}  // namespace lumen::losses
