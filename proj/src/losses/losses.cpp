// SPDX-License-Identifier: Apache-2.0
#include "lumen/losses/losses.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lumen/core/error.hpp"

namespace lumen::losses {
namespace {

struct MaskedMoments {
  size_t n = 0;
  double mean_pred = 0.0;
  double mean_gt = 0.0;
  double var_pred = 0.0;   // population variance
  double cov = 0.0;        // population covariance
};

MaskedMoments masked_moments(std::span<const double> pred,
                             std::span<const double> gt,
                             std::span<const uint8_t> mask) {
  require(pred.size() == gt.size() && pred.size() == mask.size(),
          ErrorCode::ShapeMismatch, "loss inputs differ in length");
  MaskedMoments m;
  double sp = 0.0, sg = 0.0;
  for (size_t i = 0; i < pred.size(); ++i) {
    if (!mask[i]) continue;
    ++m.n;
    sp += pred[i];
    sg += gt[i];
  }
  if (m.n == 0) return m;
  m.mean_pred = sp / static_cast<double>(m.n);
  m.mean_gt = sg / static_cast<double>(m.n);
  double svar = 0.0, scov = 0.0;
  for (size_t i = 0; i < pred.size(); ++i) {
    if (!mask[i]) continue;
    double a = pred[i] - m.mean_pred;
    double b = gt[i] - m.mean_gt;
    svar += a * a;
    scov += a * b;
  }
  m.var_pred = svar / static_cast<double>(m.n);
  m.cov = scov / static_cast<double>(m.n);
  return m;
}

size_t masked_count(std::span<const double> pred, std::span<const double> gt,
                    std::span<const uint8_t> mask) {
  require(pred.size() == gt.size() && pred.size() == mask.size(),
          ErrorCode::ShapeMismatch, "loss inputs differ in length");
  size_t n = 0;
  for (uint8_t m : mask) n += (m != 0);
  return n;
}

}  // namespace

void LossWeights::validate() const {
  auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
  require(ok(alpha) && ok(beta) && ok(gamma) && ok(grl_lambda),
          ErrorCode::ConfigInvalid,
          "loss weights must be finite and non-negative");
}

AlignmentParams align_scale_shift(std::span<const double> pred,
                                  std::span<const double> gt,
                                  std::span<const uint8_t> mask) {
  MaskedMoments m = masked_moments(pred, gt, mask);
  require(m.n >= 2, ErrorCode::DegenerateInput,
          "align_scale_shift needs at least 2 masked pixels");
  require(m.var_pred > kVarEpsilon, ErrorCode::DegenerateInput,
          "align_scale_shift: masked prediction variance is degenerate");
  AlignmentParams p;
  p.s = m.cov / m.var_pred;
  p.t = m.mean_gt - p.s * m.mean_pred;
  return p;
}

double ssi_loss(std::span<const double> pred, std::span<const double> gt,
                std::span<const uint8_t> mask) {
  AlignmentParams a = align_scale_shift(pred, gt, mask);
  double sum = 0.0;
  size_t n = 0;
  for (size_t i = 0; i < pred.size(); ++i) {
    if (!mask[i]) continue;
    double r = a.s * pred[i] + a.t - gt[i];
    sum += r * r;
    ++n;
  }
  return sum / static_cast<double>(n);
}

double ssi_loss_grad(std::span<const double> pred, std::span<const double> gt,
                     std::span<const uint8_t> mask,
                     std::span<double> grad_pred) {
  require(grad_pred.size() == pred.size(), ErrorCode::ShapeMismatch,
          "ssi_loss_grad: gradient buffer size mismatch");
  AlignmentParams a = align_scale_shift(pred, gt, mask);
  size_t n = 0;
  for (uint8_t m : mask) n += (m != 0);
  // With (s,t) at the least-squares optimum the residuals are orthogonal to
  // d(s,t)/dpred, so dL/dpred_j reduces to (2 s / n) * r_j on the mask.
  double sum = 0.0;
  double scale = 2.0 * a.s / static_cast<double>(n);
  for (size_t i = 0; i < pred.size(); ++i) {
    if (!mask[i]) {
      grad_pred[i] = 0.0;
      continue;
    }
    double r = a.s * pred[i] + a.t - gt[i];
    sum += r * r;
    grad_pred[i] = scale * r;
  }
  return sum / static_cast<double>(n);
}

double l1_loss(std::span<const double> pred, std::span<const double> gt,
               std::span<const uint8_t> mask) {
  size_t n = masked_count(pred, gt, mask);
  require(n >= 1, ErrorCode::DegenerateInput, "l1_loss: empty mask");
  double sum = 0.0;
  for (size_t i = 0; i < pred.size(); ++i) {
    if (mask[i]) sum += std::abs(pred[i] - gt[i]);
  }
  return sum / static_cast<double>(n);
}

double l1_loss_grad(std::span<const double> pred, std::span<const double> gt,
                    std::span<const uint8_t> mask,
                    std::span<double> grad_pred) {
  require(grad_pred.size() == pred.size(), ErrorCode::ShapeMismatch,
          "l1_loss_grad: gradient buffer size mismatch");
  size_t n = masked_count(pred, gt, mask);
  require(n >= 1, ErrorCode::DegenerateInput, "l1_loss: empty mask");
  double sum = 0.0;
  double inv_n = 1.0 / static_cast<double>(n);
  for (size_t i = 0; i < pred.size(); ++i) {
    if (!mask[i]) {
      grad_pred[i] = 0.0;
      continue;
    }
    double d = pred[i] - gt[i];
    sum += std::abs(d);
    grad_pred[i] = d > 0.0 ? inv_n : (d < 0.0 ? -inv_n : 0.0);
  }
  return sum * inv_n;
}

double depth_loss(std::span<const double> pred, std::span<const double> gt,
                  std::span<const uint8_t> mask, const LossWeights& w) {
  return w.alpha * ssi_loss(pred, gt, mask) + w.beta * l1_loss(pred, gt, mask);
}

double depth_loss_grad(std::span<const double> pred, std::span<const double> gt,
                       std::span<const uint8_t> mask, const LossWeights& w,
                       std::span<double> grad_pred) {
  std::vector<double> g1(pred.size()), g2(pred.size());
  double ssi = ssi_loss_grad(pred, gt, mask, g1);
  double l1 = l1_loss_grad(pred, gt, mask, g2);
  for (size_t i = 0; i < pred.size(); ++i) {
    grad_pred[i] = w.alpha * g1[i] + w.beta * g2[i];
  }
  return w.alpha * ssi + w.beta * l1;
}

double adversarial_loss(std::span<const double> d_source,
                        std::span<const double> d_target) {
  require(!d_source.empty() && !d_target.empty(), ErrorCode::EmptyBatch,
          "adversarial_loss: empty batch");
  double ls = 0.0;
  for (double d : d_source) {
    ls += std::log(std::clamp(d, kProbEpsilon, 1.0 - kProbEpsilon));
  }
  double lt = 0.0;
  for (double d : d_target) {
    lt += std::log(1.0 - std::clamp(d, kProbEpsilon, 1.0 - kProbEpsilon));
  }
  return -ls / static_cast<double>(d_source.size()) -
         lt / static_cast<double>(d_target.size());
}

double adversarial_loss_grad(std::span<const double> d_source,
                             std::span<const double> d_target,
                             std::span<double> grad_source,
                             std::span<double> grad_target) {
  require(!d_source.empty() && !d_target.empty(), ErrorCode::EmptyBatch,
          "adversarial_loss: empty batch");
  require(grad_source.size() == d_source.size() &&
              grad_target.size() == d_target.size(),
          ErrorCode::ShapeMismatch, "adversarial_loss_grad: buffer mismatch");
  const double lo = kProbEpsilon, hi = 1.0 - kProbEpsilon;
  double ls = 0.0;
  double inv_ns = 1.0 / static_cast<double>(d_source.size());
  for (size_t i = 0; i < d_source.size(); ++i) {
    double c = std::clamp(d_source[i], lo, hi);
    ls += std::log(c);
    // Clamped inputs sit on a flat region of the composed function.
    grad_source[i] = (d_source[i] > lo && d_source[i] < hi) ? -inv_ns / c : 0.0;
  }
  double lt = 0.0;
  double inv_nt = 1.0 / static_cast<double>(d_target.size());
  for (size_t i = 0; i < d_target.size(); ++i) {
    double c = std::clamp(d_target[i], lo, hi);
    lt += std::log(1.0 - c);
    grad_target[i] =
        (d_target[i] > lo && d_target[i] < hi) ? inv_nt / (1.0 - c) : 0.0;
  }
  return -ls * inv_ns - lt * inv_nt;
}

double total_loss(std::optional<double> l_d, double l_adv,
                  const LossWeights& w) {
  return l_d.value_or(0.0) + w.gamma * l_adv;
}

}  // namespace lumen::losses
