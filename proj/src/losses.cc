// Copyright 2026 The jndpf Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "jndpf/losses.h"

#include <cmath>
#include <vector>

#include "jndpf/error.h"
#include "jndpf/parallel.h"
#include "jndpf/ssim.h"
#include "jndpf/transform.h"

namespace jndpf {
namespace {

constexpr double kPixelScale = 1.0 / 255.0;

double Sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Shared driver of the two coefficient-domain losses: `block_fn` returns
// the block's loss and writes d(loss)/dC_f into its second argument.
template <typename BlockFn>
LossTerm BlockwiseLoss(const FloatPlane& i_f, const FloatPlane& other,
                       bool want_grad, BlockFn block_fn) {
  const auto pf = PadToBlocks(i_f);
  const auto po = PadToBlocks(other);
  const BlockGrid cf = ForwardDctGrid(pf.padded);
  const BlockGrid co = ForwardDctGrid(po.padded);
  const size_t n = cf.size();
  std::vector<double> sums(n);
  BlockGrid grad_grid{cf.blocks_x, cf.blocks_y, {}};
  if (want_grad) grad_grid.blocks.resize(n);
  const double inv_blocks = 1.0 / static_cast<double>(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    DctBlock g;
    sums[i] = block_fn(cf.blocks[i], co.blocks[i], g);
    if (want_grad) {
      for (double& v : g.values) v *= inv_blocks;
      grad_grid.blocks[i] = g;
    }
  }
  LossTerm term;
  term.value = PairwiseSum(sums) * inv_blocks;
  if (want_grad) {
    // The transform is orthonormal, so the pixel gradient is the inverse
    // DCT of the coefficient gradient.
    term.grad = FoldPaddedGradient(InverseDctGrid(grad_grid), i_f.width(),
                                   i_f.height());
  }
  return term;
}

}  // namespace

void LossWeights::Validate() const {
  auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!ok(lambda1) || !ok(lambda2) || !ok(lambda3)) {
    Fail(ErrorCode::kConfig, "[loss] lambdas must be finite and nonnegative");
  }
  if (cutoff < 1 || cutoff > 63) {
    Fail(ErrorCode::kConfig, "[loss] k must be in [1, 63]");
  }
  if (!(charbonnier_eps > 0.0) || !std::isfinite(charbonnier_eps)) {
    Fail(ErrorCode::kConfig, "[loss] charbonnier_eps must be positive");
  }
  if (msssim_max_scales < 1 || msssim_max_scales > kMsssimMaxScales) {
    Fail(ErrorCode::kConfig, "[loss] msssim_scales must be in [1, 5]");
  }
}

LossTerm CharbonnierLoss(const FloatPlane& i_f, const FloatPlane& i_gt,
                         double eps, bool want_grad) {
  RequireSameShape(i_f, i_gt, "charbonnier");
  const size_t n = i_f.size();
  std::vector<double> rows(i_f.height());
  LossTerm term;
  if (want_grad) term.grad = FloatPlane(i_f.width(), i_f.height());
  const double inv_n = 1.0 / static_cast<double>(n);
  const auto h = static_cast<std::ptrdiff_t>(i_f.height());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    const auto f = i_f.Row(y);
    const auto g = i_gt.Row(y);
    double acc = 0.0;
    for (size_t x = 0; x < f.size(); ++x) {
      const double d = (f[x] - g[x]) * kPixelScale;
      const double r = std::sqrt(d * d + eps * eps);
      acc += r - eps;
      if (want_grad) term.grad.at(x, y) = d / r * inv_n * kPixelScale;
    }
    rows[y] = acc;
  }
  term.value = PairwiseSum(rows) * inv_n;
  return term;
}

LossTerm MsssimLoss(const FloatPlane& i_f, const FloatPlane& i_gt,
                    bool want_grad, int max_scales, bool* reduced) {
  RequireSameShape(i_f, i_gt, "msssim loss");
  FloatPlane x(i_f.width(), i_f.height());
  FloatPlane y(i_f.width(), i_f.height());
  for (size_t i = 0; i < x.size(); ++i) {
    x.samples()[i] = i_f.samples()[i] * kPixelScale;
    y.samples()[i] = i_gt.samples()[i] * kPixelScale;
  }
  MsssimResult r = MultiScaleSsim(x, y, 1.0, want_grad, max_scales);
  if (reduced) *reduced = r.scales < max_scales;
  LossTerm term;
  term.value = 1.0 - r.value;
  if (want_grad) {
    term.grad = std::move(r.grad);
    for (double& v : term.grad.samples()) v *= -kPixelScale;
  }
  return term;
}

LossTerm DctResidualLoss(const FloatPlane& i_f, const FloatPlane& i_gt,
                         bool want_grad) {
  RequireSameShape(i_f, i_gt, "dct residual loss");
  return BlockwiseLoss(i_f, i_gt, want_grad,
                       [](const DctBlock& cf, const DctBlock& cg, DctBlock& g) {
                         double s = 0.0;
                         for (int k = 0; k < kBlockSize; ++k) {
                           const double d = cf[k] - cg[k];
                           s += d * d;
                           g[k] = 2.0 * d;
                         }
                         return s;
                       });
}

LossTerm DctConservationLoss(const FloatPlane& i_f, const FloatPlane& i_o,
                             int cutoff, bool want_grad) {
  RequireSameShape(i_f, i_o, "dct conservation loss");
  const FreqPartition part = Partition(cutoff);
  return BlockwiseLoss(
      i_f, i_o, want_grad,
      [&part](const DctBlock& cf, const DctBlock& co, DctBlock& g) {
        double s = 0.0;
        for (int k = 0; k < kBlockSize; ++k) {
          const double mf = std::abs(cf[k]);
          const double mo = std::abs(co[k]);
          if (part.IsLowFrequency(k)) {
            const double hinge = mo - mf;
            if (hinge > 0.0) {
              s += hinge * hinge;
              g[k] = -2.0 * hinge * Sign(cf[k]);
            } else {
              g[k] = 0.0;
            }
          } else {
            const double hinge = mf - mo;
            if (hinge > 0.0) {
              s += hinge * hinge;
              g[k] = 2.0 * hinge * Sign(cf[k]);
            } else {
              g[k] = 0.0;
            }
          }
        }
        return s;
      });
}

LossReport TotalLoss(const FloatPlane& i_f, const FloatPlane& i_gt,
                     const FloatPlane& i_o, const LossWeights& weights,
                     bool want_grad) {
  weights.Validate();
  RequireSameShape(i_f, i_gt, "total loss");
  RequireSameShape(i_f, i_o, "total loss");
  const LossTerm c =
      CharbonnierLoss(i_f, i_gt, weights.charbonnier_eps, want_grad);
  bool reduced = false;
  const LossTerm m = MsssimLoss(i_f, i_gt, want_grad,
                                weights.msssim_max_scales, &reduced);
  const LossTerm res = DctResidualLoss(i_f, i_gt, want_grad);
  const LossTerm cons =
      DctConservationLoss(i_f, i_o, weights.cutoff, want_grad);

  LossReport report;
  report.l_c = c.value;
  report.l_m = m.value;
  report.l_res = res.value;
  report.l_cons = cons.value;
  report.l_freq = res.value + cons.value;
  report.l_all = weights.lambda1 * report.l_c + weights.lambda2 * report.l_m +
                 weights.lambda3 * report.l_freq;
  report.msssim_reduced = reduced;
  report.msssim_scales = MsssimScaleCount(i_f.width(), i_f.height(),
                                          weights.msssim_max_scales);
  if (want_grad) {
    FloatPlane g(i_f.width(), i_f.height());
    for (size_t i = 0; i < g.size(); ++i) {
      g.samples()[i] =
          weights.lambda1 * c.grad.samples()[i] +
          weights.lambda2 * m.grad.samples()[i] +
          weights.lambda3 * (res.grad.samples()[i] + cons.grad.samples()[i]);
    }
    report.grad = std::move(g);
  }
  return report;
}

}  // namespace jndpf
