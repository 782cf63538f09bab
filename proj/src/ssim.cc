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

#include "jndpf/ssim.h"

#include <cmath>
#include <vector>

#include "jndpf/error.h"
#include "jndpf/parallel.h"

namespace jndpf {
namespace {

constexpr int kRadius = kSsimWindow / 2;

double MeanOf(const FloatPlane& p) {
  std::vector<double> rows(p.height());
  const auto h = static_cast<std::ptrdiff_t>(p.height());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    double acc = 0.0;
    for (double v : p.Row(y)) acc += v;
    rows[y] = acc;
  }
  return PairwiseSum(rows) / static_cast<double>(p.size());
}

FloatPlane Product(const FloatPlane& a, const FloatPlane& b) {
  FloatPlane out(a.width(), a.height());
  auto sa = a.samples();
  auto sb = b.samples();
  auto so = out.samples();
  for (size_t i = 0; i < so.size(); ++i) so[i] = sa[i] * sb[i];
  return out;
}

}  // namespace

const std::array<double, kSsimWindow>& SsimWindow() {
  static const auto window = [] {
    std::array<double, kSsimWindow> w{};
    double sum = 0.0;
    for (int i = 0; i < kSsimWindow; ++i) {
      const double d = i - kRadius;
      w[i] = std::exp(-d * d / (2.0 * kSsimSigma * kSsimSigma));
      sum += w[i];
    }
    for (double& v : w) v /= sum;
    return w;
  }();
  return window;
}

FloatPlane ValidFilter(const FloatPlane& in) {
  if (in.width() < kSsimWindow || in.height() < kSsimWindow) {
    Fail(ErrorCode::kImageTooSmall, "plane smaller than the 11x11 window");
  }
  const auto& g = SsimWindow();
  const size_t ow = in.width() - (kSsimWindow - 1);
  const size_t oh = in.height() - (kSsimWindow - 1);
  FloatPlane tmp(ow, in.height());
  const auto h = static_cast<std::ptrdiff_t>(in.height());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    const auto src = in.Row(y);
    auto dst = tmp.Row(y);
    for (size_t x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kSsimWindow; ++k) acc += g[k] * src[x + k];
      dst[x] = acc;
    }
  }
  FloatPlane out(ow, oh);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t y = 0; y < static_cast<std::ptrdiff_t>(oh); ++y) {
    auto dst = out.Row(y);
    for (size_t x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kSsimWindow; ++k) acc += g[k] * tmp.at(x, y + k);
      dst[x] = acc;
    }
  }
  return out;
}

FloatPlane ValidFilterAdjoint(const FloatPlane& grad, size_t width,
                              size_t height) {
  const auto& g = SsimWindow();
  const auto gw = static_cast<std::ptrdiff_t>(grad.width());
  const auto gh = static_cast<std::ptrdiff_t>(grad.height());
  // Transpose of the vertical pass: tmp(x, y) = sum_k g[k] grad(x, y - k).
  FloatPlane tmp(grad.width(), height, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t y = 0; y < static_cast<std::ptrdiff_t>(height); ++y) {
    auto dst = tmp.Row(y);
    for (int k = 0; k < kSsimWindow; ++k) {
      const std::ptrdiff_t sy = y - k;
      if (sy < 0 || sy >= gh) continue;
      const auto src = grad.Row(sy);
      for (std::ptrdiff_t x = 0; x < gw; ++x) dst[x] += g[k] * src[x];
    }
  }
  // Transpose of the horizontal pass.
  FloatPlane out(width, height, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t y = 0; y < static_cast<std::ptrdiff_t>(height); ++y) {
    const auto src = tmp.Row(y);
    auto dst = out.Row(y);
    for (std::ptrdiff_t x = 0; x < static_cast<std::ptrdiff_t>(width); ++x) {
      double acc = 0.0;
      for (int k = 0; k < kSsimWindow; ++k) {
        const std::ptrdiff_t sx = x - k;
        if (sx >= 0 && sx < gw) acc += g[k] * src[sx];
      }
      dst[x] = acc;
    }
  }
  return out;
}

FloatPlane Downsample2x(const FloatPlane& in) {
  const size_t ow = in.width() / 2;
  const size_t oh = in.height() / 2;
  if (ow == 0 || oh == 0) {
    Fail(ErrorCode::kImageTooSmall, "plane too small to downsample");
  }
  FloatPlane out(ow, oh);
  for (size_t y = 0; y < oh; ++y) {
    for (size_t x = 0; x < ow; ++x) {
      out.at(x, y) = 0.25 * (in.at(2 * x, 2 * y) + in.at(2 * x + 1, 2 * y) +
                             in.at(2 * x, 2 * y + 1) +
                             in.at(2 * x + 1, 2 * y + 1));
    }
  }
  return out;
}

FloatPlane Downsample2xAdjoint(const FloatPlane& g, size_t width,
                               size_t height) {
  FloatPlane out(width, height, 0.0);
  for (size_t y = 0; y < g.height(); ++y) {
    for (size_t x = 0; x < g.width(); ++x) {
      const double v = 0.25 * g.at(x, y);
      out.at(2 * x, 2 * y) += v;
      out.at(2 * x + 1, 2 * y) += v;
      out.at(2 * x, 2 * y + 1) += v;
      out.at(2 * x + 1, 2 * y + 1) += v;
    }
  }
  return out;
}

SsimScaleResult SsimScale(const FloatPlane& x, const FloatPlane& y,
                          const SsimConstants& k, SsimGradient want) {
  RequireSameShape(x, y, "ssim");
  const FloatPlane mu_x = ValidFilter(x);
  const FloatPlane mu_y = ValidFilter(y);
  const FloatPlane e_xx = ValidFilter(Product(x, x));
  const FloatPlane e_yy = ValidFilter(Product(y, y));
  const FloatPlane e_xy = ValidFilter(Product(x, y));

  const size_t n = mu_x.size();
  FloatPlane ssim_map(mu_x.width(), mu_x.height());
  FloatPlane cs_map(mu_x.width(), mu_x.height());
  // Per-position partial derivatives of the requested quantity w.r.t.
  // mu_x, E[x^2] and E[xy].
  const bool grad = want != SsimGradient::kNone;
  FloatPlane d_mu, d_exx, d_exy;
  if (grad) {
    d_mu = FloatPlane(mu_x.width(), mu_x.height());
    d_exx = FloatPlane(mu_x.width(), mu_x.height());
    d_exy = FloatPlane(mu_x.width(), mu_x.height());
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const double mx = mu_x.samples()[i];
    const double my = mu_y.samples()[i];
    const double sxx = e_xx.samples()[i] - mx * mx;
    const double syy = e_yy.samples()[i] - my * my;
    const double sxy = e_xy.samples()[i] - mx * my;
    const double l_num = 2.0 * mx * my + k.c1;
    const double l_den = mx * mx + my * my + k.c1;
    const double cs_num = 2.0 * sxy + k.c2;
    const double cs_den = sxx + syy + k.c2;
    const double l = l_num / l_den;
    const double cs = cs_num / cs_den;
    ssim_map.samples()[i] = l * cs;
    cs_map.samples()[i] = cs;
    if (!grad) continue;
    const double dcs_dmu = (-2.0 * my + 2.0 * mx * cs) / cs_den;
    const double dcs_dexx = -cs / cs_den;
    const double dcs_dexy = 2.0 / cs_den;
    if (want == SsimGradient::kContrastStructure) {
      d_mu.samples()[i] = dcs_dmu * inv_n;
      d_exx.samples()[i] = dcs_dexx * inv_n;
      d_exy.samples()[i] = dcs_dexy * inv_n;
    } else {
      const double dl_dmu = (2.0 * my - 2.0 * mx * l) / l_den;
      d_mu.samples()[i] = (dl_dmu * cs + l * dcs_dmu) * inv_n;
      d_exx.samples()[i] = l * dcs_dexx * inv_n;
      d_exy.samples()[i] = l * dcs_dexy * inv_n;
    }
  }

  SsimScaleResult result;
  result.mean_ssim = MeanOf(ssim_map);
  result.mean_cs = MeanOf(cs_map);
  if (grad) {
    const FloatPlane a = ValidFilterAdjoint(d_mu, x.width(), x.height());
    const FloatPlane b = ValidFilterAdjoint(d_exx, x.width(), x.height());
    const FloatPlane c = ValidFilterAdjoint(d_exy, x.width(), x.height());
    result.grad = FloatPlane(x.width(), x.height());
    auto g = result.grad.samples();
    for (size_t i = 0; i < g.size(); ++i) {
      g[i] = a.samples()[i] + 2.0 * x.samples()[i] * b.samples()[i] +
             y.samples()[i] * c.samples()[i];
    }
  }
  return result;
}

int MsssimScaleCount(size_t width, size_t height, int max_scales) {
  int scales = 0;
  size_t w = width;
  size_t h = height;
  while (scales < max_scales && w >= kSsimWindow && h >= kSsimWindow) {
    ++scales;
    w /= 2;
    h /= 2;
  }
  return scales;
}

MsssimResult MultiScaleSsim(const FloatPlane& x, const FloatPlane& y,
                            double dynamic_range, bool want_grad,
                            int max_scales) {
  RequireSameShape(x, y, "ms-ssim");
  const int scales = MsssimScaleCount(x.width(), x.height(),
                                      std::min(max_scales, kMsssimMaxScales));
  if (scales == 0) {
    Fail(ErrorCode::kImageTooSmall,
         "image smaller than the 11x11 SSIM window");
  }
  std::vector<double> weights(kMsssimWeights.begin(),
                              kMsssimWeights.begin() + scales);
  if (scales < kMsssimMaxScales) {
    double sum = 0.0;
    for (double w : weights) sum += w;
    for (double& w : weights) w /= sum;
  }

  const SsimConstants k = SsimConstants::ForRange(dynamic_range);
  std::vector<FloatPlane> xs{x};
  std::vector<FloatPlane> ys{y};
  std::vector<double> factors(scales);
  std::vector<FloatPlane> grads(scales);
  for (int j = 0; j < scales; ++j) {
    if (j > 0) {
      xs.push_back(Downsample2x(xs.back()));
      ys.push_back(Downsample2x(ys.back()));
    }
    const bool last = j == scales - 1;
    const SsimGradient want =
        !want_grad ? SsimGradient::kNone
                   : (last ? SsimGradient::kSsim
                           : SsimGradient::kContrastStructure);
    SsimScaleResult r = SsimScale(xs[j], ys[j], k, want);
    factors[j] = last ? r.mean_ssim : r.mean_cs;
    grads[j] = std::move(r.grad);
  }

  MsssimResult result;
  result.scales = scales;
  result.reduced = scales < kMsssimMaxScales;
  bool positive = true;
  double value = 1.0;
  for (int j = 0; j < scales; ++j) {
    if (!(factors[j] > 0.0)) positive = false;
    value *= positive ? std::pow(factors[j], weights[j]) : 0.0;
  }
  result.value = positive ? value : 0.0;
  if (!want_grad) return result;

  result.grad = FloatPlane(x.width(), x.height(), 0.0);
  if (!positive) return result;
  // Accumulate from the coarsest scale back to full resolution.
  FloatPlane acc;
  for (int j = scales - 1; j >= 0; --j) {
    const double d = result.value * weights[j] / factors[j];
    FloatPlane level = grads[j];
    for (double& v : level.samples()) v *= d;
    if (!acc.empty()) {
      const FloatPlane up =
          Downsample2xAdjoint(acc, xs[j].width(), xs[j].height());
      for (size_t i = 0; i < level.size(); ++i) {
        level.samples()[i] += up.samples()[i];
      }
    }
    acc = std::move(level);
  }
  result.grad = std::move(acc);
  return result;
}

}  // namespace jndpf
