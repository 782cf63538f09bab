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

#include "jndpf/selftest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "jndpf/bd_rate.h"
#include "jndpf/injection.h"
#include "jndpf/losses.h"
#include "jndpf/transform.h"

namespace jndpf {
namespace {

class Checker {
 public:
  explicit Checker(std::ostream& out) : out_(out) {}

  void Report(const std::string& name, double value, double limit) {
    const bool ok = value <= limit;
    char line[160];
    std::snprintf(line, sizeof(line), "%-4s %-28s %.3e (limit %.0e)\n",
                  ok ? "PASS" : "FAIL", name.c_str(), value, limit);
    out_ << line;
    if (!ok) ++failures_;
  }
  int failures() const { return failures_; }

 private:
  std::ostream& out_;
  int failures_ = 0;
};

void CheckDct(std::mt19937_64& rng, Checker& check) {
  std::uniform_real_distribution<double> pix(0.0, 255.0);
  double roundtrip = 0.0, parseval = 0.0, ortho = 0.0;
  for (int n = 0; n < 2000; ++n) {
    PixelBlock b;
    for (auto& v : b.values) v = pix(rng);
    const DctBlock c = Dct8Forward(b);
    const PixelBlock r = Dct8Inverse(c);
    for (int i = 0; i < kBlockSize; ++i) {
      roundtrip = std::max(roundtrip, std::abs(r[i] - b[i]));
    }
    parseval =
        std::max(parseval, std::abs(c.Energy() - b.Energy()) / b.Energy());
  }
  const auto& m = DctBasis();
  for (int i = 0; i < kBlockDim; ++i) {
    for (int j = 0; j < kBlockDim; ++j) {
      double dot = 0.0;
      for (int k = 0; k < kBlockDim; ++k) {
        dot += m[i * kBlockDim + k] * m[j * kBlockDim + k];
      }
      ortho = std::max(ortho, std::abs(dot - (i == j ? 1.0 : 0.0)));
    }
  }
  check.Report("dct.roundtrip", roundtrip, 1e-9);
  check.Report("dct.parseval", parseval, 1e-6);
  check.Report("dct.orthonormality", ortho, 1e-12);
}

void CheckInjection(std::mt19937_64& rng, Checker& check) {
  std::uniform_real_distribution<double> coeff(-200.0, 200.0);
  std::uniform_real_distribution<double> thr(0.0, 60.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double violations = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const double c = coeff(rng), j = thr(rng), p = unit(rng);
    const double out = SuppressCoeff(c, j, p);
    const bool dead = std::abs(c) < j;
    const double expect =
        dead ? 0.0 : std::copysign(std::sqrt(c * c - p * j * j), c);
    if (out != expect || std::abs(out) > std::abs(c) ||
        (out != 0.0 && std::signbit(out) != std::signbit(c))) {
      violations += 1.0;
    }
  }
  check.Report("inject.suppress_rule", violations, 0.0);
}

FloatPlane RandomPlane(std::mt19937_64& rng, size_t w, size_t h) {
  std::uniform_real_distribution<double> pix(0.0, 255.0);
  FloatPlane p(w, h);
  for (auto& v : p.samples()) v = pix(rng);
  return p;
}

// Worst relative error between the analytic gradient and central
// differences, over `samples` pixels.
double GradientError(const std::function<LossTerm(const FloatPlane&, bool)>& f,
                     const FloatPlane& x, std::mt19937_64& rng, int samples,
                     double h = 1e-3) {
  const FloatPlane grad = f(x, true).grad;
  double scale = 0.0;
  for (double g : grad.samples()) scale = std::max(scale, std::abs(g));
  std::uniform_int_distribution<size_t> pick(0, x.samples().size() - 1);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const size_t i = pick(rng);
    FloatPlane xp = x, xm = x;
    xp.samples()[i] += h;
    xm.samples()[i] -= h;
    const double numeric = (f(xp, false).value - f(xm, false).value) / (2 * h);
    const double analytic = grad.samples()[i];
    const double denom =
        std::max({std::abs(numeric), std::abs(analytic), 1e-6 * scale});
    worst = std::max(worst, std::abs(numeric - analytic) / denom);
  }
  return worst;
}

void CheckGradients(std::mt19937_64& rng, Checker& check) {
  const FloatPlane gt = RandomPlane(rng, 32, 32);
  const FloatPlane orig = RandomPlane(rng, 32, 32);
  // A noisy copy of gt keeps MS-SSIM away from its clamp at zero.
  FloatPlane x = gt;
  std::normal_distribution<double> noise(0.0, 20.0);
  for (auto& v : x.samples()) v += noise(rng);
  const LossWeights w;
  constexpr int kSamples = 64;
  check.Report("grad.charbonnier",
               GradientError(
                   [&](const FloatPlane& p, bool g) {
                     return CharbonnierLoss(p, gt, w.charbonnier_eps, g);
                   },
                   x, rng, kSamples),
               1e-4);
  check.Report("grad.msssim",
               GradientError(
                   [&](const FloatPlane& p, bool g) {
                     return MsssimLoss(p, gt, g, w.msssim_max_scales);
                   },
                   x, rng, kSamples, /*h=*/0.1),
               1e-3);
  check.Report("grad.dct_residual",
               GradientError(
                   [&](const FloatPlane& p, bool g) {
                     return DctResidualLoss(p, gt, g);
                   },
                   x, rng, kSamples),
               1e-4);
  check.Report("grad.dct_conservation",
               GradientError(
                   [&](const FloatPlane& p, bool g) {
                     return DctConservationLoss(p, orig, w.cutoff, g);
                   },
                   x, rng, kSamples),
               1e-4);
  check.Report("grad.total",
               GradientError(
                   [&](const FloatPlane& p, bool g) {
                     const LossReport r = TotalLoss(p, gt, orig, w, g);
                     return LossTerm{r.l_all, g ? *r.grad : FloatPlane()};
                   },
                   x, rng, kSamples),
               1e-3);
}

// Lagrange interpolation through exactly four points.
double Lagrange(const std::vector<RatePoint>& pts, double q) {
  double sum = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    double term = std::log10(pts[i].bits);
    for (size_t j = 0; j < pts.size(); ++j) {
      if (j != i) {
        term *= (q - pts[j].quality) / (pts[i].quality - pts[j].quality);
      }
    }
    sum += term;
  }
  return sum;
}

double OracleBdRate(const std::vector<RatePoint>& a,
                    const std::vector<RatePoint>& t) {
  auto range = [](const std::vector<RatePoint>& c) {
    auto [lo, hi] = std::minmax_element(
        c.begin(), c.end(), [](const RatePoint& x, const RatePoint& y) {
          return x.quality < y.quality;
        });
    return std::pair{lo->quality, hi->quality};
  };
  const auto [alo, ahi] = range(a);
  const auto [tlo, thi] = range(t);
  const double lo = std::max(alo, tlo), hi = std::min(ahi, thi);
  constexpr int kSteps = 20000;
  const double dq = (hi - lo) / kSteps;
  double integral = 0.0;
  for (int k = 0; k <= kSteps; ++k) {
    const double q = lo + k * dq;
    const double d = Lagrange(t, q) - Lagrange(a, q);
    integral += (k == 0 || k == kSteps ? 0.5 : 1.0) * d * dq;
  }
  return (std::pow(10.0, integral / (hi - lo)) - 1.0) * 100.0;
}

void CheckBdRate(std::mt19937_64& rng, Checker& check) {
  std::uniform_real_distribution<double> jitter(-0.3, 0.3);
  std::uniform_real_distribution<double> gain(0.7, 1.4);
  std::uniform_real_distribution<double> wobble(0.9, 1.1);
  double identical = 0.0, shift = 0.0, oracle = 0.0, antisym = 0.0;
  for (int n = 0; n < 20; ++n) {
    std::vector<RatePoint> a, t;
    double bits = 20000.0 * gain(rng);
    double q = 30.0 + 5.0 * jitter(rng);
    const double offset = gain(rng);
    for (int k = 0; k < 4; ++k) {
      a.push_back({bits, q});
      t.push_back({bits * offset * wobble(rng), q + jitter(rng)});
      bits *= 1.8 + jitter(rng);
      q += 2.5 + jitter(rng);
    }
    std::vector<RatePoint> scaled = a;
    for (auto& p : scaled) p.bits *= 1.10;
    identical = std::max(identical, std::abs(BdRate(a, a).percent));
    shift = std::max(shift, std::abs(BdRate(a, scaled).percent - 10.0));
    const double x = BdRate(a, t).percent;
    const double y = BdRate(t, a).percent;
    const double ref = OracleBdRate(a, t);
    oracle = std::max(oracle, std::abs(x - ref) / std::max(1.0, std::abs(ref)));
    antisym =
        std::max(antisym, std::abs((1 + x / 100) * (1 + y / 100) - 1.0));
  }
  check.Report("bdrate.identical", identical, 0.0);
  check.Report("bdrate.uniform_shift", shift, 1e-6);
  check.Report("bdrate.numeric_oracle", oracle, 1e-4);
  check.Report("bdrate.antisymmetry", antisym, 1e-6);
}

}  // namespace

int RunSelfTest(uint64_t seed, std::ostream& out) {
  std::mt19937_64 rng(seed);
  Checker check(out);
  out << "selftest seed " << seed << "\n";
  CheckDct(rng, check);
  CheckInjection(rng, check);
  CheckGradients(rng, check);
  CheckBdRate(rng, check);
  out << (check.failures() == 0 ? "all checks passed"
                                : std::to_string(check.failures()) +
                                      " check(s) failed")
      << "\n";
  return check.failures();
}

}  // namespace jndpf
