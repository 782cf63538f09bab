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

#include "jndpf/bd_rate.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "jndpf/error.h"

namespace jndpf {
namespace {

constexpr size_t kMinPoints = 4;

std::vector<RatePoint> SortedByRate(std::span<const RatePoint> points) {
  std::vector<RatePoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const RatePoint& a, const RatePoint& b) {
              return a.bits < b.bits ||
                     (a.bits == b.bits && a.quality < b.quality);
            });
  return sorted;
}

// Solves the 4x4 normal equations by Gaussian elimination with partial
// pivoting.
std::array<double, 4> Solve4(std::array<std::array<double, 5>, 4> m) {
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (std::abs(m[pivot][col]) < 1e-300) {
      Fail(ErrorCode::kInsufficientPoints,
           "degenerate rate curve: quality values are not distinct");
    }
    std::swap(m[col], m[pivot]);
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 5; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::array<double, 4> x{};
  for (int i = 0; i < 4; ++i) x[i] = m[i][4] / m[i][i];
  return x;
}

// Monotone piecewise-cubic Hermite interpolant of log10(bits) over quality.
class Pchip {
 public:
  explicit Pchip(std::span<const RatePoint> points) {
    std::vector<RatePoint> by_q(points.begin(), points.end());
    std::sort(by_q.begin(), by_q.end(),
              [](const RatePoint& a, const RatePoint& b) {
                return a.quality < b.quality;
              });
    for (const auto& p : by_q) {
      x_.push_back(p.quality);
      y_.push_back(std::log10(p.bits));
    }
    const size_t n = x_.size();
    std::vector<double> h(n - 1), delta(n - 1);
    for (size_t k = 0; k + 1 < n; ++k) {
      h[k] = x_[k + 1] - x_[k];
      if (!(h[k] > 0.0)) {
        Fail(ErrorCode::kNonMonotone, "duplicate quality values in curve");
      }
      delta[k] = (y_[k + 1] - y_[k]) / h[k];
    }
    d_.assign(n, 0.0);
    for (size_t k = 1; k + 1 < n; ++k) {
      if (delta[k - 1] * delta[k] > 0.0) {
        const double w1 = 2.0 * h[k] + h[k - 1];
        const double w2 = h[k] + 2.0 * h[k - 1];
        d_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
      }
    }
    d_[0] = EndSlope(h[0], h[1], delta[0], delta[1]);
    d_[n - 1] = EndSlope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }

  double Integral(double lo, double hi) const {
    double total = 0.0;
    for (size_t k = 0; k + 1 < x_.size(); ++k) {
      const double a = std::max(lo, x_[k]);
      const double b = std::min(hi, x_[k + 1]);
      if (b <= a) continue;
      const double h = x_[k + 1] - x_[k];
      const double delta = (y_[k + 1] - y_[k]) / h;
      const double c2 = (3.0 * delta - 2.0 * d_[k] - d_[k + 1]) / h;
      const double c3 = (d_[k] + d_[k + 1] - 2.0 * delta) / (h * h);
      auto anti = [&](double t) {
        return t * (y_[k] + t * (d_[k] / 2.0 + t * (c2 / 3.0 + t * c3 / 4.0)));
      };
      total += anti(b - x_[k]) - anti(a - x_[k]);
    }
    return total;
  }

 private:
  // Shape-preserving three-point end slope.
  static double EndSlope(double h0, double h1, double d0, double d1) {
    double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (d * d0 <= 0.0) {
      d = 0.0;
    } else if (d0 * d1 <= 0.0 && std::abs(d) > std::abs(3.0 * d0)) {
      d = 3.0 * d0;
    }
    return d;
  }

  std::vector<double> x_, y_, d_;
};

}  // namespace

std::vector<RatePoint> RepairMonotone(std::vector<RatePoint> points,
                                      std::vector<std::string>* warnings) {
  points = SortedByRate(points);
  for (;;) {
    size_t worst = points.size();
    double best_gap = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < points.size(); ++i) {
      if (points[i + 1].quality > points[i].quality) continue;
      const double gap = points[i + 1].bits - points[i].bits;
      if (gap < best_gap) {
        best_gap = gap;
        worst = i + 1;
      }
    }
    if (worst == points.size()) break;
    if (warnings) {
      warnings->push_back("dropped non-monotone point (bits=" +
                          std::to_string(points[worst].bits) + ", quality=" +
                          std::to_string(points[worst].quality) + ")");
    }
    points.erase(points.begin() + worst);
  }
  if (points.size() < kMinPoints) {
    Fail(ErrorCode::kNonMonotone,
         "fewer than 4 rate-monotone points remain after repair");
  }
  return points;
}

double CubicFit::Eval(double q) const {
  const double t = q - center;
  return coeffs[0] + t * (coeffs[1] + t * (coeffs[2] + t * coeffs[3]));
}

double CubicFit::Integral(double lo, double hi) const {
  auto anti = [this](double q) {
    const double t = q - center;
    return t * (coeffs[0] +
                t * (coeffs[1] / 2.0 + t * (coeffs[2] / 3.0 + t * coeffs[3] / 4.0)));
  };
  return anti(hi) - anti(lo);
}

CubicFit FitCubic(std::span<const RatePoint> points) {
  if (points.size() < kMinPoints) {
    Fail(ErrorCode::kInsufficientPoints, "cubic fit needs at least 4 points");
  }
  CubicFit fit;
  for (const auto& p : points) fit.center += p.quality;
  fit.center /= static_cast<double>(points.size());
  std::array<std::array<double, 5>, 4> normal{};
  for (const auto& p : points) {
    const double t = p.quality - fit.center;
    const double y = std::log10(p.bits);
    const double pow_t[4] = {1.0, t, t * t, t * t * t};
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) normal[r][c] += pow_t[r] * pow_t[c];
      normal[r][4] += pow_t[r] * y;
    }
  }
  fit.coeffs = Solve4(normal);
  return fit;
}

BdRateResult BdRate(std::span<const RatePoint> anchor,
                    std::span<const RatePoint> test,
                    BdInterpolation interpolation) {
  for (auto curve : {anchor, test}) {
    if (curve.size() < kMinPoints) {
      Fail(ErrorCode::kInsufficientPoints,
           "BD-rate needs at least 4 points per curve, got " +
               std::to_string(curve.size()));
    }
    for (const auto& p : curve) {
      if (!(p.bits > 0.0) || !std::isfinite(p.bits) ||
          !std::isfinite(p.quality)) {
        Fail(ErrorCode::kInvalidArgument,
             "rate points need positive bits and finite quality");
      }
    }
  }
  BdRateResult result;
  const auto a = RepairMonotone({anchor.begin(), anchor.end()}, &result.warnings);
  const auto t = RepairMonotone({test.begin(), test.end()}, &result.warnings);
  result.anchor_points = a.size();
  result.test_points = t.size();

  auto q_range = [](const std::vector<RatePoint>& c) {
    auto [lo, hi] = std::minmax_element(
        c.begin(), c.end(), [](const RatePoint& x, const RatePoint& y) {
          return x.quality < y.quality;
        });
    return std::pair{lo->quality, hi->quality};
  };
  const auto [a_lo, a_hi] = q_range(a);
  const auto [t_lo, t_hi] = q_range(t);
  result.quality_lo = std::max(a_lo, t_lo);
  result.quality_hi = std::min(a_hi, t_hi);
  if (!(result.quality_hi > result.quality_lo)) {
    Fail(ErrorCode::kNoOverlap, "rate curves do not overlap in quality");
  }

  auto integrate = [&](const std::vector<RatePoint>& c) {
    const bool cubic =
        interpolation == BdInterpolation::kCubic ||
        (interpolation == BdInterpolation::kAuto && c.size() == kMinPoints);
    if (cubic) return FitCubic(c).Integral(result.quality_lo, result.quality_hi);
    return Pchip(c).Integral(result.quality_lo, result.quality_hi);
  };
  const double avg = (integrate(t) - integrate(a)) /
                     (result.quality_hi - result.quality_lo);
  result.percent = (std::pow(10.0, avg) - 1.0) * 100.0;
  return result;
}

}  // namespace jndpf
