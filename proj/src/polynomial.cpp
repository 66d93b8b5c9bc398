// Copyright 2026 The qpoly Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpoly/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "qpoly/error.hpp"

namespace qpoly {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw InvalidArgument("polynomial needs at least one coefficient");
  }
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (!std::isfinite(coeffs_[k])) {
      throw InvalidArgument("coefficient a_" + std::to_string(k) + " is not finite");
    }
  }
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

bool Polynomial::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double a) { return a == 0.0; });
}

double eval_poly(const Polynomial& poly, double x) { return poly(x); }

namespace {

constexpr std::size_t kSupGridPoints = 10001;
constexpr double kGoldenTolerance = 1e-12;

// Maximizes |P| on [a, b] by golden-section search.
double golden_max_abs(const Polynomial& poly, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = std::abs(poly(c));
  double fd = std::abs(poly(d));
  while (b - a > kGoldenTolerance) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = std::abs(poly(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = std::abs(poly(d));
    }
  }
  return std::max({fc, fd, std::abs(poly(0.5 * (a + b)))});
}

}  // namespace

double sup_norm(const Polynomial& poly) {
  const double step = 2.0 / static_cast<double>(kSupGridPoints - 1);
  std::size_t best_i = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < kSupGridPoints; ++i) {
    const double x = -1.0 + step * static_cast<double>(i);
    const double v = std::abs(poly(x));
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  const double x0 = -1.0 + step * static_cast<double>(best_i);
  const double lo = std::max(-1.0, x0 - step);
  const double hi = std::min(1.0, x0 + step);
  return std::max(best, golden_max_abs(poly, lo, hi));
}

NormalizedPolynomial normalize(const Polynomial& poly, double epsilon) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw InvalidArgument("normalization epsilon must be finite and >= 0");
  }
  if (poly.is_zero()) {
    throw NormalizationError(
        "cannot normalize the all-zero polynomial (its estimate is identically 0)");
  }
  // Neumaier summation, so e.g. |0.1| + |0.2| + |0.3| rounds to 0.6.
  double l1 = 0.0, carry = 0.0;
  for (double a : poly.coeffs()) {
    const double v = std::abs(a);
    const double t = l1 + v;
    carry += std::abs(l1) >= v ? (l1 - t) + v : (v - t) + l1;
    l1 = t;
  }
  l1 += carry;

  NormalizedPolynomial out;
  out.scale = l1 + epsilon * l1;
  out.tilde_coeffs.reserve(poly.coeffs().size());
  for (double a : poly.coeffs()) out.tilde_coeffs.push_back(a / out.scale);
  out.sup_norm_report = sup_norm(poly);
  return out;
}

double mean_squared_error(const Polynomial& poly, std::span<const Sample> samples) {
  double acc = 0.0;
  for (const Sample& s : samples) {
    const double r = poly(s.x) - s.y;
    acc += r * r;
  }
  return acc / static_cast<double>(samples.size());
}

namespace {

FitResult fit_least_squares(std::span<const Sample> samples, std::size_t degree) {
  const auto m = static_cast<Eigen::Index>(samples.size());
  const auto n = static_cast<Eigen::Index>(degree + 1);
  Eigen::MatrixXd vandermonde(m, n);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double p = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      vandermonde(i, k) = p;
      p *= samples[static_cast<std::size_t>(i)].x;
    }
    y(i) = samples[static_cast<std::size_t>(i)].y;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vandermonde);
  if (qr.rank() < n) {
    throw FitError("Vandermonde system is rank deficient (rank " +
                   std::to_string(qr.rank()) + " < " + std::to_string(n) +
                   "); need at least degree+1 distinct sample points");
  }
  const Eigen::VectorXd c = qr.solve(y);
  Polynomial poly(std::vector<double>(c.data(), c.data() + c.size()));
  const double mse = mean_squared_error(poly, samples);
  return {std::move(poly), mse};
}

FitResult fit_gradient(std::span<const Sample> samples, std::size_t degree,
                       const FitConfig& config) {
  if (!(config.step_size > 0.0)) throw InvalidArgument("step size must be > 0");
  if (config.epochs == 0) throw InvalidArgument("epochs must be >= 1");
  const std::size_t n = degree + 1;
  const double inv_m = 1.0 / static_cast<double>(samples.size());

  // Powers are reused every epoch.
  std::vector<double> powers(samples.size() * n);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double p = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      powers[i * n + k] = p;
      p *= samples[i].x;
    }
  }

  std::vector<double> coeffs(n, 0.0);
  std::vector<double> grad(n);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double loss = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double* row = &powers[i * n];
      double pred = 0.0;
      for (std::size_t k = 0; k < n; ++k) pred += coeffs[k] * row[k];
      const double r = pred - samples[i].y;
      loss += r * r;
      for (std::size_t k = 0; k < n; ++k) grad[k] += 2.0 * r * row[k];
    }
    loss *= inv_m;
    if (!std::isfinite(loss)) {
      throw FitError("gradient descent diverged at step " + std::to_string(epoch) +
                     " (loss is not finite); reduce --step-size");
    }
    for (std::size_t k = 0; k < n; ++k) coeffs[k] -= config.step_size * grad[k] * inv_m;
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(coeffs[k])) {
      throw FitError("gradient descent diverged at step " + std::to_string(config.epochs) +
                     " (coefficient is not finite)");
    }
  }
  Polynomial poly(std::move(coeffs));
  const double mse = mean_squared_error(poly, samples);
  if (!std::isfinite(mse)) {
    throw FitError("gradient descent diverged at step " + std::to_string(config.epochs));
  }
  return {std::move(poly), mse};
}

}  // namespace

FitResult fit(std::span<const Sample> samples, std::size_t degree, const FitConfig& config) {
  if (samples.empty()) throw FitError("no samples to fit");
  if (samples.size() < degree + 1) {
    throw FitError("degree " + std::to_string(degree) + " fit needs at least " +
                   std::to_string(degree + 1) + " samples, got " +
                   std::to_string(samples.size()));
  }
  for (const Sample& s : samples) {
    if (!std::isfinite(s.x) || !std::isfinite(s.y)) throw FitError("non-finite sample");
  }
  switch (config.method) {
    case FitMethod::kLeastSquares:
      return fit_least_squares(samples, degree);
    case FitMethod::kGradientDescent:
      return fit_gradient(samples, degree, config);
  }
  throw InvalidArgument("unknown fit method");
}

}  // namespace qpoly
