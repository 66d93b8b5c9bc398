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

/// \file polynomial.hpp
/// \brief Real polynomials on [-1, 1]: evaluation, fitting, normalization.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qpoly {

/// P(x) = sum_k a_k x^k with at least one (finite) coefficient.
class Polynomial {
 public:
  /// Throws InvalidArgument on an empty list or a non-finite coefficient.
  explicit Polynomial(std::vector<double> coeffs);

  std::size_t degree() const { return coeffs_.size() - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double coeff(std::size_t k) const { return coeffs_[k]; }

  /// Horner evaluation.
  double operator()(double x) const;

  bool is_zero() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<double> coeffs_;
};

double eval_poly(const Polynomial& poly, double x);

/// max_{x in [-1,1]} |P(x)|: scan of 10,001 uniform points followed by a
/// golden-section refinement (tolerance 1e-12) around the grid argmax.
double sup_norm(const Polynomial& poly);

struct NormalizedPolynomial {
  std::vector<double> tilde_coeffs;  ///< a_k / scale; sum |tilde| == 1
  double scale = 0.0;                ///< C, the rescale constant
  double sup_norm_report = 0.0;      ///< max |P| on [-1,1], informational

  std::size_t degree() const { return tilde_coeffs.size() - 1; }
};

/// l1 normalization: C = (1 + epsilon) * sum_k |a_k|, tilde_k = a_k / C.
/// Throws NormalizationError for the all-zero polynomial.
NormalizedPolynomial normalize(const Polynomial& poly, double epsilon = 0.0);

struct Sample {
  double x = 0.0;
  double y = 0.0;
};

struct Interval {
  double lo = -1.0;
  double hi = 1.0;
};

enum class FitMethod { kLeastSquares, kGradientDescent };

struct FitConfig {
  FitMethod method = FitMethod::kLeastSquares;
  std::size_t sample_count = 201;  ///< M, used when sampling a target function
  std::size_t epochs = 20000;      ///< gradient descent only
  double step_size = 0.5;          ///< gradient descent only
  Interval sample_domain{};
};

struct FitResult {
  Polynomial poly;
  double mse = 0.0;
};

/// Fits a degree-`degree` polynomial minimizing the mean squared error over
/// `samples`. Least squares goes through a column-pivoted Householder QR of
/// the Vandermonde matrix; gradient descent runs `epochs` full-batch steps.
FitResult fit(std::span<const Sample> samples, std::size_t degree,
              const FitConfig& config);

/// M uniformly spaced samples of `f` over config.sample_domain.
template <typename F>
std::vector<Sample> sample_function(F&& f, const FitConfig& config) {
  std::vector<Sample> out;
  const std::size_t m = config.sample_count;
  out.reserve(m);
  const double lo = config.sample_domain.lo;
  const double hi = config.sample_domain.hi;
  for (std::size_t i = 0; i < m; ++i) {
    const double x =
        m == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(m - 1);
    out.push_back({x, f(x)});
  }
  return out;
}

double mean_squared_error(const Polynomial& poly, std::span<const Sample> samples);

}  // namespace qpoly
