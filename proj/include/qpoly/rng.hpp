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

/// \file rng.hpp
/// \brief Portable counter-based random numbers.
///
/// Every random draw in the project goes through CounterRng so that results
/// are bitwise reproducible across compilers, standard libraries and thread
/// schedules. The generator is SplitMix64 run in counter mode: the i-th output
/// of a stream with key k is mix64(k + (i + 1) * kGamma), where mix64 is the
/// SplitMix64 finalizer
///
///     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///     z =  z ^ (z >> 31)
///
/// and kGamma = 0x9E3779B97F4A7C15 (the 64-bit golden ratio). Random access
/// into a stream costs one multiply-add and the finalizer.
#pragma once

#include <cstdint>
#include <initializer_list>

namespace qpoly {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Folds a list of words into one seed. Order-sensitive.
constexpr std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x6A09E667F3BCC909ULL;
  for (std::uint64_t w : words) {
    h = mix64(h + kGoldenGamma + mix64(w));
  }
  return h;
}

class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t key, std::uint64_t counter = 0)
      : key_(key), counter_(counter) {}

  constexpr std::uint64_t next_u64() {
    ++counter_;
    return mix64(key_ + counter_ * kGoldenGamma);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n). Uses rejection to avoid modulo bias.
  std::uint64_t below(std::uint64_t n);

  constexpr std::uint64_t key() const { return key_; }
  constexpr std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

inline std::uint64_t CounterRng::below(std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    const std::uint64_t v = next_u64();
    if (v < limit) return v % n;
  }
}

}  // namespace qpoly
