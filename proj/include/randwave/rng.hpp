/*
 * Copyright (C) 2026 The randwave Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <limits>

namespace randwave {

/// Splittable counter-based generator.
///
/// The n-th output of a stream is a pure function of (key, gamma, n): the
/// SplitMix64 finalizer applied to key + n * gamma. A stream is identified by
/// a master seed and a stream index; split() derives a child stream whose key
/// and (odd) gamma are hashed from the parent's identity and the child index,
/// so the same (seed, path of stream indices) always reproduces the same
/// numbers no matter which thread consumes them.
///
/// A single Rng must not be shared between concurrent callers; give each
/// worker its own split() child.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  /// Independent child stream; does not advance this generator.
  [[nodiscard]] Rng split(std::uint64_t stream_index) const;

  /// Uniform on the open interval (0, 1).
  double uniform_open();

  /// Standard real normal (Box-Muller, one draw per call).
  double normal();

  /// Standard complex normal with E|z|^2 = 1.
  std::complex<double> complex_normal();

  /// Uniform on the unit circle.
  std::complex<double> unit_phase();

  std::uint64_t counter() const { return counter_; }

 private:
  Rng(std::uint64_t key, std::uint64_t gamma, std::uint64_t counter);

  std::uint64_t key_;
  std::uint64_t gamma_;
  std::uint64_t counter_;
};

std::uint64_t mix64(std::uint64_t z);

}  // namespace randwave
