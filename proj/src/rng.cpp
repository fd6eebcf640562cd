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

#include "randwave/rng.hpp"

#include <cmath>
#include <bit>
#include <numbers>

namespace randwave {
namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix_gamma(std::uint64_t z) {
  z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
  z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
  z = (z ^ (z >> 33)) | 1ULL;
  // Gammas with too few bit transitions give weak sequences.
  if (std::popcount(z ^ (z >> 1)) < 24) z ^= 0xaaaaaaaaaaaaaaaaULL;
  return z;
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : Rng(mix64(seed + kGoldenGamma * (2 * stream + 1)),
          mix_gamma(seed ^ mix64(stream + 0x632be59bd9b4e019ULL)), 0) {}

Rng::Rng(std::uint64_t key, std::uint64_t gamma, std::uint64_t counter)
    : key_(key), gamma_(gamma), counter_(counter) {}

Rng::result_type Rng::operator()() {
  ++counter_;
  return mix64(key_ + counter_ * gamma_);
}

Rng Rng::split(std::uint64_t stream_index) const {
  const std::uint64_t a = mix64(key_ ^ mix64(stream_index + kGoldenGamma));
  const std::uint64_t b = mix64(gamma_ + stream_index * kGoldenGamma);
  return Rng(mix64(a + b), mix_gamma(a ^ (b << 1)), 0);
}

double Rng::uniform_open() {
  // 52 random mantissa bits, shifted by half an ulp so 0 is never produced.
  return (static_cast<double>((*this)() >> 12) + 0.5) * 0x1.0p-52;
}

double Rng::normal() {
  const double r = std::sqrt(-2.0 * std::log(uniform_open()));
  return r * std::cos(2.0 * std::numbers::pi * uniform_open());
}

std::complex<double> Rng::complex_normal() {
  // |z|^2 is exponential with unit mean.
  const double r = std::sqrt(-std::log(uniform_open()));
  const double angle = 2.0 * std::numbers::pi * uniform_open();
  return {r * std::cos(angle), r * std::sin(angle)};
}

std::complex<double> Rng::unit_phase() {
  const double angle = 2.0 * std::numbers::pi * uniform_open();
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace randwave
