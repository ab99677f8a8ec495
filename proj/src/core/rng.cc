// Copyright 2026 The dpgauss Authors.
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

#include "dpgauss/core/rng.h"

#include <cmath>
#include <numbers>

namespace dpgauss {
namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

uint64_t Mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(uint64_t seed, uint64_t stream)
    : key_(Mix64(Mix64(seed + kGolden) ^ Mix64(stream * kGolden + 1))) {}

RngStream::result_type RngStream::operator()() {
  ++counter_;
  return Mix64(key_ + counter_ * kGolden);
}

RngStream RngStream::Split(uint64_t stream_id) const {
  return RngStream(Mix64(key_ ^ Mix64((stream_id + 1) * 0xD1B54A32D192ED03ULL)),
                   0, true);
}

double RngStream::Uniform() {
  // 53 random bits, offset by half an ulp so 0 and 1 are excluded.
  return ((*this)() >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

double RngStream::Normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = Uniform();
  const double u2 = Uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

double RngStream::Exponential() { return -std::log(Uniform()); }

double RngStream::Laplace(double scale) {
  const double e = Exponential();
  return ((*this)() & 1ULL) ? scale * e : -scale * e;
}

uint64_t RngStream::UniformInt(uint64_t bound) {
  // Rejection to avoid modulo bias.
  const uint64_t limit = max() - max() % bound;
  uint64_t x;
  do {
    x = (*this)();
  } while (x >= limit);
  return x % bound;
}

}  // namespace dpgauss
