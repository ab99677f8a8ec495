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

#ifndef DPGAUSS_CORE_RNG_H_
#define DPGAUSS_CORE_RNG_H_

#include <cstdint>
#include <limits>

namespace dpgauss {

// Counter-based generator. The output at position i is a keyed mix of i, so a
// stream is fully described by (key, counter) and substreams are derived from
// the key alone. Satisfies UniformRandomBitGenerator.
class RngStream {
 public:
  using result_type = uint64_t;

  explicit RngStream(uint64_t seed, uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  // Independent substream; does not advance this stream.
  RngStream Split(uint64_t stream_id) const;

  // Uniform on the open interval (0, 1).
  double Uniform();
  double Normal();
  // Laplace(0, scale).
  double Laplace(double scale);
  // Exponential with unit rate.
  double Exponential();
  // Uniform integer in [0, bound).
  uint64_t UniformInt(uint64_t bound);

  uint64_t key() const { return key_; }
  uint64_t counter() const { return counter_; }

 private:
  RngStream(uint64_t key, uint64_t counter, bool) : key_(key), counter_(counter) {}

  uint64_t key_;
  uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace dpgauss

#endif  // DPGAUSS_CORE_RNG_H_
