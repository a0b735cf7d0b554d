// Copyright 2026 The mkcp-kit Authors
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

#ifndef MKCP_RNG_H_
#define MKCP_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace mkcp {

uint64_t SplitMix64(uint64_t x);

// Sub-seed for a named stream. The same (base, label, index) always gives the
// same value, independent of call order or thread.
uint64_t DeriveSeed(uint64_t base, std::string_view label, uint64_t index = 0);

// Thin wrapper so that every draw is platform independent (the standard
// distributions are not).
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(SplitMix64(seed)) {}

  uint64_t Next() { return engine_(); }
  // Uniform in [0, 1).
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool Bernoulli(double p) { return Uniform() < p; }
  // Uniform in [lo, hi].
  int UniformInt(int lo, int hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace mkcp

#endif  // MKCP_RNG_H_
