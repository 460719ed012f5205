// Copyright 2026 The ampdiff Authors
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

#ifndef AMPDIFF_RNG_H_
#define AMPDIFF_RNG_H_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace ampdiff {

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// The SplitMix64 output function (Stafford variant 13).
constexpr std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// 64-bit FNV-1a.
constexpr std::uint64_t Fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Source of bounded choices. Transform operators draw through this so
// tests can script the choices.
class Chooser {
 public:
  virtual ~Chooser() = default;
  // Uniform in [0, n). n must be positive.
  virtual std::uint64_t Below(std::uint64_t n) = 0;
};

// SplitMix64 stream. A stream is identified by its starting state; the
// search keys one per (global seed, test name, iteration) and forks one
// sub-stream per candidate.
class RngStream : public Chooser {
 public:
  explicit RngStream(std::uint64_t state) : state_(state), origin_(state) {}

  static RngStream ForKey(std::uint64_t seed, std::string_view test_name,
                          std::uint64_t iteration) {
    return RngStream(seed ^ Fnv1a64(test_name) ^ iteration);
  }

  std::uint64_t Next() {
    state_ += kGoldenGamma;
    return Mix64(state_);
  }

  std::uint64_t Below(std::uint64_t n) override {
    // Rejection keeps the draw exactly uniform.
    std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t r = Next();
      if (r >= threshold) return r % n;
    }
  }

  // Independent stream for item `index`, derived from the starting state
  // only, so it does not depend on how much of this stream was consumed.
  RngStream Fork(std::uint64_t index) const {
    return RngStream(Mix64(origin_ ^ Mix64(index + kGoldenGamma)));
  }

  // `count` distinct indices from [0, n) in ascending order (partial
  // Fisher-Yates). Returns all of [0, n) when count >= n.
  std::vector<std::size_t> Sample(std::size_t n, std::size_t count);

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
  std::uint64_t origin_;
};

}  // namespace ampdiff

#endif  // AMPDIFF_RNG_H_
