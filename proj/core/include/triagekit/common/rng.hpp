// Copyright 2026 The TriageKit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRIAGEKIT_COMMON_RNG_HPP_
#define TRIAGEKIT_COMMON_RNG_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace triagekit {

// SplitMix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// 64-bit FNV-1a over raw bytes.
constexpr std::uint64_t Fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

// Seed for a named subsystem stream:
//   Mix64(Mix64(master ^ Fnv1a64(name)) + index).
// Every consumer of randomness draws from its own (name, index) stream, so
// results never depend on scheduling or on how many other streams exist.
constexpr std::uint64_t DeriveSeed(std::uint64_t master, std::string_view name,
                                   std::uint64_t index = 0) noexcept {
  return Mix64(Mix64(master ^ Fnv1a64(name)) + index);
}

// Portable random source. std::mt19937_64 is bit-exact across standard
// libraries; the distribution helpers below are written out by hand because
// the std:: distributions are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t master, std::string_view name, std::uint64_t index = 0)
      : engine_(DeriveSeed(master, name, index)) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t Below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool Bernoulli(double p) { return Uniform() < p; }

  // Fisher-Yates, walking from the back.
  template <typename T>
  void Shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(Below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace triagekit

#endif  // TRIAGEKIT_COMMON_RNG_HPP_
