#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace emoaug {

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL);
std::uint64_t splitmix64(std::uint64_t x);

// Per-work-item seed: hash(global_seed, item_id, fold, attempt). Independent of
// scheduling, so parallel runs draw the same numbers as serial ones.
std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view item_id,
                          std::uint64_t fold, std::uint64_t attempt = 0);

// mt19937_64 with a portable uniform double; std distributions are avoided
// because their output differs between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace emoaug
