#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace aris {

/// mt19937_64 with distribution code of our own, so a seed gives the same
/// stream on every standard library.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform integer in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n);
    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    bool bernoulli(double p) { return uniform() < p; }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
    }

  private:
    std::mt19937_64 engine_;
};

/// FNV-1a of `salt` folded into `seed`.
std::uint64_t mix_seed(std::uint64_t seed, std::string_view salt);

}  // namespace aris
