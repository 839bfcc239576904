#include "aris/rng.hpp"

namespace aris {

std::uint64_t SeededRng::below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % n;
}

std::uint64_t mix_seed(std::uint64_t seed, std::string_view salt) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : salt) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    // splitmix64 finaliser so nearby seeds diverge
    std::uint64_t z = seed ^ h;
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace aris
