#pragma once

#include <cstdint>

namespace holodyn {

// Counter-based generator: every draw is a pure function of
// (seed, stream, step, draw index), so parallel chains produce the same
// values regardless of scheduling or worker count.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream) {}

    std::uint64_t bits(std::uint64_t step, std::uint64_t draw = 0) const {
        std::uint64_t x = seed_;
        x = mix(x ^ mix(stream_ + 0x9e3779b97f4a7c15ull));
        x = mix(x ^ mix(step + 0xbf58476d1ce4e5b9ull));
        x = mix(x ^ mix(draw + 0x94d049bb133111ebull));
        return x;
    }

    // uniform in [0,1)
    double uniform(std::uint64_t step, std::uint64_t draw = 0) const {
        return static_cast<double>(bits(step, draw) >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n, std::uint64_t step,
                        std::uint64_t draw = 0) const {
        return static_cast<std::uint64_t>(uniform(step, draw) *
                                          static_cast<double>(n));
    }

  private:
    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
};

}  // namespace holodyn
