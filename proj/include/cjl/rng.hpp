#pragma once

#include <complex>
#include <cstdint>

namespace cjl {

// Deterministic, platform-independent generators. std::random distributions
// are implementation-defined, so everything here is hand-rolled.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derive an independent stream seed from (base, index).
inline std::uint64_t sub_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t s = base ^ (0xa0761d6478bd642fULL * (index + 1));
    splitmix64(s);
    return splitmix64(s);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) {
        std::uint64_t s = seed;
        for (auto& w : state_) w = splitmix64(s);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0,1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform on the annulus r_lo <= |z| <= r_hi (area-uniform).
    std::complex<double> annulus(double r_lo, double r_hi) {
        const double u = uniform();
        const double r = std::sqrt(r_lo * r_lo + u * (r_hi * r_hi - r_lo * r_lo));
        const double theta = uniform(0.0, 6.283185307179586476925286766559);
        return std::polar(r, theta);
    }

    // Uniform on the disk |z| <= radius.
    std::complex<double> disk(double radius) { return annulus(0.0, radius); }

    long long integer(long long lo, long long hi) {  // inclusive
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long long>(next_u64() % span);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4]{};
};

}  // namespace cjl
