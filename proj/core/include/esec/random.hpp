#pragma once

#include <cmath>
#include <cstdint>

namespace esec {

/// splitmix64; used both as a generator and to derive independent
/// per-case substreams from (seed, index) so results do not depend on
/// evaluation order or thread count.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        Rng mixer(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
        mixer.next_u64();
        mixer.next_u64();
        return mixer;
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    /// Standard normal via the polar method.
    double normal() {
        for (;;) {
            const double u = 2.0 * uniform() - 1.0;
            const double v = 2.0 * uniform() - 1.0;
            const double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    /// Normal draw rejected until it falls inside [lo, hi]; falls back to
    /// clamping if the window is effectively unreachable.
    double truncated_normal(double mean, double sd, double lo, double hi) {
        for (int i = 0; i < 1024; ++i) {
            const double x = normal(mean, sd);
            if (x >= lo && x <= hi) return x;
        }
        return std::min(hi, std::max(lo, mean));
    }

private:
    std::uint64_t state_;
};

} // namespace esec
