#ifndef WSNSIM_RNG_HPP
#define WSNSIM_RNG_HPP

#include <cstdint>
#include <cstddef>
#include <utility>
#include <vector>

namespace wsnsim {

// splitmix64: the single PRNG used everywhere. Bit-exact across platforms,
// trivially portable, and cheap to fork into labeled substreams.

struct RngState {
    std::uint64_t state = 0;
};

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer. mix64(0) == 0.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

inline std::pair<std::uint64_t, RngState> rng_next(RngState s) {
    s.state += kGolden;
    return {mix64(s.state), s};
}

// Child stream from a parent state and a label. Distinct labels give
// independent-seeming substreams; the child is unaffected by later parent draws.
inline RngState fork_stream(RngState s, std::uint64_t label) {
    return RngState{mix64(s.state ^ label)};
}

// Mutable convenience wrapper around the pure generator.
class Rng {
public:
    Rng() = default;
    explicit Rng(RngState s) : s_(s) {}
    explicit Rng(std::uint64_t seed) : s_{seed} {}

    std::uint64_t next_u64() {
        auto [v, s] = rng_next(s_);
        s_ = s;
        return v;
    }

    // Uniform double in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // p=0 never fires, p=1 always fires.
    bool bernoulli(double p) { return next_double() < p; }

    // Uniform integer in [0, n). n must be > 0.
    std::uint64_t uniform(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    void fill_bytes(std::vector<std::uint8_t>& out, std::size_t len) {
        out.clear();
        out.reserve(len);
        while (out.size() < len) {
            std::uint64_t v = next_u64();
            for (int i = 0; i < 8 && out.size() < len; ++i) {
                out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
            }
        }
    }

    Rng fork(std::uint64_t label) const { return Rng(fork_stream(s_, label)); }

    RngState state() const { return s_; }

private:
    RngState s_{};
};

} // namespace wsnsim

#endif
