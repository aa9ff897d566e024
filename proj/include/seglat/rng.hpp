#pragma once

#include <cstdint>

namespace seglat {

// Counter-based random stream. Every output is a pure function of
// (master_seed, stream_id, role, counter), so results do not depend on
// call order across sites/replicates or on thread scheduling.

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Stream roles keep site randomness, coloring randomness and auxiliary
// coins on disjoint streams, so a quenched experiment can fix the site
// configuration and resample colors.
enum class StreamRole : std::uint64_t {
    Sites = 1,
    Choices = 2,
    SegmentCoins = 3,
    EdgeCoins = 4,
    Scratch = 5,
};

class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id,
              StreamRole role = StreamRole::Scratch)
        : key_(mix64(mix64(master_seed ^ kGolden * stream_id) ^
                     kGolden * static_cast<std::uint64_t>(role))) {}

    // Stateless access: the value at counter i.
    std::uint64_t at(std::uint64_t i) const { return mix64(key_ + kGolden * i); }

    double unit_at(std::uint64_t i) const {
        return static_cast<double>(at(i) >> 11) * 0x1.0p-53;
    }

    bool bernoulli_at(std::uint64_t i, double p) const { return unit_at(i) < p; }

    // Uniform draw in [0, n) without modulo bias (Lemire reduction).
    std::uint32_t below_at(std::uint64_t i, std::uint32_t n) const {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(at(i)) * n) >> 64);
    }

    // Sequential interface for code that does not need stateless access.
    std::uint64_t next() { return at(ctr_++); }
    double next_unit() { return unit_at(ctr_++); }
    bool next_bernoulli(double p) { return next_unit() < p; }
    std::uint32_t next_below(std::uint32_t n) { return below_at(ctr_++, n); }

private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

} // namespace seglat
