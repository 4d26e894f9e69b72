#pragma once

#include <cstdint>
#include <random>

namespace qjl {

/// Seeded random stream. A fixed (master_seed, stream_id) pair reproduces the
/// same sample sequence bit for bit on every platform; distinct stream_ids
/// give statistically independent streams. Experiments key trial i to
/// stream_id = base + i so that results do not depend on worker count.
///
/// Gaussian and uniform doubles are generated from the raw 64-bit output
/// in-library (Marsaglia polar method) instead of std::*_distribution, whose
/// output is implementation-defined.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t master_seed() const { return master_; }
    std::uint64_t stream_id() const { return id_; }

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Standard normal.
    double gaussian();

    /// Unbiased uniform draw from {0, ..., n-1}.
    std::size_t uniform_index(std::size_t n);

    /// Independent child stream; used for separate random roles inside one
    /// trial (e.g. unitary choice vs measurement outcomes).
    RngStream substream(std::uint64_t tag) const;

private:
    std::uint64_t master_ = 0, id_ = 0;
    std::mt19937_64 eng_;
    double cache_ = 0.0;
    bool has_cache_ = false;
};

}  // namespace qjl
