#include "qjl/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace qjl {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t id) {
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(id >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_(master_seed), id_(stream_id), eng_(make_engine(master_seed, stream_id)) {}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
    if (has_cache_) {
        has_cache_ = false;
        return cache_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cache_ = v * f;
    has_cache_ = true;
    return u * f;
}

std::size_t RngStream::uniform_index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: empty range");
    const std::uint64_t nn = n;
    const std::uint64_t threshold = (-nn) % nn;  // 2^64 mod n
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x < threshold);
    return static_cast<std::size_t>(x % nn);
}

RngStream RngStream::substream(std::uint64_t tag) const {
    return RngStream(master_, splitmix64(id_ ^ splitmix64(tag + 0x632BE59BD9B4E019ull)));
}

}  // namespace qjl
