#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string>

namespace pscat {

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
// as easy as 1, 2, 3").  Known answer vectors are pinned in the tests.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

// A reproducible stream keyed by (master_seed, stream_id).  The seed is the
// Philox key, the stream id occupies the upper half of the counter and the
// lower half counts blocks.  Output is therefore independent of platform and
// of the order in which streams are consumed.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream() : RngStream(0, 0) {}
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return next_u64(); }
    std::uint64_t next_u64();

    // 53-bit uniform in [0,1) and in the open interval (0,1).
    double uniform();
    double uniform_open();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double exponential(double rate);
    double normal();

    // Deterministic child stream; distinct tags give unrelated streams.
    RngStream substream(std::uint64_t tag) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }
    std::uint64_t block() const { return block_; }

    std::string serialize() const;
    static RngStream deserialize(const std::string& text);

    friend bool operator==(const RngStream& a, const RngStream& b) {
        return a.seed_ == b.seed_ && a.stream_ == b.stream_ && a.block_ == b.block_ &&
               a.pos_ == b.pos_;
    }

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;  // next block to generate
    std::array<std::uint64_t, 2> buf_{};
    int pos_ = 2;
};

inline RngStream rng_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
    return RngStream(master_seed, stream_id);
}

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace pscat
