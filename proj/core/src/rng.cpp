#include "pscat/rng.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "pscat/error.hpp"
#include "pscat/parallel.hpp"

namespace pscat {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c,
                                        std::array<std::uint32_t, 2> k) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, c[0], hi0, lo0);
        mulhilo(kMul1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += kWeyl0;
        k[1] += kWeyl1;
    }
    return c;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : seed_(master_seed), stream_(stream_id) {}

void RngStream::refill() {
    std::array<std::uint32_t, 4> ctr{static_cast<std::uint32_t>(block_),
                                     static_cast<std::uint32_t>(block_ >> 32),
                                     static_cast<std::uint32_t>(stream_),
                                     static_cast<std::uint32_t>(stream_ >> 32)};
    std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed_),
                                     static_cast<std::uint32_t>(seed_ >> 32)};
    auto r = philox4x32(ctr, key);
    buf_[0] = (static_cast<std::uint64_t>(r[1]) << 32) | r[0];
    buf_[1] = (static_cast<std::uint64_t>(r[3]) << 32) | r[2];
    ++block_;
    pos_ = 0;
}

std::uint64_t RngStream::next_u64() {
    if (pos_ >= 2) refill();
    return buf_[pos_++];
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::exponential(double rate) {
    return -std::log(uniform_open()) / rate;
}

double RngStream::normal() {
    // Box-Muller, one variate per call so the stream position stays simple.
    double u = uniform_open(), v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
}

RngStream RngStream::substream(std::uint64_t tag) const {
    return RngStream(seed_, splitmix64(stream_ ^ splitmix64(tag + 0x632BE59BD9B4E019ull)));
}

std::string RngStream::serialize() const {
    // Position inside the current block is enough: the buffer is a pure
    // function of (seed, stream, block - 1).
    std::ostringstream os;
    os << "philox4x32-10:" << seed_ << ':' << stream_ << ':' << block_ << ':' << pos_;
    return os.str();
}

RngStream RngStream::deserialize(const std::string& text) {
    std::istringstream is(text);
    std::string tag;
    if (!std::getline(is, tag, ':') || tag != "philox4x32-10")
        throw ValidationError("unrecognised rng state: " + text);
    std::uint64_t seed, stream, block;
    int pos;
    char c1, c2, c3;
    if (!(is >> seed >> c1 >> stream >> c2 >> block >> c3 >> pos) || c1 != ':' || c2 != ':' ||
        c3 != ':' || pos < 0 || pos > 2)
        throw ValidationError("malformed rng state: " + text);
    RngStream s(seed, stream);
    if (pos < 2 && block > 0) {
        s.block_ = block - 1;
        s.refill();
        s.pos_ = pos;
    } else {
        s.block_ = block;
        s.pos_ = 2;
    }
    return s;
}

unsigned default_threads() {
    if (const char* env = std::getenv("PSCAT_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace pscat
