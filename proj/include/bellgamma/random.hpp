#pragma once

#include <array>
#include <cstdint>

namespace bellgamma {

// Philox4x32-10 (Salmon et al., SC'11). Counter-based: output is a pure
// function of (key, counter), so substreams need no shared state.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

constexpr PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
    constexpr std::uint32_t kMulA = 0xD2511F53u;
    constexpr std::uint32_t kMulB = 0xCD9E8D57u;
    constexpr std::uint32_t kWeylA = 0x9E3779B9u;
    constexpr std::uint32_t kWeylB = 0xBB67AE85u;

    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeylA;
            key[1] += kWeylB;
        }
        const std::uint64_t p0 = std::uint64_t{kMulA} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{kMulB} * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

/// One independent random stream: key = master seed, counter = (block index,
/// stream index). Each Philox block yields two 64-bit words.
class RandomStream {
  public:
    RandomStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : key_{static_cast<std::uint32_t>(master_seed),
               static_cast<std::uint32_t>(master_seed >> 32)},
          stream_index_(stream_index) {}

    std::uint64_t next_u64() {
        if (buffered_ == 0) {
            refill();
        }
        --buffered_;
        ++draws_;
        return buffer_[1 - buffered_];
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    [[nodiscard]] std::uint64_t stream_index() const { return stream_index_; }
    [[nodiscard]] std::uint64_t draws() const { return draws_; }

  private:
    void refill() {
        const std::uint64_t block = draws_ / 2;
        const PhiloxCounter ctr{static_cast<std::uint32_t>(block),
                                static_cast<std::uint32_t>(block >> 32),
                                static_cast<std::uint32_t>(stream_index_),
                                static_cast<std::uint32_t>(stream_index_ >> 32)};
        const PhiloxCounter out = philox4x32_10(ctr, key_);
        buffer_[0] = (std::uint64_t{out[1]} << 32) | out[0];
        buffer_[1] = (std::uint64_t{out[3]} << 32) | out[2];
        buffered_ = 2;
    }

    PhiloxKey key_;
    std::uint64_t stream_index_;
    std::uint64_t draws_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
};

} // namespace bellgamma
