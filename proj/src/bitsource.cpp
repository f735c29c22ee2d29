#include "rbmlmc/bitsource.hpp"

#include <algorithm>

#include "rbmlmc/quantized_normal.hpp"

namespace rbmlmc {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

} // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return ctr;
}

BitSource::BitSource(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_(stream_id) {}

void BitSource::refill() {
    const std::array<std::uint32_t, 4> ctr{
        static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
    const std::array<std::uint32_t, 2> key{static_cast<std::uint32_t>(seed_),
                                           static_cast<std::uint32_t>(seed_ >> 32)};
    const auto out = philox4x32(ctr, key);
    buffer_[0] = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
    buffer_[1] = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
    ++block_;
    available_ = 128;
}

std::uint64_t BitSource::draw_bits(int k) {
    if (k < 0 || k > 64) throw DomainError("draw_bits: k must lie in [0, 64]");
    std::uint64_t v = 0;
    int remaining = k;
    while (remaining > 0) {
        if (available_ == 0) refill();
        const int in_word = available_ > 64 ? available_ - 64 : available_;
        const std::uint64_t word = available_ > 64 ? buffer_[0] : buffer_[1];
        const int take = std::min(remaining, in_word);
        const int shift = in_word - take;
        const std::uint64_t mask = take == 64 ? ~0ull : ((1ull << take) - 1);
        const std::uint64_t chunk = (word >> shift) & mask;
        v = take == 64 ? chunk : ((v << take) | chunk);
        available_ -= take;
        remaining -= take;
    }
    consumed_ += static_cast<std::uint64_t>(k);
    return v;
}

ScriptedBits ScriptedBits::from_integer(std::uint64_t value, int count) {
    std::vector<int> bits(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) bits[i] = static_cast<int>((value >> (count - 1 - i)) & 1u);
    return ScriptedBits(std::move(bits));
}

double NormalSource::uniform() {
    ++draws_;
    const std::uint64_t k = bits_.draw_bits(64) >> 11;
    return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double NormalSource::normal() {
    return normal_quantile(uniform());
}

} // namespace rbmlmc
