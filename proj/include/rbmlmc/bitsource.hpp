#pragma once

#include <array>
#include <concepts>
#include <cstdint>
#include <span>
#include <vector>

#include "rbmlmc/errors.hpp"

namespace rbmlmc {

/// Philox4x32-10 counter-based generator. Pure function of (key, counter).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Anything that hands out fair bits one at a time and counts them.
template <class B>
concept BitStream = requires(B& b, const B& cb) {
    { b.draw_bit() } -> std::convertible_to<int>;
    { cb.bits_consumed() } -> std::convertible_to<std::uint64_t>;
};

/// Seeded, counted stream of ideal fair bits.
///
/// The stream for (seed, stream_id) is the concatenation of Philox blocks
/// with counter (block, stream_id) and key seed, read most significant bit
/// first. Distinct stream ids give independent substreams, so replications
/// can run on any thread and still reproduce bit for bit.
class BitSource {
public:
    BitSource(std::uint64_t seed, std::uint64_t stream_id);

    int draw_bit() {
        if (available_ == 0) refill();
        --available_;
        ++consumed_;
        const std::uint64_t word = available_ >= 64 ? buffer_[0] : buffer_[1];
        return static_cast<int>((word >> (available_ & 63)) & 1u);
    }

    /// Reads k <= 64 bits, first bit drawn is the most significant of the result.
    std::uint64_t draw_bits(int k);

    std::uint64_t bits_consumed() const { return consumed_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::uint64_t consumed_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int available_ = 0; // bits left in the 128-bit buffer
};

/// Replays a fixed bit string; used by tests and the exact oracles.
class ScriptedBits {
public:
    explicit ScriptedBits(std::vector<int> bits) : bits_(std::move(bits)) {}

    /// The low `count` bits of `value`, most significant first.
    static ScriptedBits from_integer(std::uint64_t value, int count);

    int draw_bit() {
        if (pos_ >= bits_.size()) throw FeasibilityError("ScriptedBits exhausted");
        return bits_[pos_++];
    }
    std::uint64_t bits_consumed() const { return pos_; }

private:
    std::vector<int> bits_;
    std::uint64_t pos_ = 0;
};

static_assert(BitStream<BitSource>);
static_assert(BitStream<ScriptedBits>);

/// Reads q bits MSB first into an integer in [0, 2^q).
template <BitStream B>
std::uint64_t read_numerator(B& src, int q) {
    if constexpr (requires { src.draw_bits(q); }) {
        return src.draw_bits(q);
    } else {
        std::uint64_t v = 0;
        for (int i = 0; i < q; ++i) v = (v << 1) | static_cast<std::uint64_t>(src.draw_bit());
        return v;
    }
}

/// Standard uniform in (0,1) with 53 random bits; value is (k + 1/2) 2^-53.
/// Draws one block-aligned 64-bit word, so it is counted as one coin.
class NormalSource {
public:
    NormalSource(std::uint64_t seed, std::uint64_t stream_id) : bits_(seed, stream_id) {}

    double uniform();
    double normal();

    std::uint64_t draws() const { return draws_; }

private:
    BitSource bits_;
    std::uint64_t draws_ = 0;
};

} // namespace rbmlmc
