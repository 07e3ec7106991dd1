#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <limits>

#include "glsbi/error.hpp"

namespace glsbi {

/// SplitMix64, used only to expand a 64-bit seed into xoshiro state.
class SplitMix64 {
public:
    constexpr explicit SplitMix64(std::uint64_t seed) noexcept : x_(seed) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (x_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t x_;
};

/**
 * xoshiro256++ 1.0 (Blackman & Vigna), bit-compatible with the public-domain
 * reference implementation at https://prng.di.unimi.it/xoshiro256plusplus.c
 *
 * A plain value type: copying duplicates the stream. jump() advances by 2^128
 * draws so that stream k = root.jumped(k) never overlaps stream k+1 in practice.
 * Satisfies std::uniform_random_bit_generator.
 */
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;
    using state_type = std::array<std::uint64_t, 4>;

    /// Raw state constructor; an all-zero state is rejected.
    constexpr explicit Xoshiro256pp(const state_type& s) : s_(s) {
        if ((s[0] | s[1] | s[2] | s[3]) == 0)
            throw Error(Errc::seeding, "xoshiro256++ state must not be all zero");
    }

    static constexpr Xoshiro256pp seed_from_u64(std::uint64_t seed) {
        SplitMix64 sm(seed);
        state_type s{};
        for (auto& w : s)
            w = sm.next();
        return Xoshiro256pp(s);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type next() noexcept {
        const std::uint64_t result = std::rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = std::rotl(s_[3], 45);
        return result;
    }

    constexpr result_type operator()() noexcept { return next(); }

    /// Top 53 bits scaled by 2^-53; always in [0, 1).
    static constexpr double to_unit(std::uint64_t raw) noexcept {
        return static_cast<double>(raw >> 11) * 0x1.0p-53;
    }

    constexpr double uniform() noexcept { return to_unit(next()); }

    /// Advance by 2^128 draws.
    constexpr void jump() noexcept {
        apply_polynomial({0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL, 0xa9582618e03fc9aaULL, 0x39abdc4529b1661cULL});
    }

    /// Advance by 2^192 draws; separates families of jump()-derived streams.
    constexpr void long_jump() noexcept {
        apply_polynomial({0x76e15d3efefdcbbfULL, 0xc5004e441c522fb3ULL, 0x77710069854ee241ULL, 0x39109bb02acbe635ULL});
    }

    /// Copy advanced by `times` jumps.
    constexpr Xoshiro256pp jumped(std::uint64_t times = 1) const noexcept {
        Xoshiro256pp r = *this;
        for (std::uint64_t i = 0; i < times; ++i)
            r.jump();
        return r;
    }

    constexpr const state_type& state() const noexcept { return s_; }

    friend constexpr bool operator==(const Xoshiro256pp&, const Xoshiro256pp&) = default;

private:
    constexpr void apply_polynomial(const std::array<std::uint64_t, 4>& poly) noexcept {
        state_type acc{};
        for (const std::uint64_t word : poly) {
            for (int b = 0; b < 64; ++b) {
                if (word & (std::uint64_t{1} << b)) {
                    for (int k = 0; k < 4; ++k)
                        acc[k] ^= s_[k];
                }
                next();
            }
        }
        s_ = acc;
    }

    state_type s_;
};

/// Stream families: one per campaign command, so a shared seed never reuses streams.
enum class StreamFamily : std::uint32_t { build_table = 0, evaluate = 1, diagnostics = 2, estimate = 3 };

/**
 * Stream assignment policy: the root state is seed_from_u64(seed) advanced by
 * `family` long jumps; the stream for task index k is that root jumped k
 * times. Task indices depend only on the task's position in the campaign,
 * never on scheduling, so output is independent of the worker count.
 *
 * Jumping k times costs O(k); StreamFactory walks forward incrementally so a
 * campaign enumerating streams in order pays O(1) amortized per stream.
 */
class StreamFactory {
public:
    explicit StreamFactory(std::uint64_t seed, StreamFamily family = StreamFamily::build_table)
        : root_(family_root(seed, family)), cursor_(root_) {}

    Xoshiro256pp stream(std::uint64_t index) {
        if (index < cursor_index_) {
            cursor_ = root_;
            cursor_index_ = 0;
        }
        while (cursor_index_ < index) {
            cursor_.jump();
            ++cursor_index_;
        }
        return cursor_;
    }

private:
    static Xoshiro256pp family_root(std::uint64_t seed, StreamFamily family) {
        auto r = Xoshiro256pp::seed_from_u64(seed);
        for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(family); ++i)
            r.long_jump();
        return r;
    }

    Xoshiro256pp root_;
    Xoshiro256pp cursor_;
    std::uint64_t cursor_index_ = 0;
};

} // namespace glsbi
