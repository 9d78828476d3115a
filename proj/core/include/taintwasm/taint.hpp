// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace taintwasm
{
/// A 32-bit taint word. In basic mode every bit is a source flag. In
/// probabilistic mode the top `probability_bits` bits hold the propagation
/// numerator m (p = m / (2^n - 1)) and the rest are flags.
///
/// Invariant kept by every operation in this header: a label with no flag
/// bits is the all-zero word.
struct TaintLabel
{
    uint32_t raw = 0;

    constexpr TaintLabel() noexcept = default;
    constexpr explicit TaintLabel(uint32_t r) noexcept : raw(r) {}

    [[nodiscard]] constexpr bool is_zero() const noexcept { return raw == 0; }
    friend constexpr bool operator==(TaintLabel, TaintLabel) noexcept = default;
};

enum class PropagationMode : uint8_t
{
    Basic,
    Probabilistic,
};

struct PropagationConfig
{
    static constexpr unsigned default_probability_bits = 8;

    PropagationMode mode = PropagationMode::Basic;
    unsigned probability_bits = default_probability_bits;  // n, in [1, 16]
    uint64_t rng_seed = 0;

    [[nodiscard]] constexpr bool probabilistic() const noexcept
    {
        return mode == PropagationMode::Probabilistic;
    }

    /// Bits available for flags: 32 in basic mode, 32 - n otherwise.
    [[nodiscard]] constexpr unsigned flag_bits() const noexcept
    {
        return probabilistic() ? 32u - probability_bits : 32u;
    }

    [[nodiscard]] constexpr uint32_t flag_mask() const noexcept
    {
        return flag_bits() == 32 ? 0xFFFFFFFFu : (uint32_t{1} << flag_bits()) - 1;
    }

    /// Largest probability numerator, 2^n - 1.
    [[nodiscard]] constexpr uint32_t max_numerator() const noexcept
    {
        return (uint32_t{1} << probability_bits) - 1;
    }

    /// Throws std::invalid_argument when probability_bits is outside [1, 16].
    void check() const;
};

/// Raised when a flag set does not fit the flag field, or when a
/// probabilistic-only query is made in basic mode.
class TaintEncodingError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Deterministic uniform source, one per Instance. Draws are 53-bit
/// fractions of a 64-bit Mersenne twister output, so sequences are
/// identical across platforms for a given seed.
class RandomSource
{
public:
    explicit RandomSource(uint64_t seed = 0) : m_engine(seed) {}

    /// Uniform in [0, 1).
    double uniform() noexcept
    {
        return static_cast<double>(m_engine() >> 11) * 0x1.0p-53;
    }

    void reseed(uint64_t seed) { m_engine.seed(seed); }

private:
    std::mt19937_64 m_engine;
};

[[nodiscard]] constexpr uint32_t flags_of(TaintLabel label, const PropagationConfig& cfg) noexcept
{
    return label.raw & cfg.flag_mask();
}

/// Probability numerator m (the top n bits). Zero in basic mode and for
/// labels without flags.
[[nodiscard]] constexpr uint32_t numerator_of(
    TaintLabel label, const PropagationConfig& cfg) noexcept
{
    if (!cfg.probabilistic() || flags_of(label, cfg) == 0)
        return 0;
    return label.raw >> cfg.flag_bits();
}

/// p = m / (2^n - 1). Throws TaintEncodingError in basic mode.
[[nodiscard]] double probability_of(TaintLabel label, const PropagationConfig& cfg);

/// Encodes m = round(p * (2^n - 1)) above `flags`. A zero flag set yields
/// the zero label. Throws TaintEncodingError if flags overflow the flag
/// field, p is outside [0, 1], or the config is basic.
[[nodiscard]] TaintLabel with_probability(uint32_t flags, double p, const PropagationConfig& cfg);

/// Same as with_probability() but takes the quantized numerator directly.
[[nodiscard]] TaintLabel with_numerator(uint32_t flags, uint32_t m, const PropagationConfig& cfg);

/// Drops orphan probability bits: returns zero when the flag field is empty.
[[nodiscard]] constexpr TaintLabel normalize(TaintLabel label, const PropagationConfig& cfg) noexcept
{
    return flags_of(label, cfg) == 0 ? TaintLabel{} : label;
}

[[nodiscard]] constexpr TaintLabel propagate_unop(TaintLabel t) noexcept
{
    return t;
}

/// Probabilistic combine of two non-comparison operands. Operand 1's
/// inclusion is decided before operand 2's; a uniform is drawn only for an
/// operand whose p lies strictly between 0 and 1.
[[nodiscard]] TaintLabel combine_probabilistic(
    TaintLabel t1, TaintLabel t2, const PropagationConfig& cfg, RandomSource& rng) noexcept;

[[nodiscard]] inline TaintLabel propagate_binop(TaintLabel t1, TaintLabel t2, bool is_comparison,
    const PropagationConfig& cfg, RandomSource& rng) noexcept
{
    if (is_comparison)
        return {};
    if (!cfg.probabilistic())
        return TaintLabel{t1.raw | t2.raw};
    if ((t1.raw | t2.raw) == 0)
        return {};
    return combine_probabilistic(t1, t2, cfg, rng);
}

/// Join used where no draw is defined (multi-byte shadow reads): flags are
/// OR'd and the probability numerator is the max over the inputs.
[[nodiscard]] constexpr TaintLabel join(
    TaintLabel a, TaintLabel b, const PropagationConfig& cfg) noexcept
{
    if (!cfg.probabilistic())
        return TaintLabel{a.raw | b.raw};
    const uint32_t flags = flags_of(a, cfg) | flags_of(b, cfg);
    if (flags == 0)
        return {};
    const uint32_t ma = numerator_of(a, cfg);
    const uint32_t mb = numerator_of(b, cfg);
    return TaintLabel{((ma > mb ? ma : mb) << cfg.flag_bits()) | flags};
}

}  // namespace taintwasm
