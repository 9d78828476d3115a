// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "taintwasm/taint.hpp"

#include <cmath>
#include <string>

namespace taintwasm
{
void PropagationConfig::check() const
{
    if (probability_bits < 1 || probability_bits > 16)
        throw std::invalid_argument(
            "probability_bits must be in [1, 16], got " + std::to_string(probability_bits));
}

double probability_of(TaintLabel label, const PropagationConfig& cfg)
{
    if (!cfg.probabilistic())
        throw TaintEncodingError("probability_of requires probabilistic mode");
    return static_cast<double>(numerator_of(label, cfg)) /
           static_cast<double>(cfg.max_numerator());
}

TaintLabel with_numerator(uint32_t flags, uint32_t m, const PropagationConfig& cfg)
{
    if (!cfg.probabilistic())
        throw TaintEncodingError("probability encoding requires probabilistic mode");
    if ((flags & ~cfg.flag_mask()) != 0)
        throw TaintEncodingError("flags do not fit in " + std::to_string(cfg.flag_bits()) + " bits");
    if (m > cfg.max_numerator())
        throw TaintEncodingError("probability numerator out of range");
    if (flags == 0)
        return {};
    return TaintLabel{(m << cfg.flag_bits()) | flags};
}

TaintLabel with_probability(uint32_t flags, double p, const PropagationConfig& cfg)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw TaintEncodingError("probability must be in [0, 1]");
    const auto m = static_cast<uint32_t>(std::lround(p * cfg.max_numerator()));
    return with_numerator(flags, m, cfg);
}

namespace
{
bool included(uint32_t m, uint32_t max, RandomSource& rng) noexcept
{
    if (m == 0)
        return false;
    if (m == max)
        return true;
    return rng.uniform() * max < m;
}
}  // namespace

TaintLabel combine_probabilistic(
    TaintLabel t1, TaintLabel t2, const PropagationConfig& cfg, RandomSource& rng) noexcept
{
    const uint32_t max = cfg.max_numerator();
    const uint32_t m1 = numerator_of(t1, cfg);
    const uint32_t m2 = numerator_of(t2, cfg);

    uint32_t flags = 0;
    if (included(m1, max, rng))
        flags |= flags_of(t1, cfg);
    if (included(m2, max, rng))
        flags |= flags_of(t2, cfg);
    if (flags == 0)
        return {};
    return TaintLabel{((m1 > m2 ? m1 : m2) << cfg.flag_bits()) | flags};
}

}  // namespace taintwasm
