// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Value semantics of the numeric instructions. Taint is handled by the
// caller; everything here only sees bit patterns.

#include "taintwasm/errors.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <type_traits>

namespace taintwasm::num
{
template <typename T>
T div_s(T a, T b, uint32_t at)
{
    using S = std::make_signed_t<T>;
    const auto x = static_cast<S>(a);
    const auto y = static_cast<S>(b);
    if (y == 0)
        throw Trap(TrapKind::IntegerDivideByZero, at);
    if (x == std::numeric_limits<S>::min() && y == -1)
        throw Trap(TrapKind::IntegerOverflow, at);
    return static_cast<T>(x / y);
}

template <typename T>
T div_u(T a, T b, uint32_t at)
{
    if (b == 0)
        throw Trap(TrapKind::IntegerDivideByZero, at);
    return a / b;
}

template <typename T>
T rem_s(T a, T b, uint32_t at)
{
    using S = std::make_signed_t<T>;
    const auto x = static_cast<S>(a);
    const auto y = static_cast<S>(b);
    if (y == 0)
        throw Trap(TrapKind::IntegerDivideByZero, at);
    if (y == -1)
        return 0;
    return static_cast<T>(x % y);
}

template <typename T>
T rem_u(T a, T b, uint32_t at)
{
    if (b == 0)
        throw Trap(TrapKind::IntegerDivideByZero, at);
    return a % b;
}

template <typename T>
constexpr T shl(T a, T b) noexcept
{
    return a << (b & (sizeof(T) * 8 - 1));
}

template <typename T>
constexpr T shr_u(T a, T b) noexcept
{
    return a >> (b & (sizeof(T) * 8 - 1));
}

template <typename T>
constexpr T shr_s(T a, T b) noexcept
{
    using S = std::make_signed_t<T>;
    return static_cast<T>(static_cast<S>(a) >> (b & (sizeof(T) * 8 - 1)));
}

template <typename T>
constexpr T rotl(T a, T b) noexcept
{
    return std::rotl(a, static_cast<int>(b & (sizeof(T) * 8 - 1)));
}

template <typename T>
constexpr T rotr(T a, T b) noexcept
{
    return std::rotr(a, static_cast<int>(b & (sizeof(T) * 8 - 1)));
}

template <typename F>
F fmin(F a, F b) noexcept
{
    if (std::isnan(a) || std::isnan(b))
        return std::numeric_limits<F>::quiet_NaN();
    if (a == b)
        return std::signbit(a) ? a : b;
    return a < b ? a : b;
}

template <typename F>
F fmax(F a, F b) noexcept
{
    if (std::isnan(a) || std::isnan(b))
        return std::numeric_limits<F>::quiet_NaN();
    if (a == b)
        return std::signbit(a) ? b : a;
    return a > b ? a : b;
}

template <typename F>
F nearest(F a) noexcept
{
    return std::nearbyint(a);  // default rounding mode: ties to even
}

// Sign manipulation works on the bit pattern so NaN payloads are preserved.
constexpr uint32_t f32_sign = 0x80000000u;
constexpr uint64_t f64_sign = 0x8000000000000000ull;

/// Truncation to integer type I with the wasm trap rules.
template <typename I, typename F>
I trunc(F x, uint32_t at)
{
    if (std::isnan(x))
        throw Trap(TrapKind::InvalidConversion, at);
    const auto d = static_cast<double>(x);
    bool ok;
    if constexpr (std::is_same_v<I, int32_t>)
        ok = d > -2147483649.0 && d < 2147483648.0;
    else if constexpr (std::is_same_v<I, uint32_t>)
        ok = d > -1.0 && d < 4294967296.0;
    else if constexpr (std::is_same_v<I, int64_t>)
        ok = d >= -9223372036854775808.0 && d < 9223372036854775808.0;
    else
        ok = d > -1.0 && d < 18446744073709551616.0;
    if (!ok)
        throw Trap(TrapKind::IntegerOverflow, at);
    return static_cast<I>(std::trunc(d));
}

}  // namespace taintwasm::num
