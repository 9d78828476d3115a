// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "taintwasm/taint.hpp"

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

namespace taintwasm
{
enum class ValType : uint8_t
{
    I32 = 0x7F,
    I64 = 0x7E,
    F32 = 0x7D,
    F64 = 0x7C,
};

[[nodiscard]] std::string_view to_string(ValType t) noexcept;

[[nodiscard]] constexpr bool is_valtype_byte(uint8_t b) noexcept
{
    return b >= 0x7C && b <= 0x7F;
}

/// A wasm number. Floats are held by bit pattern so NaN payloads survive
/// the round trip through the interpreter.
struct Value
{
    ValType type = ValType::I32;
    uint64_t bits = 0;

    static constexpr Value i32(int32_t v) noexcept
    {
        return {ValType::I32, static_cast<uint32_t>(v)};
    }
    static constexpr Value i64(int64_t v) noexcept
    {
        return {ValType::I64, static_cast<uint64_t>(v)};
    }
    static constexpr Value f32(float v) noexcept
    {
        return {ValType::F32, std::bit_cast<uint32_t>(v)};
    }
    static constexpr Value f64(double v) noexcept
    {
        return {ValType::F64, std::bit_cast<uint64_t>(v)};
    }
    static constexpr Value zero(ValType t) noexcept { return {t, 0}; }

    [[nodiscard]] constexpr int32_t as_i32() const noexcept
    {
        return static_cast<int32_t>(static_cast<uint32_t>(bits));
    }
    [[nodiscard]] constexpr uint32_t as_u32() const noexcept
    {
        return static_cast<uint32_t>(bits);
    }
    [[nodiscard]] constexpr int64_t as_i64() const noexcept
    {
        return static_cast<int64_t>(bits);
    }
    [[nodiscard]] constexpr float as_f32() const noexcept
    {
        return std::bit_cast<float>(static_cast<uint32_t>(bits));
    }
    [[nodiscard]] constexpr double as_f64() const noexcept
    {
        return std::bit_cast<double>(bits);
    }

    friend constexpr bool operator==(const Value&, const Value&) noexcept = default;
};

/// "i32 120", "f64 -2.5" and so on.
[[nodiscard]] std::string to_string(const Value& v);

struct TaintedValue
{
    Value value;
    TaintLabel taint;

    friend constexpr bool operator==(const TaintedValue&, const TaintedValue&) noexcept = default;
};

/// "0x000000f0"
[[nodiscard]] std::string format_taint(TaintLabel t);

}  // namespace taintwasm
