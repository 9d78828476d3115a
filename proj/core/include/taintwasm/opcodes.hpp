// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "taintwasm/value.hpp"

#include <cstdint>
#include <string_view>

namespace taintwasm
{
// clang-format off
enum class Op : uint8_t
{
    unreachable = 0x00, nop = 0x01, block = 0x02, loop = 0x03, if_ = 0x04, else_ = 0x05,
    end = 0x0B, br = 0x0C, br_if = 0x0D, br_table = 0x0E, return_ = 0x0F,
    call = 0x10, call_indirect = 0x11,
    drop = 0x1A, select = 0x1B,
    local_get = 0x20, local_set = 0x21, local_tee = 0x22, global_get = 0x23, global_set = 0x24,

    i32_load = 0x28, i64_load = 0x29, f32_load = 0x2A, f64_load = 0x2B,
    i32_load8_s = 0x2C, i32_load8_u = 0x2D, i32_load16_s = 0x2E, i32_load16_u = 0x2F,
    i64_load8_s = 0x30, i64_load8_u = 0x31, i64_load16_s = 0x32, i64_load16_u = 0x33,
    i64_load32_s = 0x34, i64_load32_u = 0x35,
    i32_store = 0x36, i64_store = 0x37, f32_store = 0x38, f64_store = 0x39,
    i32_store8 = 0x3A, i32_store16 = 0x3B, i64_store8 = 0x3C, i64_store16 = 0x3D, i64_store32 = 0x3E,
    memory_size = 0x3F, memory_grow = 0x40,

    i32_const = 0x41, i64_const = 0x42, f32_const = 0x43, f64_const = 0x44,

    i32_eqz = 0x45, i32_eq, i32_ne, i32_lt_s, i32_lt_u, i32_gt_s, i32_gt_u, i32_le_s, i32_le_u,
    i32_ge_s, i32_ge_u,
    i64_eqz = 0x50, i64_eq, i64_ne, i64_lt_s, i64_lt_u, i64_gt_s, i64_gt_u, i64_le_s, i64_le_u,
    i64_ge_s, i64_ge_u,
    f32_eq = 0x5B, f32_ne, f32_lt, f32_gt, f32_le, f32_ge,
    f64_eq = 0x61, f64_ne, f64_lt, f64_gt, f64_le, f64_ge,

    i32_clz = 0x67, i32_ctz, i32_popcnt,
    i32_add = 0x6A, i32_sub, i32_mul, i32_div_s, i32_div_u, i32_rem_s, i32_rem_u,
    i32_and, i32_or, i32_xor, i32_shl, i32_shr_s, i32_shr_u, i32_rotl, i32_rotr,
    i64_clz = 0x79, i64_ctz, i64_popcnt,
    i64_add = 0x7C, i64_sub, i64_mul, i64_div_s, i64_div_u, i64_rem_s, i64_rem_u,
    i64_and, i64_or, i64_xor, i64_shl, i64_shr_s, i64_shr_u, i64_rotl, i64_rotr,
    f32_abs = 0x8B, f32_neg, f32_ceil, f32_floor, f32_trunc, f32_nearest, f32_sqrt,
    f32_add = 0x92, f32_sub, f32_mul, f32_div, f32_min, f32_max, f32_copysign,
    f64_abs = 0x99, f64_neg, f64_ceil, f64_floor, f64_trunc, f64_nearest, f64_sqrt,
    f64_add = 0xA0, f64_sub, f64_mul, f64_div, f64_min, f64_max, f64_copysign,

    i32_wrap_i64 = 0xA7,
    i32_trunc_f32_s, i32_trunc_f32_u, i32_trunc_f64_s, i32_trunc_f64_u,
    i64_extend_i32_s, i64_extend_i32_u,
    i64_trunc_f32_s, i64_trunc_f32_u, i64_trunc_f64_s, i64_trunc_f64_u,
    f32_convert_i32_s, f32_convert_i32_u, f32_convert_i64_s, f32_convert_i64_u, f32_demote_f64,
    f64_convert_i32_s, f64_convert_i32_u, f64_convert_i64_s, f64_convert_i64_u, f64_promote_f32,
    i32_reinterpret_f32, i64_reinterpret_f64, f32_reinterpret_i32, f64_reinterpret_i64 = 0xBF,
};
// clang-format on

/// How an opcode participates in taint propagation and validation.
enum class OpClass : uint8_t
{
    Unsupported,
    Control,
    Parametric,  // drop, select
    Variable,    // local.*, global.*
    Load,
    Store,
    MemorySize,
    MemoryGrow,
    Const,
    Comparison,  // result taint is always zero
    Unary,       // result taint = operand taint
    Binary,      // result taint = join of operand taints
    Conversion,  // unary for taint purposes
};

struct OpInfo
{
    std::string_view name;
    OpClass cls = OpClass::Unsupported;
    uint8_t arity = 0;  // numeric operands (comparisons/unary/binary/conversions)
    ValType operand = ValType::I32;
    ValType result = ValType::I32;
    uint8_t width = 0;  // bytes touched by loads and stores
};

[[nodiscard]] const OpInfo& op_info(uint8_t opcode) noexcept;

[[nodiscard]] inline const OpInfo& op_info(Op op) noexcept
{
    return op_info(static_cast<uint8_t>(op));
}

[[nodiscard]] constexpr bool is_numeric_class(OpClass c) noexcept
{
    return c == OpClass::Comparison || c == OpClass::Unary || c == OpClass::Binary ||
           c == OpClass::Conversion;
}

}  // namespace taintwasm
