// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "taintwasm/opcodes.hpp"

#include <array>

namespace taintwasm
{
namespace
{
using enum ValType;

struct TableBuilder
{
    std::array<OpInfo, 256> t{};

    void set(Op op, std::string_view name, OpClass cls, uint8_t arity = 0, ValType in = I32,
        ValType out = I32, uint8_t width = 0)
    {
        t[static_cast<uint8_t>(op)] = OpInfo{name, cls, arity, in, out, width};
    }

    void cmp(Op op, std::string_view name, ValType in, uint8_t arity = 2)
    {
        set(op, name, OpClass::Comparison, arity, in, I32);
    }
    void un(Op op, std::string_view name, ValType ty) { set(op, name, OpClass::Unary, 1, ty, ty); }
    void bin(Op op, std::string_view name, ValType ty) { set(op, name, OpClass::Binary, 2, ty, ty); }
    void cvt(Op op, std::string_view name, ValType in, ValType out)
    {
        set(op, name, OpClass::Conversion, 1, in, out);
    }
    void load(Op op, std::string_view name, ValType out, uint8_t width)
    {
        set(op, name, OpClass::Load, 0, I32, out, width);
    }
    void store(Op op, std::string_view name, ValType in, uint8_t width)
    {
        set(op, name, OpClass::Store, 0, in, I32, width);
    }
};

std::array<OpInfo, 256> build_table()
{
    TableBuilder b;
    for (unsigned i = 0; i < 256; ++i)
        b.t[i] = OpInfo{"<unsupported>", OpClass::Unsupported};

    b.set(Op::unreachable, "unreachable", OpClass::Control);
    b.set(Op::nop, "nop", OpClass::Control);
    b.set(Op::block, "block", OpClass::Control);
    b.set(Op::loop, "loop", OpClass::Control);
    b.set(Op::if_, "if", OpClass::Control);
    b.set(Op::else_, "else", OpClass::Control);
    b.set(Op::end, "end", OpClass::Control);
    b.set(Op::br, "br", OpClass::Control);
    b.set(Op::br_if, "br_if", OpClass::Control);
    b.set(Op::br_table, "br_table", OpClass::Control);
    b.set(Op::return_, "return", OpClass::Control);
    b.set(Op::call, "call", OpClass::Control);
    b.set(Op::drop, "drop", OpClass::Parametric);
    b.set(Op::select, "select", OpClass::Parametric);
    b.set(Op::local_get, "local.get", OpClass::Variable);
    b.set(Op::local_set, "local.set", OpClass::Variable);
    b.set(Op::local_tee, "local.tee", OpClass::Variable);
    b.set(Op::global_get, "global.get", OpClass::Variable);
    b.set(Op::global_set, "global.set", OpClass::Variable);

    b.load(Op::i32_load, "i32.load", I32, 4);
    b.load(Op::i64_load, "i64.load", I64, 8);
    b.load(Op::f32_load, "f32.load", F32, 4);
    b.load(Op::f64_load, "f64.load", F64, 8);
    b.load(Op::i32_load8_s, "i32.load8_s", I32, 1);
    b.load(Op::i32_load8_u, "i32.load8_u", I32, 1);
    b.load(Op::i32_load16_s, "i32.load16_s", I32, 2);
    b.load(Op::i32_load16_u, "i32.load16_u", I32, 2);
    b.load(Op::i64_load8_s, "i64.load8_s", I64, 1);
    b.load(Op::i64_load8_u, "i64.load8_u", I64, 1);
    b.load(Op::i64_load16_s, "i64.load16_s", I64, 2);
    b.load(Op::i64_load16_u, "i64.load16_u", I64, 2);
    b.load(Op::i64_load32_s, "i64.load32_s", I64, 4);
    b.load(Op::i64_load32_u, "i64.load32_u", I64, 4);
    b.store(Op::i32_store, "i32.store", I32, 4);
    b.store(Op::i64_store, "i64.store", I64, 8);
    b.store(Op::f32_store, "f32.store", F32, 4);
    b.store(Op::f64_store, "f64.store", F64, 8);
    b.store(Op::i32_store8, "i32.store8", I32, 1);
    b.store(Op::i32_store16, "i32.store16", I32, 2);
    b.store(Op::i64_store8, "i64.store8", I64, 1);
    b.store(Op::i64_store16, "i64.store16", I64, 2);
    b.store(Op::i64_store32, "i64.store32", I64, 4);
    b.set(Op::memory_size, "memory.size", OpClass::MemorySize);
    b.set(Op::memory_grow, "memory.grow", OpClass::MemoryGrow);

    b.set(Op::i32_const, "i32.const", OpClass::Const, 0, I32, I32);
    b.set(Op::i64_const, "i64.const", OpClass::Const, 0, I64, I64);
    b.set(Op::f32_const, "f32.const", OpClass::Const, 0, F32, F32);
    b.set(Op::f64_const, "f64.const", OpClass::Const, 0, F64, F64);

    b.cmp(Op::i32_eqz, "i32.eqz", I32, 1);
    b.cmp(Op::i32_eq, "i32.eq", I32);
    b.cmp(Op::i32_ne, "i32.ne", I32);
    b.cmp(Op::i32_lt_s, "i32.lt_s", I32);
    b.cmp(Op::i32_lt_u, "i32.lt_u", I32);
    b.cmp(Op::i32_gt_s, "i32.gt_s", I32);
    b.cmp(Op::i32_gt_u, "i32.gt_u", I32);
    b.cmp(Op::i32_le_s, "i32.le_s", I32);
    b.cmp(Op::i32_le_u, "i32.le_u", I32);
    b.cmp(Op::i32_ge_s, "i32.ge_s", I32);
    b.cmp(Op::i32_ge_u, "i32.ge_u", I32);
    b.cmp(Op::i64_eqz, "i64.eqz", I64, 1);
    b.cmp(Op::i64_eq, "i64.eq", I64);
    b.cmp(Op::i64_ne, "i64.ne", I64);
    b.cmp(Op::i64_lt_s, "i64.lt_s", I64);
    b.cmp(Op::i64_lt_u, "i64.lt_u", I64);
    b.cmp(Op::i64_gt_s, "i64.gt_s", I64);
    b.cmp(Op::i64_gt_u, "i64.gt_u", I64);
    b.cmp(Op::i64_le_s, "i64.le_s", I64);
    b.cmp(Op::i64_le_u, "i64.le_u", I64);
    b.cmp(Op::i64_ge_s, "i64.ge_s", I64);
    b.cmp(Op::i64_ge_u, "i64.ge_u", I64);
    b.cmp(Op::f32_eq, "f32.eq", F32);
    b.cmp(Op::f32_ne, "f32.ne", F32);
    b.cmp(Op::f32_lt, "f32.lt", F32);
    b.cmp(Op::f32_gt, "f32.gt", F32);
    b.cmp(Op::f32_le, "f32.le", F32);
    b.cmp(Op::f32_ge, "f32.ge", F32);
    b.cmp(Op::f64_eq, "f64.eq", F64);
    b.cmp(Op::f64_ne, "f64.ne", F64);
    b.cmp(Op::f64_lt, "f64.lt", F64);
    b.cmp(Op::f64_gt, "f64.gt", F64);
    b.cmp(Op::f64_le, "f64.le", F64);
    b.cmp(Op::f64_ge, "f64.ge", F64);

    b.un(Op::i32_clz, "i32.clz", I32);
    b.un(Op::i32_ctz, "i32.ctz", I32);
    b.un(Op::i32_popcnt, "i32.popcnt", I32);
    b.bin(Op::i32_add, "i32.add", I32);
    b.bin(Op::i32_sub, "i32.sub", I32);
    b.bin(Op::i32_mul, "i32.mul", I32);
    b.bin(Op::i32_div_s, "i32.div_s", I32);
    b.bin(Op::i32_div_u, "i32.div_u", I32);
    b.bin(Op::i32_rem_s, "i32.rem_s", I32);
    b.bin(Op::i32_rem_u, "i32.rem_u", I32);
    b.bin(Op::i32_and, "i32.and", I32);
    b.bin(Op::i32_or, "i32.or", I32);
    b.bin(Op::i32_xor, "i32.xor", I32);
    b.bin(Op::i32_shl, "i32.shl", I32);
    b.bin(Op::i32_shr_s, "i32.shr_s", I32);
    b.bin(Op::i32_shr_u, "i32.shr_u", I32);
    b.bin(Op::i32_rotl, "i32.rotl", I32);
    b.bin(Op::i32_rotr, "i32.rotr", I32);
    b.un(Op::i64_clz, "i64.clz", I64);
    b.un(Op::i64_ctz, "i64.ctz", I64);
    b.un(Op::i64_popcnt, "i64.popcnt", I64);
    b.bin(Op::i64_add, "i64.add", I64);
    b.bin(Op::i64_sub, "i64.sub", I64);
    b.bin(Op::i64_mul, "i64.mul", I64);
    b.bin(Op::i64_div_s, "i64.div_s", I64);
    b.bin(Op::i64_div_u, "i64.div_u", I64);
    b.bin(Op::i64_rem_s, "i64.rem_s", I64);
    b.bin(Op::i64_rem_u, "i64.rem_u", I64);
    b.bin(Op::i64_and, "i64.and", I64);
    b.bin(Op::i64_or, "i64.or", I64);
    b.bin(Op::i64_xor, "i64.xor", I64);
    b.bin(Op::i64_shl, "i64.shl", I64);
    b.bin(Op::i64_shr_s, "i64.shr_s", I64);
    b.bin(Op::i64_shr_u, "i64.shr_u", I64);
    b.bin(Op::i64_rotl, "i64.rotl", I64);
    b.bin(Op::i64_rotr, "i64.rotr", I64);
    b.un(Op::f32_abs, "f32.abs", F32);
    b.un(Op::f32_neg, "f32.neg", F32);
    b.un(Op::f32_ceil, "f32.ceil", F32);
    b.un(Op::f32_floor, "f32.floor", F32);
    b.un(Op::f32_trunc, "f32.trunc", F32);
    b.un(Op::f32_nearest, "f32.nearest", F32);
    b.un(Op::f32_sqrt, "f32.sqrt", F32);
    b.bin(Op::f32_add, "f32.add", F32);
    b.bin(Op::f32_sub, "f32.sub", F32);
    b.bin(Op::f32_mul, "f32.mul", F32);
    b.bin(Op::f32_div, "f32.div", F32);
    b.bin(Op::f32_min, "f32.min", F32);
    b.bin(Op::f32_max, "f32.max", F32);
    b.bin(Op::f32_copysign, "f32.copysign", F32);
    b.un(Op::f64_abs, "f64.abs", F64);
    b.un(Op::f64_neg, "f64.neg", F64);
    b.un(Op::f64_ceil, "f64.ceil", F64);
    b.un(Op::f64_floor, "f64.floor", F64);
    b.un(Op::f64_trunc, "f64.trunc", F64);
    b.un(Op::f64_nearest, "f64.nearest", F64);
    b.un(Op::f64_sqrt, "f64.sqrt", F64);
    b.bin(Op::f64_add, "f64.add", F64);
    b.bin(Op::f64_sub, "f64.sub", F64);
    b.bin(Op::f64_mul, "f64.mul", F64);
    b.bin(Op::f64_div, "f64.div", F64);
    b.bin(Op::f64_min, "f64.min", F64);
    b.bin(Op::f64_max, "f64.max", F64);
    b.bin(Op::f64_copysign, "f64.copysign", F64);

    b.cvt(Op::i32_wrap_i64, "i32.wrap_i64", I64, I32);
    b.cvt(Op::i32_trunc_f32_s, "i32.trunc_f32_s", F32, I32);
    b.cvt(Op::i32_trunc_f32_u, "i32.trunc_f32_u", F32, I32);
    b.cvt(Op::i32_trunc_f64_s, "i32.trunc_f64_s", F64, I32);
    b.cvt(Op::i32_trunc_f64_u, "i32.trunc_f64_u", F64, I32);
    b.cvt(Op::i64_extend_i32_s, "i64.extend_i32_s", I32, I64);
    b.cvt(Op::i64_extend_i32_u, "i64.extend_i32_u", I32, I64);
    b.cvt(Op::i64_trunc_f32_s, "i64.trunc_f32_s", F32, I64);
    b.cvt(Op::i64_trunc_f32_u, "i64.trunc_f32_u", F32, I64);
    b.cvt(Op::i64_trunc_f64_s, "i64.trunc_f64_s", F64, I64);
    b.cvt(Op::i64_trunc_f64_u, "i64.trunc_f64_u", F64, I64);
    b.cvt(Op::f32_convert_i32_s, "f32.convert_i32_s", I32, F32);
    b.cvt(Op::f32_convert_i32_u, "f32.convert_i32_u", I32, F32);
    b.cvt(Op::f32_convert_i64_s, "f32.convert_i64_s", I64, F32);
    b.cvt(Op::f32_convert_i64_u, "f32.convert_i64_u", I64, F32);
    b.cvt(Op::f32_demote_f64, "f32.demote_f64", F64, F32);
    b.cvt(Op::f64_convert_i32_s, "f64.convert_i32_s", I32, F64);
    b.cvt(Op::f64_convert_i32_u, "f64.convert_i32_u", I32, F64);
    b.cvt(Op::f64_convert_i64_s, "f64.convert_i64_s", I64, F64);
    b.cvt(Op::f64_convert_i64_u, "f64.convert_i64_u", I64, F64);
    b.cvt(Op::f64_promote_f32, "f64.promote_f32", F32, F64);
    b.cvt(Op::i32_reinterpret_f32, "i32.reinterpret_f32", F32, I32);
    b.cvt(Op::i64_reinterpret_f64, "i64.reinterpret_f64", F64, I64);
    b.cvt(Op::f32_reinterpret_i32, "f32.reinterpret_i32", I32, F32);
    b.cvt(Op::f64_reinterpret_i64, "f64.reinterpret_i64", I64, F64);
    return b.t;
}

const std::array<OpInfo, 256> op_table = build_table();
}  // namespace

const OpInfo& op_info(uint8_t opcode) noexcept
{
    return op_table[opcode];
}

}  // namespace taintwasm
