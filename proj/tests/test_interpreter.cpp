// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "taintwasm/builder.hpp"
#include "taintwasm/errors.hpp"
#include "taintwasm/instance.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace taintwasm;
using taintwasm::testing::load_built;
using taintwasm::testing::load_fixture;
using taintwasm::testing::single_function;

namespace
{
const FunctionType i32_to_i32{{ValType::I32}, {ValType::I32}};

TaintedValue tv(Value v, uint32_t taint = 0)
{
    return {v, TaintLabel{taint}};
}

Instance empty_instance(PropagationConfig cfg = {})
{
    return Instance(load_built(ModuleBuilder{}), cfg);
}

const Trapped& trapped(const InvokeResult& r)
{
    static const Trapped none{};
    const auto* t = std::get_if<Trapped>(&r.status);
    EXPECT_NE(t, nullptr) << describe(r.status);
    return t ? *t : none;
}

// myfunction(a, b, c) hands its parameters to an imported observer so the
// test can see the labels they arrived with.
struct Observed
{
    std::vector<TaintedValue> params;
};

Instance observer_instance(Observed& seen)
{
    ModuleBuilder b;
    const FunctionType three{{ValType::I32, ValType::I32, ValType::I32}, {}};
    const uint32_t observe = b.import_function("env", "observe", three);
    CodeBuilder body;
    body.local_get(0).local_get(1).local_get(2).call(observe).end();
    b.export_function("myfunction", b.add_function(three, {}, body));

    HostTable host;
    host.add("env", "observe", {three, [&seen](std::span<const TaintedValue> args) {
                                    seen.params.assign(args.begin(), args.end());
                                    return std::vector<TaintedValue>{};
                                }});
    return Instance(load_built(b), {}, {}, std::move(host));
}

}  // namespace

TEST(signature_overloading, no_taint_suffix)
{
    Observed seen;
    Instance inst = observer_instance(seen);
    (void)inst.invoke("myfunction", {Value::i32(50), Value::i32(100), Value::i32(200)});
    ASSERT_EQ(seen.params.size(), 3u);
    EXPECT_EQ(seen.params[0], tv(Value::i32(50)));
    EXPECT_EQ(seen.params[1], tv(Value::i32(100)));
    EXPECT_EQ(seen.params[2], tv(Value::i32(200)));
}

TEST(signature_overloading, first_parameter_tainted)
{
    Observed seen;
    Instance inst = observer_instance(seen);
    (void)inst.invoke("myfunction", {Value::i32(50), Value::i32(100), Value::i32(200), TaintWord{0x000000F0}});
    ASSERT_EQ(seen.params.size(), 3u);
    EXPECT_EQ(seen.params[0].taint.raw, 0x000000F0u);
    EXPECT_EQ(seen.params[1].taint.raw, 0u);
    EXPECT_EQ(seen.params[2].taint.raw, 0u);
}

TEST(signature_overloading, surplus_label_discarded)
{
    Observed seen;
    Instance inst = observer_instance(seen);
    (void)inst.invoke("myfunction",
        {Value::i32(1), Value::i32(2), Value::i32(3), TaintWord{0x1}, TaintWord{0x2}, TaintWord{0x4}, TaintWord{0x8}});
    ASSERT_EQ(seen.params.size(), 3u);
    EXPECT_EQ(seen.params[0], tv(Value::i32(1), 0x1));
    EXPECT_EQ(seen.params[1], tv(Value::i32(2), 0x2));
    EXPECT_EQ(seen.params[2], tv(Value::i32(3), 0x4));
}

TEST(signature_overloading, i64_params_take_taint)
{
    CodeBuilder body;
    body.local_get(0).end();
    Instance inst(single_function({{ValType::I64}, {ValType::I64}}, body));
    const auto r = inst.invoke("f", {Value::i64(-5), TaintWord{0x10}});
    ASSERT_EQ(r.values.size(), 1u);
    EXPECT_EQ(r.values[0], tv(Value::i64(-5), 0x10));
}

TEST(invoke, argument_errors)
{
    Instance inst(load_fixture("factorial.wasm"));
    EXPECT_THROW((void)inst.invoke("nope", {Value::i32(1)}), InvokeError);
    EXPECT_THROW((void)inst.invoke("memory", {}), InvokeError);
    EXPECT_THROW((void)inst.invoke("fac", {}), InvokeError);
    EXPECT_THROW((void)inst.invoke("fac", {Value::i64(1)}), InvokeError);
    EXPECT_THROW((void)inst.invoke("fac", {TaintWord{1}}), InvokeError);
    EXPECT_THROW((void)inst.invoke("fac", {Value::i32(1), Value::i32(2)}), InvokeError);
}

TEST(invoke, probabilistic_orphan_labels_normalized)
{
    PropagationConfig cfg;
    cfg.mode = PropagationMode::Probabilistic;
    CodeBuilder body;
    body.local_get(0).end();
    Instance inst(single_function(i32_to_i32, body), cfg);
    const auto r = inst.invoke("f", {Value::i32(1), TaintWord{0x80000000}});
    EXPECT_EQ(r.values.at(0).taint.raw, 0u);
}

TEST(exec_numeric, documented_examples)
{
    Instance inst = empty_instance();
    const TaintedValue add[] = {tv(Value::i32(5), 0x1), tv(Value::i32(7), 0x2)};
    EXPECT_EQ(inst.exec_numeric(Op::i32_add, add), tv(Value::i32(12), 0x3));
    const TaintedValue eq[] = {tv(Value::i32(5), 0xFF), tv(Value::i32(5), 0xFF)};
    EXPECT_EQ(inst.exec_numeric(Op::i32_eq, eq), tv(Value::i32(1), 0x0));
    const TaintedValue neg[] = {tv(Value::f64(2.5), 0x8)};
    EXPECT_EQ(inst.exec_numeric(Op::f64_neg, neg), tv(Value::f64(-2.5), 0x8));
}

TEST(exec_numeric, operand_checks)
{
    Instance inst = empty_instance();
    const TaintedValue one[] = {tv(Value::i32(1))};
    EXPECT_THROW((void)inst.exec_numeric(Op::i32_add, one), InvokeError);
    const TaintedValue mixed[] = {tv(Value::i32(1)), tv(Value::i64(1))};
    EXPECT_THROW((void)inst.exec_numeric(Op::i32_add, mixed), InvokeError);
    EXPECT_THROW((void)inst.exec_numeric(Op::local_get, one), InvokeError);
}

namespace
{
Value sample(ValType t)
{
    switch (t)
    {
    case ValType::I32:
        return Value::i32(3);
    case ValType::I64:
        return Value::i64(3);
    case ValType::F32:
        return Value::f32(1.5f);
    case ValType::F64:
        return Value::f64(1.5);
    }
    return {};
}
}  // namespace

TEST(exec_numeric, class_rule_every_opcode)
{
    Instance inst = empty_instance();
    int checked = 0;
    for (unsigned code = 0; code < 256; ++code)
    {
        const OpInfo& info = op_info(static_cast<uint8_t>(code));
        if (!is_numeric_class(info.cls))
            continue;
        const auto op = static_cast<Op>(code);
        for (uint32_t t1 : {0u, 0x1u, 0x80000000u})
            for (uint32_t t2 : {0u, 0x2u, 0x40000000u})
            {
                std::vector<TaintedValue> ops{tv(sample(info.operand), t1)};
                if (info.arity == 2)
                    ops.push_back(tv(sample(info.operand), t2));
                const TaintedValue r = inst.exec_numeric(op, ops);
                ASSERT_EQ(r.value.type, info.result) << info.name;
                uint32_t expected = 0;
                switch (info.cls)
                {
                case OpClass::Comparison:
                    expected = 0;
                    break;
                case OpClass::Binary:
                    expected = t1 | t2;
                    break;
                default:
                    expected = t1;
                    break;
                }
                ASSERT_EQ(r.taint.raw, expected) << info.name << " t1=" << t1 << " t2=" << t2;
                ++checked;
            }
    }
    EXPECT_EQ(checked, (0xBF - 0x45 + 1) * 9);
}

TEST(exec_numeric, opcode_classes)
{
    for (unsigned c = 0x45; c <= 0x66; ++c)
        EXPECT_EQ(op_info(static_cast<uint8_t>(c)).cls, OpClass::Comparison) << c;
    for (unsigned c : {0x67, 0x68, 0x69, 0x79, 0x7A, 0x7B, 0x8B, 0x8C, 0x8D, 0x8E, 0x8F, 0x90, 0x91, 0x99, 0x9A,
             0x9B, 0x9C, 0x9D, 0x9E, 0x9F})
        EXPECT_EQ(op_info(static_cast<uint8_t>(c)).cls, OpClass::Unary) << c;
    for (unsigned c = 0x6A; c <= 0x78; ++c)
        EXPECT_EQ(op_info(static_cast<uint8_t>(c)).cls, OpClass::Binary) << c;
    for (unsigned c = 0x7C; c <= 0x8A; ++c)
        EXPECT_EQ(op_info(static_cast<uint8_t>(c)).cls, OpClass::Binary) << c;
    for (unsigned c = 0x92; c <= 0x98; ++c)
        EXPECT_EQ(op_info(static_cast<uint8_t>(c)).cls, OpClass::Binary) << c;
    for (unsigned c = 0xA0; c <= 0xA6; ++c)
        EXPECT_EQ(op_info(static_cast<uint8_t>(c)).cls, OpClass::Binary) << c;
    for (unsigned c = 0xA7; c <= 0xBF; ++c)
        EXPECT_EQ(op_info(static_cast<uint8_t>(c)).cls, OpClass::Conversion) << c;
}

namespace
{
class NumericTest : public ::testing::Test
{
protected:
    Value run(Op op, Value a)
    {
        const TaintedValue ops[] = {tv(a)};
        return inst.exec_numeric(op, ops).value;
    }
    Value run(Op op, Value a, Value b)
    {
        const TaintedValue ops[] = {tv(a), tv(b)};
        return inst.exec_numeric(op, ops).value;
    }
    TrapKind trap(Op op, Value a)
    {
        const TaintedValue ops[] = {tv(a)};
        try
        {
            (void)inst.exec_numeric(op, ops);
        }
        catch (const Trap& t)
        {
            return t.kind();
        }
        ADD_FAILURE() << "no trap";
        return TrapKind::Unreachable;
    }
    TrapKind trap(Op op, Value a, Value b)
    {
        const TaintedValue ops[] = {tv(a), tv(b)};
        try
        {
            (void)inst.exec_numeric(op, ops);
        }
        catch (const Trap& t)
        {
            return t.kind();
        }
        ADD_FAILURE() << "no trap";
        return TrapKind::Unreachable;
    }

    Instance inst = empty_instance();
};

using I = Value;
constexpr int32_t imin = std::numeric_limits<int32_t>::min();
constexpr int64_t lmin = std::numeric_limits<int64_t>::min();
}  // namespace

TEST_F(NumericTest, integer_arithmetic)
{
    EXPECT_EQ(run(Op::i32_add, I::i32(INT32_MAX), I::i32(1)), I::i32(imin));
    EXPECT_EQ(run(Op::i32_sub, I::i32(0), I::i32(1)), I::i32(-1));
    EXPECT_EQ(run(Op::i32_mul, I::i32(0x10000), I::i32(0x10000)), I::i32(0));
    EXPECT_EQ(run(Op::i32_div_s, I::i32(-7), I::i32(2)), I::i32(-3));
    EXPECT_EQ(run(Op::i32_div_u, I::i32(-1), I::i32(2)), I::i32(0x7FFFFFFF));
    EXPECT_EQ(run(Op::i32_rem_s, I::i32(-7), I::i32(2)), I::i32(-1));
    EXPECT_EQ(run(Op::i32_rem_s, I::i32(imin), I::i32(-1)), I::i32(0));
    EXPECT_EQ(run(Op::i32_rem_u, I::i32(-1), I::i32(10)), I::i32(5));
    EXPECT_EQ(run(Op::i64_div_s, I::i64(-7), I::i64(2)), I::i64(-3));
    EXPECT_EQ(run(Op::i64_rem_s, I::i64(lmin), I::i64(-1)), I::i64(0));
    EXPECT_EQ(run(Op::i64_mul, I::i64(INT64_MAX), I::i64(2)), I::i64(-2));
}

TEST_F(NumericTest, integer_traps)
{
    EXPECT_EQ(trap(Op::i32_div_s, I::i32(1), I::i32(0)), TrapKind::IntegerDivideByZero);
    EXPECT_EQ(trap(Op::i32_div_u, I::i32(1), I::i32(0)), TrapKind::IntegerDivideByZero);
    EXPECT_EQ(trap(Op::i32_rem_s, I::i32(1), I::i32(0)), TrapKind::IntegerDivideByZero);
    EXPECT_EQ(trap(Op::i32_rem_u, I::i32(1), I::i32(0)), TrapKind::IntegerDivideByZero);
    EXPECT_EQ(trap(Op::i32_div_s, I::i32(imin), I::i32(-1)), TrapKind::IntegerOverflow);
    EXPECT_EQ(trap(Op::i64_div_s, I::i64(lmin), I::i64(-1)), TrapKind::IntegerOverflow);
    EXPECT_EQ(trap(Op::i64_rem_u, I::i64(1), I::i64(0)), TrapKind::IntegerDivideByZero);
}

TEST_F(NumericTest, bit_operations)
{
    EXPECT_EQ(run(Op::i32_shl, I::i32(1), I::i32(33)), I::i32(2));
    EXPECT_EQ(run(Op::i32_shr_s, I::i32(-8), I::i32(1)), I::i32(-4));
    EXPECT_EQ(run(Op::i32_shr_u, I::i32(-8), I::i32(1)), I::i32(0x7FFFFFFC));
    EXPECT_EQ(run(Op::i32_rotl, I::i32(static_cast<int32_t>(0x80000001u)), I::i32(1)), I::i32(3));
    EXPECT_EQ(run(Op::i32_rotr, I::i32(3), I::i32(1)), I::i32(static_cast<int32_t>(0x80000001u)));
    EXPECT_EQ(run(Op::i64_shl, I::i64(1), I::i64(65)), I::i64(2));
    EXPECT_EQ(run(Op::i64_rotl, I::i64(lmin), I::i64(1)), I::i64(1));
    EXPECT_EQ(run(Op::i32_clz, I::i32(0)), I::i32(32));
    EXPECT_EQ(run(Op::i32_clz, I::i32(1)), I::i32(31));
    EXPECT_EQ(run(Op::i32_ctz, I::i32(0)), I::i32(32));
    EXPECT_EQ(run(Op::i32_ctz, I::i32(8)), I::i32(3));
    EXPECT_EQ(run(Op::i32_popcnt, I::i32(-1)), I::i32(32));
    EXPECT_EQ(run(Op::i64_clz, I::i64(0)), I::i64(64));
    EXPECT_EQ(run(Op::i64_popcnt, I::i64(-1)), I::i64(64));
}

TEST_F(NumericTest, comparisons)
{
    EXPECT_EQ(run(Op::i32_lt_s, I::i32(-1), I::i32(0)), I::i32(1));
    EXPECT_EQ(run(Op::i32_lt_u, I::i32(-1), I::i32(0)), I::i32(0));
    EXPECT_EQ(run(Op::i32_eqz, I::i32(0)), I::i32(1));
    EXPECT_EQ(run(Op::i64_eqz, I::i64(5)), I::i32(0));
    EXPECT_EQ(run(Op::i64_ge_u, I::i64(-1), I::i64(1)), I::i32(1));
    const double nan = std::numeric_limits<double>::quiet_NaN();
    EXPECT_EQ(run(Op::f64_eq, I::f64(nan), I::f64(nan)), I::i32(0));
    EXPECT_EQ(run(Op::f64_ne, I::f64(nan), I::f64(nan)), I::i32(1));
    EXPECT_EQ(run(Op::f32_eq, I::f32(0.0f), I::f32(-0.0f)), I::i32(1));
}

TEST_F(NumericTest, float_arithmetic)
{
    EXPECT_EQ(run(Op::f32_add, I::f32(1.5f), I::f32(2.25f)), I::f32(3.75f));
    EXPECT_EQ(run(Op::f64_div, I::f64(1.0), I::f64(0.0)), I::f64(std::numeric_limits<double>::infinity()));
    EXPECT_EQ(run(Op::f64_sqrt, I::f64(2.0)), I::f64(std::sqrt(2.0)));
    EXPECT_EQ(run(Op::f32_min, I::f32(0.0f), I::f32(-0.0f)).bits, I::f32(-0.0f).bits);
    EXPECT_EQ(run(Op::f32_max, I::f32(-0.0f), I::f32(0.0f)).bits, I::f32(0.0f).bits);
    EXPECT_TRUE(std::isnan(run(Op::f64_min, I::f64(1.0), I::f64(std::nan(""))).as_f64()));
    EXPECT_TRUE(std::isnan(run(Op::f64_max, I::f64(std::nan("")), I::f64(1.0)).as_f64()));
    EXPECT_EQ(run(Op::f64_nearest, I::f64(2.5)), I::f64(2.0));
    EXPECT_EQ(run(Op::f64_nearest, I::f64(3.5)), I::f64(4.0));
    EXPECT_EQ(run(Op::f64_nearest, I::f64(-0.5)).bits, I::f64(-0.0).bits);
    EXPECT_EQ(run(Op::f32_ceil, I::f32(-0.5f)).bits, I::f32(-0.0f).bits);
    EXPECT_EQ(run(Op::f32_floor, I::f32(-0.5f)), I::f32(-1.0f));
    EXPECT_EQ(run(Op::f64_trunc, I::f64(-1.7)), I::f64(-1.0));
}

TEST_F(NumericTest, sign_operations_preserve_nan_payload)
{
    const Value payload{ValType::F32, 0x7FA00001};
    EXPECT_EQ(run(Op::f32_neg, payload).bits, 0xFFA00001u);
    EXPECT_EQ(run(Op::f32_abs, Value{ValType::F32, 0xFFA00001}).bits, 0x7FA00001u);
    EXPECT_EQ(run(Op::f32_copysign, payload, I::f32(-1.0f)).bits, 0xFFA00001u);
    EXPECT_EQ(run(Op::f64_copysign, I::f64(2.0), I::f64(-0.0)), I::f64(-2.0));
    EXPECT_EQ(run(Op::f64_abs, I::f64(-3.0)), I::f64(3.0));
}

TEST_F(NumericTest, conversions)
{
    EXPECT_EQ(run(Op::i32_wrap_i64, I::i64(0x123456789LL)), I::i32(0x23456789));
    EXPECT_EQ(run(Op::i64_extend_i32_s, I::i32(-1)), I::i64(-1));
    EXPECT_EQ(run(Op::i64_extend_i32_u, I::i32(-1)), I::i64(0xFFFFFFFFLL));
    EXPECT_EQ(run(Op::i32_trunc_f64_s, I::f64(-2147483648.9)), I::i32(imin));
    EXPECT_EQ(run(Op::i32_trunc_f64_u, I::f64(-0.9)), I::i32(0));
    EXPECT_EQ(run(Op::i32_trunc_f64_u, I::f64(4294967295.5)), I::i32(-1));
    EXPECT_EQ(run(Op::i64_trunc_f64_s, I::f64(-9223372036854775808.0)), I::i64(lmin));
    EXPECT_EQ(run(Op::i64_trunc_f32_u, I::f32(1e19f)).bits, static_cast<uint64_t>(1e19f));
    EXPECT_EQ(run(Op::f32_convert_i32_u, I::i32(-1)), I::f32(4294967296.0f));
    EXPECT_EQ(run(Op::f64_convert_i64_s, I::i64(-3)), I::f64(-3.0));
    EXPECT_EQ(run(Op::f64_convert_i64_u, I::i64(-1)), I::f64(18446744073709551616.0));
    EXPECT_EQ(run(Op::f32_demote_f64, I::f64(0.1)), I::f32(0.1f));
    EXPECT_EQ(run(Op::f64_promote_f32, I::f32(0.5f)), I::f64(0.5));
    EXPECT_EQ(run(Op::i32_reinterpret_f32, I::f32(1.0f)), I::i32(0x3F800000));
    EXPECT_EQ(run(Op::f64_reinterpret_i64, I::i64(0x4000000000000000LL)), I::f64(2.0));
}

TEST_F(NumericTest, conversion_traps)
{
    EXPECT_EQ(trap(Op::i32_trunc_f32_s, I::f32(std::nanf(""))), TrapKind::InvalidConversion);
    EXPECT_EQ(trap(Op::i32_trunc_f64_s, I::f64(2147483648.0)), TrapKind::IntegerOverflow);
    EXPECT_EQ(trap(Op::i32_trunc_f64_s, I::f64(-2147483649.0)), TrapKind::IntegerOverflow);
    EXPECT_EQ(trap(Op::i32_trunc_f64_u, I::f64(-1.0)), TrapKind::IntegerOverflow);
    EXPECT_EQ(trap(Op::i32_trunc_f64_u, I::f64(4294967296.0)), TrapKind::IntegerOverflow);
    EXPECT_EQ(trap(Op::i64_trunc_f64_s, I::f64(9223372036854775808.0)), TrapKind::IntegerOverflow);
    EXPECT_EQ(trap(Op::i64_trunc_f64_u, I::f64(std::numeric_limits<double>::infinity())), TrapKind::IntegerOverflow);
    EXPECT_EQ(trap(Op::i64_trunc_f32_s, I::f32(std::nanf(""))), TrapKind::InvalidConversion);
}

TEST(memory, load_store_examples)
{
    ModuleBuilder b;
    b.add_memory(1);
    Instance inst(load_built(b));
    EXPECT_EQ(inst.memory().size(), 65536u);
    EXPECT_TRUE(inst.shadow().empty());

    inst.exec_store(Op::i32_store, tv(Value::i32(100)), tv(Value::i32(0x11223344), 0x2));
    EXPECT_EQ(inst.exec_load(Op::i32_load, tv(Value::i32(100))), tv(Value::i32(0x11223344), 0x2));
    EXPECT_EQ(inst.exec_load(Op::i32_load, tv(Value::i32(102))).taint.raw, 0x2u);
    EXPECT_EQ(inst.exec_load(Op::i32_load, tv(Value::i32(200))).taint.raw, 0u);

    inst.exec_store(Op::i32_store, tv(Value::i32(8)), tv(Value::i32(1), 0x4));
    for (uint32_t a = 8; a < 12; ++a)
        EXPECT_EQ(inst.shadow().at(a).raw, 0x4u);
    inst.exec_store(Op::i32_store, tv(Value::i32(8)), tv(Value::i32(1)));
    for (uint32_t a = 8; a < 12; ++a)
        EXPECT_EQ(inst.shadow().at(a).raw, 0u);

    const size_t before = inst.shadow().size();
    inst.exec_store(Op::i32_store8, tv(Value::i32(5)), tv(Value::i32(0xFF), 0x1));
    EXPECT_EQ(inst.shadow().size(), before + 1);
    EXPECT_EQ(inst.shadow().at(5).raw, 0x1u);
}

TEST(memory, address_taint_not_propagated)
{
    ModuleBuilder b;
    b.add_memory(1);
    Instance inst(load_built(b));
    EXPECT_EQ(inst.exec_load(Op::i32_load, tv(Value::i32(0), 0x80)).taint.raw, 0u);
    inst.exec_store(Op::i32_store, tv(Value::i32(0), 0x80), tv(Value::i32(5)));
    EXPECT_TRUE(inst.shadow().empty());
}

TEST(memory, partial_width_loads_extend)
{
    ModuleBuilder b;
    b.add_memory(1);
    Instance inst(load_built(b));
    inst.exec_store(Op::i64_store, tv(Value::i32(0)), tv(Value::i64(static_cast<int64_t>(0x80FF8001F0E0D0C0ull))));
    EXPECT_EQ(inst.exec_load(Op::i32_load8_s, tv(Value::i32(0))).value, Value::i32(-64));
    EXPECT_EQ(inst.exec_load(Op::i32_load8_u, tv(Value::i32(0))).value, Value::i32(0xC0));
    EXPECT_EQ(inst.exec_load(Op::i32_load16_s, tv(Value::i32(0))).value, Value::i32(static_cast<int16_t>(0xD0C0)));
    EXPECT_EQ(inst.exec_load(Op::i32_load16_u, tv(Value::i32(0))).value, Value::i32(0xD0C0));
    EXPECT_EQ(inst.exec_load(Op::i64_load8_s, tv(Value::i32(0))).value, Value::i64(-64));
    EXPECT_EQ(inst.exec_load(Op::i64_load16_u, tv(Value::i32(0))).value, Value::i64(0xD0C0));
    EXPECT_EQ(inst.exec_load(Op::i64_load32_s, tv(Value::i32(0))).value, Value::i64(static_cast<int32_t>(0xF0E0D0C0)));
    EXPECT_EQ(inst.exec_load(Op::i64_load32_u, tv(Value::i32(0))).value, Value::i64(0xF0E0D0C0ll));
    EXPECT_EQ(inst.exec_load(Op::i64_load, tv(Value::i32(0))).value, Value::i64(static_cast<int64_t>(0x80FF8001F0E0D0C0ull)));
    EXPECT_EQ(inst.exec_load(Op::i32_load, tv(Value::i32(0)), 4).value, Value::i32(static_cast<int32_t>(0x80FF8001)));
    inst.exec_store(Op::f32_store, tv(Value::i32(16)), tv(Value::f32(1.25f)));
    EXPECT_EQ(inst.exec_load(Op::f32_load, tv(Value::i32(16))).value, Value::f32(1.25f));
    inst.exec_store(Op::i64_store16, tv(Value::i32(32)), tv(Value::i64(0x12345678)));
    EXPECT_EQ(inst.exec_load(Op::i64_load, tv(Value::i32(32))).value, Value::i64(0x5678));
}

TEST(memory, out_of_bounds)
{
    ModuleBuilder b;
    b.add_memory(1);
    Instance inst(load_built(b));
    EXPECT_THROW((void)inst.exec_load(Op::i32_load, tv(Value::i32(65533))), Trap);
    EXPECT_NO_THROW((void)inst.exec_load(Op::i32_load, tv(Value::i32(65532))));
    EXPECT_THROW((void)inst.exec_load(Op::i32_load8_u, tv(Value::i32(-1))), Trap);
    EXPECT_THROW((void)inst.exec_load(Op::i32_load8_u, tv(Value::i32(0)), 0xFFFFFFFF), Trap);
    EXPECT_THROW(inst.exec_store(Op::i64_store, tv(Value::i32(65530)), tv(Value::i64(1), 1)), Trap);
    EXPECT_TRUE(inst.shadow().empty());
}

TEST(memory, grow)
{
    ModuleBuilder b;
    b.add_memory(1, 3);
    Instance inst(load_built(b));
    EXPECT_EQ(inst.memory_grow(0), 1);
    EXPECT_EQ(inst.memory_grow(3), -1);
    EXPECT_EQ(inst.memory_pages(), 1u);
    EXPECT_THROW((void)inst.exec_load(Op::i32_load, tv(Value::i32(70000))), Trap);
    EXPECT_EQ(inst.memory_grow(1), 1);
    inst.exec_store(Op::i32_store, tv(Value::i32(70000)), tv(Value::i32(9), 0x20));
    EXPECT_EQ(inst.exec_load(Op::i32_load, tv(Value::i32(70000))), tv(Value::i32(9), 0x20));
    EXPECT_EQ(inst.memory_grow(1), 2);
    EXPECT_EQ(inst.memory_grow(1), -1);
}

TEST(memory, grow_and_size_in_code)
{
    CodeBuilder body;
    body.local_get(0).memory_grow().op(Op::drop).memory_size().end();
    ModuleBuilder b;
    b.add_memory(1);
    b.export_function("f", b.add_function(i32_to_i32, {}, body));
    Instance inst(load_built(b));
    const auto r = inst.invoke("f", {Value::i32(2), TaintWord{0x1}});
    EXPECT_EQ(r.values.at(0), tv(Value::i32(3)));
}

TEST(memory, no_memory_grow_fails)
{
    Instance inst = empty_instance();
    EXPECT_FALSE(inst.has_memory());
    EXPECT_EQ(inst.memory_grow(0), -1);
}

TEST(memory, write_memory_labels_bytes)
{
    ModuleBuilder b;
    b.add_memory(1);
    Instance inst(load_built(b));
    const uint8_t data[] = {1, 2, 3};
    inst.write_memory(10, data, TaintLabel{0x8});
    EXPECT_EQ(inst.shadow().size(), 3u);
    EXPECT_EQ(inst.exec_load(Op::i32_load8_u, tv(Value::i32(12))), tv(Value::i32(3), 0x8));
    EXPECT_THROW(inst.write_memory(65535, data, TaintLabel{1}), Trap);
}

TEST(interpreter, locals_and_globals_carry_taint)
{
    ModuleBuilder b;
    const uint32_t g = b.add_global(ValType::I32, true, Value::i32(0));
    CodeBuilder body;
    body.local_get(0).local_set(1).local_get(1).global_set(g).global_get(g).local_tee(2).local_get(2).op(Op::i32_add).end();
    b.export_function("f", b.add_function(i32_to_i32, {ValType::I32, ValType::I32}, body));
    b.export_global("g", g);
    Instance inst(load_built(b));
    const auto r = inst.invoke("f", {Value::i32(21), TaintWord{0x40}});
    EXPECT_EQ(r.values.at(0), tv(Value::i32(42), 0x40));
    EXPECT_EQ(inst.exported_global("g"), tv(Value::i32(21), 0x40));
    EXPECT_THROW((void)inst.exported_global("f"), InvokeError);
}

TEST(interpreter, declared_locals_start_untainted)
{
    CodeBuilder body;
    body.local_get(1).end();
    Instance inst(single_function(i32_to_i32, body, {ValType::I32}));
    EXPECT_EQ(inst.invoke("f", {Value::i32(5), TaintWord{1}}).values.at(0), tv(Value::i32(0)));
}

TEST(interpreter, select_takes_chosen_operand_taint)
{
    const FunctionType sig{{ValType::I32, ValType::I32, ValType::I32}, {ValType::I32}};
    CodeBuilder body;
    body.local_get(0).local_get(1).local_get(2).op(Op::select).end();
    Instance inst(single_function(sig, body));
    auto r = inst.invoke("f", {Value::i32(10), Value::i32(20), Value::i32(1), TaintWord{0x1}, TaintWord{0x2}, TaintWord{0x4}});
    EXPECT_EQ(r.values.at(0), tv(Value::i32(10), 0x1));
    r = inst.invoke("f", {Value::i32(10), Value::i32(20), Value::i32(0), TaintWord{0x1}, TaintWord{0x2}, TaintWord{0x4}});
    EXPECT_EQ(r.values.at(0), tv(Value::i32(20), 0x2));
}

TEST(interpreter, comparison_firewall)
{
    CodeBuilder body;
    body.local_get(0).i32_const(10).op(Op::i32_lt_s).end();
    Instance inst(single_function(i32_to_i32, body));
    EXPECT_EQ(inst.invoke("f", {Value::i32(3), TaintWord{0xFFFF}}).values.at(0), tv(Value::i32(1)));
}

TEST(interpreter, control_flow)
{
    // sum = 0; for (i = n; i != 0; --i) sum += i; with an if/else and br_table on the way out.
    CodeBuilder body;
    body.block()
        .loop()
        .local_get(0)
        .op(Op::i32_eqz)
        .br_if(1)
        .local_get(1)
        .local_get(0)
        .op(Op::i32_add)
        .local_set(1)
        .local_get(0)
        .i32_const(1)
        .op(Op::i32_sub)
        .local_set(0)
        .br(0)
        .end()
        .end()
        .block(ValType::I32)
        .local_get(1)
        .local_get(1)
        .i32_const(2)
        .op(Op::i32_rem_u)
        .br_table({0}, 0)
        .end()
        .local_get(1)
        .i32_const(100)
        .op(Op::i32_gt_u)
        .if_(ValType::I32)
        .i32_const(1)
        .else_()
        .i32_const(2)
        .end()
        .op(Op::i32_add)
        .end();
    Instance inst(single_function(i32_to_i32, body, {ValType::I32}));
    auto r = inst.invoke("f", {Value::i32(10), TaintWord{0x1}});
    EXPECT_EQ(r.values.at(0), tv(Value::i32(57), 0x1));
    r = inst.invoke("f", {Value::i32(20)});
    EXPECT_EQ(r.values.at(0), tv(Value::i32(211)));
}

TEST(interpreter, br_table_selects_targets)
{
    CodeBuilder body;
    body.block()
        .block()
        .block()
        .local_get(0)
        .br_table({0, 1}, 2)
        .end()
        .i32_const(10)
        .op(Op::return_)
        .end()
        .i32_const(20)
        .op(Op::return_)
        .end()
        .i32_const(30)
        .end();
    Instance inst(single_function(i32_to_i32, body));
    EXPECT_EQ(inst.invoke("f", {Value::i32(0)}).values.at(0).value, Value::i32(10));
    EXPECT_EQ(inst.invoke("f", {Value::i32(1)}).values.at(0).value, Value::i32(20));
    EXPECT_EQ(inst.invoke("f", {Value::i32(2)}).values.at(0).value, Value::i32(30));
    EXPECT_EQ(inst.invoke("f", {Value::i32(-1)}).values.at(0).value, Value::i32(30));
}

TEST(interpreter, factorial_with_taint)
{
    Instance inst(load_fixture("factorial.wasm"));
    EXPECT_EQ(inst.invoke("fac", {Value::i32(5)}).values.at(0), tv(Value::i32(120)));
    EXPECT_EQ(inst.invoke("fac", {Value::i32(5), TaintWord{0x1}}).values.at(0), tv(Value::i32(120), 0x1));
    EXPECT_TRUE(inst.shadow().empty());
}

TEST(interpreter, untainted_world_stays_untainted)
{
    Instance fac(load_fixture("factorial.wasm"));
    Instance hash(load_fixture("hash.wasm"));
    Instance mem(load_fixture("memcopy.wasm"));
    for (int32_t i = 0; i < 50; ++i)
    {
        EXPECT_EQ(fac.invoke("fac", {Value::i32(i)}).values.at(0).taint.raw, 0u);
        EXPECT_EQ(hash.invoke("hash", {Value::i32(i * 7919)}).values.at(0).taint.raw, 0u);
    }
    (void)mem.invoke("rudewrite", {Value::i32(4096), Value::i32(16)});
    (void)mem.invoke("copy_words", {Value::i32(8192), Value::i32(4096), Value::i32(16)});
    EXPECT_EQ(mem.invoke("sum_words", {Value::i32(8192), Value::i32(16)}).values.at(0), tv(Value::i32(120)));
    EXPECT_TRUE(fac.shadow().empty());
    EXPECT_TRUE(hash.shadow().empty());
    EXPECT_TRUE(mem.shadow().empty());
}

TEST(interpreter, memcopy_moves_taint_bytewise)
{
    Instance mem(load_fixture("memcopy.wasm"));
    std::vector<uint8_t> bytes(32, 1);
    mem.write_memory(4096, bytes, TaintLabel{0x2});
    (void)mem.invoke("copy_words", {Value::i32(8192), Value::i32(4096), Value::i32(8)});
    for (uint32_t a = 8192; a < 8192 + 32; ++a)
        ASSERT_EQ(mem.shadow().at(a).raw, 0x2u) << a;
    const auto r = mem.invoke("sum_words", {Value::i32(8192), Value::i32(8)});
    EXPECT_EQ(r.values.at(0), tv(Value::i32(8 * 0x01010101), 0x2));
}

TEST(interpreter, traps_report_offset_and_keep_memory)
{
    ModuleBuilder b;
    b.add_memory(1);
    CodeBuilder body;
    body.i32_const(0).local_get(0).mem(Op::i32_store).op(Op::unreachable).end();
    b.export_function("f", b.add_function({{ValType::I32}, {}}, {}, body));
    Instance inst(load_built(b));
    const auto r = inst.invoke("f", {Value::i32(7), TaintWord{0x3}});
    const Trapped& t = trapped(r);
    EXPECT_EQ(t.kind, TrapKind::Unreachable);
    EXPECT_GT(t.offset, 0u);
    EXPECT_EQ(inst.module().bytes.at(t.offset), 0x00);
    EXPECT_TRUE(r.values.empty());
    EXPECT_EQ(inst.shadow().at(0).raw, 0x3u);
    EXPECT_EQ(inst.memory()[0], 7);
    // The instance stays usable after a trap.
    EXPECT_TRUE(std::holds_alternative<Trapped>(inst.invoke("f", {Value::i32(1)}).status));
}

TEST(interpreter, divide_by_zero_trap)
{
    CodeBuilder body;
    body.i32_const(1).local_get(0).op(Op::i32_div_u).end();
    Instance inst(single_function(i32_to_i32, body));
    EXPECT_EQ(trapped(inst.invoke("f", {Value::i32(0)})).kind, TrapKind::IntegerDivideByZero);
    EXPECT_EQ(inst.invoke("f", {Value::i32(1)}).values.at(0).value, Value::i32(1));
}

TEST(interpreter, stack_exhaustion)
{
    ModuleBuilder b;
    CodeBuilder body;
    body.local_get(0).call(0).end();
    b.export_function("f", b.add_function(i32_to_i32, {}, body));
    Instance inst(load_built(b));
    EXPECT_EQ(trapped(inst.invoke("f", {Value::i32(1)})).kind, TrapKind::StackExhausted);

    InstanceLimits small;
    small.stack_slots = 64;
    Instance tiny(load_fixture("factorial.wasm"), {}, {}, {}, nullptr, small);
    EXPECT_EQ(trapped(tiny.invoke("fac", {Value::i32(1000)})).kind, TrapKind::StackExhausted);
}

TEST(interpreter, host_functions)
{
    ModuleBuilder b;
    const uint32_t src = b.import_function("env", "source", {{}, {ValType::I32}});
    CodeBuilder body;
    body.call(src).local_get(0).op(Op::i32_mul).end();
    b.export_function("f", b.add_function(i32_to_i32, {}, body));
    b.export_function("source", src);

    HostTable host;
    host.add("env", "source", {{{}, {ValType::I32}}, [](std::span<const TaintedValue>) {
                                   return std::vector<TaintedValue>{tv(Value::i32(6), 0x100)};
                               }});
    Instance inst(load_built(b), {}, {}, host);
    EXPECT_EQ(inst.invoke("f", {Value::i32(7), TaintWord{0x1}}).values.at(0), tv(Value::i32(42), 0x101));
    EXPECT_EQ(inst.invoke("source", {}).values.at(0), tv(Value::i32(6), 0x100));
}

TEST(interpreter, host_function_errors_trap)
{
    ModuleBuilder b;
    const uint32_t src = b.import_function("env", "source", {{}, {ValType::I32}});
    CodeBuilder body;
    body.call(src).end();
    b.export_function("f", b.add_function({{}, {ValType::I32}}, {}, body));
    const auto module = load_built(b);

    HostTable wrong_type;
    wrong_type.add("env", "source", {{{}, {ValType::I32}}, [](std::span<const TaintedValue>) {
                                         return std::vector<TaintedValue>{tv(Value::i64(6))};
                                     }});
    Instance a(module, {}, {}, wrong_type);
    EXPECT_EQ(trapped(a.invoke("f", {})).kind, TrapKind::HostError);

    HostTable throws;
    throws.add("env", "source", {{{}, {ValType::I32}}, [](std::span<const TaintedValue>) -> std::vector<TaintedValue> {
                                     throw std::runtime_error("sensor offline");
                                 }});
    Instance c(module, {}, {}, throws);
    const Trapped& t = trapped(c.invoke("f", {}));
    EXPECT_EQ(t.kind, TrapKind::HostError);
    EXPECT_NE(t.message.find("sensor offline"), std::string::npos);
}

TEST(interpreter, reentrant_invoke_rejected)
{
    ModuleBuilder b;
    const uint32_t cb = b.import_function("env", "cb", {{}, {}});
    CodeBuilder body;
    body.call(cb).end();
    b.export_function("f", b.add_function({}, {}, body));
    Instance* self = nullptr;
    HostTable host;
    host.add("env", "cb", {{{}, {}}, [&self](std::span<const TaintedValue>) {
                               (void)self->invoke("f", {});
                               return std::vector<TaintedValue>{};
                           }});
    Instance inst(load_built(b), {}, {}, host);
    self = &inst;
    EXPECT_EQ(trapped(inst.invoke("f", {})).kind, TrapKind::HostError);
    // The guard is released afterwards.
    EXPECT_EQ(trapped(inst.invoke("f", {})).kind, TrapKind::HostError);
}

TEST(instantiate, errors)
{
    ModuleBuilder b;
    b.import_function("env", "missing", {{}, {}});
    EXPECT_THROW(Instance(load_built(b)), InstantiationError);

    HostTable wrong;
    wrong.add("env", "missing", {{{ValType::I32}, {}}, [](std::span<const TaintedValue>) {
                                     return std::vector<TaintedValue>{};
                                 }});
    EXPECT_THROW(Instance(load_built(b), {}, {}, wrong), InstantiationError);

    ModuleBuilder d;
    d.add_memory(1);
    d.add_data(65535, {1, 2});
    EXPECT_THROW(Instance(load_built(d)), InstantiationError);

    auto unvalidated = std::make_shared<const Module>(decode_module(ModuleBuilder{}.build()));
    EXPECT_THROW(Instance{unvalidated}, InstantiationError);
}

TEST(instantiate, data_segments_and_start)
{
    ModuleBuilder b;
    b.add_memory(1);
    b.add_data(16, {0xAA, 0xBB});
    const uint32_t g = b.add_global(ValType::I32, true, Value::i32(0));
    CodeBuilder start;
    start.i32_const(99).global_set(g).end();
    b.set_start(b.add_function({}, {}, start));
    b.export_global("g", g);
    Instance inst(load_built(b));
    EXPECT_EQ(inst.memory()[16], 0xAA);
    EXPECT_EQ(inst.memory()[17], 0xBB);
    EXPECT_TRUE(inst.shadow().empty());
    EXPECT_EQ(inst.exported_global("g"), tv(Value::i32(99)));
}

TEST(instantiate, start_trap_is_instantiation_error)
{
    ModuleBuilder b;
    CodeBuilder start;
    start.op(Op::unreachable).end();
    b.set_start(b.add_function({}, {}, start));
    EXPECT_THROW(Instance(load_built(b)), InstantiationError);
}

TEST(lifecycle, teardown_clears_shadow_once)
{
    ModuleBuilder b;
    b.add_memory(1);
    const auto module = load_built(b);
    {
        Instance inst(module);
        inst.exec_store(Op::i64_store, tv(Value::i32(0)), tv(Value::i64(1), 0x9));
        EXPECT_EQ(inst.shadow().size(), 8u);
        inst.teardown();
        EXPECT_TRUE(inst.torn_down());
        EXPECT_TRUE(inst.shadow().empty());
        EXPECT_EQ(inst.shadow().clear_count(), 1u);
        inst.teardown();
        EXPECT_EQ(inst.shadow().clear_count(), 1u);
        EXPECT_THROW((void)inst.invoke("x", {}), InvokeError);
    }
    Instance fresh(module);
    EXPECT_TRUE(fresh.shadow().empty());
}

TEST(lifecycle, instances_are_independent)
{
    ModuleBuilder b;
    b.add_memory(1);
    const auto module = load_built(b);
    Instance a(module), c(module);
    a.exec_store(Op::i32_store, tv(Value::i32(0)), tv(Value::i32(1), 0x1));
    EXPECT_EQ(a.shadow().size(), 4u);
    EXPECT_TRUE(c.shadow().empty());
    Instance moved = std::move(a);
    EXPECT_EQ(moved.shadow().size(), 4u);
}

TEST(probabilistic, certain_labels_behave_like_basic)
{
    PropagationConfig cfg;
    cfg.mode = PropagationMode::Probabilistic;
    Instance inst(load_fixture("hash.wasm"), cfg);
    const TaintLabel label = with_numerator(0x1, 255, cfg);
    for (int i = 0; i < 20; ++i)
    {
        const auto r = inst.invoke("hash", {Value::i32(i), TaintWord{label.raw}});
        EXPECT_EQ(r.values.at(0).taint, label);
        EXPECT_EQ(r.values.at(0).value.as_u32(), oracle::hash(static_cast<uint32_t>(i)));
    }
}

TEST(probabilistic, same_seed_same_results)
{
    PropagationConfig cfg;
    cfg.mode = PropagationMode::Probabilistic;
    cfg.rng_seed = 77;
    const auto chain = load_fixture("hash.wasm");
    auto run = [&] {
        Instance inst(chain, cfg);
        std::vector<uint32_t> out;
        const TaintLabel label = with_numerator(0x1, 254, cfg);
        for (int i = 0; i < 200; ++i)
            out.push_back(inst.invoke("hash", {Value::i32(i), TaintWord{label.raw}}).values.at(0).taint.raw);
        return out;
    };
    EXPECT_EQ(run(), run());
}
