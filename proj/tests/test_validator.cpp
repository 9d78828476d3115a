// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "support/fixtures.hpp"
#include "taintwasm/builder.hpp"
#include "taintwasm/errors.hpp"
#include "taintwasm/validator.hpp"

#include <gtest/gtest.h>

using namespace taintwasm;
using taintwasm::testing::fixture_path;

namespace
{
const FunctionType i32_to_i32{{ValType::I32}, {ValType::I32}};
const FunctionType void_to_i32{{}, {ValType::I32}};

std::vector<uint8_t> one_function(const FunctionType& sig, const CodeBuilder& body, uint32_t memory_pages = 0)
{
    ModuleBuilder b;
    if (memory_pages)
        b.add_memory(memory_pages);
    b.export_function("f", b.add_function(sig, {}, body));
    return b.build();
}

ValidationError validation_error(const std::vector<uint8_t>& bytes)
{
    try
    {
        (void)load_module(bytes);
    }
    catch (const ValidationError& e)
    {
        return e;
    }
    ADD_FAILURE() << "module validated";
    return ValidationError("none");
}
}  // namespace

TEST(validator, add_and_const_pass)
{
    CodeBuilder body;
    body.local_get(0).i32_const(1).op(Op::i32_add).end();
    const Module m = load_module(one_function(i32_to_i32, body));
    EXPECT_TRUE(m.validated);
    ASSERT_EQ(m.compiled.size(), 1u);
    EXPECT_EQ(m.compiled[0].num_params, 1u);
    EXPECT_EQ(m.compiled[0].code.back().op, Op::return_);
}

TEST(validator, call_indirect_unsupported)
{
    CodeBuilder body;
    body.i32_const(0).raw({0x11, 0x00, 0x00}).end();
    const auto e = validation_error(one_function(void_to_i32, body));
    EXPECT_NE(std::string(e.what()).find("unsupported opcode 0x11"), std::string::npos) << e.what();
    EXPECT_EQ(e.opcode(), 0x11);
    EXPECT_EQ(e.function_index(), 0u);
}

TEST(validator, unsupported_opcode_reports_function_index)
{
    ModuleBuilder b;
    CodeBuilder ok;
    ok.i32_const(1).end();
    CodeBuilder bad;
    bad.raw({0xFC, 0x00}).end();
    b.add_function(void_to_i32, {}, ok);
    b.export_function("bad", b.add_function({}, {}, bad));
    const auto e = validation_error(b.build());
    EXPECT_EQ(e.function_index(), 1u);
    EXPECT_EQ(e.opcode(), 0xFC);
}

TEST(validator, type_mismatch)
{
    CodeBuilder body;
    body.i64_const(1).i32_const(2).op(Op::i32_add).end();
    const auto e = validation_error(one_function(void_to_i32, body));
    EXPECT_NE(std::string(e.what()).find("type mismatch"), std::string::npos);
}

TEST(validator, stack_underflow)
{
    CodeBuilder body;
    body.i32_const(2).op(Op::i32_add).end();
    const auto e = validation_error(one_function(void_to_i32, body));
    EXPECT_NE(std::string(e.what()).find("underflow"), std::string::npos);
}

TEST(validator, missing_result)
{
    CodeBuilder body;
    body.end();
    EXPECT_THROW((void)load_module(one_function(void_to_i32, body)), ValidationError);
}

TEST(validator, extra_values_rejected)
{
    CodeBuilder body;
    body.i32_const(1).i32_const(2).end();
    EXPECT_THROW((void)load_module(one_function(void_to_i32, body)), ValidationError);
}

TEST(validator, memory_op_without_memory)
{
    CodeBuilder body;
    body.i32_const(0).mem(Op::i32_load).end();
    EXPECT_THROW((void)load_module(one_function(void_to_i32, body)), ValidationError);
    EXPECT_NO_THROW((void)load_module(one_function(void_to_i32, body, 1)));
}

TEST(validator, alignment_limit)
{
    CodeBuilder body;
    body.i32_const(0).mem(Op::i32_load, 0, 3).end();
    EXPECT_THROW((void)load_module(one_function(void_to_i32, body, 1)), ValidationError);
}

TEST(validator, unreachable_code_is_polymorphic)
{
    CodeBuilder body;
    body.op(Op::unreachable).op(Op::i32_add).end();
    EXPECT_NO_THROW((void)load_module(one_function(void_to_i32, body)));
}

TEST(validator, branch_depth_out_of_range)
{
    CodeBuilder body;
    body.block().br(3).end().i32_const(0).end();
    EXPECT_THROW((void)load_module(one_function(void_to_i32, body)), ValidationError);
}

TEST(validator, if_with_result_needs_else)
{
    CodeBuilder body;
    body.i32_const(1).if_(ValType::I32).i32_const(2).end().end();
    EXPECT_THROW((void)load_module(one_function(void_to_i32, body)), ValidationError);
}

TEST(validator, immutable_global_set)
{
    ModuleBuilder b;
    const uint32_t g = b.add_global(ValType::I32, false, Value::i32(1));
    CodeBuilder body;
    body.i32_const(2).global_set(g).end();
    b.export_function("f", b.add_function({}, {}, body));
    EXPECT_THROW((void)load_module(b.build()), ValidationError);
}

TEST(validator, memory_limits)
{
    ModuleBuilder b;
    b.add_memory(4, 2);
    EXPECT_THROW((void)load_module(b.build()), ValidationError);
}

TEST(validator, fixtures_pass)
{
    for (const char* name : {"factorial.wasm", "hash.wasm", "memcopy.wasm", "noop100.wasm"})
    {
        const Module m = load_module(read_file(fixture_path(name)));
        EXPECT_TRUE(m.validated) << name;
        EXPECT_EQ(m.compiled.size(), m.functions.size()) << name;
    }
}

TEST(validator, function_index_in_messages)
{
    CodeBuilder body;
    body.f32_const(1.0f).end();
    const auto e = validation_error(one_function(void_to_i32, body));
    EXPECT_NE(std::string(e.what()).find("function 0"), std::string::npos);
}
