// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "taintwasm/bench.hpp"
#include "taintwasm/decoder.hpp"
#include "taintwasm/instance.hpp"
#include "taintwasm/validator.hpp"

#include <benchmark/benchmark.h>

#include <string>

using namespace taintwasm;

namespace
{
std::shared_ptr<const Module> fixture(const std::string& name)
{
    return std::make_shared<const Module>(load_module(read_file(std::string(TAINTWASM_FIXTURE_DIR) + "/" + name)));
}

Value arg_of(ValType t, int i)
{
    switch (t)
    {
    case ValType::I32:
        return Value::i32(i);
    case ValType::I64:
        return Value::i64(i);
    case ValType::F32:
        return Value::f32(static_cast<float>(i));
    case ValType::F64:
        return Value::f64(i);
    }
    return {};
}

// 100-argument no-op call, with and without a taint word per argument.
void invoke_noop100(benchmark::State& state)
{
    const auto type = static_cast<ValType>(state.range(0));
    const bool tainted = state.range(1) != 0;
    Instance inst(fixture("noop100.wasm"));
    const std::string name = "noop_" + std::string(to_string(type));
    std::vector<HostArg> args;
    for (int i = 0; i < 100; ++i)
        args.emplace_back(arg_of(type, i));
    if (tainted)
        for (int i = 0; i < 100; ++i)
            args.emplace_back(TaintWord{0x1});
    for (auto _ : state)
        benchmark::DoNotOptimize(inst.invoke(name, args));
    state.SetLabel(std::string(to_string(type)) + (tainted ? " tainted" : " untainted"));
}
BENCHMARK(invoke_noop100)
    ->ArgsProduct({{static_cast<int64_t>(ValType::I32), static_cast<int64_t>(ValType::I64),
                       static_cast<int64_t>(ValType::F32), static_cast<int64_t>(ValType::F64)},
        {0, 1}});

void kernel(benchmark::State& state, const char* file, const char* name, std::vector<Value> values,
    PropagationMode mode)
{
    PropagationConfig cfg;
    cfg.mode = mode;
    Instance inst(fixture(file), cfg);
    const bool tainted = state.range(0) != 0;
    std::vector<HostArg> args(values.begin(), values.end());
    if (tainted)
    {
        const uint32_t label = mode == PropagationMode::Probabilistic ? with_numerator(0x1, 204, cfg).raw : 0x1;
        for (size_t i = 0; i < values.size(); ++i)
            args.emplace_back(TaintWord{label});
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(inst.invoke(name, args));
}

void factorial(benchmark::State& state)
{
    kernel(state, "factorial.wasm", "fac", {Value::i32(12)}, PropagationMode::Basic);
}
BENCHMARK(factorial)->Arg(0)->Arg(1);

void hash(benchmark::State& state)
{
    kernel(state, "hash.wasm", "hash", {Value::i32(0x1234567)}, PropagationMode::Basic);
}
BENCHMARK(hash)->Arg(0)->Arg(1);

void hash_probabilistic(benchmark::State& state)
{
    kernel(state, "hash.wasm", "hash", {Value::i32(0x1234567)}, PropagationMode::Probabilistic);
}
BENCHMARK(hash_probabilistic)->Arg(0)->Arg(1);

void memcopy(benchmark::State& state)
{
    kernel(state, "memcopy.wasm", "copy_words", {Value::i32(1024), Value::i32(8192), Value::i32(256)},
        PropagationMode::Basic);
}
BENCHMARK(memcopy)->Arg(0)->Arg(1);

void propagate_binop_basic(benchmark::State& state)
{
    PropagationConfig cfg;
    RandomSource rng(1);
    TaintLabel a{0x1}, b{0x4};
    for (auto _ : state)
    {
        a = propagate_binop(a, b, false, cfg, rng);
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(propagate_binop_basic);

void propagate_binop_probabilistic(benchmark::State& state)
{
    PropagationConfig cfg;
    cfg.mode = PropagationMode::Probabilistic;
    RandomSource rng(1);
    const TaintLabel a = with_numerator(0x1, 204, cfg);
    const TaintLabel b = with_numerator(0x4, 128, cfg);
    for (auto _ : state)
        benchmark::DoNotOptimize(propagate_binop(a, b, false, cfg, rng));
}
BENCHMARK(propagate_binop_probabilistic);

}  // namespace

BENCHMARK_MAIN();
