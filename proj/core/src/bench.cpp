// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "taintwasm/bench.hpp"

#include "taintwasm/builder.hpp"
#include "taintwasm/instance.hpp"
#include "taintwasm/validator.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <random>
#include <thread>

namespace taintwasm
{
namespace
{
Value sample_arg(ValType t, uint32_t i)
{
    switch (t)
    {
    case ValType::I32:
        return Value::i32(static_cast<int32_t>(i));
    case ValType::I64:
        return Value::i64(i);
    case ValType::F32:
        return Value::f32(static_cast<float>(i) + 0.5f);
    case ValType::F64:
        return Value::f64(static_cast<double>(i) + 0.5);
    }
    return {};
}

double time_batch(Instance& inst, std::string_view name, std::span<const HostArg> args, uint32_t n)
{
    const auto start = std::chrono::steady_clock::now();
    for (uint32_t i = 0; i < n; ++i)
        (void)inst.invoke(name, args);
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::nano>(stop - start).count();
}

class BinopCounter final : public TraceSink
{
public:
    void write(const TraceEvent& event) override
    {
        if (event.kind != EventKind::OpExecuted)
            return;
        for (unsigned op = 0; op < 256; ++op)
        {
            const OpInfo& info = op_info(static_cast<uint8_t>(op));
            if (info.cls == OpClass::Binary && info.name == event.name)
            {
                ++count;
                return;
            }
        }
    }

    uint64_t count = 0;
};

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

std::vector<OverheadReport> bench_overhead(
    std::shared_ptr<const Module> module, std::span<const ValType> types, const OverheadOptions& options)
{
    std::vector<OverheadReport> reports;
    Instance inst(module);
    for (ValType t : types)
    {
        OverheadReport r;
        r.type = t;
        r.export_name = "noop_" + std::string(to_string(t));
        r.args = options.args;

        std::vector<HostArg> plain;
        for (uint32_t i = 0; i < options.args; ++i)
            plain.emplace_back(sample_arg(t, i));
        std::vector<HostArg> tainted = plain;
        for (uint32_t i = 0; i < options.args; ++i)
            tainted.emplace_back(TaintWord{options.taint});

        // Warm-up also surfaces signature mismatches before timing starts.
        (void)inst.invoke(r.export_name, plain);
        (void)inst.invoke(r.export_name, tainted);

        double a = 0, b = 0, c = 0;
        for (uint32_t batch = 0; batch < options.batches; ++batch)
        {
            a += time_batch(inst, r.export_name, plain, options.iterations);
            b += time_batch(inst, r.export_name, tainted, options.iterations);
            c += time_batch(inst, r.export_name, plain, options.iterations);
        }
        r.calls = uint64_t{options.iterations} * options.batches;
        const auto calls = static_cast<double>(r.calls);
        r.untainted_ns = a / calls;
        r.tainted_ns = b / calls;
        r.ratio = b / a;
        r.self_ratio = c / a;
        reports.push_back(std::move(r));
    }
    return reports;
}

void write_overhead_csv(std::ostream& out, std::span<const OverheadReport> reports)
{
    out << "type,export,args,calls,untainted_ns,tainted_ns,ratio,self_ratio\n";
    for (const auto& r : reports)
        out << to_string(r.type) << ',' << r.export_name << ',' << r.args << ',' << r.calls << ','
            << format_double(r.untainted_ns) << ',' << format_double(r.tainted_ns) << ','
            << format_double(r.ratio) << ',' << format_double(r.self_ratio) << '\n';
}

LifetimeReport bench_lifetime(std::shared_ptr<const Module> module, const LifetimeOptions& options)
{
    PropagationConfig base;
    base.mode = PropagationMode::Probabilistic;
    base.probability_bits = options.probability_bits;
    base.check();

    const auto it = module->exports.find(options.export_name);
    if (it == module->exports.end() || it->second.kind != ExternalKind::Function)
        throw InvokeError("no exported function named '" + options.export_name + "'");
    const FunctionType& type = module->function_type(it->second.index);
    if (type.params != std::vector{ValType::I32} || type.results != std::vector{ValType::I32})
        throw InvokeError("lifetime export must have type " + to_string(FunctionType{{ValType::I32}, {ValType::I32}}));

    std::vector<uint32_t> grid = options.numerators;
    if (grid.empty())
    {
        const uint32_t stride = std::max<uint32_t>(options.stride, 1);
        for (uint32_t m = 0; m <= base.max_numerator(); m += stride)
            grid.push_back(m);
        if (grid.back() != base.max_numerator())
            grid.push_back(base.max_numerator());
    }
    for (uint32_t m : grid)
        if (m > base.max_numerator())
            throw TaintEncodingError("numerator " + std::to_string(m) + " exceeds 2^n-1");

    LifetimeReport report(grid.size());
    auto run_point = [&](size_t index) {
        PropagationConfig cfg = base;
        cfg.rng_seed = options.seed + index;
        Instance inst(module, cfg);
        std::seed_seq inputs_seed{options.seed, static_cast<uint64_t>(index), uint64_t{0x1F}};
        std::mt19937 inputs(inputs_seed);

        const TaintLabel label = with_numerator(0x1, grid[index], cfg);
        LifetimePoint& pt = report[index];
        pt.m = grid[index];
        pt.p = static_cast<double>(grid[index]) / cfg.max_numerator();
        pt.iterations = options.iterations;
        for (uint64_t i = 0; i < options.iterations; ++i)
        {
            const HostArg args[] = {Value::i32(static_cast<int32_t>(inputs())), TaintWord{label.raw}};
            const InvokeResult r = inst.invoke(options.export_name, args);
            if (!std::holds_alternative<Completed>(r.status))
                throw InvokeError("lifetime run did not complete: " + describe(r.status));
            if (flags_of(r.values.at(0).taint, cfg) != 0)
                ++pt.tainted;
        }
        pt.fraction = options.iterations == 0 ?
                          0.0 :
                          static_cast<double>(pt.tainted) / static_cast<double>(options.iterations);
    };

    const unsigned threads = std::clamp<unsigned>(options.threads, 1, static_cast<unsigned>(grid.size()));
    if (threads == 1)
    {
        for (size_t i = 0; i < grid.size(); ++i)
            run_point(i);
        return report;
    }

    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < threads; ++w)
        workers.emplace_back([&, w] {
            try
            {
                for (size_t i = w; i < grid.size(); i += threads)
                    run_point(i);
            }
            catch (...)
            {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : workers)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return report;
}

void write_lifetime_csv(std::ostream& out, const LifetimeReport& report)
{
    out << "m,p,iterations,tainted,fraction\n";
    for (const auto& pt : report)
        out << pt.m << ',' << format_double(pt.p) << ',' << pt.iterations << ',' << pt.tainted << ','
            << format_double(pt.fraction) << '\n';
}

std::shared_ptr<const Module> synthetic_chain_module(uint32_t length)
{
    static constexpr Op ops[] = {Op::i32_add, Op::i32_mul, Op::i32_xor};
    CodeBuilder code;
    code.local_get(0);
    uint32_t c = 0x9E3779B9u;
    for (uint32_t i = 0; i < length; ++i)
    {
        c = c * 1664525u + 1013904223u;
        code.i32_const(static_cast<int32_t>(c | 1u)).op(ops[i % 3]);
    }
    code.end();

    ModuleBuilder mb;
    const FunctionType sig{{ValType::I32}, {ValType::I32}};
    mb.export_function("chain", mb.add_function(sig, {}, code));
    const auto bytes = mb.build();
    return std::make_shared<const Module>(load_module(bytes));
}

uint64_t count_dynamic_binops(
    std::shared_ptr<const Module> module, std::string_view export_name, std::span<const Value> args)
{
    BinopCounter counter;
    TaintPolicy policy;
    policy.log_level = LogLevel::Full;
    Instance inst(std::move(module), {}, policy, {}, &counter);
    std::vector<HostArg> host_args(args.begin(), args.end());
    const InvokeResult r = inst.invoke(export_name, host_args);
    if (!std::holds_alternative<Completed>(r.status))
        throw InvokeError("binop count run did not complete: " + describe(r.status));
    return counter.count;
}

}  // namespace taintwasm
