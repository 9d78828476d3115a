// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include "taintwasm/bench.hpp"
#include "taintwasm/decoder.hpp"
#include "taintwasm/instance.hpp"
#include "taintwasm/validator.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>

namespace taintwasm::cli
{
namespace
{
class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::optional<uint64_t> parse_unsigned(std::string_view s)
{
    int base = 10;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X'))
    {
        s.remove_prefix(2);
        base = 16;
    }
    uint64_t v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
    if (ec != std::errc{} || end != s.data() + s.size() || s.empty())
        return std::nullopt;
    return v;
}

uint32_t parse_word(std::string_view s, std::string_view what)
{
    const auto v = parse_unsigned(s);
    if (!v || *v > std::numeric_limits<uint32_t>::max())
        throw UsageError("invalid " + std::string(what) + " '" + std::string(s) + "'");
    return static_cast<uint32_t>(*v);
}

Value parse_integer(std::string_view text, ValType type)
{
    std::string_view s = text;
    const bool negative = !s.empty() && s.front() == '-';
    if (negative)
        s.remove_prefix(1);
    const auto mag = parse_unsigned(s);
    const bool wide = type == ValType::I64;
    const uint64_t unsigned_max = wide ? std::numeric_limits<uint64_t>::max() : 0xFFFFFFFFull;
    const uint64_t negative_max = wide ? uint64_t{1} << 63 : uint64_t{1} << 31;
    if (!mag || (negative ? *mag > negative_max : *mag > unsigned_max))
        throw UsageError("invalid " + std::string(to_string(type)) + " literal '" + std::string(text) + "'");
    const uint64_t bits = negative ? uint64_t{0} - *mag : *mag;
    return wide ? Value{type, bits} : Value{type, static_cast<uint32_t>(bits)};
}

Value parse_float(std::string_view text, ValType type)
{
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (type == ValType::F32)
    {
        float v = 0;
        const auto [end, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || end != last)
            throw UsageError("invalid f32 literal '" + std::string(text) + "'");
        return Value::f32(v);
    }
    double v = 0;
    const auto [end, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || end != last)
        throw UsageError("invalid f64 literal '" + std::string(text) + "'");
    return Value::f64(v);
}

/// Plain literals take the parameter's type; `i64:7` style prefixes must
/// agree with it.
Value parse_arg(std::string_view text, ValType expected)
{
    if (const auto colon = text.find(':'); colon != std::string_view::npos)
    {
        const std::string_view prefix = text.substr(0, colon);
        if (prefix != to_string(expected))
            throw UsageError("argument '" + std::string(text) + "' does not match parameter type " +
                             std::string(to_string(expected)));
        text.remove_prefix(colon + 1);
    }
    if (expected == ValType::I32 || expected == ValType::I64)
        return parse_integer(text, expected);
    return parse_float(text, expected);
}

std::shared_ptr<const Module> load(const std::string& path)
{
    return std::make_shared<const Module>(load_module(read_file(path)));
}

struct RunOptions
{
    std::string module;
    std::string export_name;
    std::vector<std::string> args;
    std::vector<std::string> taints;
    std::string mode = "basic";
    unsigned prob_bits = PropagationConfig::default_probability_bits;
    uint64_t seed = 0;
    std::string policy = "0";
    std::string log = "returns";
    std::string trace;
    bool dump_shadow = false;
};

int cmd_run(const RunOptions& o, std::ostream& out, std::ostream& err)
{
    PropagationConfig cfg;
    cfg.mode = o.mode == "prob" ? PropagationMode::Probabilistic : PropagationMode::Basic;
    cfg.probability_bits = o.prob_bits;
    cfg.rng_seed = o.seed;

    TaintPolicy policy;
    policy.terminate_mask = parse_word(o.policy, "policy mask");
    policy.log_level = o.log == "full" ? LogLevel::Full : LogLevel::ReturnsOnly;

    std::vector<uint32_t> taints;
    for (const auto& t : o.taints)
        taints.push_back(parse_word(t, "taint word"));

    const auto module = load(o.module);

    std::ofstream trace_file;
    std::ostream* trace_stream = &err;
    if (o.trace == "-")
        trace_stream = &out;
    else if (!o.trace.empty())
    {
        trace_file.open(o.trace, std::ios::binary | std::ios::trunc);
        if (!trace_file)
            throw UsageError("cannot open trace file '" + o.trace + "'");
        trace_stream = &trace_file;
    }
    JsonLinesSink sink(*trace_stream);

    Instance inst(module, cfg, policy, {}, &sink);

    const auto it = module->exports.find(o.export_name);
    if (it == module->exports.end() || it->second.kind != ExternalKind::Function)
        throw UsageError("no exported function named '" + o.export_name + "'");
    const FunctionType& type = module->function_type(it->second.index);
    if (o.args.size() != type.params.size())
        throw UsageError("'" + o.export_name + "' has type " + to_string(type) + " but " +
                         std::to_string(o.args.size()) + " arguments were given");

    std::vector<HostArg> args;
    for (size_t i = 0; i < o.args.size(); ++i)
        args.emplace_back(parse_arg(o.args[i], type.params[i]));
    for (uint32_t t : taints)
        args.emplace_back(TaintWord{t});

    const InvokeResult r = inst.invoke(o.export_name, args);
    for (const auto& v : r.values)
        out << to_string(v.value) << " taint=" << format_taint(v.taint) << '\n';
    if (o.dump_shadow)
        inst.dump_shadow();
    trace_stream->flush();
    if (!std::holds_alternative<Completed>(r.status))
        err << "taintwasm: " << describe(r.status) << '\n';
    return exit_code(r.status);
}

std::vector<ValType> parse_types(const std::vector<std::string>& names)
{
    std::vector<ValType> types;
    for (const auto& n : names)
    {
        if (n == "i32")
            types.push_back(ValType::I32);
        else if (n == "i64")
            types.push_back(ValType::I64);
        else if (n == "f32")
            types.push_back(ValType::F32);
        else if (n == "f64")
            types.push_back(ValType::F64);
        else
            throw UsageError("unknown value type '" + n + "'");
    }
    return types;
}

void write_to(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& fn)
{
    if (path.empty() || path == "-")
    {
        fn(fallback);
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file)
        throw UsageError("cannot open output file '" + path + "'");
    fn(file);
    if (!file.flush())
        throw std::runtime_error("failed to write '" + path + "'");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Taint-tracking WebAssembly interpreter", "taintwasm"};
    app.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Invoke an exported function with optional taint labels");
    run_cmd->add_option("module", run.module, "WebAssembly binary")->required();
    run_cmd->add_option("export", run.export_name, "Exported function name")->required();
    run_cmd->add_option("args", run.args, "Arguments, typed by the function signature (e.g. 5, -1, 0x10, 1.5, i64:7)");
    run_cmd->add_option("--taints", run.taints, "Taint words labelling the arguments in order; extras are ignored");
    run_cmd->add_option("--mode", run.mode, "Propagation mode")
        ->check(CLI::IsMember({"basic", "prob"}))
        ->capture_default_str();
    run_cmd->add_option("--prob-bits", run.prob_bits, "Probability field width n")
        ->check(CLI::Range(1u, 16u))
        ->capture_default_str();
    run_cmd->add_option("--seed", run.seed, "Random seed for probabilistic propagation")->capture_default_str();
    run_cmd->add_option("--policy", run.policy, "Flag mask that terminates on host return")->capture_default_str();
    run_cmd->add_option("--log", run.log, "Trace level")
        ->check(CLI::IsMember({"returns", "full"}))
        ->capture_default_str();
    run_cmd->add_option("--trace", run.trace, "Trace destination: a file, or - for stdout (default stderr)");
    run_cmd->add_flag("--dump-shadow", run.dump_shadow, "Append the shadow memory map to the trace");

    auto* bench_cmd = app.add_subcommand("bench", "Benchmark harnesses");
    bench_cmd->require_subcommand(1);

    std::string ov_module;
    std::vector<std::string> ov_types{"i32", "i64", "f32", "f64"};
    OverheadOptions ov;
    std::string ov_csv;
    auto* ov_cmd = bench_cmd->add_subcommand("overhead", "Cost of passing a taint label with every argument");
    ov_cmd->add_option("module", ov_module, "Module exporting noop_<type> functions")->required();
    ov_cmd->add_option("--types", ov_types, "Value types to measure")->delimiter(',')->capture_default_str();
    ov_cmd->add_option("--args", ov.args, "Parameters per function")->capture_default_str();
    ov_cmd->add_option("--iterations", ov.iterations, "Calls per batch")->capture_default_str();
    ov_cmd->add_option("--batches", ov.batches, "Alternating batches")->capture_default_str();
    ov_cmd->add_option("--csv", ov_csv, "Write the report here instead of stdout");

    std::string lt_module;
    uint32_t lt_synthetic = 0;
    LifetimeOptions lt;
    std::string lt_csv;
    auto* lt_cmd = bench_cmd->add_subcommand("lifetime", "Fraction of outputs still tainted per probability");
    lt_cmd->add_option("module", lt_module, "Module exporting a unary i32 function");
    lt_cmd->add_option("--synthetic", lt_synthetic, "Use a generated chain of N binary ops instead of a module");
    lt_cmd->add_option("--export", lt.export_name, "Function to call")->capture_default_str();
    lt_cmd->add_option("--prob-bits", lt.probability_bits, "Probability field width n")
        ->check(CLI::Range(1u, 16u))
        ->capture_default_str();
    lt_cmd->add_option("--stride", lt.stride, "Step between numerators")->capture_default_str();
    lt_cmd->add_option("--m", lt.numerators, "Explicit numerators (overrides --stride)")->delimiter(',');
    lt_cmd->add_option("--iterations", lt.iterations, "Calls per point")->capture_default_str();
    lt_cmd->add_option("--seed", lt.seed, "Base seed")->capture_default_str();
    lt_cmd->add_option("--threads", lt.threads, "Worker threads")->capture_default_str();
    lt_cmd->add_option("--csv", lt_csv, "Write the report here instead of stdout");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e, out, err);
        return exit_usage_error;
    }

    try
    {
        if (run_cmd->parsed())
            return cmd_run(run, out, err);

        if (ov_cmd->parsed())
        {
            const auto reports = bench_overhead(load(ov_module), parse_types(ov_types), ov);
            write_to(ov_csv, out, [&](std::ostream& s) { write_overhead_csv(s, reports); });
            return exit_completed;
        }

        if (lt_cmd->parsed())
        {
            std::shared_ptr<const Module> module;
            if (lt_synthetic > 0)
            {
                if (!lt_module.empty())
                    throw UsageError("give either a module or --synthetic, not both");
                module = synthetic_chain_module(lt_synthetic);
                if (lt_cmd->count("--export") == 0)
                    lt.export_name = "chain";
            }
            else if (lt_module.empty())
                throw UsageError("a module or --synthetic N is required");
            else
                module = load(lt_module);
            const LifetimeReport report = bench_lifetime(module, lt);
            write_to(lt_csv, out, [&](std::ostream& s) { write_lifetime_csv(s, report); });
            return exit_completed;
        }
    }
    catch (const UsageError& e)
    {
        err << "taintwasm: " << e.what() << '\n';
        return exit_usage_error;
    }
    catch (const InvokeError& e)
    {
        err << "taintwasm: " << e.what() << '\n';
        return exit_usage_error;
    }
    catch (const std::invalid_argument& e)
    {
        err << "taintwasm: " << e.what() << '\n';
        return exit_usage_error;
    }
    catch (const std::exception& e)
    {
        err << "taintwasm: " << e.what() << '\n';
        return exit_load_error;
    }
    return exit_usage_error;
}

}  // namespace taintwasm::cli
