// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "taintwasm/module.hpp"
#include "taintwasm/policy.hpp"
#include "taintwasm/shadow_memory.hpp"
#include "taintwasm/taint.hpp"
#include "taintwasm/trace.hpp"
#include "taintwasm/value.hpp"

#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace taintwasm
{
/// A raw taint word passed after the numeric arguments of an invocation.
struct TaintWord
{
    uint32_t raw = 0;
};

/// Invocation argument: the first `params` entries must be numbers matching
/// the signature; any following TaintWords label those parameters in order.
using HostArg = std::variant<Value, TaintWord>;

/// A function the embedder provides for a module import. It sees argument
/// taints and chooses the taint of what it returns.
struct HostFunction
{
    FunctionType type;
    std::function<std::vector<TaintedValue>(std::span<const TaintedValue>)> callback;
};

class HostTable
{
public:
    void add(std::string module, std::string field, HostFunction fn);
    [[nodiscard]] const HostFunction* find(std::string_view module, std::string_view field) const;

private:
    std::map<std::pair<std::string, std::string>, HostFunction, std::less<>> m_functions;
};

struct InvokeResult
{
    std::vector<TaintedValue> values;  // empty unless Completed
    TerminationStatus status;
};

struct InstanceLimits
{
    uint32_t stack_slots = 1u << 18;  // locals + operands across all frames
    uint32_t call_depth = 10'000;
};

/// An instantiated module: linear memory with its shadow map, globals, the
/// value stack, and the per-instance random source used by probabilistic
/// propagation. Single-threaded; an idle instance may move between threads.
class Instance
{
public:
    Instance(std::shared_ptr<const Module> module, PropagationConfig cfg = {}, TaintPolicy policy = {},
        HostTable host = {}, TraceSink* sink = nullptr, InstanceLimits limits = {});
    ~Instance();

    Instance(Instance&&) noexcept;
    Instance& operator=(Instance&&) noexcept;
    Instance(const Instance&) = delete;
    Instance& operator=(const Instance&) = delete;

    /// Calls an exported function. Results cross the host boundary, so the
    /// taint policy is checked here. Throws InvokeError for caller mistakes;
    /// traps come back as a Trapped status with memory and shadow left as
    /// they were at the fault.
    InvokeResult invoke(std::string_view export_name, std::span<const HostArg> args);
    InvokeResult invoke(std::string_view export_name, std::initializer_list<HostArg> args)
    {
        return invoke(export_name, std::span<const HostArg>(args.begin(), args.size()));
    }

    /// Single numeric instruction on explicit operands, via the same code
    /// path the interpreter loop uses. Throws Trap.
    TaintedValue exec_numeric(Op op, std::span<const TaintedValue> operands);
    /// T.load at `address + offset`; the address taint is not propagated.
    TaintedValue exec_load(Op op, TaintedValue address, uint32_t offset = 0);
    void exec_store(Op op, TaintedValue address, TaintedValue value, uint32_t offset = 0);

    /// memory.grow: previous page count, or -1 when the limit is exceeded.
    int32_t memory_grow(uint32_t delta_pages);
    [[nodiscard]] uint32_t memory_pages() const noexcept
    {
        return static_cast<uint32_t>(m_memory.size() / page_size);
    }
    [[nodiscard]] std::span<uint8_t> memory() noexcept { return m_memory; }
    [[nodiscard]] std::span<const uint8_t> memory() const noexcept { return m_memory; }
    [[nodiscard]] bool has_memory() const noexcept { return m_has_memory; }

    /// Copies bytes into linear memory and labels them; models a host
    /// writing tainted input. Throws Trap on out-of-bounds ranges.
    void write_memory(uint32_t address, std::span<const uint8_t> bytes, TaintLabel label = {});

    [[nodiscard]] const ShadowMemory& shadow() const noexcept { return m_shadow; }

    [[nodiscard]] const TaintedValue& global(uint32_t index) const { return m_globals.at(index); }
    [[nodiscard]] TaintedValue exported_global(std::string_view name) const;

    [[nodiscard]] const Module& module() const noexcept { return *m_module; }
    [[nodiscard]] const PropagationConfig& config() const noexcept { return m_cfg; }
    [[nodiscard]] const TaintPolicy& policy() const noexcept { return m_policy; }
    [[nodiscard]] RandomSource& rng() noexcept { return m_rng; }

    /// Redirects trace output; level comes from the policy.
    void set_trace_sink(TraceSink* sink) noexcept;
    /// Writes the sorted shadow map to the trace sink, if one is set.
    void dump_shadow();

    /// Clears the shadow map. Runs once; the destructor calls it.
    void teardown() noexcept;
    [[nodiscard]] bool torn_down() const noexcept { return m_torn_down; }

private:
    struct Slot
    {
        uint64_t bits;
        TaintLabel taint;
    };

    struct Frame
    {
        const CompiledFunction* fn;
        uint32_t func_index;
        Slot* locals;
        uint32_t return_pc;
    };

    void instantiate_segments();
    std::vector<TaintedValue> call(uint32_t func_index, std::span<const TaintedValue> args);
    template <bool Trace>
    void run(Slot* sp);
    void call_host(uint32_t func_index, Slot*& sp, uint32_t offset);
    void enter(uint32_t func_index, Slot*& sp, uint32_t return_pc, uint32_t offset);

    TaintLabel binop_taint(TaintLabel a, TaintLabel b) noexcept
    {
        if (!m_cfg.probabilistic())
            return TaintLabel{a.raw | b.raw};
        return propagate_binop(a, b, false, m_cfg, m_rng);
    }

    bool step_numeric(Op op, Slot*& sp, uint32_t offset);
    Slot load(Op op, Slot address, uint32_t offset, uint32_t at);
    void store(Op op, Slot address, Slot value, uint32_t offset, uint32_t at);
    uint8_t* checked_address(Slot address, uint32_t offset, uint32_t width, uint32_t at);

    void trace_op(const Instr& in, uint32_t func_index, std::vector<TaintLabel> operands,
        const Slot* result, uint32_t address = 0, uint32_t width = 0);

    std::shared_ptr<const Module> m_module;
    PropagationConfig m_cfg;
    TaintPolicy m_policy;
    HostTable m_host_table;
    std::vector<const HostFunction*> m_imports;
    InstanceLimits m_limits;
    RandomSource m_rng;
    Tracer m_tracer;

    bool m_has_memory = false;
    uint32_t m_max_pages = 0;
    std::vector<uint8_t> m_memory;
    ShadowMemory m_shadow;
    std::vector<TaintedValue> m_globals;

    std::vector<Slot> m_stack;
    std::vector<Frame> m_frames;
    bool m_active = false;
    bool m_torn_down = false;
};

/// Builds an Instance after checking the module was validated.
[[nodiscard]] Instance instantiate(std::shared_ptr<const Module> module, PropagationConfig cfg = {},
    TaintPolicy policy = {}, HostTable host = {}, TraceSink* sink = nullptr);

}  // namespace taintwasm
