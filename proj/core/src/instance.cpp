// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "taintwasm/instance.hpp"

#include "numeric.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

namespace taintwasm
{
void HostTable::add(std::string module, std::string field, HostFunction fn)
{
    m_functions.insert_or_assign({std::move(module), std::move(field)}, std::move(fn));
}

const HostFunction* HostTable::find(std::string_view module, std::string_view field) const
{
    const auto it = m_functions.find(std::pair{std::string(module), std::string(field)});
    return it == m_functions.end() ? nullptr : &it->second;
}

namespace
{
template <typename T>
inline T rd(uint64_t bits) noexcept
{
    if constexpr (std::is_same_v<T, float>)
        return std::bit_cast<float>(static_cast<uint32_t>(bits));
    else if constexpr (std::is_same_v<T, double>)
        return std::bit_cast<double>(bits);
    else
        return static_cast<T>(bits);
}

template <typename T>
inline uint64_t wr(T v) noexcept
{
    if constexpr (std::is_same_v<T, float>)
        return std::bit_cast<uint32_t>(v);
    else if constexpr (std::is_same_v<T, double>)
        return std::bit_cast<uint64_t>(v);
    else if constexpr (sizeof(T) == 4)
        return static_cast<uint32_t>(v);
    else
        return static_cast<uint64_t>(v);
}

uint64_t load_bits(Op op, const uint8_t* p) noexcept
{
    uint64_t raw = 0;
    std::memcpy(&raw, p, op_info(op).width);  // little-endian host
    switch (op)
    {
    case Op::i32_load8_s:
        return static_cast<uint32_t>(static_cast<int32_t>(static_cast<int8_t>(raw)));
    case Op::i32_load16_s:
        return static_cast<uint32_t>(static_cast<int32_t>(static_cast<int16_t>(raw)));
    case Op::i64_load8_s:
        return static_cast<uint64_t>(static_cast<int64_t>(static_cast<int8_t>(raw)));
    case Op::i64_load16_s:
        return static_cast<uint64_t>(static_cast<int64_t>(static_cast<int16_t>(raw)));
    case Op::i64_load32_s:
        return static_cast<uint64_t>(static_cast<int64_t>(static_cast<int32_t>(raw)));
    default:
        return raw;
    }
}

unsigned operand_count(const Instr& in) noexcept
{
    const OpInfo& info = op_info(in.op);
    switch (info.cls)
    {
    case OpClass::Comparison:
    case OpClass::Unary:
    case OpClass::Binary:
    case OpClass::Conversion:
        return info.arity;
    case OpClass::Load:
    case OpClass::MemoryGrow:
        return 1;
    case OpClass::Store:
        return 2;
    case OpClass::Parametric:
        return in.op == Op::select ? 3 : 1;
    case OpClass::Variable:
        return in.op == Op::local_get || in.op == Op::global_get ? 0 : 1;
    default:
        return 0;
    }
}

bool has_result(const Instr& in) noexcept
{
    switch (op_info(in.op).cls)
    {
    case OpClass::Store:
        return false;
    case OpClass::Parametric:
        return in.op == Op::select;
    case OpClass::Variable:
        return in.op != Op::local_set && in.op != Op::global_set;
    default:
        return true;
    }
}

}  // namespace

Instance::Instance(std::shared_ptr<const Module> module, PropagationConfig cfg, TaintPolicy policy,
    HostTable host, TraceSink* sink, InstanceLimits limits)
  : m_module(std::move(module)),
    m_cfg(cfg),
    m_policy(policy),
    m_host_table(std::move(host)),
    m_limits(limits),
    m_rng(cfg.rng_seed),
    m_tracer(sink, policy.log_level)
{
    if (!m_module || !m_module->validated)
        throw InstantiationError("module has not been validated");
    m_cfg.check();

    for (const Import& imp : m_module->imports)
    {
        const HostFunction* fn = m_host_table.find(imp.module, imp.field);
        if (!fn)
            throw InstantiationError("unresolved import " + imp.module + "." + imp.field);
        if (!(fn->type == m_module->types.at(imp.type_index)))
            throw InstantiationError("import " + imp.module + "." + imp.field + " has type " +
                                     to_string(fn->type) + ", expected " +
                                     to_string(m_module->types.at(imp.type_index)));
        m_imports.push_back(fn);
    }

    if (!m_module->memories.empty())
    {
        const MemorySpec& mem = m_module->memories.front();
        m_has_memory = true;
        m_max_pages = mem.max_pages.value_or(max_pages);
        m_memory.assign(static_cast<size_t>(mem.initial_pages) * page_size, 0);
    }

    for (const Global& g : m_module->globals)
        m_globals.push_back({g.init, {}});

    m_stack.resize(m_limits.stack_slots);
    m_frames.reserve(std::min<uint32_t>(m_limits.call_depth, 1024));

    instantiate_segments();

    if (m_module->start)
    {
        try
        {
            call(*m_module->start, {});
        }
        catch (const Trap& t)
        {
            throw InstantiationError(std::string("start function trapped: ") + t.what());
        }
    }
}

Instance::~Instance()
{
    teardown();
}

Instance::Instance(Instance&&) noexcept = default;
Instance& Instance::operator=(Instance&&) noexcept = default;

void Instance::instantiate_segments()
{
    for (const DataSegment& seg : m_module->data)
    {
        const uint64_t end = uint64_t{seg.offset} + seg.bytes.size();
        if (end > m_memory.size())
            throw InstantiationError("data segment at " + std::to_string(seg.offset) +
                                     " does not fit in memory");
        std::copy(seg.bytes.begin(), seg.bytes.end(), m_memory.begin() + seg.offset);
    }
}

void Instance::teardown() noexcept
{
    if (m_torn_down)
        return;
    m_shadow.clear();
    m_torn_down = true;
}

void Instance::set_trace_sink(TraceSink* sink) noexcept
{
    m_tracer = Tracer(sink, m_policy.log_level);
}

void Instance::dump_shadow()
{
    if (TraceSink* sink = m_tracer.sink())
    {
        const auto entries = m_shadow.sorted_entries();
        sink->write_shadow_dump(entries);
    }
}

TaintedValue Instance::exported_global(std::string_view name) const
{
    const auto it = m_module->exports.find(name);
    if (it == m_module->exports.end() || it->second.kind != ExternalKind::Global)
        throw InvokeError("no exported global named '" + std::string(name) + "'");
    return m_globals.at(it->second.index);
}

void Instance::write_memory(uint32_t address, std::span<const uint8_t> bytes, TaintLabel label)
{
    if (uint64_t{address} + bytes.size() > m_memory.size())
        throw Trap(TrapKind::MemoryOutOfBounds, 0, "host write outside linear memory");
    std::copy(bytes.begin(), bytes.end(), m_memory.begin() + address);
    m_shadow.taint_range(address, static_cast<uint32_t>(bytes.size()), normalize(label, m_cfg));
}

int32_t Instance::memory_grow(uint32_t delta_pages)
{
    const uint32_t old_pages = memory_pages();
    if (!m_has_memory || uint64_t{old_pages} + delta_pages > m_max_pages)
        return -1;
    m_memory.resize((static_cast<size_t>(old_pages) + delta_pages) * page_size, 0);
    return static_cast<int32_t>(old_pages);
}

uint8_t* Instance::checked_address(Slot address, uint32_t offset, uint32_t width, uint32_t at)
{
    const uint64_t ea = uint64_t{static_cast<uint32_t>(address.bits)} + offset;
    if (ea + width > m_memory.size())
        throw Trap(TrapKind::MemoryOutOfBounds, at,
            "access of " + std::to_string(width) + " bytes at " + std::to_string(ea));
    return m_memory.data() + ea;
}

Instance::Slot Instance::load(Op op, Slot address, uint32_t offset, uint32_t at)
{
    const uint32_t width = op_info(op).width;
    const uint8_t* p = checked_address(address, offset, width, at);
    const auto ea = static_cast<uint32_t>(p - m_memory.data());
    return {load_bits(op, p), m_shadow.read_range(ea, width, m_cfg)};
}

void Instance::store(Op op, Slot address, Slot value, uint32_t offset, uint32_t at)
{
    const uint32_t width = op_info(op).width;
    uint8_t* p = checked_address(address, offset, width, at);
    std::memcpy(p, &value.bits, width);
    m_shadow.taint_range(static_cast<uint32_t>(p - m_memory.data()), width, value.taint);
}

TaintedValue Instance::exec_load(Op op, TaintedValue address, uint32_t offset)
{
    if (op_info(op).cls != OpClass::Load)
        throw InvokeError("not a load opcode");
    const Slot s = load(op, {address.value.bits, address.taint}, offset, 0);
    return {{op_info(op).result, s.bits}, s.taint};
}

void Instance::exec_store(Op op, TaintedValue address, TaintedValue value, uint32_t offset)
{
    if (op_info(op).cls != OpClass::Store)
        throw InvokeError("not a store opcode");
    store(op, {address.value.bits, address.taint}, {value.value.bits, normalize(value.taint, m_cfg)},
        offset, 0);
}

TaintedValue Instance::exec_numeric(Op op, std::span<const TaintedValue> operands)
{
    const OpInfo& info = op_info(op);
    if (!is_numeric_class(info.cls))
        throw InvokeError("not a numeric opcode: " + std::string(info.name));
    if (operands.size() != info.arity)
        throw InvokeError(std::string(info.name) + " takes " + std::to_string(info.arity) + " operands");
    for (const auto& v : operands)
        if (v.value.type != info.operand)
            throw InvokeError(std::string(info.name) + " expects " + std::string(to_string(info.operand)));
    Slot buf[2];
    for (size_t i = 0; i < operands.size(); ++i)
        buf[i] = {operands[i].value.bits, normalize(operands[i].taint, m_cfg)};
    Slot* sp = buf + operands.size();
    step_numeric(op, sp, 0);
    return {{info.result, sp[-1].bits}, sp[-1].taint};
}

// Binary ops: a is the first (deeper) operand.
#define BINOP(T, expr)                                                   \
    {                                                                    \
        const T a = rd<T>(sp[-2].bits);                                  \
        const T b = rd<T>(sp[-1].bits);                                  \
        sp[-2].bits = wr(static_cast<T>(expr));                          \
        sp[-2].taint = binop_taint(sp[-2].taint, sp[-1].taint);          \
        --sp;                                                            \
        return true;                                                     \
    }
#define CMPOP(T, expr)                  \
    {                                   \
        const T a = rd<T>(sp[-2].bits); \
        const T b = rd<T>(sp[-1].bits); \
        sp[-2].bits = (expr) ? 1 : 0;   \
        sp[-2].taint = TaintLabel{};    \
        --sp;                           \
        return true;                    \
    }
#define TESTOP(T, expr)                 \
    {                                   \
        const T a = rd<T>(sp[-1].bits); \
        sp[-1].bits = (expr) ? 1 : 0;   \
        sp[-1].taint = TaintLabel{};    \
        return true;                    \
    }
#define UNOP(T, R, expr)                     \
    {                                        \
        const T a = rd<T>(sp[-1].bits);      \
        sp[-1].bits = wr(static_cast<R>(expr)); \
        return true;                         \
    }

bool Instance::step_numeric(Op op, Slot*& sp, uint32_t at)
{
    using u32 = uint32_t;
    using i32 = int32_t;
    using u64 = uint64_t;
    using i64 = int64_t;
    using f32 = float;
    using f64 = double;

    switch (op)
    {
    case Op::i32_eqz: TESTOP(u32, a == 0)
    case Op::i32_eq: CMPOP(u32, a == b)
    case Op::i32_ne: CMPOP(u32, a != b)
    case Op::i32_lt_s: CMPOP(i32, a < b)
    case Op::i32_lt_u: CMPOP(u32, a < b)
    case Op::i32_gt_s: CMPOP(i32, a > b)
    case Op::i32_gt_u: CMPOP(u32, a > b)
    case Op::i32_le_s: CMPOP(i32, a <= b)
    case Op::i32_le_u: CMPOP(u32, a <= b)
    case Op::i32_ge_s: CMPOP(i32, a >= b)
    case Op::i32_ge_u: CMPOP(u32, a >= b)

    case Op::i64_eqz: TESTOP(u64, a == 0)
    case Op::i64_eq: CMPOP(u64, a == b)
    case Op::i64_ne: CMPOP(u64, a != b)
    case Op::i64_lt_s: CMPOP(i64, a < b)
    case Op::i64_lt_u: CMPOP(u64, a < b)
    case Op::i64_gt_s: CMPOP(i64, a > b)
    case Op::i64_gt_u: CMPOP(u64, a > b)
    case Op::i64_le_s: CMPOP(i64, a <= b)
    case Op::i64_le_u: CMPOP(u64, a <= b)
    case Op::i64_ge_s: CMPOP(i64, a >= b)
    case Op::i64_ge_u: CMPOP(u64, a >= b)

    case Op::f32_eq: CMPOP(f32, a == b)
    case Op::f32_ne: CMPOP(f32, a != b)
    case Op::f32_lt: CMPOP(f32, a < b)
    case Op::f32_gt: CMPOP(f32, a > b)
    case Op::f32_le: CMPOP(f32, a <= b)
    case Op::f32_ge: CMPOP(f32, a >= b)
    case Op::f64_eq: CMPOP(f64, a == b)
    case Op::f64_ne: CMPOP(f64, a != b)
    case Op::f64_lt: CMPOP(f64, a < b)
    case Op::f64_gt: CMPOP(f64, a > b)
    case Op::f64_le: CMPOP(f64, a <= b)
    case Op::f64_ge: CMPOP(f64, a >= b)

    case Op::i32_clz: UNOP(u32, u32, std::countl_zero(a))
    case Op::i32_ctz: UNOP(u32, u32, std::countr_zero(a))
    case Op::i32_popcnt: UNOP(u32, u32, std::popcount(a))
    case Op::i32_add: BINOP(u32, a + b)
    case Op::i32_sub: BINOP(u32, a - b)
    case Op::i32_mul: BINOP(u32, a * b)
    case Op::i32_div_s: BINOP(u32, num::div_s(a, b, at))
    case Op::i32_div_u: BINOP(u32, num::div_u(a, b, at))
    case Op::i32_rem_s: BINOP(u32, num::rem_s(a, b, at))
    case Op::i32_rem_u: BINOP(u32, num::rem_u(a, b, at))
    case Op::i32_and: BINOP(u32, a & b)
    case Op::i32_or: BINOP(u32, a | b)
    case Op::i32_xor: BINOP(u32, a ^ b)
    case Op::i32_shl: BINOP(u32, num::shl(a, b))
    case Op::i32_shr_s: BINOP(u32, num::shr_s(a, b))
    case Op::i32_shr_u: BINOP(u32, num::shr_u(a, b))
    case Op::i32_rotl: BINOP(u32, num::rotl(a, b))
    case Op::i32_rotr: BINOP(u32, num::rotr(a, b))

    case Op::i64_clz: UNOP(u64, u64, std::countl_zero(a))
    case Op::i64_ctz: UNOP(u64, u64, std::countr_zero(a))
    case Op::i64_popcnt: UNOP(u64, u64, std::popcount(a))
    case Op::i64_add: BINOP(u64, a + b)
    case Op::i64_sub: BINOP(u64, a - b)
    case Op::i64_mul: BINOP(u64, a * b)
    case Op::i64_div_s: BINOP(u64, num::div_s(a, b, at))
    case Op::i64_div_u: BINOP(u64, num::div_u(a, b, at))
    case Op::i64_rem_s: BINOP(u64, num::rem_s(a, b, at))
    case Op::i64_rem_u: BINOP(u64, num::rem_u(a, b, at))
    case Op::i64_and: BINOP(u64, a & b)
    case Op::i64_or: BINOP(u64, a | b)
    case Op::i64_xor: BINOP(u64, a ^ b)
    case Op::i64_shl: BINOP(u64, num::shl(a, b))
    case Op::i64_shr_s: BINOP(u64, num::shr_s(a, b))
    case Op::i64_shr_u: BINOP(u64, num::shr_u(a, b))
    case Op::i64_rotl: BINOP(u64, num::rotl(a, b))
    case Op::i64_rotr: BINOP(u64, num::rotr(a, b))

    case Op::f32_abs: UNOP(u32, u32, a & ~num::f32_sign)
    case Op::f32_neg: UNOP(u32, u32, a ^ num::f32_sign)
    case Op::f32_ceil: UNOP(f32, f32, std::ceil(a))
    case Op::f32_floor: UNOP(f32, f32, std::floor(a))
    case Op::f32_trunc: UNOP(f32, f32, std::trunc(a))
    case Op::f32_nearest: UNOP(f32, f32, num::nearest(a))
    case Op::f32_sqrt: UNOP(f32, f32, std::sqrt(a))
    case Op::f32_add: BINOP(f32, a + b)
    case Op::f32_sub: BINOP(f32, a - b)
    case Op::f32_mul: BINOP(f32, a * b)
    case Op::f32_div: BINOP(f32, a / b)
    case Op::f32_min: BINOP(f32, num::fmin(a, b))
    case Op::f32_max: BINOP(f32, num::fmax(a, b))
    case Op::f32_copysign: BINOP(u32, (a & ~num::f32_sign) | (b & num::f32_sign))

    case Op::f64_abs: UNOP(u64, u64, a & ~num::f64_sign)
    case Op::f64_neg: UNOP(u64, u64, a ^ num::f64_sign)
    case Op::f64_ceil: UNOP(f64, f64, std::ceil(a))
    case Op::f64_floor: UNOP(f64, f64, std::floor(a))
    case Op::f64_trunc: UNOP(f64, f64, std::trunc(a))
    case Op::f64_nearest: UNOP(f64, f64, num::nearest(a))
    case Op::f64_sqrt: UNOP(f64, f64, std::sqrt(a))
    case Op::f64_add: BINOP(f64, a + b)
    case Op::f64_sub: BINOP(f64, a - b)
    case Op::f64_mul: BINOP(f64, a * b)
    case Op::f64_div: BINOP(f64, a / b)
    case Op::f64_min: BINOP(f64, num::fmin(a, b))
    case Op::f64_max: BINOP(f64, num::fmax(a, b))
    case Op::f64_copysign: BINOP(u64, (a & ~num::f64_sign) | (b & num::f64_sign))

    case Op::i32_wrap_i64: UNOP(u64, u32, a)
    case Op::i32_trunc_f32_s: UNOP(f32, i32, (num::trunc<i32>(a, at)))
    case Op::i32_trunc_f32_u: UNOP(f32, u32, (num::trunc<u32>(a, at)))
    case Op::i32_trunc_f64_s: UNOP(f64, i32, (num::trunc<i32>(a, at)))
    case Op::i32_trunc_f64_u: UNOP(f64, u32, (num::trunc<u32>(a, at)))
    case Op::i64_extend_i32_s: UNOP(i32, i64, a)
    case Op::i64_extend_i32_u: UNOP(u32, u64, a)
    case Op::i64_trunc_f32_s: UNOP(f32, i64, (num::trunc<i64>(a, at)))
    case Op::i64_trunc_f32_u: UNOP(f32, u64, (num::trunc<u64>(a, at)))
    case Op::i64_trunc_f64_s: UNOP(f64, i64, (num::trunc<i64>(a, at)))
    case Op::i64_trunc_f64_u: UNOP(f64, u64, (num::trunc<u64>(a, at)))
    case Op::f32_convert_i32_s: UNOP(i32, f32, a)
    case Op::f32_convert_i32_u: UNOP(u32, f32, a)
    case Op::f32_convert_i64_s: UNOP(i64, f32, a)
    case Op::f32_convert_i64_u: UNOP(u64, f32, a)
    case Op::f32_demote_f64: UNOP(f64, f32, a)
    case Op::f64_convert_i32_s: UNOP(i32, f64, a)
    case Op::f64_convert_i32_u: UNOP(u32, f64, a)
    case Op::f64_convert_i64_s: UNOP(i64, f64, a)
    case Op::f64_convert_i64_u: UNOP(u64, f64, a)
    case Op::f64_promote_f32: UNOP(f32, f64, a)
    case Op::i32_reinterpret_f32:
    case Op::i64_reinterpret_f64:
    case Op::f32_reinterpret_i32:
    case Op::f64_reinterpret_i64:
        return true;
    default:
        return false;
    }
}

#undef BINOP
#undef CMPOP
#undef TESTOP
#undef UNOP

void Instance::trace_op(const Instr& in, uint32_t func_index, std::vector<TaintLabel> operands,
    const Slot* result, uint32_t address, uint32_t width)
{
    TraceEvent ev;
    ev.kind = op_info(in.op).cls == OpClass::Store ? EventKind::MemoryTaint : EventKind::OpExecuted;
    ev.function = func_index;
    ev.name = op_info(in.op).name;
    ev.offset = in.offset;
    ev.operands = std::move(operands);
    if (result)
    {
        ev.result = result->taint;
        ev.has_result = true;
    }
    ev.address = address;
    ev.width = width;
    m_tracer.emit(std::move(ev));
}

void Instance::enter(uint32_t func_index, Slot*& sp, uint32_t return_pc, uint32_t offset)
{
    const CompiledFunction& fn = m_module->compiled[func_index - m_module->num_imported_functions()];
    if (m_frames.size() >= m_limits.call_depth)
        throw Trap(TrapKind::StackExhausted, offset, "call depth limit reached");
    Slot* locals = sp - fn.num_params;
    const size_t needed =
        static_cast<size_t>(locals - m_stack.data()) + fn.local_types.size() + fn.max_height;
    if (needed > m_stack.size())
        throw Trap(TrapKind::StackExhausted, offset, "value stack exhausted");
    for (size_t i = fn.num_params; i < fn.local_types.size(); ++i)
        locals[i] = {0, {}};
    sp = locals + fn.local_types.size();
    m_frames.push_back({&fn, func_index, locals, return_pc});
}

void Instance::call_host(uint32_t func_index, Slot*& sp, uint32_t offset)
{
    const HostFunction& fn = *m_imports[func_index];
    const FunctionType& type = m_module->function_type(func_index);
    const size_t n = type.params.size();
    std::vector<TaintedValue> args(n);
    Slot* base = sp - n;
    for (size_t i = 0; i < n; ++i)
        args[i] = {{type.params[i], base[i].bits}, base[i].taint};

    std::vector<TaintedValue> results;
    try
    {
        results = fn.callback(args);
    }
    catch (const Trap&)
    {
        throw;
    }
    catch (const TraceWriteError&)
    {
        throw;
    }
    catch (const std::exception& e)
    {
        throw Trap(TrapKind::HostError, offset, e.what());
    }

    if (results.size() != type.results.size())
        throw Trap(TrapKind::HostError, offset, "host function returned the wrong number of values");
    for (size_t i = 0; i < results.size(); ++i)
        if (results[i].value.type != type.results[i])
            throw Trap(TrapKind::HostError, offset, "host function returned the wrong type");

    sp = base;
    for (const auto& r : results)
        *sp++ = {r.value.bits, normalize(r.taint, m_cfg)};
}

template <bool Trace>
void Instance::run(Slot* sp)
{
    Frame* frame = &m_frames.back();
    const Instr* code = frame->fn->code.data();
    Slot* locals = frame->locals;
    Slot* operand_base = locals + frame->fn->local_types.size();
    uint32_t pc = 0;

    [[maybe_unused]] std::vector<TaintLabel> pre;
    [[maybe_unused]] uint32_t ea = 0;

    for (;;)
    {
        const Instr& in = code[pc++];

        if constexpr (Trace)
        {
            pre.clear();
            const unsigned n = operand_count(in);
            for (unsigned i = 0; i < n; ++i)
                pre.push_back(sp[static_cast<ptrdiff_t>(i) - n].taint);
            const OpClass cls = op_info(in.op).cls;
            if (cls == OpClass::Load)
                ea = static_cast<uint32_t>(sp[-1].bits) + in.a;
            else if (cls == OpClass::Store)
                ea = static_cast<uint32_t>(sp[-2].bits) + in.a;
        }

        switch (in.op)
        {
        case Op::unreachable:
            throw Trap(TrapKind::Unreachable, in.offset);
        case Op::nop:
            continue;
        case Op::if_:
            --sp;
            if (static_cast<uint32_t>(sp->bits) == 0)
                pc = in.a;
            continue;
        case Op::else_:
            pc = in.a;
            continue;
        case Op::br_if:
            --sp;
            if (static_cast<uint32_t>(sp->bits) == 0)
                continue;
            [[fallthrough]];
        case Op::br:
        {
            Slot* dst = operand_base + in.b;
            if (in.arity)
                *dst = sp[-1];
            sp = dst + in.arity;
            pc = in.a;
            continue;
        }
        case Op::br_table:
        {
            --sp;
            const uint32_t index = std::min(static_cast<uint32_t>(sp->bits), in.b - 1);
            const BranchTarget& t = frame->fn->br_table[in.a + index];
            Slot* dst = operand_base + t.height;
            if (t.arity)
                *dst = sp[-1];
            sp = dst + t.arity;
            pc = t.pc;
            continue;
        }
        case Op::return_:
        {
            Slot* dst = frame->locals;
            if (in.arity)
                *dst = sp[-1];
            sp = dst + in.arity;
            if constexpr (Trace)
            {
                TraceEvent ev;
                ev.kind = EventKind::Return;
                ev.function = frame->func_index;
                ev.offset = in.offset;
                if (in.arity)
                {
                    ev.result = dst->taint;
                    ev.has_result = true;
                }
                m_tracer.emit(std::move(ev));
            }
            const uint32_t return_pc = frame->return_pc;
            m_frames.pop_back();
            if (m_frames.empty())
                return;
            frame = &m_frames.back();
            code = frame->fn->code.data();
            locals = frame->locals;
            operand_base = locals + frame->fn->local_types.size();
            pc = return_pc;
            continue;
        }
        case Op::call:
        {
            if constexpr (Trace)
            {
                const FunctionType& t = m_module->function_type(in.a);
                TraceEvent ev;
                ev.kind = EventKind::Call;
                ev.function = in.a;
                ev.offset = in.offset;
                for (size_t i = 0; i < t.params.size(); ++i)
                    ev.operands.push_back(sp[static_cast<ptrdiff_t>(i) - static_cast<ptrdiff_t>(t.params.size())].taint);
                m_tracer.emit(std::move(ev));
            }
            if (in.a < m_imports.size())
            {
                call_host(in.a, sp, in.offset);
                if constexpr (Trace)
                {
                    TraceEvent ev;
                    ev.kind = EventKind::Return;
                    ev.function = in.a;
                    ev.offset = in.offset;
                    if (!m_module->function_type(in.a).results.empty())
                    {
                        ev.result = sp[-1].taint;
                        ev.has_result = true;
                    }
                    m_tracer.emit(std::move(ev));
                }
                continue;
            }
            enter(in.a, sp, pc, in.offset);
            frame = &m_frames.back();
            code = frame->fn->code.data();
            locals = frame->locals;
            operand_base = locals + frame->fn->local_types.size();
            pc = 0;
            continue;
        }

        case Op::drop:
            --sp;
            break;
        case Op::select:
        {
            sp -= 2;
            if (static_cast<uint32_t>(sp[1].bits) == 0)
                sp[-1] = sp[0];
            break;
        }

        case Op::local_get:
            *sp++ = locals[in.a];
            break;
        case Op::local_set:
            locals[in.a] = *--sp;
            break;
        case Op::local_tee:
            locals[in.a] = sp[-1];
            break;
        case Op::global_get:
        {
            const TaintedValue& g = m_globals[in.a];
            *sp++ = {g.value.bits, g.taint};
            break;
        }
        case Op::global_set:
        {
            TaintedValue& g = m_globals[in.a];
            --sp;
            g.value.bits = sp->bits;
            g.taint = sp->taint;
            break;
        }

        case Op::i32_load:
        case Op::i64_load:
        case Op::f32_load:
        case Op::f64_load:
        case Op::i32_load8_s:
        case Op::i32_load8_u:
        case Op::i32_load16_s:
        case Op::i32_load16_u:
        case Op::i64_load8_s:
        case Op::i64_load8_u:
        case Op::i64_load16_s:
        case Op::i64_load16_u:
        case Op::i64_load32_s:
        case Op::i64_load32_u:
            sp[-1] = load(in.op, sp[-1], in.a, in.offset);
            break;

        case Op::i32_store:
        case Op::i64_store:
        case Op::f32_store:
        case Op::f64_store:
        case Op::i32_store8:
        case Op::i32_store16:
        case Op::i64_store8:
        case Op::i64_store16:
        case Op::i64_store32:
            sp -= 2;
            store(in.op, sp[0], sp[1], in.a, in.offset);
            break;

        case Op::memory_size:
            *sp++ = {memory_pages(), {}};
            break;
        case Op::memory_grow:
            sp[-1] = {static_cast<uint32_t>(memory_grow(static_cast<uint32_t>(sp[-1].bits))), {}};
            break;

        case Op::i32_const:
        case Op::i64_const:
        case Op::f32_const:
        case Op::f64_const:
            *sp++ = {in.imm, {}};
            break;

        default:
            if (!step_numeric(in.op, sp, in.offset))
                throw Trap(TrapKind::Unreachable, in.offset, "unexpected opcode");
            break;
        }

        if constexpr (Trace)
        {
            const OpInfo& info = op_info(in.op);
            const bool memory = info.cls == OpClass::Load || info.cls == OpClass::Store;
            const Slot* result = nullptr;
            Slot stored{};
            if (info.cls == OpClass::Store)
            {
                stored = {0, pre[1]};
                result = &stored;
            }
            else if (has_result(in))
                result = &sp[-1];
            if (in.op == Op::local_set || in.op == Op::global_set)
            {
                stored = {0, pre[0]};
                result = &stored;
            }
            trace_op(in, frame->func_index, pre, result, memory ? ea : 0, memory ? info.width : 0);
        }
    }
}

std::vector<TaintedValue> Instance::call(uint32_t func_index, std::span<const TaintedValue> args)
{
    const FunctionType& type = m_module->function_type(func_index);
    Slot* sp = m_stack.data();
    for (const auto& a : args)
        *sp++ = {a.value.bits, a.taint};

    if (func_index < m_imports.size())
    {
        call_host(func_index, sp, 0);
    }
    else
    {
        m_frames.clear();
        enter(func_index, sp, 0, 0);
        if (m_tracer.full())
            run<true>(sp);
        else
            run<false>(sp);
    }

    std::vector<TaintedValue> results;
    for (size_t i = 0; i < type.results.size(); ++i)
        results.push_back({{type.results[i], m_stack[i].bits}, m_stack[i].taint});
    return results;
}

InvokeResult Instance::invoke(std::string_view export_name, std::span<const HostArg> args)
{
    if (m_torn_down)
        throw InvokeError("instance has been torn down");
    if (m_active)
        throw InvokeError("instance is already running");

    const auto it = m_module->exports.find(export_name);
    if (it == m_module->exports.end())
        throw InvokeError("no export named '" + std::string(export_name) + "'");
    if (it->second.kind != ExternalKind::Function)
        throw InvokeError("export '" + std::string(export_name) + "' is not a function");
    const uint32_t func_index = it->second.index;
    const FunctionType& type = m_module->function_type(func_index);
    const size_t nparams = type.params.size();

    if (args.size() < nparams)
        throw InvokeError("export '" + std::string(export_name) + "' takes " + std::to_string(nparams) +
                          " arguments, got " + std::to_string(args.size()));

    std::vector<TaintedValue> params(nparams);
    for (size_t i = 0; i < nparams; ++i)
    {
        const Value* v = std::get_if<Value>(&args[i]);
        if (!v)
            throw InvokeError("argument " + std::to_string(i) + " must be a " +
                              std::string(to_string(type.params[i])) + " value");
        if (v->type != type.params[i])
            throw InvokeError("argument " + std::to_string(i) + " has type " +
                              std::string(to_string(v->type)) + ", expected " +
                              std::string(to_string(type.params[i])));
        params[i].value = *v;
    }
    for (size_t i = nparams; i < args.size(); ++i)
    {
        const TaintWord* t = std::get_if<TaintWord>(&args[i]);
        if (!t)
            throw InvokeError("argument " + std::to_string(i) + " follows the parameters and must be a taint word");
        if (i - nparams < nparams)
            params[i - nparams].taint = normalize(TaintLabel{t->raw}, m_cfg);
    }

    m_active = true;
    struct Guard
    {
        bool& flag;
        ~Guard() { flag = false; }
    } guard{m_active};

    InvokeResult out;
    try
    {
        out.values = call(func_index, params);
    }
    catch (const Trap& t)
    {
        m_frames.clear();
        out.status = Trapped{t.kind(), t.offset(), t.what()};
        return out;
    }

    out.status = check_host_return(out.values, m_policy, m_cfg, m_tracer, func_index, export_name);
    if (!std::holds_alternative<Completed>(out.status))
        out.values.clear();
    return out;
}

Instance instantiate(std::shared_ptr<const Module> module, PropagationConfig cfg, TaintPolicy policy,
    HostTable host, TraceSink* sink)
{
    return Instance(std::move(module), cfg, policy, std::move(host), sink);
}

}  // namespace taintwasm
