// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "taintwasm/validator.hpp"

#include "taintwasm/decoder.hpp"
#include "taintwasm/errors.hpp"

#include <cstdio>
#include <optional>

namespace taintwasm
{
namespace
{
std::string hex_byte(uint8_t b)
{
    char buf[8];
    std::snprintf(buf, sizeof buf, "0x%02x", b);
    return buf;
}

// Operand type on the validation stack; Unknown only appears in
// unreachable code (stack-polymorphic pops).
enum class Slot : uint8_t
{
    Unknown = 0,
    I32 = 0x7F,
    I64 = 0x7E,
    F32 = 0x7D,
    F64 = 0x7C,
};

Slot slot_of(ValType t)
{
    return static_cast<Slot>(t);
}

struct Fixup
{
    bool in_table;
    uint32_t index;
};

struct ControlFrame
{
    ControlFrame(Op k, std::optional<ValType> r, uint32_t h) : kind(k), result(r), height(h) {}

    Op kind;
    std::optional<ValType> result;
    uint32_t height;
    bool unreachable = false;
    uint32_t loop_pc = 0;
    uint32_t if_instr = 0;
    bool has_else = false;
    std::vector<Fixup> fixups;

    [[nodiscard]] uint8_t label_arity() const { return kind == Op::loop ? 0 : (result ? 1 : 0); }
};

class FunctionValidator
{
public:
    FunctionValidator(const Module& m, uint32_t defined_index)
      : m_module(m),
        m_body(m.functions[defined_index]),
        m_func_index(m.num_imported_functions() + defined_index)
    {}

    CompiledFunction run()
    {
        if (m_body.type_index >= m_module.types.size())
            fail("function type index out of range");
        const FunctionType& type = m_module.types[m_body.type_index];

        m_out.type_index = m_body.type_index;
        m_out.num_params = static_cast<uint32_t>(type.params.size());
        m_out.local_types = type.params;
        m_out.local_types.insert(m_out.local_types.end(), m_body.locals.begin(), m_body.locals.end());

        ControlFrame fn{Op::block, std::nullopt, 0};
        if (!type.results.empty())
            fn.result = type.results.front();
        m_ctrl.push_back(std::move(fn));

        ByteReader r(std::span(m_module.bytes).subspan(m_body.code_begin, m_body.code_end - m_body.code_begin),
            m_body.code_begin);
        while (!m_ctrl.empty())
        {
            if (r.empty())
                fail("function body ends before its final end");
            step(r);
        }
        if (!r.empty())
            fail("trailing bytes after function end");
        return std::move(m_out);
    }

private:
    [[noreturn]] void fail(const std::string& what, std::optional<uint8_t> opcode = std::nullopt) const
    {
        throw ValidationError(
            "function " + std::to_string(m_func_index) + ": " + what, m_func_index, opcode);
    }

    void push(Slot s)
    {
        m_stack.push_back(s);
        if (m_stack.size() > m_out.max_height)
            m_out.max_height = static_cast<uint32_t>(m_stack.size());
    }
    void push(ValType t) { push(slot_of(t)); }

    Slot pop()
    {
        const ControlFrame& top = m_ctrl.back();
        if (m_stack.size() == top.height)
        {
            if (top.unreachable)
                return Slot::Unknown;
            fail("operand stack underflow");
        }
        const Slot s = m_stack.back();
        m_stack.pop_back();
        return s;
    }

    Slot pop(ValType expected)
    {
        const Slot s = pop();
        if (s != Slot::Unknown && s != slot_of(expected))
            fail("type mismatch: expected " + std::string(to_string(expected)));
        return s;
    }

    void mark_unreachable()
    {
        ControlFrame& top = m_ctrl.back();
        m_stack.resize(top.height);
        top.unreachable = true;
    }

    Instr& emit(Op op, uint32_t offset)
    {
        Instr in;
        in.op = op;
        in.offset = offset;
        m_out.code.push_back(in);
        return m_out.code.back();
    }

    uint32_t pc() const { return static_cast<uint32_t>(m_out.code.size()); }

    ControlFrame& label(uint32_t depth)
    {
        if (depth >= m_ctrl.size())
            fail("branch depth out of range");
        return m_ctrl[m_ctrl.size() - 1 - depth];
    }

    // Pops and re-pushes the label's types; returns the target frame.
    void check_label_operands(const ControlFrame& f)
    {
        if (f.kind != Op::loop && f.result)
        {
            pop(*f.result);
            push(*f.result);
        }
    }

    BranchTarget branch_to(uint32_t depth, Fixup where)
    {
        ControlFrame& f = label(depth);
        BranchTarget t{0, f.height, f.label_arity()};
        if (f.kind == Op::loop)
            t.pc = f.loop_pc;
        else
            f.fixups.push_back(where);
        return t;
    }

    ValType read_blocktype(ByteReader& r, std::optional<ValType>& result)
    {
        const uint8_t b = r.read_byte();
        if (b == 0x40)
            return ValType::I32;
        if (!is_valtype_byte(b))
            fail("multi-value block types are not supported");
        result = static_cast<ValType>(b);
        return *result;
    }

    void check_memory(uint8_t opcode) const
    {
        if (m_module.memories.empty())
            fail("memory instruction without a memory", opcode);
    }

    void read_memarg(ByteReader& r, const OpInfo& info, Instr& in)
    {
        const uint32_t align = r.read_u32();
        if (align >= 32 || (1u << align) > info.width)
            fail("alignment must not be larger than natural", static_cast<uint8_t>(in.op));
        in.a = r.read_u32();
    }

    void step(ByteReader& r)
    {
        const uint32_t offset = static_cast<uint32_t>(r.offset());
        const uint8_t opcode = r.read_byte();
        const Op op = static_cast<Op>(opcode);
        const OpInfo& info = op_info(opcode);

        switch (info.cls)
        {
        case OpClass::Unsupported:
            fail("unsupported opcode " + hex_byte(opcode), opcode);

        case OpClass::Comparison:
        case OpClass::Unary:
        case OpClass::Binary:
        case OpClass::Conversion:
            for (unsigned i = 0; i < info.arity; ++i)
                pop(info.operand);
            push(info.result);
            emit(op, offset);
            return;

        case OpClass::Const:
        {
            Instr& in = emit(op, offset);
            switch (op)
            {
            case Op::i32_const:
                in.imm = static_cast<uint32_t>(r.read_s32());
                break;
            case Op::i64_const:
                in.imm = static_cast<uint64_t>(r.read_s64());
                break;
            case Op::f32_const:
                in.imm = r.read_fixed_u32();
                break;
            default:
                in.imm = r.read_fixed_u64();
                break;
            }
            push(info.result);
            return;
        }

        case OpClass::Load:
        {
            check_memory(opcode);
            Instr& in = emit(op, offset);
            read_memarg(r, info, in);
            pop(ValType::I32);
            push(info.result);
            return;
        }
        case OpClass::Store:
        {
            check_memory(opcode);
            Instr& in = emit(op, offset);
            read_memarg(r, info, in);
            pop(info.operand);
            pop(ValType::I32);
            return;
        }
        case OpClass::MemorySize:
        case OpClass::MemoryGrow:
            check_memory(opcode);
            if (r.read_byte() != 0)
                fail("memory index must be zero", opcode);
            if (info.cls == OpClass::MemoryGrow)
                pop(ValType::I32);
            push(ValType::I32);
            emit(op, offset);
            return;

        case OpClass::Variable:
        {
            const uint32_t idx = r.read_u32();
            Instr& in = emit(op, offset);
            in.a = idx;
            if (op == Op::global_get || op == Op::global_set)
            {
                if (idx >= m_module.globals.size())
                    fail("global index out of range", opcode);
                const Global& g = m_module.globals[idx];
                if (op == Op::global_get)
                    push(g.type);
                else
                {
                    if (!g.is_mutable)
                        fail("global.set on immutable global", opcode);
                    pop(g.type);
                }
                return;
            }
            if (idx >= m_out.local_types.size())
                fail("local index out of range", opcode);
            const ValType t = m_out.local_types[idx];
            if (op == Op::local_get)
                push(t);
            else if (op == Op::local_set)
                pop(t);
            else
            {
                pop(t);
                push(t);
            }
            return;
        }

        case OpClass::Parametric:
            if (op == Op::drop)
            {
                pop();
                emit(op, offset);
                return;
            }
            {
                pop(ValType::I32);
                const Slot a = pop();
                const Slot b = pop();
                if (a != Slot::Unknown && b != Slot::Unknown && a != b)
                    fail("select operands differ in type", opcode);
                push(a != Slot::Unknown ? a : b);
                emit(op, offset);
            }
            return;

        case OpClass::Control:
            control(r, op, offset);
            return;
        }
    }

    void control(ByteReader& r, Op op, uint32_t offset)
    {
        const auto opcode = static_cast<uint8_t>(op);
        switch (op)
        {
        case Op::unreachable:
            emit(op, offset);
            mark_unreachable();
            return;
        case Op::nop:
            return;
        case Op::block:
        case Op::loop:
        {
            ControlFrame f{op, std::nullopt, static_cast<uint32_t>(m_stack.size())};
            read_blocktype(r, f.result);
            f.loop_pc = pc();
            m_ctrl.push_back(std::move(f));
            return;
        }
        case Op::if_:
        {
            ControlFrame f{op, std::nullopt, 0};
            read_blocktype(r, f.result);
            pop(ValType::I32);
            f.height = static_cast<uint32_t>(m_stack.size());
            f.if_instr = pc();
            emit(op, offset);
            m_ctrl.push_back(std::move(f));
            return;
        }
        case Op::else_:
        {
            ControlFrame& f = m_ctrl.back();
            if (f.kind != Op::if_ || f.has_else)
                fail("else without matching if", opcode);
            end_of_arm(f);
            const uint32_t else_pc = pc();
            emit(op, offset);
            f.fixups.push_back({false, else_pc});
            m_out.code[f.if_instr].a = pc();
            f.has_else = true;
            m_stack.resize(f.height);
            f.unreachable = false;
            return;
        }
        case Op::end:
        {
            ControlFrame f = std::move(m_ctrl.back());
            end_of_arm(f);
            if (f.kind == Op::if_ && !f.has_else)
            {
                if (f.result)
                    fail("if with a result requires an else arm", opcode);
                m_out.code[f.if_instr].a = pc();
            }
            m_ctrl.pop_back();
            const bool is_function_end = m_ctrl.empty();
            const uint32_t target = pc();
            if (is_function_end)
            {
                Instr& in = emit(Op::return_, offset);
                in.arity = f.result ? 1 : 0;
            }
            for (const Fixup& fx : f.fixups)
            {
                if (fx.in_table)
                    m_out.br_table[fx.index].pc = target;
                else
                    m_out.code[fx.index].a = target;
            }
            if (!is_function_end && f.result)
                push(*f.result);
            return;
        }
        case Op::br:
        case Op::br_if:
        {
            const uint32_t depth = r.read_u32();
            if (op == Op::br_if)
                pop(ValType::I32);
            const uint32_t at = pc();
            const BranchTarget t = branch_to(depth, {false, at});
            check_label_operands(label(depth));
            Instr& in = emit(op, offset);
            in.a = t.pc;
            in.b = t.height;
            in.arity = t.arity;
            if (op == Op::br)
                mark_unreachable();
            return;
        }
        case Op::br_table:
        {
            const uint32_t count = r.read_u32();
            if (count > r.remaining())
                fail("br_table length out of range", opcode);
            pop(ValType::I32);
            Instr& in = emit(op, offset);
            in.a = static_cast<uint32_t>(m_out.br_table.size());
            in.b = count + 1;
            std::optional<uint8_t> arity;
            for (uint32_t i = 0; i <= count; ++i)
            {
                const uint32_t depth = r.read_u32();
                const auto entry = static_cast<uint32_t>(m_out.br_table.size());
                m_out.br_table.push_back(branch_to(depth, {true, entry}));
                const ControlFrame& f = label(depth);
                const uint8_t a = f.label_arity();
                if (arity && *arity != a)
                    fail("br_table targets differ in arity", opcode);
                arity = a;
                check_label_operands(f);
            }
            mark_unreachable();
            return;
        }
        case Op::return_:
        {
            const ControlFrame& fn = m_ctrl.front();
            if (fn.result)
                pop(*fn.result);
            Instr& in = emit(op, offset);
            in.arity = fn.result ? 1 : 0;
            mark_unreachable();
            return;
        }
        case Op::call:
        {
            const uint32_t callee = r.read_u32();
            if (callee >= m_module.num_functions())
                fail("call target out of range", opcode);
            const FunctionType& t = m_module.function_type(callee);
            for (auto it = t.params.rbegin(); it != t.params.rend(); ++it)
                pop(*it);
            for (ValType res : t.results)
                push(res);
            emit(op, offset).a = callee;
            return;
        }
        default:
            fail("unsupported opcode " + hex_byte(opcode), opcode);
        }
    }

    // Checks the operand stack at the end of a block arm against its result.
    void end_of_arm(const ControlFrame& f)
    {
        if (f.result)
            pop(*f.result);
        if (m_stack.size() != f.height)
            fail("block leaves extra values on the operand stack");
    }

    const Module& m_module;
    const FunctionBody& m_body;
    uint32_t m_func_index;
    CompiledFunction m_out;
    std::vector<Slot> m_stack;
    std::vector<ControlFrame> m_ctrl;
};

void validate_module_level(const Module& m)
{
    for (const auto& t : m.types)
        if (t.results.size() > 1)
            throw ValidationError("multi-value function results are not supported");
    for (const auto& imp : m.imports)
    {
        if (imp.kind != ExternalKind::Function)
            throw ValidationError("only function imports are supported (" + imp.module + "." +
                                  imp.field + ")");
        if (imp.type_index >= m.types.size())
            throw ValidationError("import type index out of range");
    }
    if (m.table_count != 0 || m.element_segment_count != 0)
        throw ValidationError("tables and element segments are not supported");
    if (m.memories.size() > 1)
        throw ValidationError("at most one memory is allowed");
    for (const auto& mem : m.memories)
    {
        if (mem.initial_pages > max_pages || (mem.max_pages && *mem.max_pages > max_pages))
            throw ValidationError("memory size must be at most 65536 pages");
        if (mem.max_pages && mem.initial_pages > *mem.max_pages)
            throw ValidationError("memory initial size exceeds maximum");
    }
    for (const auto& g : m.globals)
        if (g.init.type != g.type)
            throw ValidationError("global initializer type mismatch");
    for (const auto& [name, e] : m.exports)
    {
        switch (e.kind)
        {
        case ExternalKind::Function:
            if (e.index >= m.num_functions())
                throw ValidationError("export '" + name + "' function index out of range");
            break;
        case ExternalKind::Memory:
            if (e.index >= m.memories.size())
                throw ValidationError("export '" + name + "' memory index out of range");
            break;
        case ExternalKind::Global:
            if (e.index >= m.globals.size())
                throw ValidationError("export '" + name + "' global index out of range");
            break;
        case ExternalKind::Table:
            throw ValidationError("table exports are not supported");
        }
    }
    if (m.start)
    {
        if (*m.start >= m.num_functions())
            throw ValidationError("start function index out of range");
        const FunctionType& t = m.function_type(*m.start);
        if (!t.params.empty() || !t.results.empty())
            throw ValidationError("start function must have type [] -> []");
    }
    for (const auto& seg : m.data)
    {
        if (seg.passive)
            throw ValidationError("passive data segments are not supported");
        if (seg.memory_index != 0 || m.memories.empty())
            throw ValidationError("data segment refers to a missing memory");
    }
}

}  // namespace

Module validate_subset(Module m)
{
    validate_module_level(m);
    m.compiled.clear();
    m.compiled.reserve(m.functions.size());
    for (uint32_t i = 0; i < m.functions.size(); ++i)
        m.compiled.push_back(FunctionValidator(m, i).run());
    m.validated = true;
    return m;
}

Module load_module(std::span<const uint8_t> bytes)
{
    return validate_subset(decode_module(bytes));
}

}  // namespace taintwasm
