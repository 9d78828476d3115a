// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "taintwasm/builder.hpp"

#include "taintwasm/decoder.hpp"

#include <bit>
#include <stdexcept>

namespace taintwasm
{
void write_u32(std::vector<uint8_t>& out, uint32_t v)
{
    do
    {
        uint8_t byte = v & 0x7F;
        v >>= 7;
        if (v != 0)
            byte |= 0x80;
        out.push_back(byte);
    } while (v != 0);
}

namespace
{
template <typename T>
void write_signed(std::vector<uint8_t>& out, T v)
{
    bool more = true;
    while (more)
    {
        uint8_t byte = v & 0x7F;
        v >>= 7;  // arithmetic shift
        const bool sign = byte & 0x40;
        more = !((v == 0 && !sign) || (v == -1 && sign));
        if (more)
            byte |= 0x80;
        out.push_back(byte);
    }
}

void write_fixed(std::vector<uint8_t>& out, uint64_t v, unsigned bytes)
{
    for (unsigned i = 0; i < bytes; ++i)
        out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void write_name(std::vector<uint8_t>& out, const std::string& s)
{
    write_u32(out, static_cast<uint32_t>(s.size()));
    out.insert(out.end(), s.begin(), s.end());
}

void write_const(std::vector<uint8_t>& out, Value v)
{
    switch (v.type)
    {
    case ValType::I32:
        out.push_back(static_cast<uint8_t>(Op::i32_const));
        write_s32(out, v.as_i32());
        break;
    case ValType::I64:
        out.push_back(static_cast<uint8_t>(Op::i64_const));
        write_s64(out, v.as_i64());
        break;
    case ValType::F32:
        out.push_back(static_cast<uint8_t>(Op::f32_const));
        write_fixed(out, v.bits, 4);
        break;
    case ValType::F64:
        out.push_back(static_cast<uint8_t>(Op::f64_const));
        write_fixed(out, v.bits, 8);
        break;
    }
    out.push_back(static_cast<uint8_t>(Op::end));
}

void write_section(std::vector<uint8_t>& out, uint8_t id, const std::vector<uint8_t>& payload)
{
    out.push_back(id);
    write_u32(out, static_cast<uint32_t>(payload.size()));
    out.insert(out.end(), payload.begin(), payload.end());
}

void write_valtypes(std::vector<uint8_t>& out, const std::vector<ValType>& ts)
{
    write_u32(out, static_cast<uint32_t>(ts.size()));
    for (ValType t : ts)
        out.push_back(static_cast<uint8_t>(t));
}

unsigned natural_align(Op o)
{
    return static_cast<unsigned>(std::countr_zero(static_cast<unsigned>(op_info(o).width)));
}
}  // namespace

void write_s32(std::vector<uint8_t>& out, int32_t v)
{
    write_signed(out, v);
}

void write_s64(std::vector<uint8_t>& out, int64_t v)
{
    write_signed(out, v);
}

CodeBuilder& CodeBuilder::op(Op o)
{
    m_bytes.push_back(static_cast<uint8_t>(o));
    return *this;
}

CodeBuilder& CodeBuilder::i32_const(int32_t v)
{
    op(Op::i32_const);
    write_s32(m_bytes, v);
    return *this;
}

CodeBuilder& CodeBuilder::i64_const(int64_t v)
{
    op(Op::i64_const);
    write_s64(m_bytes, v);
    return *this;
}

CodeBuilder& CodeBuilder::f32_const(float v)
{
    op(Op::f32_const);
    write_fixed(m_bytes, std::bit_cast<uint32_t>(v), 4);
    return *this;
}

CodeBuilder& CodeBuilder::f64_const(double v)
{
    op(Op::f64_const);
    write_fixed(m_bytes, std::bit_cast<uint64_t>(v), 8);
    return *this;
}

CodeBuilder& CodeBuilder::indexed(Op o, uint32_t i)
{
    op(o);
    write_u32(m_bytes, i);
    return *this;
}

CodeBuilder& CodeBuilder::br_table(const std::vector<uint32_t>& depths, uint32_t default_depth)
{
    op(Op::br_table);
    write_u32(m_bytes, static_cast<uint32_t>(depths.size()));
    for (uint32_t d : depths)
        write_u32(m_bytes, d);
    write_u32(m_bytes, default_depth);
    return *this;
}

CodeBuilder& CodeBuilder::structured(Op o, std::optional<ValType> result)
{
    op(o);
    m_bytes.push_back(result ? static_cast<uint8_t>(*result) : uint8_t{0x40});
    return *this;
}

CodeBuilder& CodeBuilder::block(std::optional<ValType> result)
{
    return structured(Op::block, result);
}

CodeBuilder& CodeBuilder::loop(std::optional<ValType> result)
{
    return structured(Op::loop, result);
}

CodeBuilder& CodeBuilder::if_(std::optional<ValType> result)
{
    return structured(Op::if_, result);
}

CodeBuilder& CodeBuilder::mem(Op o, uint32_t offset, std::optional<uint32_t> align_log2)
{
    op(o);
    write_u32(m_bytes, align_log2.value_or(natural_align(o)));
    write_u32(m_bytes, offset);
    return *this;
}

CodeBuilder& CodeBuilder::memory_size()
{
    op(Op::memory_size);
    m_bytes.push_back(0);
    return *this;
}

CodeBuilder& CodeBuilder::memory_grow()
{
    op(Op::memory_grow);
    m_bytes.push_back(0);
    return *this;
}

CodeBuilder& CodeBuilder::raw(std::initializer_list<uint8_t> bytes)
{
    m_bytes.insert(m_bytes.end(), bytes);
    return *this;
}

uint32_t ModuleBuilder::add_type(const FunctionType& t)
{
    for (uint32_t i = 0; i < m_types.size(); ++i)
        if (m_types[i] == t)
            return i;
    m_types.push_back(t);
    return static_cast<uint32_t>(m_types.size() - 1);
}

uint32_t ModuleBuilder::import_function(std::string module, std::string field, const FunctionType& t)
{
    if (!m_funcs.empty())
        throw std::logic_error("imports must be added before defined functions");
    m_imports.push_back({std::move(module), std::move(field), ExternalKind::Function, add_type(t)});
    return static_cast<uint32_t>(m_imports.size() - 1);
}

uint32_t ModuleBuilder::add_function(
    const FunctionType& t, std::vector<ValType> locals, const CodeBuilder& code)
{
    m_funcs.push_back({add_type(t), std::move(locals), code.bytes()});
    return static_cast<uint32_t>(m_imports.size() + m_funcs.size() - 1);
}

void ModuleBuilder::add_memory(uint32_t initial_pages, std::optional<uint32_t> max)
{
    m_memory = MemorySpec{initial_pages, max};
}

uint32_t ModuleBuilder::add_global(ValType type, bool is_mutable, Value init)
{
    m_globals.push_back({type, is_mutable, init});
    return static_cast<uint32_t>(m_globals.size() - 1);
}

void ModuleBuilder::export_function(std::string name, uint32_t index)
{
    m_exports.push_back({std::move(name), ExternalKind::Function, index});
}

void ModuleBuilder::export_memory(std::string name)
{
    m_exports.push_back({std::move(name), ExternalKind::Memory, 0});
}

void ModuleBuilder::export_global(std::string name, uint32_t index)
{
    m_exports.push_back({std::move(name), ExternalKind::Global, index});
}

void ModuleBuilder::add_data(uint32_t offset, std::vector<uint8_t> bytes)
{
    DataSegment seg;
    seg.offset = offset;
    seg.bytes = std::move(bytes);
    m_data.push_back(std::move(seg));
}

void ModuleBuilder::add_custom_section(std::string name, std::vector<uint8_t> payload)
{
    m_custom.emplace_back(std::move(name), std::move(payload));
}

std::vector<uint8_t> ModuleBuilder::build() const
{
    std::vector<uint8_t> out(std::begin(wasm_magic), std::end(wasm_magic));
    write_fixed(out, wasm_version, 4);
    std::vector<uint8_t> s;

    if (!m_types.empty())
    {
        s.clear();
        write_u32(s, static_cast<uint32_t>(m_types.size()));
        for (const auto& t : m_types)
        {
            s.push_back(0x60);
            write_valtypes(s, t.params);
            write_valtypes(s, t.results);
        }
        write_section(out, 1, s);
    }
    if (!m_imports.empty())
    {
        s.clear();
        write_u32(s, static_cast<uint32_t>(m_imports.size()));
        for (const auto& imp : m_imports)
        {
            write_name(s, imp.module);
            write_name(s, imp.field);
            s.push_back(0);
            write_u32(s, imp.type_index);
        }
        write_section(out, 2, s);
    }
    if (!m_funcs.empty())
    {
        s.clear();
        write_u32(s, static_cast<uint32_t>(m_funcs.size()));
        for (const auto& f : m_funcs)
            write_u32(s, f.type_index);
        write_section(out, 3, s);
    }
    if (m_memory)
    {
        s.clear();
        write_u32(s, 1);
        s.push_back(m_memory->max_pages ? 1 : 0);
        write_u32(s, m_memory->initial_pages);
        if (m_memory->max_pages)
            write_u32(s, *m_memory->max_pages);
        write_section(out, 5, s);
    }
    if (!m_globals.empty())
    {
        s.clear();
        write_u32(s, static_cast<uint32_t>(m_globals.size()));
        for (const auto& g : m_globals)
        {
            s.push_back(static_cast<uint8_t>(g.type));
            s.push_back(g.is_mutable ? 1 : 0);
            write_const(s, g.init);
        }
        write_section(out, 6, s);
    }
    if (!m_exports.empty())
    {
        s.clear();
        write_u32(s, static_cast<uint32_t>(m_exports.size()));
        for (const auto& e : m_exports)
        {
            write_name(s, e.name);
            s.push_back(static_cast<uint8_t>(e.kind));
            write_u32(s, e.index);
        }
        write_section(out, 7, s);
    }
    if (m_start)
    {
        s.clear();
        write_u32(s, *m_start);
        write_section(out, 8, s);
    }
    if (!m_funcs.empty())
    {
        s.clear();
        write_u32(s, static_cast<uint32_t>(m_funcs.size()));
        for (const auto& f : m_funcs)
        {
            std::vector<uint8_t> body;
            // One local group per run of equal types.
            std::vector<std::pair<uint32_t, ValType>> groups;
            for (ValType t : f.locals)
            {
                if (!groups.empty() && groups.back().second == t)
                    ++groups.back().first;
                else
                    groups.emplace_back(1, t);
            }
            write_u32(body, static_cast<uint32_t>(groups.size()));
            for (const auto& [n, t] : groups)
            {
                write_u32(body, n);
                body.push_back(static_cast<uint8_t>(t));
            }
            body.insert(body.end(), f.code.begin(), f.code.end());
            write_u32(s, static_cast<uint32_t>(body.size()));
            s.insert(s.end(), body.begin(), body.end());
        }
        write_section(out, 10, s);
    }
    if (!m_data.empty())
    {
        s.clear();
        write_u32(s, static_cast<uint32_t>(m_data.size()));
        for (const auto& d : m_data)
        {
            write_u32(s, 0);
            write_const(s, Value::i32(static_cast<int32_t>(d.offset)));
            write_u32(s, static_cast<uint32_t>(d.bytes.size()));
            s.insert(s.end(), d.bytes.begin(), d.bytes.end());
        }
        write_section(out, 11, s);
    }
    for (const auto& [name, payload] : m_custom)
    {
        s.clear();
        write_name(s, name);
        s.insert(s.end(), payload.begin(), payload.end());
        write_section(out, 0, s);
    }
    return out;
}

}  // namespace taintwasm
