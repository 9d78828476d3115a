// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "taintwasm/decoder.hpp"

#include "taintwasm/errors.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>

namespace taintwasm
{
void ByteReader::fail(const std::string& what) const
{
    throw DecodeError(offset(), what);
}

uint8_t ByteReader::read_byte()
{
    if (m_pos >= m_bytes.size())
        fail("unexpected end");
    return m_bytes[m_pos++];
}

uint8_t ByteReader::peek_byte() const
{
    if (m_pos >= m_bytes.size())
        fail("unexpected end");
    return m_bytes[m_pos];
}

std::span<const uint8_t> ByteReader::read_bytes(size_t n)
{
    if (n > remaining())
        fail("unexpected end");
    auto out = m_bytes.subspan(m_pos, n);
    m_pos += n;
    return out;
}

namespace
{
template <typename T, bool Signed>
T read_leb(ByteReader& r)
{
    constexpr unsigned bits = sizeof(T) * 8;
    constexpr unsigned max_bytes = (bits + 6) / 7;
    const size_t start = r.offset();

    using U = std::make_unsigned_t<T>;
    U result = 0;
    unsigned shift = 0;
    for (unsigned i = 0;; ++i)
    {
        const uint8_t byte = r.read_byte();
        if (i == max_bytes - 1)
        {
            // Last permitted byte: no continuation, and the unused high bits
            // must be zero (unsigned) or a sign extension (signed).
            const unsigned used = bits - shift;
            const uint8_t unused_mask = static_cast<uint8_t>(0x7F & ~((1u << used) - 1));
            if (byte & 0x80)
                throw DecodeError(start, "LEB128 integer too long");
            const uint8_t unused = byte & unused_mask;
            if constexpr (Signed)
            {
                const bool negative = (byte >> (used - 1)) & 1;
                if (unused != (negative ? unused_mask : 0))
                    throw DecodeError(start, "LEB128 integer overflow");
            }
            else if (unused != 0)
                throw DecodeError(start, "LEB128 integer overflow");
        }
        result |= static_cast<U>(byte & 0x7F) << shift;
        shift += 7;
        if ((byte & 0x80) == 0)
        {
            if constexpr (Signed)
            {
                if (shift < bits && (byte & 0x40))
                    result |= ~U{0} << shift;
            }
            return static_cast<T>(result);
        }
    }
}
}  // namespace

uint32_t ByteReader::read_u32()
{
    return read_leb<uint32_t, false>(*this);
}

int32_t ByteReader::read_s32()
{
    return read_leb<int32_t, true>(*this);
}

int64_t ByteReader::read_s64()
{
    return read_leb<int64_t, true>(*this);
}

uint32_t ByteReader::read_fixed_u32()
{
    auto b = read_bytes(4);
    uint32_t v;
    std::memcpy(&v, b.data(), 4);
    return v;
}

uint64_t ByteReader::read_fixed_u64()
{
    auto b = read_bytes(8);
    uint64_t v;
    std::memcpy(&v, b.data(), 8);
    return v;
}

std::string ByteReader::read_name()
{
    const uint32_t len = read_u32();
    auto b = read_bytes(len);
    return {b.begin(), b.end()};
}

ByteReader ByteReader::sub_reader(size_t n)
{
    const size_t at = offset();
    auto b = read_bytes(n);
    return ByteReader(b, at);
}

namespace
{
enum SectionId : uint8_t
{
    custom_id = 0,
    type_id = 1,
    import_id = 2,
    function_id = 3,
    table_id = 4,
    memory_id = 5,
    global_id = 6,
    export_id = 7,
    start_id = 8,
    element_id = 9,
    code_id = 10,
    data_id = 11,
    datacount_id = 12,
};

// Position of a section in the mandated order; datacount sits between
// element and code.
int section_rank(uint8_t id)
{
    if (id == datacount_id)
        return 2 * element_id + 1;
    return 2 * id;
}

// Guards against absurd counts in hostile input before any allocation.
constexpr uint32_t max_vector_count = 1'000'000;
constexpr uint64_t max_locals = 50'000;

uint32_t read_count(ByteReader& r)
{
    const size_t at = r.offset();
    const uint32_t n = r.read_u32();
    if (n > max_vector_count || n > r.remaining())
        throw DecodeError(at, "vector length out of range");
    return n;
}

ValType read_valtype(ByteReader& r)
{
    const size_t at = r.offset();
    const uint8_t b = r.read_byte();
    if (!is_valtype_byte(b))
        throw DecodeError(at, "invalid value type");
    return static_cast<ValType>(b);
}

MemorySpec read_limits(ByteReader& r)
{
    const size_t at = r.offset();
    const uint8_t flags = r.read_byte();
    if (flags > 1)
        throw DecodeError(at, "unsupported limits flags");
    MemorySpec spec;
    spec.initial_pages = r.read_u32();
    if (flags == 1)
        spec.max_pages = r.read_u32();
    return spec;
}

Value read_const_expr(ByteReader& r)
{
    const size_t at = r.offset();
    const uint8_t op = r.read_byte();
    Value v;
    switch (static_cast<Op>(op))
    {
    case Op::i32_const:
        v = Value::i32(r.read_s32());
        break;
    case Op::i64_const:
        v = Value::i64(r.read_s64());
        break;
    case Op::f32_const:
        v = Value{ValType::F32, r.read_fixed_u32()};
        break;
    case Op::f64_const:
        v = Value{ValType::F64, r.read_fixed_u64()};
        break;
    default:
        throw DecodeError(at, "unsupported constant expression");
    }
    if (r.read_byte() != static_cast<uint8_t>(Op::end))
        throw DecodeError(at, "constant expression not terminated by end");
    return v;
}

void read_type_section(ByteReader& r, Module& m)
{
    const uint32_t n = read_count(r);
    m.types.reserve(n);
    for (uint32_t i = 0; i < n; ++i)
    {
        if (r.read_byte() != 0x60)
            r.fail("expected function type form 0x60");
        FunctionType t;
        for (uint32_t k = 0, np = read_count(r); k < np; ++k)
            t.params.push_back(read_valtype(r));
        for (uint32_t k = 0, nr = read_count(r); k < nr; ++k)
            t.results.push_back(read_valtype(r));
        m.types.push_back(std::move(t));
    }
}

void read_import_section(ByteReader& r, Module& m)
{
    const uint32_t n = read_count(r);
    for (uint32_t i = 0; i < n; ++i)
    {
        Import imp;
        imp.module = r.read_name();
        imp.field = r.read_name();
        const size_t at = r.offset();
        const uint8_t kind = r.read_byte();
        switch (kind)
        {
        case 0:
            imp.kind = ExternalKind::Function;
            imp.type_index = r.read_u32();
            break;
        case 1:
            imp.kind = ExternalKind::Table;
            r.read_byte();
            read_limits(r);
            break;
        case 2:
            imp.kind = ExternalKind::Memory;
            read_limits(r);
            break;
        case 3:
            imp.kind = ExternalKind::Global;
            read_valtype(r);
            r.read_byte();
            break;
        default:
            throw DecodeError(at, "invalid import kind");
        }
        m.imports.push_back(std::move(imp));
    }
}

void read_export_section(ByteReader& r, Module& m)
{
    const uint32_t n = read_count(r);
    for (uint32_t i = 0; i < n; ++i)
    {
        const size_t at = r.offset();
        std::string name = r.read_name();
        const uint8_t kind = r.read_byte();
        if (kind > 3)
            throw DecodeError(at, "invalid export kind");
        Export e{static_cast<ExternalKind>(kind), r.read_u32()};
        if (!m.exports.emplace(std::move(name), e).second)
            throw DecodeError(at, "duplicate export name");
    }
}

void read_code_section(ByteReader& r, Module& m, size_t declared_functions)
{
    const size_t at = r.offset();
    const uint32_t n = read_count(r);
    if (n != declared_functions)
        throw DecodeError(at, "function and code section counts differ");
    for (uint32_t i = 0; i < n; ++i)
    {
        const uint32_t size = r.read_u32();
        ByteReader body = r.sub_reader(size);
        FunctionBody& fn = m.functions[i];
        uint64_t total = 0;
        for (uint32_t g = 0, groups = read_count(body); g < groups; ++g)
        {
            const size_t gat = body.offset();
            const uint32_t count = body.read_u32();
            total += count;
            if (total > max_locals)
                throw DecodeError(gat, "too many locals");
            const ValType t = read_valtype(body);
            fn.locals.insert(fn.locals.end(), count, t);
        }
        fn.code_begin = body.offset();
        fn.code_end = body.offset() + body.remaining();
        if (fn.code_begin == fn.code_end)
            body.fail("empty function body");
    }
}

void read_data_section(ByteReader& r, Module& m)
{
    const uint32_t n = read_count(r);
    for (uint32_t i = 0; i < n; ++i)
    {
        const size_t at = r.offset();
        const uint32_t flags = r.read_u32();
        DataSegment seg;
        switch (flags)
        {
        case 0:
            seg.offset = static_cast<uint32_t>(read_const_expr(r).bits);
            break;
        case 1:
            seg.passive = true;
            break;
        case 2:
            seg.memory_index = r.read_u32();
            seg.offset = static_cast<uint32_t>(read_const_expr(r).bits);
            break;
        default:
            throw DecodeError(at, "invalid data segment flags");
        }
        const uint32_t len = r.read_u32();
        auto b = r.read_bytes(len);
        seg.bytes.assign(b.begin(), b.end());
        m.data.push_back(std::move(seg));
    }
}

}  // namespace

Module decode_module(std::span<const uint8_t> bytes)
{
    Module m;
    m.bytes.assign(bytes.begin(), bytes.end());
    ByteReader r(m.bytes);

    if (bytes.size() < 4 || !std::equal(std::begin(wasm_magic), std::end(wasm_magic), bytes.begin()))
        throw DecodeError(0, "bad magic number");
    r.read_bytes(4);
    if (bytes.size() < 8)
        throw DecodeError(4, "truncated version");
    if (r.read_fixed_u32() != wasm_version)
        throw DecodeError(4, "unsupported version");

    int last_rank = -1;
    size_t declared_functions = 0;
    bool saw_code = false;
    while (!r.empty())
    {
        const size_t id_offset = r.offset();
        const uint8_t id = r.read_byte();
        if (id > datacount_id)
            throw DecodeError(id_offset, "unknown section id " + std::to_string(id));
        const uint32_t size = r.read_u32();
        if (size > r.remaining())
            throw DecodeError(id_offset, "section extends past end of module");
        ByteReader s = r.sub_reader(size);

        if (id == custom_id)
        {
            s.read_name();
            continue;
        }
        if (section_rank(id) <= last_rank)
            throw DecodeError(id_offset, "section out of order or duplicated");
        last_rank = section_rank(id);

        switch (id)
        {
        case type_id:
            read_type_section(s, m);
            break;
        case import_id:
            read_import_section(s, m);
            break;
        case function_id:
            declared_functions = read_count(s);
            m.functions.resize(declared_functions);
            for (auto& fn : m.functions)
                fn.type_index = s.read_u32();
            break;
        case table_id:
            m.table_count = s.read_u32();
            s.read_bytes(s.remaining());
            break;
        case memory_id:
            for (uint32_t k = 0, n = read_count(s); k < n; ++k)
                m.memories.push_back(read_limits(s));
            break;
        case global_id:
            for (uint32_t k = 0, n = read_count(s); k < n; ++k)
            {
                Global g;
                g.type = read_valtype(s);
                const size_t mat = s.offset();
                const uint8_t mut = s.read_byte();
                if (mut > 1)
                    throw DecodeError(mat, "invalid global mutability");
                g.is_mutable = mut == 1;
                g.init = read_const_expr(s);
                m.globals.push_back(g);
            }
            break;
        case export_id:
            read_export_section(s, m);
            break;
        case start_id:
            m.start = s.read_u32();
            break;
        case element_id:
            m.element_segment_count = s.read_u32();
            s.read_bytes(s.remaining());
            break;
        case datacount_id:
            s.read_u32();
            break;
        case code_id:
            read_code_section(s, m, declared_functions);
            saw_code = true;
            break;
        case data_id:
            read_data_section(s, m);
            break;
        }
        if (!s.empty())
            s.fail("section size mismatch");
    }
    if (declared_functions != 0 && !saw_code)
        throw DecodeError(r.offset(), "function section without code section");
    return m;
}

std::vector<uint8_t> read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace taintwasm
