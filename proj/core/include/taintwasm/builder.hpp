// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "taintwasm/module.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace taintwasm
{
void write_u32(std::vector<uint8_t>& out, uint32_t v);
void write_s32(std::vector<uint8_t>& out, int32_t v);
void write_s64(std::vector<uint8_t>& out, int64_t v);

/// Emits one function body's instruction bytes.
class CodeBuilder
{
public:
    CodeBuilder& op(Op o);
    CodeBuilder& i32_const(int32_t v);
    CodeBuilder& i64_const(int64_t v);
    CodeBuilder& f32_const(float v);
    CodeBuilder& f64_const(double v);
    CodeBuilder& local_get(uint32_t i) { return indexed(Op::local_get, i); }
    CodeBuilder& local_set(uint32_t i) { return indexed(Op::local_set, i); }
    CodeBuilder& local_tee(uint32_t i) { return indexed(Op::local_tee, i); }
    CodeBuilder& global_get(uint32_t i) { return indexed(Op::global_get, i); }
    CodeBuilder& global_set(uint32_t i) { return indexed(Op::global_set, i); }
    CodeBuilder& call(uint32_t f) { return indexed(Op::call, f); }
    CodeBuilder& br(uint32_t depth) { return indexed(Op::br, depth); }
    CodeBuilder& br_if(uint32_t depth) { return indexed(Op::br_if, depth); }
    CodeBuilder& br_table(const std::vector<uint32_t>& depths, uint32_t default_depth);
    CodeBuilder& block(std::optional<ValType> result = std::nullopt);
    CodeBuilder& loop(std::optional<ValType> result = std::nullopt);
    CodeBuilder& if_(std::optional<ValType> result = std::nullopt);
    CodeBuilder& else_() { return op(Op::else_); }
    CodeBuilder& end() { return op(Op::end); }
    /// Load or store with the given offset; alignment defaults to natural.
    CodeBuilder& mem(Op o, uint32_t offset = 0, std::optional<uint32_t> align_log2 = std::nullopt);
    CodeBuilder& memory_size();
    CodeBuilder& memory_grow();
    CodeBuilder& raw(std::initializer_list<uint8_t> bytes);

    [[nodiscard]] const std::vector<uint8_t>& bytes() const noexcept { return m_bytes; }

private:
    CodeBuilder& indexed(Op o, uint32_t i);
    CodeBuilder& structured(Op o, std::optional<ValType> result);

    std::vector<uint8_t> m_bytes;
};

/// Assembles an MVP binary. Function imports must be added before any
/// defined function so the returned indices stay stable.
class ModuleBuilder
{
public:
    uint32_t add_type(const FunctionType& t);
    uint32_t import_function(std::string module, std::string field, const FunctionType& t);
    /// `code` must end with the function's final `end`.
    uint32_t add_function(const FunctionType& t, std::vector<ValType> locals, const CodeBuilder& code);
    void add_memory(uint32_t initial_pages, std::optional<uint32_t> maximum_pages = std::nullopt);
    uint32_t add_global(ValType type, bool is_mutable, Value init);
    void export_function(std::string name, uint32_t index);
    void export_memory(std::string name);
    void export_global(std::string name, uint32_t index);
    void set_start(uint32_t index) { m_start = index; }
    void add_data(uint32_t offset, std::vector<uint8_t> bytes);
    /// Appends a custom section (id 0) at the end of the module.
    void add_custom_section(std::string name, std::vector<uint8_t> payload);

    [[nodiscard]] std::vector<uint8_t> build() const;

private:
    struct Func
    {
        uint32_t type_index;
        std::vector<ValType> locals;
        std::vector<uint8_t> code;
    };
    struct Exp
    {
        std::string name;
        ExternalKind kind;
        uint32_t index;
    };

    std::vector<FunctionType> m_types;
    std::vector<Import> m_imports;
    std::vector<Func> m_funcs;
    std::optional<MemorySpec> m_memory;
    std::vector<Global> m_globals;
    std::vector<Exp> m_exports;
    std::optional<uint32_t> m_start;
    std::vector<DataSegment> m_data;
    std::vector<std::pair<std::string, std::vector<uint8_t>>> m_custom;
};

}  // namespace taintwasm
