// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "taintwasm/opcodes.hpp"
#include "taintwasm/value.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace taintwasm
{
inline constexpr uint32_t page_size = 65536;
inline constexpr uint32_t max_pages = 65536;

struct FunctionType
{
    std::vector<ValType> params;
    std::vector<ValType> results;  // at most one

    friend bool operator==(const FunctionType&, const FunctionType&) = default;
};

[[nodiscard]] std::string to_string(const FunctionType& t);

struct MemorySpec
{
    uint32_t initial_pages = 0;
    std::optional<uint32_t> max_pages;
};

enum class ExternalKind : uint8_t
{
    Function = 0,
    Table = 1,
    Memory = 2,
    Global = 3,
};

struct Import
{
    std::string module;
    std::string field;
    ExternalKind kind = ExternalKind::Function;
    uint32_t type_index = 0;  // function imports only
};

struct Export
{
    ExternalKind kind = ExternalKind::Function;
    uint32_t index = 0;
};

struct Global
{
    ValType type = ValType::I32;
    bool is_mutable = false;
    Value init;
};

struct DataSegment
{
    bool passive = false;
    uint32_t memory_index = 0;
    uint32_t offset = 0;
    std::vector<uint8_t> bytes;
};

/// A defined function as it appears in the code section.
struct FunctionBody
{
    uint32_t type_index = 0;
    std::vector<ValType> locals;  // declared locals, excluding params
    size_t code_begin = 0;        // byte range of the instruction sequence
    size_t code_end = 0;
};

/// Pre-decoded instruction. Block structure is resolved by the validator:
/// `block`, `loop` and inner `end` vanish, branches carry their target.
///
///  br / br_if      a = target pc, b = operand height to keep, arity = values carried
///  br_table        a = first entry in CompiledFunction::br_table, b = entry count (+ default)
///  if              a = pc of the else arm (or of the matching end)
///  else            a = pc after the matching end
///  call            a = function index
///  local.* / global.*  a = index
///  loads/stores    a = memarg offset
///  consts          imm = bit pattern
struct Instr
{
    Op op = Op::nop;
    uint8_t arity = 0;
    uint32_t offset = 0;  // byte offset of the opcode in the module binary
    uint32_t a = 0;
    uint32_t b = 0;
    uint64_t imm = 0;
};

struct BranchTarget
{
    uint32_t pc = 0;
    uint32_t height = 0;
    uint8_t arity = 0;
};

struct CompiledFunction
{
    uint32_t type_index = 0;
    uint32_t num_params = 0;
    std::vector<ValType> local_types;  // params followed by declared locals
    std::vector<Instr> code;
    std::vector<BranchTarget> br_table;
    uint32_t max_height = 0;  // deepest operand stack
};

struct Module
{
    std::vector<uint8_t> bytes;

    std::vector<FunctionType> types;
    std::vector<Import> imports;
    std::vector<FunctionBody> functions;
    std::vector<MemorySpec> memories;
    std::vector<Global> globals;
    std::map<std::string, Export, std::less<>> exports;
    std::optional<uint32_t> start;
    std::vector<DataSegment> data;
    uint32_t table_count = 0;
    uint32_t element_segment_count = 0;

    // Filled by validate_subset(); one entry per defined function.
    std::vector<CompiledFunction> compiled;
    bool validated = false;

    [[nodiscard]] uint32_t num_imported_functions() const noexcept;
    [[nodiscard]] uint32_t num_functions() const noexcept;
    /// Signature of a function in the combined import + definition index space.
    [[nodiscard]] const FunctionType& function_type(uint32_t func_index) const;
};

}  // namespace taintwasm
