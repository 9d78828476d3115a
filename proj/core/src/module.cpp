// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "taintwasm/module.hpp"

#include "taintwasm/errors.hpp"

#include <algorithm>

namespace taintwasm
{
std::string to_string(const FunctionType& t)
{
    std::string s = "(";
    for (size_t i = 0; i < t.params.size(); ++i)
    {
        if (i)
            s += ", ";
        s += to_string(t.params[i]);
    }
    s += ") -> (";
    for (size_t i = 0; i < t.results.size(); ++i)
    {
        if (i)
            s += ", ";
        s += to_string(t.results[i]);
    }
    return s + ")";
}

uint32_t Module::num_imported_functions() const noexcept
{
    return static_cast<uint32_t>(std::count_if(imports.begin(), imports.end(),
        [](const Import& i) { return i.kind == ExternalKind::Function; }));
}

uint32_t Module::num_functions() const noexcept
{
    return num_imported_functions() + static_cast<uint32_t>(functions.size());
}

const FunctionType& Module::function_type(uint32_t func_index) const
{
    uint32_t seen = 0;
    for (const auto& imp : imports)
    {
        if (imp.kind != ExternalKind::Function)
            continue;
        if (seen == func_index)
            return types.at(imp.type_index);
        ++seen;
    }
    const uint32_t local = func_index - seen;
    if (func_index < seen || local >= functions.size())
        throw std::out_of_range("function index " + std::to_string(func_index) + " out of range");
    return types.at(functions[local].type_index);
}

std::string_view to_string(TrapKind kind) noexcept
{
    switch (kind)
    {
    case TrapKind::Unreachable:
        return "unreachable";
    case TrapKind::MemoryOutOfBounds:
        return "out of bounds memory access";
    case TrapKind::IntegerDivideByZero:
        return "integer divide by zero";
    case TrapKind::IntegerOverflow:
        return "integer overflow";
    case TrapKind::InvalidConversion:
        return "invalid conversion to integer";
    case TrapKind::StackExhausted:
        return "call stack exhausted";
    case TrapKind::HostError:
        return "host function error";
    }
    return "unknown trap";
}

Trap::Trap(TrapKind kind, uint32_t offset, const std::string& detail)
  : std::runtime_error(std::string(to_string(kind)) + " at offset " + std::to_string(offset) +
                       (detail.empty() ? "" : ": " + detail)),
    m_kind(kind),
    m_offset(offset)
{}

}  // namespace taintwasm
