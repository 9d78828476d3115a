// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace taintwasm
{
/// Malformed binary. offset() is the byte position where decoding failed.
class DecodeError : public std::runtime_error
{
public:
    DecodeError(size_t offset, const std::string& what)
      : std::runtime_error("decode error at offset " + std::to_string(offset) + ": " + what),
        m_offset(offset)
    {}

    [[nodiscard]] size_t offset() const noexcept { return m_offset; }

private:
    size_t m_offset;
};

/// Module uses something outside the executed subset, or fails type-checking.
class ValidationError : public std::runtime_error
{
public:
    ValidationError(const std::string& what, std::optional<uint32_t> function = std::nullopt,
        std::optional<uint8_t> opcode = std::nullopt)
      : std::runtime_error(what), m_function(function), m_opcode(opcode)
    {}

    [[nodiscard]] std::optional<uint32_t> function_index() const noexcept { return m_function; }
    [[nodiscard]] std::optional<uint8_t> opcode() const noexcept { return m_opcode; }

private:
    std::optional<uint32_t> m_function;
    std::optional<uint8_t> m_opcode;
};

/// Unresolved import, out-of-bounds data segment, or a trap in the start function.
class InstantiationError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Bad call from the embedder: unknown export, too few arguments, or a
/// numeric argument of the wrong type.
class InvokeError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class TrapKind : uint8_t
{
    Unreachable,
    MemoryOutOfBounds,
    IntegerDivideByZero,
    IntegerOverflow,
    InvalidConversion,
    StackExhausted,
    HostError,
};

[[nodiscard]] std::string_view to_string(TrapKind kind) noexcept;

/// Thrown inside the interpreter; invoke() turns it into a Trapped status.
class Trap : public std::runtime_error
{
public:
    Trap(TrapKind kind, uint32_t offset, const std::string& detail = {});

    [[nodiscard]] TrapKind kind() const noexcept { return m_kind; }
    [[nodiscard]] uint32_t offset() const noexcept { return m_offset; }

private:
    TrapKind m_kind;
    uint32_t m_offset;
};

}  // namespace taintwasm
