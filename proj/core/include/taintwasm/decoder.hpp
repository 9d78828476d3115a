// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "taintwasm/module.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace taintwasm
{
/// Bounds-checked cursor over a wasm binary. Every failure is a DecodeError
/// naming the absolute byte offset.
class ByteReader
{
public:
    ByteReader(std::span<const uint8_t> bytes, size_t base_offset = 0) noexcept
      : m_bytes(bytes), m_base(base_offset)
    {}

    [[nodiscard]] size_t offset() const noexcept { return m_base + m_pos; }
    [[nodiscard]] size_t remaining() const noexcept { return m_bytes.size() - m_pos; }
    [[nodiscard]] bool empty() const noexcept { return m_pos == m_bytes.size(); }

    uint8_t read_byte();
    uint8_t peek_byte() const;
    std::span<const uint8_t> read_bytes(size_t n);
    uint32_t read_u32();
    int32_t read_s32();
    int64_t read_s64();
    uint32_t read_fixed_u32();
    uint64_t read_fixed_u64();
    std::string read_name();

    /// A sub-reader over the next n bytes; this reader skips past them.
    ByteReader sub_reader(size_t n);

    [[noreturn]] void fail(const std::string& what) const;

private:
    std::span<const uint8_t> m_bytes;
    size_t m_base;
    size_t m_pos = 0;
};

inline constexpr uint8_t wasm_magic[4] = {0x00, 0x61, 0x73, 0x6D};
inline constexpr uint32_t wasm_version = 1;

/// Structural decode of an MVP (version 1) binary. Function bodies are kept
/// as byte ranges; instruction-level checks happen in validate_subset().
[[nodiscard]] Module decode_module(std::span<const uint8_t> bytes);

[[nodiscard]] std::vector<uint8_t> read_file(const std::filesystem::path& path);

}  // namespace taintwasm
