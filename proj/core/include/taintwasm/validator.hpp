// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "taintwasm/module.hpp"

#include <span>

namespace taintwasm
{
/// Checks that every body only uses the executed subset and type-checks it
/// with the standard operand/control stack algorithm. On success the
/// returned module carries one CompiledFunction per defined function.
///
/// Supported: numeric ops 0x45-0xBF, constants, locals/globals, loads and
/// stores, memory.size/grow, drop/select, unreachable/nop, block/loop/if/
/// else/end, br/br_if/br_table, return and call. Everything else, including
/// call_indirect, tables and prefixed opcodes, is a ValidationError.
[[nodiscard]] Module validate_subset(Module m);

/// decode_module() followed by validate_subset().
[[nodiscard]] Module load_module(std::span<const uint8_t> bytes);

}  // namespace taintwasm
