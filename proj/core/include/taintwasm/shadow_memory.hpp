// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "taintwasm/taint.hpp"

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace taintwasm
{
/// Sparse per-byte taint for one instance's linear memory.
///
/// Invariants: no entry holds the zero label (absent means untainted), and
/// every key is below the owning memory's byte length. Bounds are enforced by
/// the caller; this class never sees an out-of-bounds range.
class ShadowMemory
{
public:
    /// Sets every byte of [addr, addr + width) to `label`, or erases them
    /// when the label is zero.
    void taint_range(uint32_t addr, uint32_t width, TaintLabel label);

    /// Join of the labels of every byte in [addr, addr + width). Absent bytes
    /// contribute nothing; no random draw happens here.
    [[nodiscard]] TaintLabel read_range(uint32_t addr, uint32_t width, const PropagationConfig& cfg) const;

    void clear() noexcept;

    [[nodiscard]] TaintLabel at(uint32_t addr) const noexcept;
    [[nodiscard]] size_t size() const noexcept { return m_entries.size(); }
    [[nodiscard]] bool empty() const noexcept { return m_entries.empty(); }

    /// (address, label) pairs in address order, for dumps and tests.
    [[nodiscard]] std::vector<std::pair<uint32_t, TaintLabel>> sorted_entries() const;

    /// Number of times clear() ran; lets tests observe teardown.
    [[nodiscard]] uint64_t clear_count() const noexcept { return m_clears; }

private:
    std::unordered_map<uint32_t, TaintLabel> m_entries;
    uint64_t m_clears = 0;
};

}  // namespace taintwasm
