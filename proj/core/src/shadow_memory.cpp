// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "taintwasm/shadow_memory.hpp"

#include <algorithm>

namespace taintwasm
{
void ShadowMemory::taint_range(uint32_t addr, uint32_t width, TaintLabel label)
{
    if (label.is_zero())
    {
        if (m_entries.empty())
            return;
        for (uint32_t i = 0; i < width; ++i)
            m_entries.erase(addr + i);
        return;
    }
    for (uint32_t i = 0; i < width; ++i)
        m_entries.insert_or_assign(addr + i, label);
}

TaintLabel ShadowMemory::read_range(uint32_t addr, uint32_t width, const PropagationConfig& cfg) const
{
    TaintLabel acc;
    if (m_entries.empty())
        return acc;
    for (uint32_t i = 0; i < width; ++i)
    {
        auto it = m_entries.find(addr + i);
        if (it != m_entries.end())
            acc = join(acc, it->second, cfg);
    }
    return acc;
}

void ShadowMemory::clear() noexcept
{
    m_entries.clear();
    // unordered_map keeps its bucket array after clear(); swap to release it.
    std::unordered_map<uint32_t, TaintLabel>().swap(m_entries);
    ++m_clears;
}

TaintLabel ShadowMemory::at(uint32_t addr) const noexcept
{
    auto it = m_entries.find(addr);
    return it == m_entries.end() ? TaintLabel{} : it->second;
}

std::vector<std::pair<uint32_t, TaintLabel>> ShadowMemory::sorted_entries() const
{
    std::vector<std::pair<uint32_t, TaintLabel>> out(m_entries.begin(), m_entries.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace taintwasm
