// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "taintwasm/trace.hpp"

#include "taintwasm/value.hpp"

#include <json.hpp>
#include <ostream>

namespace taintwasm
{
std::string_view to_string(EventKind k) noexcept
{
    switch (k)
    {
    case EventKind::OpExecuted:
        return "op";
    case EventKind::Call:
        return "call";
    case EventKind::Return:
        return "return";
    case EventKind::HostReturn:
        return "host_return";
    case EventKind::MemoryTaint:
        return "memory_taint";
    case EventKind::PolicyViolation:
        return "policy_violation";
    }
    return "?";
}

std::string to_json_line(const TraceEvent& e)
{
    nlohmann::ordered_json j;
    j["seq"] = e.seq;
    j["kind"] = to_string(e.kind);
    j["func"] = e.function;
    if (!e.name.empty())
        j[e.kind == EventKind::OpExecuted || e.kind == EventKind::MemoryTaint ? "op" : "name"] =
            e.name;
    if (e.kind == EventKind::OpExecuted || e.kind == EventKind::MemoryTaint || e.kind == EventKind::Call)
        j["offset"] = e.offset;
    if (e.width != 0)
    {
        j["address"] = e.address;
        j["width"] = e.width;
    }
    if (!e.operands.empty() || e.kind == EventKind::OpExecuted)
    {
        auto ops = nlohmann::ordered_json::array();
        for (TaintLabel t : e.operands)
            ops.push_back(format_taint(t));
        j["operands"] = std::move(ops);
    }
    if (e.has_result)
        j["result"] = format_taint(e.result);
    if (e.kind == EventKind::PolicyViolation)
        j["flags"] = format_taint(TaintLabel{e.flags});
    return j.dump();
}

void JsonLinesSink::flush_line(const std::string& line)
{
    m_out << line << '\n';
    if (!m_out)
        throw TraceWriteError("failed to write trace record");
}

void JsonLinesSink::write(const TraceEvent& event)
{
    flush_line(to_json_line(event));
}

void JsonLinesSink::write_shadow_dump(std::span<const std::pair<uint32_t, TaintLabel>> entries)
{
    nlohmann::ordered_json j;
    j["kind"] = "shadow_dump";
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [addr, label] : entries)
        arr.push_back({addr, format_taint(label)});
    j["entries"] = std::move(arr);
    flush_line(j.dump());
    m_out.flush();
    if (!m_out)
        throw TraceWriteError("failed to flush trace");
}

void MemorySink::write(const TraceEvent& event)
{
    TraceEvent copy = event;
    m_names.emplace_back(event.name);
    copy.name = m_names.back();
    m_events.push_back(copy);
}

bool should_emit(const TraceEvent& event, LogLevel level) noexcept
{
    if (level == LogLevel::Full)
        return true;
    switch (event.kind)
    {
    case EventKind::PolicyViolation:
        return true;
    case EventKind::HostReturn:
        return event.has_result && !event.result.is_zero();
    default:
        return false;
    }
}

void Tracer::emit(TraceEvent event)
{
    if (!m_sink || !should_emit(event, m_level))
        return;
    event.seq = m_next_seq++;
    m_sink->write(event);
}

}  // namespace taintwasm
