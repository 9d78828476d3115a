// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "taintwasm/taint.hpp"

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace taintwasm
{
enum class LogLevel : uint8_t
{
    ReturnsOnly,  // tainted host returns and policy violations
    Full,         // every operation, call and return
};

enum class EventKind : uint8_t
{
    OpExecuted,
    Call,
    Return,
    HostReturn,
    MemoryTaint,
    PolicyViolation,
};

[[nodiscard]] std::string_view to_string(EventKind k) noexcept;

/// One trace record. `name` is an opcode mnemonic for OpExecuted and
/// MemoryTaint, and the export name for HostReturn and PolicyViolation. It
/// only has to live for the duration of TraceSink::write().
struct TraceEvent
{
    EventKind kind = EventKind::OpExecuted;
    uint64_t seq = 0;
    uint32_t function = 0;
    std::string_view name;
    uint32_t offset = 0;
    std::vector<TaintLabel> operands;
    TaintLabel result;
    bool has_result = false;
    uint32_t address = 0;  // loads and stores
    uint32_t width = 0;    // loads and stores; 0 otherwise
    uint32_t flags = 0;    // PolicyViolation: violating flag bits
};

/// A sink failed to record an event (for example a full disk). Never
/// swallowed: it propagates out of Instance::invoke().
class TraceWriteError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class TraceSink
{
public:
    virtual ~TraceSink() = default;
    virtual void write(const TraceEvent& event) = 0;
    virtual void write_shadow_dump(std::span<const std::pair<uint32_t, TaintLabel>> entries)
    {
        (void)entries;
    }
};

/// One JSON object per line. Field names are stable; see the README.
class JsonLinesSink final : public TraceSink
{
public:
    explicit JsonLinesSink(std::ostream& out) : m_out(out) {}

    void write(const TraceEvent& event) override;
    void write_shadow_dump(std::span<const std::pair<uint32_t, TaintLabel>> entries) override;

private:
    void flush_line(const std::string& line);

    std::ostream& m_out;
};

[[nodiscard]] std::string to_json_line(const TraceEvent& event);

/// Keeps every event in memory; used by tests and by the hash binop counter.
class MemorySink final : public TraceSink
{
public:
    void write(const TraceEvent& event) override;

    [[nodiscard]] const std::vector<TraceEvent>& events() const noexcept { return m_events; }
    void clear()
    {
        m_events.clear();
        m_names.clear();
    }

private:
    std::vector<TraceEvent> m_events;
    std::deque<std::string> m_names;
};

/// Whether `event` is recorded at `level`.
[[nodiscard]] bool should_emit(const TraceEvent& event, LogLevel level) noexcept;

/// Assigns sequence numbers and applies the level filter in front of a sink.
class Tracer
{
public:
    Tracer() = default;
    Tracer(TraceSink* sink, LogLevel level) noexcept : m_sink(sink), m_level(level) {}

    /// True when per-operation events are wanted; the interpreter skips
    /// building them otherwise.
    [[nodiscard]] bool full() const noexcept { return m_sink && m_level == LogLevel::Full; }
    [[nodiscard]] bool enabled() const noexcept { return m_sink != nullptr; }
    [[nodiscard]] LogLevel level() const noexcept { return m_level; }
    [[nodiscard]] TraceSink* sink() const noexcept { return m_sink; }

    void emit(TraceEvent event);

private:
    TraceSink* m_sink = nullptr;
    LogLevel m_level = LogLevel::ReturnsOnly;
    uint64_t m_next_seq = 1;
};

}  // namespace taintwasm
