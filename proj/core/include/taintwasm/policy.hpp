// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "taintwasm/errors.hpp"
#include "taintwasm/trace.hpp"
#include "taintwasm/value.hpp"

#include <span>
#include <string>
#include <string_view>
#include <variant>

namespace taintwasm
{
struct TaintPolicy
{
    /// Flag bits that end an invocation when they reach the host; 0 disables
    /// termination. Compared against flags_of(), never the probability field.
    uint32_t terminate_mask = 0;
    LogLevel log_level = LogLevel::ReturnsOnly;
};

struct Completed
{
    friend bool operator==(const Completed&, const Completed&) = default;
};

struct PolicyTerminated
{
    uint32_t flags = 0;  // result flags AND terminate_mask, never zero

    friend bool operator==(const PolicyTerminated&, const PolicyTerminated&) = default;
};

struct Trapped
{
    TrapKind kind = TrapKind::Unreachable;
    uint32_t offset = 0;
    std::string message;

    friend bool operator==(const Trapped&, const Trapped&) = default;
};

using TerminationStatus = std::variant<Completed, PolicyTerminated, Trapped>;

/// Process exit codes used by the CLI.
inline constexpr int exit_completed = 0;
inline constexpr int exit_load_error = 1;
inline constexpr int exit_usage_error = 2;
inline constexpr int exit_policy_terminated = 3;
inline constexpr int exit_trapped = 4;

[[nodiscard]] int exit_code(const TerminationStatus& s) noexcept;
[[nodiscard]] std::string describe(const TerminationStatus& s);

/// Runs when results cross from wasm to the host. Emits a HostReturn event
/// and, on a violation, a PolicyViolation event before returning
/// PolicyTerminated with the offending flags.
[[nodiscard]] TerminationStatus check_host_return(std::span<const TaintedValue> results,
    const TaintPolicy& policy, const PropagationConfig& cfg, Tracer& tracer,
    uint32_t function_index = 0, std::string_view export_name = {});

}  // namespace taintwasm
