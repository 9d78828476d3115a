// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "taintwasm/policy.hpp"

namespace taintwasm
{
namespace
{
template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
}  // namespace

int exit_code(const TerminationStatus& s) noexcept
{
    return std::visit(overloaded{
                          [](const Completed&) { return exit_completed; },
                          [](const PolicyTerminated&) { return exit_policy_terminated; },
                          [](const Trapped&) { return exit_trapped; },
                      },
        s);
}

std::string describe(const TerminationStatus& s)
{
    return std::visit(overloaded{
                          [](const Completed&) -> std::string { return "completed"; },
                          [](const PolicyTerminated& p) {
                              return "terminated by taint policy (flags " +
                                     format_taint(TaintLabel{p.flags}) + ")";
                          },
                          [](const Trapped& t) { return "trapped: " + t.message; },
                      },
        s);
}

TerminationStatus check_host_return(std::span<const TaintedValue> results, const TaintPolicy& policy,
    const PropagationConfig& cfg, Tracer& tracer, uint32_t function_index, std::string_view export_name)
{
    TaintLabel joined;
    uint32_t flags = 0;
    for (const auto& r : results)
    {
        joined = join(joined, r.taint, cfg);
        flags |= flags_of(r.taint, cfg);
    }

    TraceEvent ev;
    ev.kind = EventKind::HostReturn;
    ev.function = function_index;
    ev.name = export_name;
    ev.result = joined;
    ev.has_result = !results.empty();
    tracer.emit(ev);

    const uint32_t violating = flags & policy.terminate_mask;
    if (violating == 0)
        return Completed{};

    ev.kind = EventKind::PolicyViolation;
    ev.flags = violating;
    ev.has_result = true;
    tracer.emit(ev);
    return PolicyTerminated{violating};
}

}  // namespace taintwasm
