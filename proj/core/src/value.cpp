// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "taintwasm/value.hpp"

#include <cstdio>

namespace taintwasm
{
std::string_view to_string(ValType t) noexcept
{
    switch (t)
    {
    case ValType::I32:
        return "i32";
    case ValType::I64:
        return "i64";
    case ValType::F32:
        return "f32";
    case ValType::F64:
        return "f64";
    }
    return "?";
}

std::string to_string(const Value& v)
{
    char buf[64];
    switch (v.type)
    {
    case ValType::I32:
        std::snprintf(buf, sizeof buf, "i32 %d", v.as_i32());
        break;
    case ValType::I64:
        std::snprintf(buf, sizeof buf, "i64 %lld", static_cast<long long>(v.as_i64()));
        break;
    case ValType::F32:
        std::snprintf(buf, sizeof buf, "f32 %.9g", static_cast<double>(v.as_f32()));
        break;
    case ValType::F64:
        std::snprintf(buf, sizeof buf, "f64 %.17g", v.as_f64());
        break;
    }
    return buf;
}

std::string format_taint(TaintLabel t)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%08x", t.raw);
    return buf;
}

}  // namespace taintwasm
