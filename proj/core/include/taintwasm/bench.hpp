// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "taintwasm/module.hpp"
#include "taintwasm/value.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace taintwasm
{
struct OverheadOptions
{
    uint32_t args = 100;
    uint32_t iterations = 2000;  // calls per batch
    uint32_t batches = 10;       // alternating untainted / tainted / untainted batches
    uint32_t taint = 0x1;        // label attached to every argument in the tainted runs
};

struct OverheadReport
{
    ValType type = ValType::I32;
    std::string export_name;
    uint32_t args = 0;
    uint64_t calls = 0;  // per variant
    double untainted_ns = 0;
    double tainted_ns = 0;
    double ratio = 0;       // tainted / untainted
    double self_ratio = 0;  // second untainted series / first
};

/// Times calls to the `noop_<type>` exports with and without a full taint
/// suffix.
[[nodiscard]] std::vector<OverheadReport> bench_overhead(
    std::shared_ptr<const Module> module, std::span<const ValType> types, const OverheadOptions& options = {});

void write_overhead_csv(std::ostream& out, std::span<const OverheadReport> reports);

struct LifetimeOptions
{
    std::string export_name = "hash";
    unsigned probability_bits = 8;
    /// Numerators to measure. Empty means 0..2^n-1 in steps of `stride`,
    /// always including 2^n-1.
    std::vector<uint32_t> numerators;
    uint32_t stride = 1;
    uint64_t iterations = 100'000;
    uint64_t seed = 0;
    unsigned threads = 1;
};

struct LifetimePoint
{
    uint32_t m = 0;
    double p = 0;
    uint64_t iterations = 0;
    uint64_t tainted = 0;
    double fraction = 0;

    friend bool operator==(const LifetimePoint&, const LifetimePoint&) = default;
};

using LifetimeReport = std::vector<LifetimePoint>;

/// For each numerator m, calls the unary i32 export on random inputs labelled
/// with flags 0x1 and probability m/(2^n-1), counting outputs whose flags are
/// nonzero. Point i runs on its own instance seeded with seed + i.
[[nodiscard]] LifetimeReport bench_lifetime(std::shared_ptr<const Module> module, const LifetimeOptions& options);

/// Header `m,p,iterations,tainted,fraction`, one row per point.
void write_lifetime_csv(std::ostream& out, const LifetimeReport& report);

/// Module exporting `chain: i32 -> i32`, a straight line of `length` binary
/// ops, each combining the running value with a fresh constant.
[[nodiscard]] std::shared_ptr<const Module> synthetic_chain_module(uint32_t length);

/// Binary numeric ops executed by one call of `export_name`, counted from a
/// full trace.
[[nodiscard]] uint64_t count_dynamic_binops(
    std::shared_ptr<const Module> module, std::string_view export_name, std::span<const Value> args);

}  // namespace taintwasm
