// taintwasm: taint-tracking WebAssembly interpreter
// Copyright 2026 The taintwasm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "taintwasm/builder.hpp"
#include "taintwasm/decoder.hpp"
#include "taintwasm/module.hpp"
#include "taintwasm/validator.hpp"

#include <memory>
#include <string>

namespace taintwasm::testing
{
inline std::string fixture_path(const std::string& name)
{
    return std::string(TAINTWASM_FIXTURE_DIR) + "/" + name;
}

inline std::shared_ptr<const Module> load_fixture(const std::string& name)
{
    return std::make_shared<const Module>(load_module(read_file(fixture_path(name))));
}

inline std::shared_ptr<const Module> load_built(const ModuleBuilder& b)
{
    return std::make_shared<const Module>(load_module(b.build()));
}

/// One exported function `f` with the given signature and body.
inline std::shared_ptr<const Module> single_function(
    const FunctionType& sig, const CodeBuilder& body, std::vector<ValType> locals = {}, uint32_t memory_pages = 0)
{
    ModuleBuilder b;
    if (memory_pages)
        b.add_memory(memory_pages);
    b.export_function("f", b.add_function(sig, std::move(locals), body));
    return load_built(b);
}

}  // namespace taintwasm::testing
