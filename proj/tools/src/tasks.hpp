// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "output.hpp"
#include "scenario.hpp"

namespace nhzm::cli {

/// Runs the scenario's task, writes its data files into out and returns the
/// "results" block of summary.json. Library failures propagate as nhzm::Error.
[[nodiscard]] json run_task(const Scenario& scenario, const OutputDir& out);

/// Human-readable one-screen summary of a summary.json document.
[[nodiscard]] std::string format_report(const json& summary);

}  // namespace nhzm::cli
