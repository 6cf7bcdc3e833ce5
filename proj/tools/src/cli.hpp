// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

namespace nhzm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitScenario = 2;  ///< unreadable or schema-invalid input, missing outputs
inline constexpr int kExitNumerical = 3;

/// Entry point of the nhzm executable; all output goes to out / err.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nhzm::cli
