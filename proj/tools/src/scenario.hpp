// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <nhzm/lattice.hpp>

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nhzm::cli {

using nlohmann::json;

/// The published scenario schema (JSON Schema draft-07).
[[nodiscard]] std::string_view scenario_schema_text();
[[nodiscard]] const json& scenario_schema();

/// One schema violation, anchored to the scenario text.
struct Violation {
    std::string pointer;  ///< JSON pointer of the offending value
    std::size_t line = 0;
    std::size_t column = 0;
    std::string message;
};

/// Raised for unreadable, malformed or schema-violating scenarios (exit 2).
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(std::string source, std::vector<Violation> violations);

    [[nodiscard]] const std::vector<Violation>& violations() const noexcept { return violations_; }
    /// One "source:line:column: message" line per violation.
    [[nodiscard]] std::string report() const;

private:
    std::string source_;
    std::vector<Violation> violations_;
};

/// Validates instance against the subset of draft-07 used by the scenario
/// schema; returns violations with empty positions.
[[nodiscard]] std::vector<Violation> validate(const json& instance, const json& schema);

/// Line and column (1-based) of the value at pointer in text, best effort:
/// falls back to the deepest enclosing key that can be found.
void locate(std::string_view text, const std::string& pointer, std::size_t& line,
            std::size_t& column);

struct Scenario {
    std::string source;  ///< path or label used in messages
    json raw;
    json resolved;  ///< all defaults filled in
    std::string name;
    std::string task;
    std::uint64_t seed = 0;

    [[nodiscard]] const json& options() const { return resolved.at("options"); }
    [[nodiscard]] CoupledChainParams lattice() const;
};

/// Parses, validates and resolves. Throws ScenarioError.
[[nodiscard]] Scenario parse_scenario(std::string_view text, std::string source);
[[nodiscard]] Scenario load_scenario(const std::filesystem::path& path);

}  // namespace nhzm::cli
