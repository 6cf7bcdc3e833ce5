// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "scenario.hpp"

#include <nhzm/common.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace nhzm::cli {

/// Shortest-ish decimal form used in every CSV cell ("%.12g", no "-0").
[[nodiscard]] std::string num(double v);

/// {"re": ..., "im": ...}
[[nodiscard]] json complex_json(Complex z);

/// Writes files under one directory. Every file starts with the artifact
/// version and the resolved scenario: CSVs as "# " comment lines, JSON files
/// under a top-level "metadata" key.
class OutputDir {
public:
    OutputDir(std::filesystem::path dir, const Scenario& scenario);

    [[nodiscard]] const std::filesystem::path& path() const noexcept { return dir_; }
    [[nodiscard]] const json& metadata() const noexcept { return metadata_; }

    using Row = std::vector<std::string>;
    void write_csv(const std::string& file, const Row& header, const std::vector<Row>& rows,
                   const std::vector<std::string>& column_docs = {}) const;
    void write_json(const std::string& file, json body) const;

private:
    std::filesystem::path dir_;
    json metadata_;
};

}  // namespace nhzm::cli
