// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#include "output.hpp"

#include <nhzm/version.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>

namespace nhzm::cli {

std::string num(double v) {
    if (v == 0.0) return "0";
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json complex_json(Complex z) {
    return {{"re", z.real() == 0.0 ? 0.0 : z.real()}, {"im", z.imag() == 0.0 ? 0.0 : z.imag()}};
}

OutputDir::OutputDir(std::filesystem::path dir, const Scenario& scenario) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
    metadata_ = {{"artifact", "nhzm"},
                 {"version", std::string(kVersion)},
                 {"scenario", scenario.resolved}};
}

void OutputDir::write_csv(const std::string& file, const Row& header, const std::vector<Row>& rows,
                          const std::vector<std::string>& column_docs) const {
    std::ofstream out(dir_ / file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + (dir_ / file).string());
    out << "# nhzm " << kVersion << '\n';
    out << "# scenario: " << metadata_.at("scenario").dump() << '\n';
    for (const std::string& d : column_docs) out << "# " << d << '\n';
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const Row& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
        out << '\n';
    }
}

void OutputDir::write_json(const std::string& file, json body) const {
    json doc = json::object();
    doc["metadata"] = metadata_;
    for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
    std::ofstream out(dir_ / file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + (dir_ / file).string());
    out << doc.dump(2) << '\n';
}

}  // namespace nhzm::cli
