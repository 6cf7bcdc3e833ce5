// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return nhzm::cli::main(argc, argv, std::cout, std::cerr); }
