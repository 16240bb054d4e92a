// frobound: effective convergence bounds for Frobenius structures
// Copyright 2026 The frobound Authors.
// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "frobound/cli/cli.hpp"

int main(int argc, char** argv) { return frobound::cli::run(argc, argv, std::cout, std::cerr); }
