// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0

#include <vector>

#include "pcsimp/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pcsimp::cli::run(args);
}
