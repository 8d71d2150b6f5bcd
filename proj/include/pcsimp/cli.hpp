// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Subcommands:
//   simplify  read a cloud, simplify, write cloud + stats report
//   register  perturb/register protocol, RMSE per method
//   compare   lambda sweep table with monotonicity flags
//   gen       deterministic synthetic shapes with edge labels
//   stats     cloud statistics report
// Reports go to files; diagnostics to stderr. Flags may also come from an
// INI config file (--config); command-line values win.

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pcsimp::cli {

/// Parsed run configuration shared by the subcommands.
struct RunConfig {
    std::string command;
    std::string input;
    std::string output;
    std::string stats_path;
    std::string method = "proposed";  // proposed | uniform | contour (simplify)
    double rate = 0.1;
    double lambda = 1e-3;
    int k = 10;
    double sigma = 0.0;  // 0 = automatic bandwidth
    int cube_min = 3000;
    int cube_max = 8000;
    uint64_t seed = 1;
    int max_iters = 500;
    double tol = 0.0;    // 0 = automatic kkt tolerance
    std::string shape = "cube";
    int count = 60000;
    std::string labels_path;
    std::vector<double> lambdas;
    std::vector<std::string> methods;      // register subcommand
    std::vector<double> explicit_transform; // 12 values: row-major R, then t
    double rot_deg = 10.0;
    double trans_frac = 0.05;
};

/// Run with argv-style arguments (excluding the program name).
/// Returns the process exit status.
int run(const std::vector<std::string>& args);

}  // namespace pcsimp::cli
