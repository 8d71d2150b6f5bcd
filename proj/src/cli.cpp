// Copyright 2026 The pcsimp Authors
// SPDX-License-Identifier: Apache-2.0

#include "pcsimp/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <numbers>

#include "pcsimp/baseline.hpp"
#include "pcsimp/io.hpp"
#include "pcsimp/metrics.hpp"
#include "pcsimp/registration.hpp"
#include "pcsimp/synthetic.hpp"

namespace pcsimp::cli {

namespace {

CloudFileFormat format_for(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".xyz" || ext == ".txt" || ext == ".pts") return CloudFileFormat::xyz;
    if (ext == ".off") return CloudFileFormat::off;
    return CloudFileFormat::ply_binary_le;
}

SimplifyParams simplify_params_from(const RunConfig& cfg) {
    SimplifyParams params;
    params.k = cfg.k;
    if (cfg.sigma > 0.0) params.sigma = cfg.sigma;
    params.alpha = cfg.rate;
    params.lambda = cfg.lambda;
    params.cube_min = cfg.cube_min;
    params.cube_max = cfg.cube_max;
    params.solver.max_iters = cfg.max_iters;
    params.solver.kkt_tol = cfg.tol;
    return params;
}

RigidTransform transform_from(const RunConfig& cfg, const PointCloud& cloud) {
    if (!cfg.explicit_transform.empty()) {
        const auto& v = cfg.explicit_transform;
        Eigen::Matrix3d rotation;
        rotation << v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8];
        return RigidTransform(rotation, Eigen::Vector3d(v[9], v[10], v[11]));
    }
    DeterministicRng rng(cfg.seed);
    Eigen::Vector3d axis(rng.normal(), rng.normal(), rng.normal());
    if (axis.norm() < 1e-12) axis = Eigen::Vector3d::UnitZ();
    const double angle = cfg.rot_deg * std::numbers::pi / 180.0 * rng.uniform();
    Eigen::Vector3d direction(rng.normal(), rng.normal(), rng.normal());
    if (direction.norm() < 1e-12) direction = Eigen::Vector3d::UnitX();
    direction.normalize();
    const double magnitude = cfg.trans_frac * cloud.bounding_box_diagonal() * rng.uniform();
    return RigidTransform::from_axis_angle(axis, angle, magnitude * direction);
}

int cmd_simplify(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const PointCloud cloud = read_cloud(cfg.input);
    if (cloud.size() <= cfg.k)
        throw std::runtime_error("input has " + std::to_string(cloud.size()) +
                                 " points; need more than k=" + std::to_string(cfg.k));

    const SimplifyParams params = simplify_params_from(cfg);
    SelectionMask mask;
    Eigen::VectorXd feature;
    int cube_count = 1;
    if (cfg.method == "uniform") {
        mask = uniform_voxel(cloud, cfg.rate);
        const KnnGraph g = build_knn_graph(cloud, cfg.k, params.sigma);
        feature = feature_vector(g, cloud);
    } else if (cfg.method == "contour") {
        SimplifyParams contour = params;
        contour.lambda = 0.0;
        SimplifyResult result = simplify_detailed(cloud, contour);
        mask = std::move(result.mask);
        feature = std::move(result.feature);
        cube_count = result.cube_count;
    } else {
        SimplifyResult result = simplify_detailed(cloud, params);
        mask = std::move(result.mask);
        feature = std::move(result.feature);
        cube_count = result.cube_count;
    }

    const PointCloud output = select(cloud, mask);
    write_cloud(output, cfg.output, format_for(cfg.output));

    StatsReport report;
    report["input_points"] = cloud.size();
    report["output_points"] = output.size();
    report["rate"] = cfg.rate;
    report["lambda"] = cfg.method == "uniform" ? 0.0 : (cfg.method == "contour" ? 0.0 : cfg.lambda);
    report["k"] = cfg.k;
    report["cube_count"] = cube_count;
    report["feature_mass_retained"] = feature_mass_retained(feature, mask);
    report["degree_variance"] = selection_degree_variance(cloud, cfg.k, mask);
    report["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_stats(report, cfg.stats_path.empty() ? cfg.output + ".stats" : cfg.stats_path);

    std::cerr << "simplified " << cloud.size() << " -> " << output.size() << " points ("
              << cfg.method << ")\n";
    return 0;
}

int cmd_register(const RunConfig& cfg) {
    const PointCloud cloud = read_cloud(cfg.input);
    const RigidTransform transform = transform_from(cfg, cloud);
    const SimplifyParams params = simplify_params_from(cfg);

    std::vector<std::string> methods = cfg.methods;
    if (methods.empty()) methods = {"original", "uniform", "proposed"};

    StatsReport report;
    for (const auto& name : methods) {
        const double value =
            registration_experiment(cloud, transform, parse_method(name), cfg.rate, params);
        report["rmse_" + name] = value;
        std::cerr << "rmse_" << name << " " << format_stat(value) << "\n";
    }
    write_stats(report, cfg.stats_path.empty() ? cfg.input + ".register.stats" : cfg.stats_path);
    return 0;
}

int cmd_compare(const RunConfig& cfg) {
    const PointCloud cloud = read_cloud(cfg.input);
    std::vector<double> lambdas = cfg.lambdas;
    if (lambdas.empty()) lambdas = {1e-5, 1e-3, 1e-1};
    std::sort(lambdas.begin(), lambdas.end());

    SimplifyParams params = simplify_params_from(cfg);
    struct Row {
        double lambda, feature_mass, degree_variance, runtime_s;
    };
    std::vector<Row> rows;
    for (double lambda : lambdas) {
        params.lambda = lambda;
        const auto t0 = std::chrono::steady_clock::now();
        const SimplifyResult result = simplify_detailed(cloud, params);
        const double runtime =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rows.push_back({lambda, feature_mass_retained(result.feature, result.mask),
                        selection_degree_variance(cloud, cfg.k, result.mask), runtime});
        std::cerr << "lambda " << lambda << " done\n";
    }

    bool variance_nonincreasing = true;
    bool feature_mass_nonincreasing = true;
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].degree_variance > rows[i - 1].degree_variance) variance_nonincreasing = false;
        if (rows[i].feature_mass > rows[i - 1].feature_mass) feature_mass_nonincreasing = false;
    }

    std::ofstream out(cfg.output);
    if (!out) throw std::runtime_error("cannot open '" + cfg.output + "' for writing");
    out << "lambda feature_mass_retained degree_variance runtime_s\n";
    for (const auto& row : rows)
        out << format_stat(row.lambda) << " " << format_stat(row.feature_mass) << " "
            << format_stat(row.degree_variance) << " " << format_stat(row.runtime_s) << "\n";
    out << "flag_degree_variance_nonincreasing " << (variance_nonincreasing ? 1 : 0) << "\n";
    out << "flag_feature_mass_nonincreasing " << (feature_mass_nonincreasing ? 1 : 0) << "\n";
    if (!out) throw std::runtime_error("write failure on '" + cfg.output + "'");
    return 0;
}

int cmd_gen(const RunConfig& cfg) {
    const LabeledCloud shape = generate_shape(cfg.shape, cfg.count, cfg.seed);
    write_cloud(shape.cloud, cfg.output, format_for(cfg.output));

    const std::string labels = cfg.labels_path.empty() ? cfg.output + ".labels" : cfg.labels_path;
    std::ofstream out(labels);
    if (!out) throw std::runtime_error("cannot open '" + labels + "' for writing");
    for (uint8_t e : shape.edge) out << static_cast<int>(e) << "\n";
    if (!out) throw std::runtime_error("write failure on '" + labels + "'");

    std::cerr << "generated " << shape.cloud.size() << " points, " << shape.edge_count()
              << " edge-labeled\n";
    return 0;
}

int cmd_stats(const RunConfig& cfg) {
    const PointCloud cloud = read_cloud(cfg.input);
    StatsReport report;
    report["points"] = cloud.size();
    const auto [lo, hi] = cloud.bounding_box();
    report["bbox_dx"] = hi.x() - lo.x();
    report["bbox_dy"] = hi.y() - lo.y();
    report["bbox_dz"] = hi.z() - lo.z();
    report["bbox_diagonal"] = (hi - lo).norm();
    if (cloud.size() > cfg.k) {
        const KnnGraph g = build_knn_graph(cloud, cfg.k, cfg.sigma > 0.0 ? std::optional(cfg.sigma)
                                                                         : std::nullopt);
        report["sigma"] = g.sigma;
        report["k"] = cfg.k;
        report["feature_mass"] = feature_vector(g, cloud).sum();
        report["degree_variance"] = in_degree_variance(cloud, cfg.k);
    }
    write_stats(report, cfg.stats_path.empty() ? cfg.input + ".stats" : cfg.stats_path);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Optimization-based point cloud simplification"};
    app.set_config("--config", "", "Read defaults from an INI config file");
    app.require_subcommand(1);

    RunConfig cfg;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--k", cfg.k, "Neighbor count of the k-NN graph")->check(CLI::PositiveNumber);
        cmd->add_option("--sigma", cfg.sigma, "Gaussian bandwidth (0 = automatic)")
            ->check(CLI::NonNegativeNumber);
    };
    auto add_pipeline = [&](CLI::App* cmd) {
        add_common(cmd);
        cmd->add_option("--rate", cfg.rate, "Fraction of points to keep, in (0, 1]")
            ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0));
        cmd->add_option("--lambda", cfg.lambda, "Uniformity trade-off weight")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--cube-min", cfg.cube_min, "Partition cube minimum occupancy")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--cube-max", cfg.cube_max, "Partition cube maximum occupancy")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--max-iters", cfg.max_iters, "Solver iteration cap")->check(CLI::PositiveNumber);
        cmd->add_option("--tol", cfg.tol, "Solver KKT tolerance (0 = automatic)")
            ->check(CLI::NonNegativeNumber);
    };

    CLI::App* simplify = app.add_subcommand("simplify", "Simplify a point cloud");
    simplify->add_option("--input", cfg.input, "Input cloud (ply/xyz/off)")->required();
    simplify->add_option("--output", cfg.output, "Output cloud path")->required();
    simplify->add_option("--method", cfg.method, "proposed | uniform | contour")
        ->check(CLI::IsMember({"proposed", "uniform", "contour"}));
    simplify->add_option("--stats", cfg.stats_path, "Stats report path (default <output>.stats)");
    add_pipeline(simplify);

    CLI::App* reg = app.add_subcommand("register", "Perturb-and-register evaluation");
    reg->add_option("--input", cfg.input, "Input cloud")->required();
    reg->add_option("--method", cfg.methods, "Methods to evaluate (default: all three)")
        ->check(CLI::IsMember({"original", "uniform", "proposed"}));
    reg->add_option("--stats", cfg.stats_path, "Stats report path");
    reg->add_option("--seed", cfg.seed, "Perturbation seed");
    reg->add_option("--rot-deg", cfg.rot_deg, "Max rotation angle, degrees")
        ->check(CLI::NonNegativeNumber);
    reg->add_option("--trans-frac", cfg.trans_frac, "Max translation, fraction of bbox diagonal")
        ->check(CLI::NonNegativeNumber);
    reg->add_option("--transform", cfg.explicit_transform,
                    "Explicit transform: 9 row-major rotation entries then 3 translation entries")
        ->expected(12);
    add_pipeline(reg);

    CLI::App* compare = app.add_subcommand("compare", "Sweep lambda and tabulate the trade-off");
    compare->add_option("--input", cfg.input, "Input cloud")->required();
    compare->add_option("--output", cfg.output, "Table output path")->required();
    compare->add_option("--lambdas", cfg.lambdas, "Comma-separated lambda values")->delimiter(',');
    add_pipeline(compare);

    CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic labeled shape");
    gen->add_option("--shape", cfg.shape, "cube | sphere | block")
        ->check(CLI::IsMember({"cube", "sphere", "block"}));
    gen->add_option("--count", cfg.count, "Number of points")->check(CLI::PositiveNumber);
    gen->add_option("--seed", cfg.seed, "Generator seed");
    gen->add_option("--output", cfg.output, "Output cloud path")->required();
    gen->add_option("--labels", cfg.labels_path, "Edge-label sidecar path (default <output>.labels)");

    CLI::App* stats = app.add_subcommand("stats", "Report cloud statistics");
    stats->add_option("--input", cfg.input, "Input cloud")->required();
    stats->add_option("--stats", cfg.stats_path, "Report path (default <input>.stats)");
    add_common(stats);

    std::vector<const char*> argv;
    argv.push_back("pcsimp");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (cfg.cube_min > cfg.cube_max)
            throw CLI::ValidationError("--cube-min must not exceed --cube-max");

        if (simplify->parsed()) {
            cfg.command = "simplify";
            return cmd_simplify(cfg);
        }
        if (reg->parsed()) {
            cfg.command = "register";
            return cmd_register(cfg);
        }
        if (compare->parsed()) {
            cfg.command = "compare";
            return cmd_compare(cfg);
        }
        if (gen->parsed()) {
            cfg.command = "gen";
            return cmd_gen(cfg);
        }
        if (stats->parsed()) {
            cfg.command = "stats";
            return cmd_stats(cfg);
        }
        throw CLI::ValidationError("no subcommand given");
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace pcsimp::cli
