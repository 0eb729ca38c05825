// Command-line frontend: kinematics queries, workspace maps, the inscribed
// cube, sizing, transmission tables, and the self-check suites.
//
// Exit codes: 0 success, 2 usage or configuration error, 3 kinematic or I/O
// error, 4 infeasible problem.

#include "orthohaptic/checks.hpp"
#include "orthohaptic/device.hpp"
#include "orthohaptic/sizing.hpp"
#include "orthohaptic/text.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace oh = orthohaptic;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitKinematic = 3;
constexpr int kExitInfeasible = 4;

std::vector<double> parse_values(const std::string& csv, std::size_t count,
                                 const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(oh::parse_finite_double(tok, what));
    if (out.size() != count)
        oh::raise(oh::ErrorCode::BadConfig,
                  what + " expects " + std::to_string(count) + " comma-separated values");
    return out;
}

// Relative output paths honor the optional output-directory override.
std::string resolve_out(const std::string& path) {
    const char* dir = std::getenv("ORTHOHAPTIC_OUT_DIR");
    if (dir && *dir && std::filesystem::path(path).is_relative())
        return (std::filesystem::path(dir) / path).string();
    return path;
}

std::string fmt(double v) { return oh::format_sig9(v); }

void print_matrix(const std::string& name, const oh::Mat3& m) {
    std::cout << name << ":\n";
    for (int r = 0; r < 3; ++r)
        std::cout << "  " << fmt(m(r, 0)) << ' ' << fmt(m(r, 1)) << ' ' << fmt(m(r, 2))
                  << '\n';
}

oh::Rot3 rotation_from_euler_deg(double pitch, double yaw, double roll) {
    return oh::rot_axis_angle(oh::unit_x(), oh::deg2rad(pitch)) *
           oh::rot_axis_angle(oh::unit_y(), oh::deg2rad(yaw)) *
           oh::rot_axis_angle(oh::unit_z(), oh::deg2rad(roll));
}

struct CommonOpts {
    std::string config_path;
    std::string out_path;
};

oh::ConfigFile require_config(const CommonOpts& opts) {
    if (opts.config_path.empty())
        oh::raise(oh::ErrorCode::BadConfig, "--config is required for this command");
    return oh::load_config(opts.config_path);
}

int cmd_fk(const CommonOpts& opts, const std::string& joints_csv) {
    const oh::ConfigFile cfg = require_config(opts);
    const oh::DeviceParams params = cfg.device();
    const auto v = parse_values(joints_csv, 6, "--joints");
    oh::JointVector q;
    q.rho = oh::Vec3(v[0], v[1], v[2]);
    q.gamma = oh::Vec3(oh::deg2rad(v[3]), oh::deg2rad(v[4]), oh::deg2rad(v[5]));
    const oh::DevicePose pose = oh::device_fk(q, params);
    std::cout << "p: " << fmt(pose.p.x()) << ' ' << fmt(pose.p.y()) << ' '
              << fmt(pose.p.z()) << '\n';
    print_matrix("R", pose.R.matrix());
    if (params.variant.tag == oh::WristTag::Hybrid2R1R) {
        const oh::WristAngles a =
            oh::hybrid_ik(params.variant.mount.transposed() * pose.R, params.wrist_limit,
                          params.ortho.tol);
        std::cout << "pitch_deg: " << fmt(oh::rad2deg(a.theta1))
                  << "  yaw_deg: " << fmt(oh::rad2deg(a.theta2))
                  << "  roll_deg: " << fmt(oh::rad2deg(a.phi)) << '\n';
    }
    return kExitOk;
}

int cmd_ik(const CommonOpts& opts, const std::string& pose_csv) {
    const oh::ConfigFile cfg = require_config(opts);
    const oh::DeviceParams params = cfg.device();
    const auto v = parse_values(pose_csv, 6, "--pose");
    oh::DevicePose pose;
    pose.p = oh::Vec3(v[0], v[1], v[2]);
    pose.R = rotation_from_euler_deg(v[3], v[4], v[5]);
    const oh::JointVector q = oh::device_ik(pose, params);
    std::cout << "rho: " << fmt(q.rho[0]) << ' ' << fmt(q.rho[1]) << ' ' << fmt(q.rho[2])
              << '\n';
    std::cout << "gamma_deg: " << fmt(oh::rad2deg(q.gamma[0])) << ' '
              << fmt(oh::rad2deg(q.gamma[1])) << ' ' << fmt(oh::rad2deg(q.gamma[2]))
              << '\n';
    return kExitOk;
}

int cmd_jacobian(const CommonOpts& opts, const std::string& pose_csv,
                 const std::string& joints_csv) {
    const oh::ConfigFile cfg = require_config(opts);
    const oh::DeviceParams params = cfg.device();
    oh::JointVector q;
    if (!joints_csv.empty()) {
        const auto v = parse_values(joints_csv, 6, "--joints");
        q.rho = oh::Vec3(v[0], v[1], v[2]);
        q.gamma = oh::Vec3(oh::deg2rad(v[3]), oh::deg2rad(v[4]), oh::deg2rad(v[5]));
    } else if (!pose_csv.empty()) {
        const auto v = parse_values(pose_csv, 6, "--pose");
        oh::DevicePose pose;
        pose.p = oh::Vec3(v[0], v[1], v[2]);
        pose.R = rotation_from_euler_deg(v[3], v[4], v[5]);
        q = oh::device_ik(pose, params);
    } else {
        oh::raise(oh::ErrorCode::BadConfig, "jacobian needs --pose or --joints");
    }
    const oh::DeviceJacobian jac = oh::device_jacobian(q, params);
    print_matrix("J_t", jac.translational);
    print_matrix("J_r", jac.rotational);
    print_matrix("coupling_tr", jac.coupling_tr);
    print_matrix("coupling_rt", jac.coupling_rt);
    for (auto [name, m] : {std::pair<const char*, const oh::Mat3*>{"J_t", &jac.translational},
                           {"J_r", &jac.rotational}}) {
        Eigen::JacobiSVD<oh::Mat3> svd(*m);
        const oh::Vec3 s = svd.singularValues();
        std::cout << "sigma(" << name << "): " << fmt(s[2]) << ' ' << fmt(s[1]) << ' '
                  << fmt(s[0]) << "  kappa: " << fmt(s[0] / s[2]) << '\n';
    }
    return kExitOk;
}

int cmd_workspace_map(const CommonOpts& opts, const std::string& box_csv,
                      const std::string& n_csv) {
    const oh::ConfigFile cfg = require_config(opts);
    const oh::WorkspaceSpec spec = cfg.workspace();
    oh::GridSpec grid;
    grid.lo = oh::Vec3::Constant(-cfg.L);
    grid.hi = oh::Vec3::Constant(cfg.L);
    grid.n = {cfg.grid_n, cfg.grid_n, cfg.grid_n};
    if (!box_csv.empty()) {
        const auto v = parse_values(box_csv, 6, "--box");
        grid.lo = oh::Vec3(v[0], v[2], v[4]);
        grid.hi = oh::Vec3(v[1], v[3], v[5]);
    }
    if (!n_csv.empty()) {
        const auto v = parse_values(n_csv, 3, "--n");
        for (int a = 0; a < 3; ++a) {
            if (v[a] < 1 || v[a] != std::floor(v[a]))
                oh::raise(oh::ErrorCode::BadConfig, "--n expects positive integers");
            grid.n[a] = int(v[a]);
        }
    }
    const auto rows = oh::conditioning_map(spec, grid);
    std::ostringstream csv;
    oh::write_conditioning_csv(rows, csv);
    const std::string path =
        resolve_out(opts.out_path.empty() ? "workspace-map.csv" : opts.out_path);
    oh::write_file_atomic(path, csv.str());
    std::size_t members = 0;
    for (const auto& row : rows) members += row.member ? 1 : 0;
    std::cout << "rows: " << rows.size() << "  members: " << members << "  file: " << path
              << '\n';
    return kExitOk;
}

int cmd_cube(const CommonOpts& opts, int samples) {
    const oh::ConfigFile cfg = require_config(opts);
    const oh::CubeResult cube =
        oh::largest_cube(cfg.workspace(), samples > 0 ? samples : cfg.grid_n);
    std::cout << "center: " << fmt(cube.center.x()) << ' ' << fmt(cube.center.y()) << ' '
              << fmt(cube.center.z()) << '\n';
    std::cout << "edge: " << fmt(cube.edge) << '\n';
    std::ostringstream out;
    out << "center_x = " << oh::format_shortest(cube.center.x()) << '\n';
    out << "center_y = " << oh::format_shortest(cube.center.y()) << '\n';
    out << "center_z = " << oh::format_shortest(cube.center.z()) << '\n';
    out << "edge = " << oh::format_shortest(cube.edge) << '\n';
    const std::string path = resolve_out(opts.out_path.empty() ? "cube.txt" : opts.out_path);
    oh::write_file_atomic(path, out.str());
    std::cout << "file: " << path << '\n';
    return kExitOk;
}

int cmd_optimize(const CommonOpts& opts, double edge, double psi, double margin, int grid_m) {
    const oh::ConfigFile cfg = require_config(opts);
    oh::DesignSpec spec;
    spec.required_edge = edge;
    spec.psi = psi > 0.0 ? psi : cfg.psi.value_or(2.0);
    spec.margin = margin;
    const oh::DesignResult res = oh::size_device(spec, grid_m);

    std::cout << "L: " << fmt(res.params.L) << "  rho: [" << fmt(res.params.rho_min)
              << ", " << fmt(res.params.rho_max) << "]\n";
    std::cout << "cube center: " << fmt(res.cube.center.x()) << ' '
              << fmt(res.cube.center.y()) << ' ' << fmt(res.cube.center.z())
              << "  edge: " << fmt(res.cube.edge) << '\n';
    std::cout << "sigma over cube: [" << fmt(res.sigma_min) << ", " << fmt(res.sigma_max)
              << "]  bound: [" << fmt(1.0 / spec.psi) << ", " << fmt(spec.psi) << "]\n";

    // the result file is itself a valid configuration reproducing the design
    oh::ConfigFile sized = cfg;
    sized.L = res.params.L;
    sized.rho_min = res.params.rho_min;
    sized.rho_max = res.params.rho_max;
    sized.psi = spec.psi;
    const std::string path =
        resolve_out(opts.out_path.empty() ? "optimize.cfg" : opts.out_path);
    oh::write_file_atomic(path, oh::serialize_config(sized));
    std::cout << "file: " << path << '\n';
    return kExitOk;
}

int cmd_transmission(const CommonOpts& opts, double beta_deg, int steps, double phase_deg) {
    if (steps < 1) oh::raise(oh::ErrorCode::BadConfig, "--steps must be >= 1");
    oh::Tolerances tol;
    if (!opts.config_path.empty()) tol = oh::load_config(opts.config_path).tol;
    const oh::UJointConfig joint{oh::deg2rad(beta_deg), oh::deg2rad(phase_deg)};
    std::ostringstream csv;
    csv << "theta_in_deg,theta_out_deg,speed_ratio\n";
    for (int i = 0; i < steps; ++i) {
        const double theta_deg = 360.0 * i / steps;
        const double theta = oh::deg2rad(theta_deg);
        csv << oh::format_shortest(theta_deg) << ','
            << oh::format_shortest(oh::rad2deg(oh::ujoint_output(theta, joint, tol))) << ','
            << oh::format_shortest(oh::ujoint_speed_ratio(theta, joint, tol)) << '\n';
    }
    const std::string path =
        resolve_out(opts.out_path.empty() ? "transmission.csv" : opts.out_path);
    oh::write_file_atomic(path, csv.str());
    std::cout << "rows: " << steps << "  ratio range: ["
              << fmt(std::cos(oh::deg2rad(beta_deg))) << ", "
              << fmt(1.0 / std::cos(oh::deg2rad(beta_deg))) << "]  file: " << path << '\n';
    return kExitOk;
}

int cmd_check(const CommonOpts& opts) {
    oh::ConfigFile cfg;
    if (!opts.config_path.empty()) cfg = oh::load_config(opts.config_path);
    const auto results = oh::run_all_checks(cfg);
    bool all_pass = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << ' ' << r.name;
        if (!r.detail.empty()) std::cout << " (" << r.detail << ')';
        std::cout << '\n';
        all_pass = all_pass && r.pass;
    }
    std::cout << (all_pass ? "all checks passed" : "some checks FAILED") << '\n';
    return all_pass ? kExitOk : kExitKinematic;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kinematics, workspace analysis and sizing for a six-dof decoupled "
                 "haptic device (orthogonal translational stage + parallel wrist)"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string joints_csv, pose_csv, box_csv, n_csv;
    int samples = 0, steps = 360, grid_m = 9;
    double beta_deg = 0.0, phase_deg = 0.0, edge = 0.0, psi = 0.0, margin = 0.0;

    const auto add_common = [&](CLI::App* cmd, bool with_out) {
        cmd->add_option("--config", opts.config_path, "configuration file (key = value)");
        if (with_out) cmd->add_option("--out", opts.out_path, "output file path");
    };

    auto* fk_cmd = app.add_subcommand("fk", "pose from actuator values");
    add_common(fk_cmd, false);
    fk_cmd->add_option("--joints", joints_csv, "rho1,rho2,rho3,g1_deg,g2_deg,g3_deg")
        ->required();

    auto* ik_cmd = app.add_subcommand("ik", "actuator values from a pose");
    add_common(ik_cmd, false);
    ik_cmd->add_option("--pose", pose_csv, "x,y,z,pitch_deg,yaw_deg,roll_deg")->required();

    auto* jac_cmd = app.add_subcommand("jacobian", "block Jacobian report");
    add_common(jac_cmd, false);
    jac_cmd->add_option("--pose", pose_csv, "x,y,z,pitch_deg,yaw_deg,roll_deg");
    jac_cmd->add_option("--joints", joints_csv, "rho1,rho2,rho3,g1_deg,g2_deg,g3_deg");

    auto* map_cmd = app.add_subcommand("workspace-map", "conditioning map CSV export");
    add_common(map_cmd, true);
    map_cmd->add_option("--box", box_csv, "x0,x1,y0,y1,z0,z1 (default [-L, L]^3)");
    map_cmd->add_option("--n", n_csv, "grid points per axis nx,ny,nz");

    auto* cube_cmd = app.add_subcommand("cube", "largest inscribed cube");
    add_common(cube_cmd, true);
    cube_cmd->add_option("--samples", samples, "face sampling density");

    auto* opt_cmd = app.add_subcommand("optimize", "size the stage for a required cube");
    add_common(opt_cmd, true);
    opt_cmd->add_option("--edge", edge, "required cube edge length")->required();
    opt_cmd->add_option("--psi", psi, "amplification bound (default from config or 2)");
    opt_cmd->add_option("--margin", margin, "extra rho range on both ends");
    opt_cmd->add_option("--grid", grid_m, "sizing grid per cube axis (default 9)");

    auto* trans_cmd = app.add_subcommand("transmission", "universal-joint transfer table");
    add_common(trans_cmd, true);
    trans_cmd->add_option("--beta", beta_deg, "bend angle in degrees")->required();
    trans_cmd->add_option("--steps", steps, "rows over one period (default 360)");
    trans_cmd->add_option("--phase", phase_deg, "input yoke phase in degrees");

    auto* check_cmd = app.add_subcommand("check", "run invariant and acceptance suites");
    add_common(check_cmd, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (fk_cmd->parsed()) return cmd_fk(opts, joints_csv);
        if (ik_cmd->parsed()) return cmd_ik(opts, pose_csv);
        if (jac_cmd->parsed()) return cmd_jacobian(opts, pose_csv, joints_csv);
        if (map_cmd->parsed()) return cmd_workspace_map(opts, box_csv, n_csv);
        if (cube_cmd->parsed()) return cmd_cube(opts, samples);
        if (opt_cmd->parsed()) return cmd_optimize(opts, edge, psi, margin, grid_m);
        if (trans_cmd->parsed()) return cmd_transmission(opts, beta_deg, steps, phase_deg);
        if (check_cmd->parsed()) return cmd_check(opts);
    } catch (const oh::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.code()) {
            case oh::ErrorCode::BadConfig:
                return kExitUsage;
            case oh::ErrorCode::Infeasible:
            case oh::ErrorCode::EmptyWorkspace:
                return kExitInfeasible;
            default:
                return kExitKinematic;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitKinematic;
    }
    return kExitUsage;
}
