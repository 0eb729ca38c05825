#pragma once

#include "orthohaptic/device.hpp"
#include "orthohaptic/workspace.hpp"

#include <optional>
#include <string>

namespace orthohaptic {

/// Line-oriented `key = value` configuration. Recognized keys: L, rho_min,
/// rho_max, wrist (hybrid|spherical), psi, limit_deg, grid_n, tol_unit,
/// tol_residual, tol_singular, grid_match. Unknown keys are rejected; '#'
/// starts a comment.
struct ConfigFile {
    double L = 1.0;
    double rho_min = 0.1;
    double rho_max = 1.9;
    WristTag wrist = WristTag::Hybrid2R1R;
    std::optional<double> psi;
    double limit_deg = 45.0;
    int grid_n = 17;
    Tolerances tol = {};

    OrthoglideParams orthoglide() const;
    WorkspaceSpec workspace() const;
    DeviceParams device() const;
};

/// Parses and validates; throws BadConfig naming the offending key or value.
ConfigFile parse_config(const std::string& text);

ConfigFile load_config(const std::string& path);

/// Canonical serialization; serialize(parse(text)) is idempotent.
std::string serialize_config(const ConfigFile& cfg);

/// Writes via a temporary file renamed into place so failures never leave a
/// partial file behind. Throws IoError.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace orthohaptic
