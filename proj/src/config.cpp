#include "orthohaptic/config.hpp"

#include "orthohaptic/text.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace orthohaptic {

OrthoglideParams ConfigFile::orthoglide() const {
    OrthoglideParams params;
    params.L = L;
    params.rho_min = rho_min;
    params.rho_max = rho_max;
    params.tol = tol;
    params.validate();
    return params;
}

WorkspaceSpec ConfigFile::workspace() const {
    WorkspaceSpec spec;
    spec.params = orthoglide();
    spec.psi = psi;
    spec.validate();
    return spec;
}

DeviceParams ConfigFile::device() const {
    DeviceParams params;
    params.ortho = orthoglide();
    params.variant =
        (wrist == WristTag::Hybrid2R1R) ? WristVariant::hybrid() : WristVariant::spherical();
    params.wrist_limit = deg2rad(limit_deg);
    params.validate();
    return params;
}

ConfigFile parse_config(const std::string& text) {
    ConfigFile cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            raise(ErrorCode::BadConfig,
                  "line " + std::to_string(line_no) + " is not of the form key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "L") {
            cfg.L = parse_finite_double(value, key);
        } else if (key == "rho_min") {
            cfg.rho_min = parse_finite_double(value, key);
        } else if (key == "rho_max") {
            cfg.rho_max = parse_finite_double(value, key);
        } else if (key == "wrist") {
            if (value == "hybrid")
                cfg.wrist = WristTag::Hybrid2R1R;
            else if (value == "spherical")
                cfg.wrist = WristTag::Spherical3R;
            else
                raise(ErrorCode::BadConfig,
                      "wrist must be 'hybrid' or 'spherical', got '" + value + "'");
        } else if (key == "psi") {
            cfg.psi = parse_finite_double(value, key);
            if (!(*cfg.psi >= 1.0)) raise(ErrorCode::BadConfig, "psi must be >= 1");
        } else if (key == "limit_deg") {
            cfg.limit_deg = parse_finite_double(value, key);
            if (!(cfg.limit_deg > 0.0) || !(cfg.limit_deg < 90.0))
                raise(ErrorCode::BadConfig, "limit_deg must lie in (0, 90)");
        } else if (key == "grid_n") {
            const double n = parse_finite_double(value, key);
            if (n < 3 || n != std::floor(n))
                raise(ErrorCode::BadConfig, "grid_n must be an integer >= 3");
            cfg.grid_n = int(n);
        } else if (key == "tol_unit") {
            cfg.tol.unit = parse_finite_double(value, key);
        } else if (key == "tol_residual") {
            cfg.tol.residual = parse_finite_double(value, key);
        } else if (key == "tol_singular") {
            cfg.tol.singular = parse_finite_double(value, key);
        } else if (key == "grid_match") {
            cfg.tol.grid_match = parse_finite_double(value, key);
        } else {
            raise(ErrorCode::BadConfig, "unknown key '" + key + "'");
        }
    }
    cfg.tol.validate();
    if (!(cfg.L > 0.0)) raise(ErrorCode::BadConfig, "L must be positive");
    if (cfg.rho_min > cfg.rho_max)
        raise(ErrorCode::BadConfig, "rho_min must not exceed rho_max");
    return cfg;
}

ConfigFile load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::IoError, "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ConfigFile& cfg) {
    std::ostringstream out;
    out << "L = " << format_shortest(cfg.L) << '\n';
    out << "rho_min = " << format_shortest(cfg.rho_min) << '\n';
    out << "rho_max = " << format_shortest(cfg.rho_max) << '\n';
    out << "wrist = " << (cfg.wrist == WristTag::Hybrid2R1R ? "hybrid" : "spherical") << '\n';
    if (cfg.psi) out << "psi = " << format_shortest(*cfg.psi) << '\n';
    out << "limit_deg = " << format_shortest(cfg.limit_deg) << '\n';
    out << "grid_n = " << cfg.grid_n << '\n';
    out << "tol_unit = " << format_shortest(cfg.tol.unit) << '\n';
    out << "tol_residual = " << format_shortest(cfg.tol.residual) << '\n';
    out << "tol_singular = " << format_shortest(cfg.tol.singular) << '\n';
    out << "grid_match = " << format_shortest(cfg.tol.grid_match) << '\n';
    return out.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) raise(ErrorCode::IoError, "cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            raise(ErrorCode::IoError, "failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        raise(ErrorCode::IoError, "failed to move output into place at '" + path + "'");
    }
}

}  // namespace orthohaptic
