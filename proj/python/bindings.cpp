// Python bindings for the core kinematics, workspace and sizing operations.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orthohaptic/checks.hpp"
#include "orthohaptic/device.hpp"
#include "orthohaptic/sizing.hpp"

#include <sstream>

namespace py = pybind11;
using namespace orthohaptic;

namespace {

Rot3 rot_from_matrix(const Mat3& m) { return Rot3::from_matrix(m, 1e-8); }

SingularityReport report_of(const Vec3& p, const OrthoglideParams& params) {
    return singularity_report(p, params);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Kinematics toolkit for a six-dof decoupled haptic device: "
              "orthogonal translational stage, parallel wrist, and the "
              "base-mounted shaft transmission between them.";

    py::register_exception<Error>(m, "KinematicsError", PyExc_ValueError);

    py::class_<Tolerances>(m, "Tolerances")
        .def(py::init<>())
        .def_readwrite("unit", &Tolerances::unit)
        .def_readwrite("residual", &Tolerances::residual)
        .def_readwrite("singular", &Tolerances::singular)
        .def_readwrite("grid_match", &Tolerances::grid_match);

    // rotations cross the boundary as plain 3x3 numpy arrays
    m.def("rot_axis_angle",
          [](const Vec3& axis, double angle) { return rot_axis_angle(axis, angle).matrix(); },
          py::arg("axis"), py::arg("angle"));
    m.def("rot_log", [](const Mat3& r) { return rot_log(rot_from_matrix(r)); }, py::arg("R"));
    m.def("orthonormalize", [](const Mat3& raw) { return orthonormalize(raw).matrix(); },
          py::arg("raw"));

    py::class_<OrthoglideParams>(m, "OrthoglideParams")
        .def(py::init<>())
        .def_readwrite("L", &OrthoglideParams::L)
        .def_readwrite("rho_min", &OrthoglideParams::rho_min)
        .def_readwrite("rho_max", &OrthoglideParams::rho_max)
        .def_readwrite("tol", &OrthoglideParams::tol)
        .def("validate", &OrthoglideParams::validate);

    m.def("ik", &ik, py::arg("p"), py::arg("params"), py::arg("check_limits") = true);
    m.def("fk",
          [](const PrismaticVector& rho, const OrthoglideParams& params,
             std::optional<Vec3> seed) { return fk(rho, params, seed); },
          py::arg("rho"), py::arg("params"), py::arg("seed") = std::nullopt);
    m.def("jacobian", &jacobian, py::arg("p"), py::arg("params"));
    m.def("amplification_factors", &amplification_factors, py::arg("p"), py::arg("params"));

    py::enum_<SingularityClass>(m, "SingularityClass")
        .value("Regular", SingularityClass::Regular)
        .value("Serial", SingularityClass::Serial)
        .value("Parallel", SingularityClass::Parallel)
        .value("Outside", SingularityClass::Outside);

    py::class_<SingularityReport>(m, "SingularityReport")
        .def_readonly("kind", &SingularityReport::kind)
        .def_readonly("serial_legs", &SingularityReport::serial_legs);
    m.def("singularity_report", &report_of, py::arg("p"), py::arg("params"));

    // wrist
    py::class_<WristAngles>(m, "WristAngles")
        .def(py::init<>())
        .def(py::init([](double t1, double t2, double phi) {
                 return WristAngles{t1, t2, phi};
             }),
             py::arg("theta1"), py::arg("theta2"), py::arg("phi"))
        .def_readwrite("theta1", &WristAngles::theta1)
        .def_readwrite("theta2", &WristAngles::theta2)
        .def_readwrite("phi", &WristAngles::phi);

    py::class_<SphericalLegGeometry>(m, "SphericalLegGeometry")
        .def_static("standard", &SphericalLegGeometry::standard)
        .def_readwrite("u", &SphericalLegGeometry::u)
        .def_readwrite("v", &SphericalLegGeometry::v)
        .def_readwrite("m0", &SphericalLegGeometry::m0);

    m.def("hybrid_fk",
          [](const WristAngles& a, double limit) { return hybrid_fk(a, limit).matrix(); },
          py::arg("angles"), py::arg("limit") = kDefaultPitchYawLimit);
    m.def("hybrid_ik",
          [](const Mat3& r, double limit) { return hybrid_ik(rot_from_matrix(r), limit); },
          py::arg("R"), py::arg("limit") = kDefaultPitchYawLimit);
    m.def("hybrid_jacobian",
          [](const WristAngles& a, double limit) { return hybrid_jacobian(a, limit); },
          py::arg("angles"), py::arg("limit") = kDefaultPitchYawLimit);
    m.def("spm_ik",
          [](const Mat3& r, const SphericalLegGeometry& geom) {
              return spm_ik(rot_from_matrix(r), geom);
          },
          py::arg("R"), py::arg("geometry"));
    m.def("spm_fk",
          [](const Vec3& theta, const SphericalLegGeometry& geom) {
              return spm_fk(theta, geom).matrix();
          },
          py::arg("theta"), py::arg("geometry"));
    m.def("spm_jacobian",
          [](const Mat3& r, const SphericalLegGeometry& geom) {
              return spm_jacobian(rot_from_matrix(r), geom);
          },
          py::arg("R"), py::arg("geometry"));

    // transmission
    py::class_<UJointConfig>(m, "UJointConfig")
        .def(py::init([](double beta, double phase) {
                 return UJointConfig{beta, phase};
             }),
             py::arg("beta"), py::arg("yoke_phase") = 0.0)
        .def_readwrite("beta", &UJointConfig::beta)
        .def_readwrite("yoke_phase", &UJointConfig::yoke_phase);

    m.def("ujoint_output",
          [](double theta, const UJointConfig& cfg) { return ujoint_output(theta, cfg); },
          py::arg("theta_in"), py::arg("config"));
    m.def("ujoint_speed_ratio",
          [](double theta, const UJointConfig& cfg) {
              return ujoint_speed_ratio(theta, cfg);
          },
          py::arg("theta_in"), py::arg("config"));
    m.def("chain_output",
          [](double theta, double beta) {
              return chain_output(theta, TransmissionState::z_config(1, beta)).theta_out;
          },
          py::arg("theta_in"), py::arg("beta"),
          "Output of the homokinetic two-joint chain in Z-configuration.");
    m.def("bend_angle_from_leg", &bend_angle_from_leg, py::arg("p"), py::arg("leg"),
          py::arg("params"));

    // workspace
    py::class_<WorkspaceSpec>(m, "WorkspaceSpec")
        .def(py::init<>())
        .def_readwrite("params", &WorkspaceSpec::params)
        .def_readwrite("psi", &WorkspaceSpec::psi)
        .def_readwrite("exclude_singular_shell", &WorkspaceSpec::exclude_singular_shell);

    py::class_<MembershipResult>(m, "MembershipResult")
        .def_readonly("member", &MembershipResult::member)
        .def_readonly("leg", &MembershipResult::leg)
        .def("__bool__", [](const MembershipResult& r) { return r.member; });

    py::class_<CubeResult>(m, "CubeResult")
        .def_readonly("center", &CubeResult::center)
        .def_readonly("edge", &CubeResult::edge)
        .def_readonly("axis_aligned", &CubeResult::axis_aligned);

    m.def("is_member", &is_member, py::arg("p"), py::arg("spec"));
    m.def("largest_cube", &largest_cube, py::arg("spec"), py::arg("face_samples") = 17);
    m.def("conditioning_map",
          [](const WorkspaceSpec& spec, const Vec3& lo, const Vec3& hi,
             std::array<int, 3> n) {
              GridSpec grid{lo, hi, n};
              const auto rows = conditioning_map(spec, grid);
              py::list out;
              for (const auto& row : rows) {
                  py::dict d;
                  d["p"] = row.p;
                  d["member"] = row.member;
                  if (row.sigma_valid) {
                      d["sigma_min"] = row.sigma_min;
                      d["sigma_max"] = row.sigma_max;
                      d["kappa"] = row.kappa;
                  }
                  out.append(d);
              }
              return out;
          },
          py::arg("spec"), py::arg("lo"), py::arg("hi"), py::arg("n"));

    // sizing
    py::class_<DesignSpec>(m, "DesignSpec")
        .def(py::init<>())
        .def_readwrite("required_edge", &DesignSpec::required_edge)
        .def_readwrite("psi", &DesignSpec::psi)
        .def_readwrite("margin", &DesignSpec::margin);

    py::class_<EvalResult>(m, "EvalResult")
        .def_readonly("feasible", &EvalResult::feasible)
        .def_readonly("offset", &EvalResult::offset)
        .def_readonly("sigma_min", &EvalResult::sigma_min)
        .def_readonly("sigma_max", &EvalResult::sigma_max)
        .def_readonly("geometric_failures", &EvalResult::geometric_failures)
        .def_readonly("amplification_failures", &EvalResult::amplification_failures);

    py::class_<DesignResult>(m, "DesignResult")
        .def_readonly("params", &DesignResult::params)
        .def_readonly("cube", &DesignResult::cube)
        .def_readonly("sigma_min", &DesignResult::sigma_min)
        .def_readonly("sigma_max", &DesignResult::sigma_max);

    m.def("evaluate_design", &evaluate_design, py::arg("candidate"), py::arg("spec"),
          py::arg("grid_m") = 9);
    m.def("size_device", &size_device, py::arg("spec"), py::arg("grid_m") = 9);

    // device
    py::enum_<WristTag>(m, "WristTag")
        .value("Hybrid2R1R", WristTag::Hybrid2R1R)
        .value("Spherical3R", WristTag::Spherical3R);

    py::class_<DeviceParams>(m, "DeviceParams")
        .def(py::init<>())
        .def_static("hybrid",
                    []() {
                        DeviceParams p;
                        p.variant = WristVariant::hybrid();
                        return p;
                    })
        .def_static("spherical",
                    []() {
                        DeviceParams p;
                        p.variant = WristVariant::spherical();
                        return p;
                    })
        .def_readwrite("ortho", &DeviceParams::ortho)
        .def_readwrite("transmission_ratios", &DeviceParams::transmission_ratios)
        .def_readwrite("wrist_limit", &DeviceParams::wrist_limit)
        .def_property_readonly(
            "wrist", [](const DeviceParams& p) { return p.variant.tag; })
        .def_property_readonly(
            "mount", [](const DeviceParams& p) { return p.variant.mount.matrix(); });

    py::class_<JointVector>(m, "JointVector")
        .def(py::init<>())
        .def_readwrite("rho", &JointVector::rho)
        .def_readwrite("gamma", &JointVector::gamma);

    py::class_<DevicePose>(m, "DevicePose")
        .def(py::init<>())
        .def_readwrite("p", &DevicePose::p)
        .def_property(
            "R", [](const DevicePose& pose) { return pose.R.matrix(); },
            [](DevicePose& pose, const Mat3& m) { pose.R = rot_from_matrix(m); });

    py::class_<DeviceJacobian>(m, "DeviceJacobian")
        .def_readonly("translational", &DeviceJacobian::translational)
        .def_readonly("rotational", &DeviceJacobian::rotational)
        .def_readonly("coupling_tr", &DeviceJacobian::coupling_tr)
        .def_readonly("coupling_rt", &DeviceJacobian::coupling_rt);

    py::class_<HomeConfiguration>(m, "HomeConfiguration")
        .def_readonly("q", &HomeConfiguration::q)
        .def_readonly("pose", &HomeConfiguration::pose);

    m.def("device_fk", &device_fk, py::arg("q"), py::arg("params"));
    m.def("device_ik", &device_ik, py::arg("pose"), py::arg("params"));
    m.def("device_jacobian", &device_jacobian, py::arg("q"), py::arg("params"));
    m.def("isotropic_home", &isotropic_home, py::arg("params"));
    m.def("home_axis", &home_axis, py::arg("params"));
    m.def("home_axis_tilt", &home_axis_tilt, py::arg("params"));

    // self-checks
    m.def("run_checks",
          [](const std::string& config_text) {
              const ConfigFile cfg = parse_config(config_text);
              py::list out;
              for (const auto& r : run_all_checks(cfg)) {
                  py::dict d;
                  d["name"] = r.name;
                  d["pass"] = r.pass;
                  d["detail"] = r.detail;
                  out.append(d);
              }
              return out;
          },
          py::arg("config_text") = std::string());

    m.attr("__version__") = "0.1.0";
}
