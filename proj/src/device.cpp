#include "orthohaptic/device.hpp"

#include <algorithm>
#include <cmath>

namespace orthohaptic {

namespace {

// Wrist motors are assigned to legs in index order; the hybrid roll motor is
// embedded on the platform and bypasses the shaft chains.
bool motor_uses_chain(const DeviceParams& params, int motor) {
    if (params.variant.tag == WristTag::Spherical3R) return true;
    return motor < 2;
}

// Wrist-side input angles from the base motor angles at position p.
Vec3 wrist_inputs(const Vec3& gamma, const Vec3& p, const DeviceParams& params) {
    Vec3 w;
    for (int i = 0; i < 3; ++i) {
        double angle = gamma[i];
        if (motor_uses_chain(params, i)) {
            const double beta = bend_angle_from_leg(p, i + 1, params.ortho);
            const TransmissionState chain = TransmissionState::z_config(i + 1, beta);
            angle = chain_output(angle, chain, params.ortho.tol).theta_out;
        }
        w[i] = params.transmission_ratios[i] * angle;
    }
    return w;
}

// Inverse of wrist_inputs; the homokinetic chain inverts to itself.
Vec3 base_motors(const Vec3& wrist_angles, const Vec3& p, const DeviceParams& params) {
    Vec3 g;
    for (int i = 0; i < 3; ++i) {
        double angle = wrist_angles[i] / params.transmission_ratios[i];
        if (motor_uses_chain(params, i)) {
            const double beta = bend_angle_from_leg(p, i + 1, params.ortho);
            const TransmissionState chain = TransmissionState::z_config(i + 1, beta);
            // chain_output is the identity in Z-configuration; run it anyway so
            // bend-angle failures surface identically in both directions
            angle = chain_output(angle, chain, params.ortho.tol).theta_out;
        }
        g[i] = angle;
    }
    return g;
}

void check_prismatic_range(const PrismaticVector& rho, const OrthoglideParams& ortho) {
    for (int i = 0; i < 3; ++i)
        if (rho[i] < ortho.rho_min || rho[i] > ortho.rho_max)
            raise(ErrorCode::RangeLimit,
                  "rho_" + std::to_string(i + 1) + " outside actuator range", i + 1);
}

}  // namespace

void DeviceParams::validate() const {
    ortho.validate();
    variant.validate(ortho.tol);
    if (variant.tag == WristTag::Spherical3R) spm_geom.validate(ortho.tol);
    for (int i = 0; i < 3; ++i)
        if (transmission_ratios[i] == 0.0)
            raise(ErrorCode::BadConfig, "transmission ratio must be nonzero", i + 1);
    if (!(wrist_limit > 0.0) || !(wrist_limit < kPi / 2.0))
        raise(ErrorCode::BadConfig, "wrist limit must lie in (0, 90) degrees");
}

DevicePose device_fk(const JointVector& q, const DeviceParams& params) {
    check_prismatic_range(q.rho, params.ortho);
    DevicePose pose;
    pose.p = fk(q.rho, params.ortho);
    const Vec3 w = wrist_inputs(q.gamma, pose.p, params);
    if (params.variant.tag == WristTag::Hybrid2R1R) {
        pose.R = params.variant.mount *
                 hybrid_fk(WristAngles{w[0], w[1], w[2]}, params.wrist_limit, params.ortho.tol);
    } else {
        const LimitsCheck chk = wrist_limits_check(w, params.wrist_limit);
        for (int i = 0; i < 3; ++i)
            if (chk.offending[i])
                raise(ErrorCode::LimitViolation,
                      "wrist motor " + std::to_string(i + 1) + " exceeds the joint limit",
                      i + 1);
        pose.R = params.variant.mount *
                 spm_fk(w, params.spm_geom, Rot3::identity(), params.ortho.tol);
    }
    return pose;
}

JointVector device_ik(const DevicePose& pose, const DeviceParams& params) {
    JointVector q;
    q.rho = ik(pose.p, params.ortho);
    const Rot3 wrist_r = params.variant.mount.transposed() * pose.R;
    Vec3 w;
    if (params.variant.tag == WristTag::Hybrid2R1R) {
        const WristAngles a = hybrid_ik(wrist_r, params.wrist_limit, params.ortho.tol);
        w = Vec3(a.theta1, a.theta2, a.phi);
    } else {
        w = spm_ik(wrist_r, params.spm_geom, params.ortho.tol);
        const LimitsCheck chk = wrist_limits_check(w, params.wrist_limit);
        for (int i = 0; i < 3; ++i)
            if (chk.offending[i])
                raise(ErrorCode::OutOfRange,
                      "wrist motor " + std::to_string(i + 1) + " exceeds the joint limit",
                      i + 1);
    }
    q.gamma = base_motors(w, pose.p, params);
    return q;
}

DeviceJacobian device_jacobian(const JointVector& q, const DeviceParams& params) {
    check_prismatic_range(q.rho, params.ortho);
    const Vec3 p = fk(q.rho, params.ortho);
    DeviceJacobian jac;
    jac.translational = jacobian(p, params.ortho);

    const Vec3 w = wrist_inputs(q.gamma, p, params);
    Mat3 wrist_jac;
    if (params.variant.tag == WristTag::Hybrid2R1R) {
        wrist_jac =
            hybrid_jacobian(WristAngles{w[0], w[1], w[2]}, params.wrist_limit, params.ortho.tol);
    } else {
        const Rot3 wrist_r = spm_fk(w, params.spm_geom, Rot3::identity(), params.ortho.tol);
        wrist_jac = spm_jacobian(wrist_r, params.spm_geom, params.ortho.tol);
    }
    // homokinetic chains have unit speed ratio; only the wrist-side gear
    // ratios scale the columns
    jac.rotational = params.variant.mount.matrix() * wrist_jac *
                     params.transmission_ratios.asDiagonal();
    jac.coupling_tr = Mat3::Zero();
    jac.coupling_rt = Mat3::Zero();
    return jac;
}

HomeConfiguration isotropic_home(const DeviceParams& params) {
    HomeConfiguration home;
    home.q.rho = PrismaticVector::Constant(params.ortho.L);
    home.q.gamma = Vec3::Zero();
    home.pose.p = Vec3::Zero();
    home.pose.R = params.variant.mount;
    return home;
}

Vec3 home_axis(const DeviceParams& params) { return params.variant.mount * unit_z(); }

double home_axis_tilt(const DeviceParams& params) {
    const double c = std::clamp(home_axis(params).dot(unit_z()), -1.0, 1.0);
    return std::acos(c);
}

}  // namespace orthohaptic
