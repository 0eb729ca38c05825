#pragma once

#include "orthohaptic/geometry.hpp"
#include "orthohaptic/orthoglide.hpp"

namespace orthohaptic {

/// One universal joint: bend angle between input and output shaft axes, and
/// the input yoke orientation about its shaft (phase 0 = yoke in the bend
/// plane).
struct UJointConfig {
    double beta = 0.0;
    double yoke_phase = 0.0;
};

/// Two universal joints along one leg's neutral fiber. In the Z-configuration
/// (equal bends, parallel end axes, aligned yokes: equal yoke_phase) the chain
/// is homokinetic.
struct TransmissionState {
    int leg = 1;  // 1-based
    double beta = 0.0;
    std::array<UJointConfig, 2> chain = {};

    static TransmissionState z_config(int leg, double beta, double yoke_phase = 0.0);
};

struct ChainResult {
    double theta_out = 0.0;
    bool z_aligned = true;  // false reports MisalignedYokes; output still valid
};

/// Output shaft angle of a single joint: tan(theta_out - phase) =
/// tan(theta_in - phase) / cos(beta), unwrapped so the map is a continuous
/// strictly increasing bijection with period 2*pi. Throws BendTooLarge when
/// beta >= pi/2 - tol.singular.
double ujoint_output(double theta_in, const UJointConfig& cfg, const Tolerances& tol = {});

/// Instantaneous ratio d(theta_out)/d(theta_in) =
/// cos(beta) / (1 - sin^2(beta) cos^2(theta_in - phase)), in [cos b, 1/cos b];
/// the exact derivative of ujoint_output, largest where the input yoke
/// crosses the bend plane.
double ujoint_speed_ratio(double theta_in, const UJointConfig& cfg, const Tolerances& tol = {});

/// Composition of the two joints. Aligned yokes give theta_out == theta_in
/// exactly; misaligned yokes are reported and the general composition is
/// returned.
ChainResult chain_output(double theta_in, const TransmissionState& state,
                         const Tolerances& tol = {});

/// Bend angle of the shaft running along leg `leg` (1-based) at platform
/// position p: beta = arccos(|d_i . e_i|), zero at the isotropic posture.
double bend_angle_from_leg(const Vec3& p, int leg, const OrthoglideParams& params);

}  // namespace orthohaptic
