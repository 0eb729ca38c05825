#include "orthohaptic/transmission.hpp"

#include <algorithm>
#include <cmath>

namespace orthohaptic {

namespace {

void check_bend(double beta, const Tolerances& tol) {
    if (!(beta >= 0.0) || beta >= kPi / 2.0 - tol.singular)
        raise(ErrorCode::BendTooLarge, "universal joint cannot transmit at this bend angle");
}

// Principal Cardan transfer measured from the bend plane, unwrapped to keep
// theta_out continuous and increasing over all turns.
double cardan(double theta, double cos_beta) {
    const double turns = std::floor((theta + kPi) / (2.0 * kPi));
    const double w = theta - 2.0 * kPi * turns;  // in (-pi, pi]
    return std::atan2(std::sin(w), cos_beta * std::cos(w)) + 2.0 * kPi * turns;
}

}  // namespace

TransmissionState TransmissionState::z_config(int leg, double beta, double yoke_phase) {
    TransmissionState st;
    st.leg = leg;
    st.beta = beta;
    st.chain[0] = UJointConfig{beta, yoke_phase};
    st.chain[1] = UJointConfig{beta, yoke_phase};
    return st;
}

double ujoint_output(double theta_in, const UJointConfig& cfg, const Tolerances& tol) {
    check_bend(cfg.beta, tol);
    return cfg.yoke_phase + cardan(theta_in - cfg.yoke_phase, std::cos(cfg.beta));
}

double ujoint_speed_ratio(double theta_in, const UJointConfig& cfg, const Tolerances& tol) {
    check_bend(cfg.beta, tol);
    const double sb = std::sin(cfg.beta);
    const double ct = std::cos(theta_in - cfg.yoke_phase);
    return std::cos(cfg.beta) / (1.0 - sb * sb * ct * ct);
}

ChainResult chain_output(double theta_in, const TransmissionState& state, const Tolerances& tol) {
    ChainResult out;
    // The cross of the second joint picks up the intermediate shaft a quarter
    // turn from the first yoke, which inverts the transfer when the yokes are
    // aligned (the homokinetic Z-configuration).
    const UJointConfig second{state.chain[1].beta, state.chain[1].yoke_phase + kPi / 2.0};
    const double mid = ujoint_output(theta_in, state.chain[0], tol);
    out.theta_out = ujoint_output(mid, second, tol);

    const double offset = state.chain[1].yoke_phase - state.chain[0].yoke_phase;
    const double misalign = std::abs(std::remainder(offset, kPi));
    out.z_aligned = misalign <= tol.unit;
    return out;
}

double bend_angle_from_leg(const Vec3& p, int leg, const OrthoglideParams& params) {
    const LegState st = leg_state(p, params);
    const double c = std::clamp(std::abs(st.c[leg - 1]), 0.0, 1.0);
    return std::acos(c);
}

}  // namespace orthohaptic
