#pragma once

#include "orthohaptic/orthoglide.hpp"
#include "orthohaptic/transmission.hpp"
#include "orthohaptic/wrist.hpp"

namespace orthohaptic {

/// Full six-dof device: translational stage, base-mounted rotary transmissions
/// along the legs, and one of the two wrist variants.
struct DeviceParams {
    OrthoglideParams ortho;
    WristVariant variant = WristVariant::hybrid();
    SphericalLegGeometry spm_geom = SphericalLegGeometry::standard();
    Vec3 transmission_ratios = Vec3::Ones();  // wrist input per chain output
    double wrist_limit = kDefaultPitchYawLimit;

    void validate() const;
};

/// Base-referenced actuator values: three prismatic joints and three rotary
/// motor angles measured upstream of the transmission chains.
struct JointVector {
    PrismaticVector rho = PrismaticVector::Zero();
    Vec3 gamma = Vec3::Zero();
};

struct DevicePose {
    Vec3 p = Vec3::Zero();
    Rot3 R = Rot3::identity();
};

/// Block-structured device Jacobian. Translation and rotation are decoupled
/// by construction, so the coupling blocks are identically zero; conditioning
/// is meaningful per block only, never for a mixed-unit 6x6 matrix.
struct DeviceJacobian {
    Mat3 translational = Mat3::Identity();  // rho_dot -> p_dot
    Mat3 rotational = Mat3::Identity();     // gamma_dot -> omega (base frame)
    Mat3 coupling_tr = Mat3::Zero();        // gamma_dot -> p_dot
    Mat3 coupling_rt = Mat3::Zero();        // rho_dot -> omega
};

struct HomeConfiguration {
    JointVector q;
    DevicePose pose;
};

/// Position from the stage, orientation from the wrist fed through the
/// homokinetic chains at the current position; the two paths are independent.
DevicePose device_fk(const JointVector& q, const DeviceParams& params);

/// rho from the stage IK, wrist angles from the variant IK of mount^T * R,
/// motor angles through the inverse transmission.
JointVector device_ik(const DevicePose& pose, const DeviceParams& params);

DeviceJacobian device_jacobian(const JointVector& q, const DeviceParams& params);

/// Configuration with both Jacobian blocks isotropic: legs orthogonal
/// (rho = L), wrist at home. The wrist distinguished axis is z for the
/// hybrid variant and (1,1,1)/sqrt(3) for the spherical variant.
HomeConfiguration isotropic_home(const DeviceParams& params);

/// Distinguished wrist axis at home (mount * z).
Vec3 home_axis(const DeviceParams& params);

/// Angle between the home axis and z: 0 for the hybrid variant,
/// arccos(1/sqrt(3)) for the spherical variant.
double home_axis_tilt(const DeviceParams& params);

}  // namespace orthohaptic
