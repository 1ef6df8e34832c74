#pragma once

#include <Eigen/Core>

namespace orbitforge {

/// Cross-product (tilde) matrix of a 3-vector.
Eigen::Matrix3d skew(const Eigen::Vector3d& v);

/// Shadow set of an MRP: -sigma / |sigma|^2. The zero vector maps to itself.
Eigen::Vector3d mrp_shadow(const Eigen::Vector3d& sigma);

/// Map to the inner set (|sigma| <= 1) via the shadow set when needed.
Eigen::Vector3d mrp_switch_to_inner(const Eigen::Vector3d& sigma);

/// MRP kinematic differential equation:
/// sigma_dot = 1/4 [ (1 - sigma^2) I + 2 [sigma~] + 2 sigma sigma^T ] omega.
Eigen::Vector3d mrp_rate(const Eigen::Vector3d& sigma, const Eigen::Vector3d& omega);

/// Direction cosine matrix of an MRP (maps N-frame vectors to B-frame).
Eigen::Matrix3d mrp_to_dcm(const Eigen::Vector3d& sigma);

/// Shortest-rotation MRP (|sigma| <= 1) of a proper orthonormal matrix, via
/// a quaternion intermediate with non-negative scalar part. Rejects input
/// that is not orthonormal with det +1 to within 1e-9.
Eigen::Vector3d dcm_to_mrp(const Eigen::Matrix3d& dcm);

/// Scalar-first unit quaternion of a DCM (Shepperd's method), q0 >= 0.
Eigen::Vector4d dcm_to_quaternion(const Eigen::Matrix3d& dcm);

/// MRP of the composed rotation: `first`, then `second`. The composition
/// denominator is guarded by shadow-switching an operand when it falls
/// below 1e-6 in magnitude; the result is mapped to the inner set.
Eigen::Vector3d mrp_compose(const Eigen::Vector3d& first, const Eigen::Vector3d& second);

/// Relative attitude sigma_BR from sigma_BN and sigma_RN, i.e. the MRP of
/// DCM(sigma_BN) * DCM(sigma_RN)^T.
Eigen::Vector3d mrp_relative(const Eigen::Vector3d& sigma_BN, const Eigen::Vector3d& sigma_RN);

}  // namespace orbitforge
