#pragma once

#include <cstdint>
#include <vector>

#include "nhsense/linalg.hpp"

namespace nhsense {

/// Setting angles of one interferometric train, radians. Wave-plate Jones
/// matrices are pi-periodic in their setting angle; canonical() folds every
/// angle into (-pi/2, pi/2]. arm_phase is the relative phase picked up
/// between the two beam-displacer arms of the loss element; zero for an
/// ideally compensated network.
struct WavePlateAngles {
    double theta1 = 0.0;
    double phi1 = 0.0;
    double theta2 = 0.0;
    double phi2 = 0.0;
    double theta_h = 0.0;
    double theta_v = 0.0;
    double arm_phase = 0.0;

    WavePlateAngles canonical() const;
};

/// Half-wave plate at setting angle theta: [[cos2t, sin2t],[sin2t, -cos2t]].
Cx2Matrix hwp(double theta);

/// Quarter-wave plate at fast-axis angle phi (rotated-retarder convention,
/// qwp(0) = diag(1, i)).
Cx2Matrix qwp(double phi);

/// Polarization-dependent loss: diag(sin 2theta_h, sin 2theta_v).
Cx2Matrix loss_element(double theta_h, double theta_v);

/// Loss element including the relative arm phase xi on the V arm.
Cx2Matrix loss_element(double theta_h, double theta_v, double arm_phase);

/// Full train R2 L R1 with R_i = qwp(phi_i) * hwp(theta_i).
Cx2Matrix compose_train(const WavePlateAngles& angles);

/// Lossless reference train Q2(phi2) H1(theta1) Q1(phi1).
Cx2Matrix hermitian_train(double theta1, double phi1, double phi2);

struct FitReport {
    WavePlateAngles angles;
    Cx scale{1.0, 0.0};     // complex factor absorbing global phase/transmittance
    double residual = 0.0;  // Frobenius distance after the optimal scale
    int iterations = 0;
    bool converged = false;
};

struct FitOptions {
    int starts = 48;
    int max_iterations_per_start = 4000;
    double target_residual = 1e-8;
    std::uint64_t seed = 0x6a7e3c1db2f08954ULL;
};

/// Numerically recovers angles with min over c of ||c * train(angles) - target||_F.
/// Derivative-free simplex descent from a deterministic multi-start list;
/// the parameterization is redundant, so only the composed operator (not
/// the specific angles) is the contract. |scale| is reported so callers can
/// check physicality (|scale| <= 1 is not enforced).
FitReport decompose_operator(const Cx2Matrix& target, const FitOptions& options = {});

struct ThetaSweepResult {
    std::vector<double> thetas;
    std::vector<double> populations;
    std::vector<double> chis;  // forward differences, size k-1
};

/// Population of |H> after n_segments applications of the train as theta1
/// sweeps, plus the discrete susceptibility column.
ThetaSweepResult sweep_theta1(const WavePlateAngles& fixed, const std::vector<double>& grid,
                              int n_segments);

/// Same sweep through the lossless reference train.
ThetaSweepResult sweep_theta1_hermitian(double phi1, double phi2,
                                        const std::vector<double>& grid, int n_segments);

}  // namespace nhsense
