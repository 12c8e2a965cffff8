#pragma once

#include <array>
#include <complex>
#include <vector>

#include "ghom/errors.hpp"

namespace ghom {

using cplx = std::complex<double>;

// One stage of the interferometer: a delay tau on one arm against the other,
// realized as opposite chromatic phases +/- (w tau + theta)/2, plus an
// achromatic offset theta. The first module of a device always has theta = 0.
struct PhaseModule {
    double tau = 0.0;
    double theta = 0.0;
};

struct InterferometerLayout {
    std::vector<PhaseModule> modules;   // module 1 first
    bool controls_enabled = true;       // false: no beam splitters, phases simply accumulate

    int k() const { return static_cast<int>(modules.size()); }
    double tau_sum() const;
    void validate() const;  // k >= 1, first theta == 0 (throws ConfigError)

    // taus has length k, thetas has length k-1 (theta_2 .. theta_k).
    static InterferometerLayout make(const std::vector<double>& taus,
                                     const std::vector<double>& thetas,
                                     bool controls = true);
};

// 2x2 complex matrix in the operator-mapping convention: input creation
// operators written in terms of output ones, a_dag_a = sum_b M[a][b] c_dag_b.
struct TransferMatrix {
    // row-major: e[0]=M11 e[1]=M12 e[2]=M21 e[3]=M22
    std::array<cplx, 4> e{};

    cplx m11() const { return e[0]; }
    cplx m12() const { return e[1]; }
    cplx m21() const { return e[2]; }
    cplx m22() const { return e[3]; }

    TransferMatrix transpose() const { return {{e[0], e[2], e[1], e[3]}}; }
    double unitarity_defect() const;  // max entry of |T^dag T - I|
};

TransferMatrix matmul(const TransferMatrix& a, const TransferMatrix& b);

// Balanced splitter, real Hadamard convention. The choice is calibrated, not
// arbitrary: composed with the phase stages below it reproduces the closed-form
// k=2 transfer matrix exactly (see transfer_closed_k2 and the optics tests).
TransferMatrix bs_matrix();

// diag(e^{+i phi/2}, e^{-i phi/2}) with phi = w tau + theta.
TransferMatrix phase_matrix(const PhaseModule& mod, double omega);

// Full device. Controls on: operator-mapping matrix of B Phi_k ... B Phi_1.
// Controls off: pure phase accumulation diag(e^{+i w tau_sum/2}, e^{-i w tau_sum/2}).
TransferMatrix transfer(const InterferometerLayout& layout, double omega);

// Closed-form k=2 transfer matrix (theta_1 = 0).
TransferMatrix transfer_closed_k2(double tau1, double tau2, double theta2, double omega);

// Two-photon transition amplitudes at a frequency pair: m11/m22 are the
// exchange-symmetrized bunching amplitudes into ports 1/2, m12 the
// anti-bunching (coincidence) amplitude.
struct BiphotonAmplitudes {
    cplx m11, m22, m12;
};

// Assembles the amplitudes from per-frequency transfer matrices. Bilinear in
// (at_w, at_wp), which is what makes the product-rule derivative below exact.
BiphotonAmplitudes assemble_amplitudes(const TransferMatrix& at_w, const TransferMatrix& at_wp);

BiphotonAmplitudes amplitudes(const InterferometerLayout& layout, double omega, double omega_prime);

// Closed-form k=2 amplitudes (theta_1 = 0).
BiphotonAmplitudes amplitudes_closed_k2(double tau1, double tau2, double theta2,
                                        double omega, double omega_prime);

// Componentwise d/d tau_i (i is 1-based) via the product rule over the matrix
// chain; analytic, not finite-difference.
BiphotonAmplitudes amplitude_derivative(const InterferometerLayout& layout,
                                        double omega, double omega_prime, int i);

// |m12|^2; integrating it against the JSA density gives the coincidence rate.
double coincidence_pointwise(const InterferometerLayout& layout, double omega, double omega_prime);

// Batch form used by the integral engines: the transfer matrix and all k delay
// derivatives at one frequency, computed with shared prefix/suffix products.
struct TransferBundle {
    TransferMatrix value;
    std::vector<TransferMatrix> deriv;  // deriv[i-1] = d transfer / d tau_i
};

TransferBundle transfer_with_derivatives(const InterferometerLayout& layout, double omega);

}  // namespace ghom
