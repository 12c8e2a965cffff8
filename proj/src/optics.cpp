#include "ghom/optics.hpp"

#include <cmath>
#include <string>

namespace ghom {

namespace {

const cplx kI{0.0, 1.0};

TransferMatrix identity() {
    return {{cplx{1.0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{1.0, 0.0}}};
}

// diag(i w/2, -i w/2) * T : the per-module generator acting from the left.
TransferMatrix apply_generator(double omega, const TransferMatrix& t) {
    const cplx g{0.0, 0.5 * omega};
    return {{g * t.e[0], g * t.e[1], -g * t.e[2], -g * t.e[3]}};
}

TransferMatrix pure_phase(double half_phase) {
    const cplx p = std::exp(kI * half_phase);
    return {{p, cplx{0.0, 0.0}, cplx{0.0, 0.0}, std::conj(p)}};
}

}  // namespace

double InterferometerLayout::tau_sum() const {
    double s = 0.0;
    for (const PhaseModule& m : modules) s += m.tau;
    return s;
}

void InterferometerLayout::validate() const {
    if (modules.empty()) throw ConfigError("layout needs at least one phase module");
    if (modules.front().theta != 0.0)
        throw ConfigError("the first phase module carries only a delay; theta_1 must be 0");
}

InterferometerLayout InterferometerLayout::make(const std::vector<double>& taus,
                                                const std::vector<double>& thetas,
                                                bool controls) {
    if (taus.empty()) throw ConfigError("layout needs at least one phase module");
    if (thetas.size() != taus.size() - 1)
        throw ConfigError("expected " + std::to_string(taus.size() - 1) +
                          " achromatic phases (theta_2..theta_k), got " +
                          std::to_string(thetas.size()));
    InterferometerLayout l;
    l.controls_enabled = controls;
    l.modules.reserve(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i)
        l.modules.push_back({taus[i], i == 0 ? 0.0 : thetas[i - 1]});
    return l;
}

double TransferMatrix::unitarity_defect() const {
    // rows of T^dag T - I, using T^dag T = conj(T)^T T
    const cplx a = std::conj(e[0]) * e[0] + std::conj(e[2]) * e[2] - 1.0;
    const cplx b = std::conj(e[0]) * e[1] + std::conj(e[2]) * e[3];
    const cplx c = std::conj(e[1]) * e[0] + std::conj(e[3]) * e[2];
    const cplx d = std::conj(e[1]) * e[1] + std::conj(e[3]) * e[3] - 1.0;
    return std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
}

TransferMatrix matmul(const TransferMatrix& a, const TransferMatrix& b) {
    return {{a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
             a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]}};
}

TransferMatrix bs_matrix() {
    const double r = 1.0 / std::sqrt(2.0);
    return {{cplx{r, 0.0}, cplx{r, 0.0}, cplx{r, 0.0}, cplx{-r, 0.0}}};
}

TransferMatrix phase_matrix(const PhaseModule& mod, double omega) {
    return pure_phase(0.5 * (omega * mod.tau + mod.theta));
}

TransferMatrix transfer(const InterferometerLayout& layout, double omega) {
    layout.validate();
    if (!layout.controls_enabled) return pure_phase(0.5 * omega * layout.tau_sum());

    const TransferMatrix B = bs_matrix();
    TransferMatrix u = identity();
    for (const PhaseModule& m : layout.modules) u = matmul(B, matmul(phase_matrix(m, omega), u));
    return u.transpose();  // mode evolution -> operator-mapping convention
}

TransferMatrix transfer_closed_k2(double tau1, double tau2, double theta2, double omega) {
    const double half = 0.5 * (omega * tau2 + theta2);
    const double c = std::cos(half);
    const double s = std::sin(half);
    const cplx ep = std::exp(kI * (0.5 * omega * tau1));
    return {{ep * c, kI * ep * s, kI * s / ep, c / ep}};
}

BiphotonAmplitudes assemble_amplitudes(const TransferMatrix& at_w, const TransferMatrix& at_wp) {
    BiphotonAmplitudes a;
    a.m11 = 0.5 * (at_w.m11() * at_wp.m21() + at_wp.m11() * at_w.m21());
    a.m22 = 0.5 * (at_w.m12() * at_wp.m22() + at_wp.m12() * at_w.m22());
    a.m12 = at_w.m11() * at_wp.m22() + at_w.m21() * at_wp.m12();
    return a;
}

BiphotonAmplitudes amplitudes(const InterferometerLayout& layout, double omega,
                              double omega_prime) {
    return assemble_amplitudes(transfer(layout, omega), transfer(layout, omega_prime));
}

BiphotonAmplitudes amplitudes_closed_k2(double tau1, double tau2, double theta2, double omega,
                                        double omega_prime) {
    const cplx pre = std::exp(-kI * (0.5 * tau1 * (omega + omega_prime)));
    const cplx em = std::exp(kI * (tau1 * omega)) - std::exp(kI * (tau1 * omega_prime));
    const cplx ep = std::exp(kI * (tau1 * omega)) + std::exp(kI * (tau1 * omega_prime));
    const double sd = std::sin(0.5 * tau2 * (omega - omega_prime));
    const double cd = std::cos(0.5 * tau2 * (omega - omega_prime));
    const double ss = std::sin(0.5 * tau2 * (omega + omega_prime) + theta2);
    const double cs = std::cos(0.5 * tau2 * (omega + omega_prime) + theta2);

    BiphotonAmplitudes a;
    a.m11 = (-kI / 4.0) * pre * (em * sd - ep * ss);
    a.m22 = (kI / 4.0) * pre * (em * sd + ep * ss);
    a.m12 = 0.5 * pre * (em * cd + ep * cs);
    return a;
}

TransferBundle transfer_with_derivatives(const InterferometerLayout& layout, double omega) {
    layout.validate();
    const int k = layout.k();
    TransferBundle out;
    out.deriv.resize(k);

    if (!layout.controls_enabled) {
        out.value = pure_phase(0.5 * omega * layout.tau_sum());
        const TransferMatrix d = apply_generator(omega, out.value);
        for (int i = 0; i < k; ++i) out.deriv[i] = d;
        return out;
    }

    const TransferMatrix B = bs_matrix();
    std::vector<TransferMatrix> factor(k);   // B * Phi_l
    for (int l = 0; l < k; ++l) factor[l] = matmul(B, phase_matrix(layout.modules[l], omega));

    std::vector<TransferMatrix> prefix(k + 1);  // prefix[l] = factor[l-1] * ... * factor[0]
    prefix[0] = identity();
    for (int l = 0; l < k; ++l) prefix[l + 1] = matmul(factor[l], prefix[l]);

    std::vector<TransferMatrix> suffix(k + 1);  // suffix[l] = factor[k-1] * ... * factor[l]
    suffix[k] = identity();
    for (int l = k - 1; l >= 0; --l) suffix[l] = matmul(suffix[l + 1], factor[l]);

    out.value = prefix[k].transpose();
    for (int l = 0; l < k; ++l) {
        // d factor_l / d tau_l = B * G * Phi_l with G = diag(i w/2, -i w/2);
        // G commutes with the diagonal phase, so reuse B*Phi_l and insert G after.
        const TransferMatrix dfac =
            matmul(B, apply_generator(omega, phase_matrix(layout.modules[l], omega)));
        out.deriv[l] = matmul(suffix[l + 1], matmul(dfac, prefix[l])).transpose();
    }
    return out;
}

BiphotonAmplitudes amplitude_derivative(const InterferometerLayout& layout, double omega,
                                        double omega_prime, int i) {
    if (i < 1 || i > layout.k())
        throw ConfigError("derivative index " + std::to_string(i) + " out of range for k=" +
                          std::to_string(layout.k()));
    const TransferBundle bw = transfer_with_derivatives(layout, omega);
    const TransferBundle bp = transfer_with_derivatives(layout, omega_prime);
    const BiphotonAmplitudes left = assemble_amplitudes(bw.deriv[i - 1], bp.value);
    const BiphotonAmplitudes right = assemble_amplitudes(bw.value, bp.deriv[i - 1]);
    return {left.m11 + right.m11, left.m22 + right.m22, left.m12 + right.m12};
}

double coincidence_pointwise(const InterferometerLayout& layout, double omega,
                             double omega_prime) {
    const BiphotonAmplitudes a = amplitudes(layout, omega, omega_prime);
    return std::norm(a.m12);
}

}  // namespace ghom
