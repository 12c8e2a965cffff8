#include "ghom/spectra.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace ghom {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Gauss-Hermite rule for weight e^{-x^2}: Golub-Welsch on the Jacobi matrix
// (zero diagonal, off-diagonal sqrt(i/2)); nodes are the eigenvalues, weights
// sqrt(pi) times the squared first eigenvector components.
void gauss_hermite(int n, std::vector<double>& x, std::vector<double>& w) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(n - 1);
    for (int i = 1; i < n; ++i) sub[i - 1] = std::sqrt(0.5 * i);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);

    x.resize(n);
    w.resize(n);
    const double sqrt_pi = std::sqrt(kPi);
    for (int j = 0; j < n; ++j) {
        x[j] = es.eigenvalues()[j];
        const double v0 = es.eigenvectors()(0, j);
        w[j] = sqrt_pi * v0 * v0;
    }

    // Enforce exact +/- symmetry of the rule so mirrored node lookups
    // (w'(i,j) = w(i, n-1-j)) hold to the last bit.
    for (int j = 0; j < n / 2; ++j) {
        const int m = n - 1 - j;
        const double xs = 0.5 * (x[m] - x[j]);
        x[j] = -xs;
        x[m] = xs;
        const double ws = 0.5 * (w[j] + w[m]);
        w[j] = ws;
        w[m] = ws;
    }
    if (n % 2 == 1) x[n / 2] = 0.0;
}

}  // namespace

void GaussianJsaParams::validate() const {
    if (!(omega0 > 0.0) || !(omega1 > 0.0) || !(omega2 > 0.0))
        throw ConfigError("JSA parameters must be positive (omega0=" + std::to_string(omega0) +
                          ", omega1=" + std::to_string(omega1) +
                          ", omega2=" + std::to_string(omega2) + ")");
}

double GaussianJsaParams::spread() const {
    return 0.5 * std::sqrt(omega2 * omega2 + 4.0 * omega1 * omega1);
}

double jsa_density(const GaussianJsaParams& p, double omega, double omega_prime) {
    const double u = omega + omega_prime - 2.0 * p.omega0;
    const double v = omega - omega_prime;
    const double eu = u * u / (8.0 * p.omega1 * p.omega1);
    const double ev = v * v / (2.0 * p.omega2 * p.omega2);
    return std::exp(-eu - ev) / (2.0 * kPi * p.omega1 * p.omega2);
}

Quadrature build_quadrature(const GaussianJsaParams& p, int nodes_per_axis) {
    p.validate();
    if (nodes_per_axis < 2)
        throw ConfigError("nodes_per_axis must be >= 2, got " + std::to_string(nodes_per_axis));

    std::vector<double> x, w;
    gauss_hermite(nodes_per_axis, x, w);

    Quadrature q;
    q.nodes_per_axis = nodes_per_axis;
    q.params = p;
    q.u_nodes.resize(nodes_per_axis);
    q.v_nodes.resize(nodes_per_axis);
    q.u_weights = w;
    q.v_weights = w;

    // Substitutions u = 2 sqrt2 omega1 x, v = sqrt2 omega2 y absorb the two
    // Gaussian factors; the residual constant is 1/pi per node pair.
    const double su = 2.0 * std::sqrt(2.0) * p.omega1;
    const double sv = std::sqrt(2.0) * p.omega2;
    for (int i = 0; i < nodes_per_axis; ++i) {
        q.u_nodes[i] = su * x[i];
        q.v_nodes[i] = sv * x[i];
    }

    q.nodes.reserve(static_cast<std::size_t>(nodes_per_axis) * nodes_per_axis);
    for (int i = 0; i < nodes_per_axis; ++i) {
        for (int j = 0; j < nodes_per_axis; ++j) {
            QuadNode node;
            node.omega = p.omega0 + 0.5 * (q.u_nodes[i] + q.v_nodes[j]);
            node.omega_prime = p.omega0 + 0.5 * (q.u_nodes[i] - q.v_nodes[j]);
            node.weight = w[i] * w[j] / kPi;
            q.nodes.push_back(node);
        }
    }
    return q;
}

std::complex<double> integrate(const Quadrature& q,
                               const std::function<std::complex<double>(double, double)>& f) {
    std::complex<double> acc{0.0, 0.0};
    for (const QuadNode& n : q.nodes) {
        const std::complex<double> val = f(n.omega, n.omega_prime);
        if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
            throw NumericError("non-finite integrand at omega=" + std::to_string(n.omega) +
                               ", omega'=" + std::to_string(n.omega_prime));
        acc += n.weight * val;
    }
    return acc;
}

}  // namespace ghom
