#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "ghom/errors.hpp"

namespace ghom {

// Two-mode Gaussian joint spectral density: a Gaussian of width 2*omega1 in the
// sum coordinate w + w' centered at 2*omega0, times a Gaussian of width omega2
// in the difference coordinate w - w'. omega2 is the global frequency unit, so
// delays are measured in 1/omega2.
struct GaussianJsaParams {
    double omega0 = 5.0;
    double omega1 = 1.0 / 3.0;
    double omega2 = 1.0;

    void validate() const;                       // throws ConfigError
    double spread() const;                       // combined single-photon spread sqrt(omega2^2 + 4 omega1^2)/2
};

// |Psi_s(w, w')|^2, normalized so the double integral over the plane is 1.
double jsa_density(const GaussianJsaParams& p, double omega, double omega_prime);

struct QuadNode {
    double omega;
    double omega_prime;
    double weight;  // density folded in: sum of weights = 1
};

// Tensor Gauss-Hermite rule in the rotated coordinates u = w + w' - 2 w0,
// v = w - w', matched to the two Gaussian factors of the density. The flat node
// list is row-major in (u index, v index); the axis arrays are kept so batch
// evaluators can exploit the tensor structure (w'(i,j) = w(i, n-1-j)).
struct Quadrature {
    std::vector<QuadNode> nodes;
    std::vector<double> u_nodes;   // scaled sum-coordinate offsets
    std::vector<double> v_nodes;   // scaled difference-coordinate offsets, symmetric about 0
    std::vector<double> u_weights; // per-axis weights, each pair multiplied gives pi * node weight
    std::vector<double> v_weights;
    int nodes_per_axis = 0;
    GaussianJsaParams params;

    std::size_t size() const { return nodes.size(); }
};

Quadrature build_quadrature(const GaussianJsaParams& p, int nodes_per_axis);

// Integral of f against the JSA density. Deterministic given node order; throws
// NumericError if f returns a non-finite value at any node.
std::complex<double> integrate(const Quadrature& q,
                               const std::function<std::complex<double>(double, double)>& f);

}  // namespace ghom
