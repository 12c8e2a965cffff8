#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ghom/optics.hpp"
#include "ghom/spectra.hpp"

namespace ghom {

// State-derivative overlaps with unit spectral weights:
//   d[i][j] = integral |Psi_s|^2 (d_i m11* d_j m11 + d_i m22* d_j m22 + d_i m12* d_j m12)
//   s[i]    = integral |Psi_s|^2 (d_i m11* m11   + d_i m22* m22   + d_i m12* m12)
// d is Hermitian; for the exchange-symmetric real JSA the s are purely real.
struct OverlapSet {
    Eigen::MatrixXcd d;
    Eigen::VectorXcd s;
};

// Bundles the evaluation context for one parameter point. quad must be built
// from jsa; the struct does not own the quadrature.
struct EvalPoint {
    InterferometerLayout layout;
    GaussianJsaParams jsa;
    const Quadrature* quad = nullptr;

    void validate() const;
};

using QfimMatrix = Eigen::MatrixXd;

OverlapSet overlaps(const EvalPoint& point);

// k x k Fisher information matrix H[i][j] = 4 Re(d[i][j] + s[i] s[j]).
QfimMatrix qfim(const EvalPoint& point);
QfimMatrix qfim_from_overlaps(const OverlapSet& ov);

double qfim_det(const QfimMatrix& H);

// Scalar covariance bounds per parameter for M independent probe copies:
// inverse_diag[i] = [H^-1]_ii / M (the attainable multiparameter bound) and
// diag_reciprocal[i] = 1 / (M H_ii) (the single-parameter floor, always <=).
struct QcrbBounds {
    std::vector<double> inverse_diag;
    std::vector<double> diag_reciprocal;
};

// Throws SingularMatrixError (with the near-null direction) if the smallest
// eigenvalue is non-positive or the condition number exceeds cond_cap.
QcrbBounds qcrb_bounds(const QfimMatrix& H, int copies, double cond_cap = 1e12);

// Im <d_i Psi | d_j Psi>; zero means the two parameters pass the pure-state
// compatibility (weak commutativity) test and the multiparameter bound is
// asymptotically attainable. Requires i != j (1-based).
double weak_commutativity(const EvalPoint& point, int i, int j);

// Eigen-structure report for (near-)singular information matrices.
struct SpectrumReport {
    Eigen::VectorXd eigenvalues;          // ascending
    Eigen::MatrixXd eigenvectors;         // columns match eigenvalues
    int rank;                             // eigenvalues > rank_tol * largest
    std::vector<double> null_direction;   // eigenvector of the smallest eigenvalue
    double rank_tol;
};

SpectrumReport qfim_spectrum(const QfimMatrix& H, double rank_tol = 1e-10);

}  // namespace ghom
