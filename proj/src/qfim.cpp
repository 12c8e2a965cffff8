#include "ghom/qfim.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace ghom {

namespace {

// Per-frequency transfer matrices and derivatives over the tensor quadrature
// grid. Frequencies repeat across the two photon slots (w'(i,j) = w(i, n-1-j)
// by the +/- symmetry of the difference axis), so each distinct frequency is
// evaluated once.
struct BundleCache {
    int n = 0;
    int k = 0;
    std::vector<TransferMatrix> value;  // n*n
    std::vector<TransferMatrix> deriv;  // n*n*k

    const TransferMatrix& val(int i, int j) const { return value[i * n + j]; }
    const TransferMatrix& der(int i, int j, int l) const { return deriv[(i * n + j) * k + l]; }
};

BundleCache build_cache(const InterferometerLayout& layout, const Quadrature& q) {
    if (q.u_nodes.empty() || q.v_nodes.empty())
        throw ConfigError("quadrature lacks tensor axes; build it with build_quadrature");
    BundleCache cache;
    cache.n = q.nodes_per_axis;
    cache.k = layout.k();
    cache.value.resize(static_cast<std::size_t>(cache.n) * cache.n);
    cache.deriv.resize(cache.value.size() * cache.k);
    for (int i = 0; i < cache.n; ++i) {
        for (int j = 0; j < cache.n; ++j) {
            const double w = q.params.omega0 + 0.5 * (q.u_nodes[i] + q.v_nodes[j]);
            TransferBundle b = transfer_with_derivatives(layout, w);
            cache.value[i * cache.n + j] = b.value;
            for (int l = 0; l < cache.k; ++l)
                cache.deriv[(i * cache.n + j) * cache.k + l] = b.deriv[l];
        }
    }
    return cache;
}

inline cplx dot3(const BiphotonAmplitudes& a, const BiphotonAmplitudes& b) {
    return std::conj(a.m11) * b.m11 + std::conj(a.m22) * b.m22 + std::conj(a.m12) * b.m12;
}

void check_finite(const Eigen::MatrixXcd& d, const Eigen::VectorXcd& s) {
    if (!d.allFinite() || !s.allFinite())
        throw NumericError("non-finite overlap integral (check layout and quadrature)");
}

}  // namespace

void EvalPoint::validate() const {
    layout.validate();
    jsa.validate();
    if (quad == nullptr) throw ConfigError("EvalPoint has no quadrature");
    if (quad->params.omega0 != jsa.omega0 || quad->params.omega1 != jsa.omega1 ||
        quad->params.omega2 != jsa.omega2)
        throw ConfigError("quadrature was built for different JSA parameters");
}

OverlapSet overlaps(const EvalPoint& point) {
    point.validate();
    const Quadrature& q = *point.quad;
    const int k = point.layout.k();
    const int n = q.nodes_per_axis;

    const BundleCache cache = build_cache(point.layout, q);

    OverlapSet ov;
    ov.d = Eigen::MatrixXcd::Zero(k, k);
    ov.s = Eigen::VectorXcd::Zero(k);

    std::vector<BiphotonAmplitudes> da(k);
    const double inv_pi = 1.0 / 3.141592653589793238462643383279502884;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int jm = n - 1 - j;  // mirrored difference index = primed photon
            const TransferMatrix& mw = cache.val(i, j);
            const TransferMatrix& mp = cache.val(i, jm);
            const BiphotonAmplitudes a = assemble_amplitudes(mw, mp);
            for (int l = 0; l < k; ++l) {
                const BiphotonAmplitudes left = assemble_amplitudes(cache.der(i, j, l), mp);
                const BiphotonAmplitudes right = assemble_amplitudes(mw, cache.der(i, jm, l));
                da[l] = {left.m11 + right.m11, left.m22 + right.m22, left.m12 + right.m12};
            }
            const double wt = q.u_weights[i] * q.v_weights[j] * inv_pi;
            for (int l = 0; l < k; ++l) {
                ov.s[l] += wt * dot3(da[l], a);
                ov.d(l, l) += wt * dot3(da[l], da[l]);
                for (int m = l + 1; m < k; ++m) {
                    const cplx v = wt * dot3(da[l], da[m]);
                    ov.d(l, m) += v;
                }
            }
        }
    }
    // fill the lower triangle from Hermiticity of the accumulated sums
    for (int l = 0; l < k; ++l)
        for (int m = l + 1; m < k; ++m) ov.d(m, l) = std::conj(ov.d(l, m));

    check_finite(ov.d, ov.s);
    return ov;
}

QfimMatrix qfim_from_overlaps(const OverlapSet& ov) {
    const int k = static_cast<int>(ov.s.size());
    QfimMatrix H(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            H(i, j) = 4.0 * std::real(ov.d(i, j) + ov.s[i] * ov.s[j]);
    // exact symmetry for downstream eigen routines
    H = 0.5 * (H + QfimMatrix(H.transpose()));
    return H;
}

QfimMatrix qfim(const EvalPoint& point) { return qfim_from_overlaps(overlaps(point)); }

double qfim_det(const QfimMatrix& H) {
    return Eigen::FullPivLU<Eigen::MatrixXd>(H).determinant();
}

SpectrumReport qfim_spectrum(const QfimMatrix& H, double rank_tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    SpectrumReport rep;
    rep.eigenvalues = es.eigenvalues();
    rep.eigenvectors = es.eigenvectors();
    rep.rank_tol = rank_tol;
    const double top = rep.eigenvalues[rep.eigenvalues.size() - 1];
    rep.rank = 0;
    for (int i = 0; i < rep.eigenvalues.size(); ++i)
        if (rep.eigenvalues[i] > rank_tol * top) ++rep.rank;

    Eigen::VectorXd nullv = rep.eigenvectors.col(0);
    // fix the sign so reports are deterministic
    for (int i = 0; i < nullv.size(); ++i) {
        if (std::abs(nullv[i]) > 1e-12) {
            if (nullv[i] < 0) nullv = -nullv;
            break;
        }
    }
    rep.null_direction.assign(nullv.data(), nullv.data() + nullv.size());
    return rep;
}

QcrbBounds qcrb_bounds(const QfimMatrix& H, int copies, double cond_cap) {
    if (copies < 1) throw ConfigError("copies must be >= 1");
    const int k = static_cast<int>(H.rows());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    const double lo = es.eigenvalues()[0];
    const double hi = es.eigenvalues()[k - 1];
    if (!(lo > 0.0) || hi / lo > cond_cap) {
        SpectrumReport rep = qfim_spectrum(H);
        const double cond = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
        throw SingularMatrixError(
            "intertwined/singular information matrix: smallest eigenvalue " +
                std::to_string(lo) + "; the near-null delay combination carries no information",
            rep.null_direction, cond);
    }

    Eigen::MatrixXd inv =
        es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() *
        es.eigenvectors().transpose();

    QcrbBounds b;
    b.inverse_diag.resize(k);
    b.diag_reciprocal.resize(k);
    for (int i = 0; i < k; ++i) {
        b.inverse_diag[i] = inv(i, i) / copies;
        b.diag_reciprocal[i] = 1.0 / (copies * H(i, i));
        if (b.inverse_diag[i] < b.diag_reciprocal[i] * (1.0 - 1e-9))
            throw NumericError("inverse-diagonal bound fell below the diagonal floor; "
                               "matrix is numerically inconsistent");
    }
    return b;
}

double weak_commutativity(const EvalPoint& point, int i, int j) {
    const int k = point.layout.k();
    if (i == j) throw ConfigError("weak commutativity needs two distinct parameter indices");
    if (i < 1 || j < 1 || i > k || j > k)
        throw ConfigError("parameter index out of range for k=" + std::to_string(k));
    const OverlapSet ov = overlaps(point);
    return std::imag(ov.d(i - 1, j - 1));
}

}  // namespace ghom
