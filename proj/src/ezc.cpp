#include "ghom/ezc.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace ghom {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace

double coincidence(const InterferometerLayout& layout, const Quadrature& quad) {
    layout.validate();
    if (quad.u_nodes.empty())
        throw ConfigError("quadrature lacks tensor axes; build it with build_quadrature");

    const int n = quad.nodes_per_axis;
    // one transfer matrix per distinct frequency; the primed photon reuses the
    // mirrored difference index
    std::vector<TransferMatrix> cache(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double w = quad.params.omega0 + 0.5 * (quad.u_nodes[i] + quad.v_nodes[j]);
            cache[i * n + j] = transfer(layout, w);
        }

    double r = 0.0;
    const double inv_pi = 1.0 / kPi;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const TransferMatrix& mw = cache[i * n + j];
            const TransferMatrix& mp = cache[i * n + (n - 1 - j)];
            const cplx m12 = mw.m11() * mp.m22() + mw.m21() * mp.m12();
            r += quad.u_weights[i] * quad.v_weights[j] * inv_pi * std::norm(m12);
        }
    if (!std::isfinite(r)) throw NumericError("non-finite coincidence integral");
    return r;
}

EzcPhases ezc_phase_solution_k4(double theta2, double theta4) {
    const double s2 = std::sin(theta2), c2 = std::cos(theta2);
    const double s4 = std::sin(theta4), c4 = std::cos(theta4);
    if (std::abs(s2 * s4) < 1e-12)
        throw ConfigError("k=4 exclusive-zero-coincidence phases need sin(theta2) sin(theta4) != 0");
    const double cot_product = (c2 / s2) * (c4 / s4);
    if (std::abs(cot_product) > 1.0)
        throw ConfigError("cot(theta2) cot(theta4) = " + std::to_string(cot_product) +
                          " lies outside [-1, 1]; no theta3 completes the configuration");
    return {4, {theta2, std::acos(cot_product), theta4}};
}

EzcPhases ezc_phase_solution(int k) {
    switch (k) {
        case 2:
            return {2, {kPi / 2.0}};
        case 3:
            throw ConfigError("no EZC solution: for k=3 no achromatic phases make zero "
                              "coincidence exclusive to the origin");
        case 4:
            return ezc_phase_solution_k4(kPi / 3.0, kPi / 4.0);
        default:
            throw ConfigError("EZC phase solutions are tabulated for k in {2, 3, 4}, got " +
                              std::to_string(k));
    }
}

std::vector<double> EzcGrid::points() const {
    std::vector<double> pts(count);
    const double step = (max - min) / (count - 1);
    for (int i = 0; i < count; ++i) {
        double p = min + i * step;
        if (std::abs(p) < 1e-12 * std::max(1.0, max - min)) p = 0.0;  // snap the origin exactly
        pts[i] = p;
    }
    return pts;
}

void EzcGrid::validate() const {
    if (count < 2) throw ConfigError("grid needs at least 2 points per axis");
    if (!(min <= 0.0 && 0.0 <= max)) throw ConfigError("grid must straddle the origin");
    for (double p : points())
        if (p == 0.0) return;
    throw ConfigError("grid must contain the origin (adjust min:max:count)");
}

std::string EzcReport::summary() const {
    std::ostringstream os;
    os << "EZC verification, k=" << k << ", grid [" << grid.min << ", " << grid.max << "] x "
       << grid.count << " per axis, tol " << tol << "\n";
    os << "  R(origin) = " << origin_value << (origin_is_zero ? "  (zero)" : "  (NOT zero)")
       << "\n";
    os << "  min R off origin = " << min_offorigin << "\n";
    os << "  near-zero points: " << zero_points.size() << "\n";
    for (const auto& pt : zero_points) {
        os << "    (";
        for (std::size_t i = 0; i < pt.size(); ++i) os << (i ? ", " : "") << pt[i];
        os << ")\n";
    }
    os << (pass ? "  PASS: the zero set is exactly the origin"
                : "  FAIL: zero coincidence does not single out the origin");
    return os.str();
}

EzcReport ezc_verify(const InterferometerLayout& layout, const Quadrature& quad,
                     const EzcGrid& grid, double tol) {
    layout.validate();
    grid.validate();
    const int k = layout.k();
    const std::vector<double> axis = grid.points();

    EzcReport rep;
    rep.grid = grid;
    rep.tol = tol;
    rep.k = k;
    rep.min_offorigin = std::numeric_limits<double>::infinity();

    std::vector<int> idx(k, 0);
    InterferometerLayout probe = layout;
    while (true) {
        bool at_origin = true;
        for (int i = 0; i < k; ++i) {
            probe.modules[i].tau = axis[idx[i]];
            if (axis[idx[i]] != 0.0) at_origin = false;
        }
        const double r = coincidence(probe, quad);

        if (at_origin) {
            rep.origin_value = r;
            rep.origin_is_zero = r < tol;
        } else {
            rep.min_offorigin = std::min(rep.min_offorigin, r);
        }
        if (r < tol) {
            std::vector<double> pt(k);
            for (int i = 0; i < k; ++i) pt[i] = axis[idx[i]];
            rep.zero_points.push_back(std::move(pt));
        }

        int axis_i = k - 1;  // lexicographic order, last axis fastest
        while (axis_i >= 0 && ++idx[axis_i] == grid.count) idx[axis_i--] = 0;
        if (axis_i < 0) break;
    }

    rep.pass = rep.origin_is_zero && rep.zero_points.size() == 1;
    return rep;
}

}  // namespace ghom
