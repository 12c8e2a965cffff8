#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "ghom/optics.hpp"
#include "ghom/textio.hpp"

using namespace ghom;

namespace {
constexpr double kHalfPi = 1.5707963267948966;

double amp_dist(const BiphotonAmplitudes& a, const BiphotonAmplitudes& b) {
    return std::max({std::abs(a.m11 - b.m11), std::abs(a.m22 - b.m22), std::abs(a.m12 - b.m12)});
}

InterferometerLayout random_layout(UniformRng& rng, int k) {
    std::vector<double> taus(k), thetas(k - 1);
    for (double& t : taus) t = rng.uniform(-3.0, 3.0);
    for (double& t : thetas) t = rng.uniform(0.0, 2.0 * M_PI);
    return InterferometerLayout::make(taus, thetas);
}
}  // namespace

TEST_CASE("splitter and phase stage") {
    const TransferMatrix b = bs_matrix();
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(b.m11() == cplx(r, 0.0));
    CHECK(b.m12() == cplx(r, 0.0));
    CHECK(b.m21() == cplx(r, 0.0));
    CHECK(b.m22() == cplx(-r, 0.0));
    CHECK(b.unitarity_defect() < 1e-15);

    const PhaseModule mod{0.7, 0.3};
    const TransferMatrix ph = phase_matrix(mod, 2.0);
    const double phi = 2.0 * 0.7 + 0.3;
    CHECK(std::abs(ph.m11() - std::exp(cplx(0.0, phi / 2))) < 1e-15);
    CHECK(std::abs(ph.m22() - std::exp(cplx(0.0, -phi / 2))) < 1e-15);
    CHECK(ph.m12() == cplx(0.0, 0.0));
}

TEST_CASE("layout validation") {
    CHECK_THROWS_AS(InterferometerLayout::make({}, {}), ConfigError);
    CHECK_THROWS_AS(InterferometerLayout::make({1.0, 2.0}, {0.1, 0.2}), ConfigError);
    InterferometerLayout lay = InterferometerLayout::make({1.0, 2.0}, {0.1});
    lay.modules[0].theta = 0.5;  // first stage must stay achromatic-phase-free
    CHECK_THROWS_AS(lay.validate(), ConfigError);
    CHECK(InterferometerLayout::make({1.0, -2.0, 0.5}, {0.1, 0.2}).tau_sum() ==
          doctest::Approx(-0.5));
}

TEST_CASE("transfer is unitary for random devices") {
    UniformRng rng(11);
    for (int draw = 0; draw < 100; ++draw) {
        const int k = 1 + static_cast<int>(rng.uniform(0.0, 4.0));
        const InterferometerLayout lay = random_layout(rng, k);
        const double w = rng.uniform(2.0, 8.0);
        CHECK(transfer(lay, w).unitarity_defect() < 1e-12);
    }
}

TEST_CASE("composed k=2 transfer equals the closed form") {
    UniformRng rng(12);
    double worst = 0.0;
    for (int draw = 0; draw < 200; ++draw) {
        const double t1 = rng.uniform(-3.0, 3.0), t2 = rng.uniform(-3.0, 3.0);
        const double th2 = rng.uniform(0.0, 2.0 * M_PI), w = rng.uniform(2.0, 8.0);
        const InterferometerLayout lay = InterferometerLayout::make({t1, t2}, {th2});
        const TransferMatrix a = transfer(lay, w);
        const TransferMatrix b = transfer_closed_k2(t1, t2, th2, w);
        for (int e = 0; e < 4; ++e) worst = std::max(worst, std::abs(a.e[e] - b.e[e]));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("composed k=2 amplitudes equal the closed form") {
    UniformRng rng(13);
    double worst = 0.0;
    for (int draw = 0; draw < 200; ++draw) {
        const double t1 = rng.uniform(-3.0, 3.0), t2 = rng.uniform(-3.0, 3.0);
        const double th2 = rng.uniform(0.0, 2.0 * M_PI);
        const double w = rng.uniform(2.0, 8.0), wp = rng.uniform(2.0, 8.0);
        const InterferometerLayout lay = InterferometerLayout::make({t1, t2}, {th2});
        worst = std::max(worst, amp_dist(amplitudes(lay, w, wp),
                                         amplitudes_closed_k2(t1, t2, th2, w, wp)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("amplitudes at zero delay") {
    // both photons out the same port with amplitude (i/2) sin(theta2) each,
    // coincidence amplitude cos(theta2)
    for (double th2 : {0.0, 0.4, kHalfPi, 2.0}) {
        const InterferometerLayout lay = InterferometerLayout::make({0.0, 0.0}, {th2});
        const BiphotonAmplitudes a = amplitudes(lay, 5.2, 4.8);
        CHECK(std::abs(a.m11 - cplx(0.0, 0.5 * std::sin(th2))) < 1e-12);
        CHECK(std::abs(a.m22 - cplx(0.0, 0.5 * std::sin(th2))) < 1e-12);
        CHECK(std::abs(a.m12 - cplx(std::cos(th2), 0.0)) < 1e-12);
    }
}

TEST_CASE("two-photon norm is conserved") {
    // 2|m11|^2 + 2|m22|^2 + |m12|^2 = 1 pointwise for any unitary device
    UniformRng rng(14);
    for (int draw = 0; draw < 100; ++draw) {
        const int k = 2 + static_cast<int>(rng.uniform(0.0, 3.0));
        const InterferometerLayout lay = random_layout(rng, k);
        const double w = rng.uniform(2.0, 8.0), wp = rng.uniform(2.0, 8.0);
        const BiphotonAmplitudes a = amplitudes(lay, w, wp);
        const double norm = 2 * std::norm(a.m11) + 2 * std::norm(a.m22) + std::norm(a.m12);
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("analytic delay derivatives match finite differences") {
    UniformRng rng(15);
    const double h = 1e-5;
    for (int draw = 0; draw < 100; ++draw) {
        const int k = 2 + static_cast<int>(rng.uniform(0.0, 3.0));
        InterferometerLayout lay = random_layout(rng, k);
        const double w = rng.uniform(2.0, 8.0), wp = rng.uniform(2.0, 8.0);
        const int i = 1 + static_cast<int>(rng.uniform(0.0, static_cast<double>(k)));

        const BiphotonAmplitudes an = amplitude_derivative(lay, w, wp, i);
        InterferometerLayout hi = lay, lo = lay;
        hi.modules[i - 1].tau += h;
        lo.modules[i - 1].tau -= h;
        const BiphotonAmplitudes ap = amplitudes(hi, w, wp), am = amplitudes(lo, w, wp);
        const BiphotonAmplitudes fd{(ap.m11 - am.m11) / (2 * h), (ap.m22 - am.m22) / (2 * h),
                                    (ap.m12 - am.m12) / (2 * h)};
        const double scale = std::max(1.0, amp_dist(fd, BiphotonAmplitudes{}));
        CHECK(amp_dist(an, fd) / scale < 1e-6);
    }
}

TEST_CASE("derivative bundle agrees with the single-index path") {
    UniformRng rng(16);
    const InterferometerLayout lay = random_layout(rng, 3);
    const double w = 5.4;
    const TransferBundle bundle = transfer_with_derivatives(lay, w);
    const TransferMatrix direct = transfer(lay, w);
    for (int e = 0; e < 4; ++e) CHECK(std::abs(bundle.value.e[e] - direct.e[e]) < 1e-14);
    CHECK(static_cast<int>(bundle.deriv.size()) == 3);

    CHECK_THROWS_AS(amplitude_derivative(lay, w, w, 0), ConfigError);
    CHECK_THROWS_AS(amplitude_derivative(lay, w, w, 4), ConfigError);
}

TEST_CASE("controls off collapses to a single accumulated phase") {
    const InterferometerLayout lay =
        InterferometerLayout::make({0.6, -0.2, 1.1}, {0.5, 1.0}, false);
    const double w = 4.7;
    const TransferMatrix t = transfer(lay, w);
    const double phi = w * lay.tau_sum() / 2.0;
    CHECK(std::abs(t.m11() - std::exp(cplx(0.0, phi))) < 1e-14);
    CHECK(std::abs(t.m22() - std::exp(cplx(0.0, -phi))) < 1e-14);
    CHECK(std::abs(t.m12()) == 0.0);
    CHECK(std::abs(t.m21()) == 0.0);
    // the biphoton state only feels the delay sum: no coincidence suppression dip
    const BiphotonAmplitudes a = amplitudes(lay, 5.1, 4.9);
    CHECK(std::abs(a.m11) < 1e-14);
    CHECK(std::abs(a.m22) < 1e-14);
    CHECK(std::abs(a.m12) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("pointwise coincidence is the squared cross amplitude") {
    const InterferometerLayout lay = InterferometerLayout::make({0.8, -0.3}, {0.7});
    const double w = 5.3, wp = 4.6;
    CHECK(coincidence_pointwise(lay, w, wp) ==
          doctest::Approx(std::norm(amplitudes(lay, w, wp).m12)).epsilon(1e-14));
}
