#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ghom/qfim.hpp"
#include "ghom/textio.hpp"

using namespace ghom;

namespace {
constexpr double kHalfPi = 1.5707963267948966;

struct Fixture {
    GaussianJsaParams jsa;
    Quadrature quad;
    Fixture() : quad(build_quadrature(jsa, 80)) {}
    EvalPoint at(const std::vector<double>& taus, const std::vector<double>& thetas,
                 bool controls = true) const {
        return EvalPoint{InterferometerLayout::make(taus, thetas, controls), jsa, &quad};
    }
};
const Fixture& fix() {
    static Fixture f;
    return f;
}
}  // namespace

TEST_CASE("information matrix at zero delay") {
    const QfimMatrix H = qfim(fix().at({0.0, 0.0}, {kHalfPi}));
    CHECK(H(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(H(1, 1) == doctest::Approx(904.0 / 9.0).epsilon(1e-7));
    CHECK(std::abs(H(0, 1)) < 1e-9);
    CHECK(H(0, 1) == H(1, 0));
}

TEST_CASE("pinned reference point") {
    // frozen engine output at (tau1, tau2) = (0.7, -0.4), theta2 = pi/2
    const EvalPoint pt = fix().at({0.7, -0.4}, {kHalfPi});
    const QfimMatrix H = qfim(pt);
    CHECK(H(0, 0) == doctest::Approx(0.9416583445).epsilon(1e-8));
    CHECK(H(1, 1) == doctest::Approx(56.60714693).epsilon(1e-8));
    CHECK(H(0, 1) == doctest::Approx(-0.4257500573).epsilon(1e-8));

    const OverlapSet ov = overlaps(pt);
    CHECK(ov.s(0).real() == doctest::Approx(0.0061327103047).epsilon(1e-7));
    CHECK(ov.s(1).real() == doctest::Approx(0.8395316154906).epsilon(1e-9));
}

TEST_CASE("first-order overlaps are purely real") {
    // consequence of the exchange-symmetric real spectral density
    UniformRng rng(21);
    for (int draw = 0; draw < 25; ++draw) {
        const EvalPoint pt = fix().at({rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)},
                                      {rng.uniform(0.0, 2.0 * M_PI)});
        const OverlapSet ov = overlaps(pt);
        CHECK(std::abs(ov.s(0).imag()) < 1e-12);
        CHECK(std::abs(ov.s(1).imag()) < 1e-12);
    }
}

TEST_CASE("overlap diagonal at zero delay") {
    const OverlapSet ov = overlaps(fix().at({0.0, 0.0}, {kHalfPi}));
    // d11 = omega2^2/4, d22 = omega0^2 + omega1^2 for these spectra
    CHECK(ov.d(0, 0).real() == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(ov.d(1, 1).real() == doctest::Approx(25.0 + 1.0 / 9.0).epsilon(1e-9));
}

TEST_CASE("symmetry and positive semidefiniteness") {
    UniformRng rng(22);
    for (int draw = 0; draw < 100; ++draw) {
        const int k = 2 + static_cast<int>(rng.uniform(0.0, 3.0));
        std::vector<double> taus(k), thetas(k - 1);
        for (double& t : taus) t = rng.uniform(-3.0, 3.0);
        for (double& t : thetas) t = rng.uniform(0.0, 2.0 * M_PI);
        const QfimMatrix H = qfim(fix().at(taus, thetas));
        CHECK((H - H.transpose()).cwiseAbs().maxCoeff() < 1e-12);
        const SpectrumReport rep = qfim_spectrum(H);
        CHECK(rep.eigenvalues[0] > -1e-8 * std::max(1.0, rep.eigenvalues[k - 1]));
    }
}

TEST_CASE("determinant path is stable") {
    const QfimMatrix H = qfim(fix().at({0.7, -0.4}, {kHalfPi}));
    CHECK(qfim_det(H) == doctest::Approx(H.determinant()).epsilon(1e-12));
    CHECK(qfim_det(H) > 0.0);
}

TEST_CASE("covariance bounds ordering") {
    const QfimMatrix H = qfim(fix().at({0.7, -0.4}, {kHalfPi}));
    for (int copies : {1, 5}) {
        const QcrbBounds b = qcrb_bounds(H, copies);
        REQUIRE(b.inverse_diag.size() == 2);
        for (int i = 0; i < 2; ++i) {
            // the matrix bound can only be weaker than the scalar floor
            CHECK(b.inverse_diag[i] >= b.diag_reciprocal[i] * (1.0 - 1e-12));
            CHECK(b.diag_reciprocal[i] == doctest::Approx(1.0 / (copies * H(i, i))));
        }
    }
    // off the diagonal-dominant regime the gap is strict
    const QcrbBounds b1 = qcrb_bounds(H, 1);
    CHECK(b1.inverse_diag[0] > b1.diag_reciprocal[0]);
}

TEST_CASE("singular information matrix is refused with a direction") {
    const QfimMatrix H = qfim(fix().at({0.5, -0.5}, {kHalfPi}, false));
    try {
        qcrb_bounds(H, 1);
        FAIL("expected SingularMatrixError");
    } catch (const SingularMatrixError& e) {
        CHECK(std::string(e.what()).find("intertwined") != std::string::npos);
        REQUIRE(e.null_direction.size() == 2);
        const double r = 1.0 / std::sqrt(2.0);
        CHECK(std::abs(std::abs(e.null_direction[0]) - r) < 1e-6);
        CHECK(std::abs(std::abs(e.null_direction[1]) - r) < 1e-6);
        CHECK(e.null_direction[0] * e.null_direction[1] < 0.0);  // (1,-1) direction
    }
}

TEST_CASE("no-control device has rank one") {
    const QfimMatrix H = qfim(fix().at({0.5, -0.5}, {kHalfPi}, false));
    const SpectrumReport rep = qfim_spectrum(H);
    CHECK(rep.rank == 1);
    CHECK(rep.eigenvalues[0] <= 1e-10 * rep.eigenvalues[1]);
    // the surviving eigenvalue is k * omega2^2: only the delay sum is visible
    CHECK(rep.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-9));
    const QfimMatrix expected = QfimMatrix::Ones(2, 2);
    CHECK((H - expected).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("weak commutativity of the delay generators") {
    UniformRng rng(23);
    for (int draw = 0; draw < 100; ++draw) {
        const EvalPoint pt = fix().at({rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)},
                                      {rng.uniform(0.0, 2.0 * M_PI)});
        CHECK(std::abs(weak_commutativity(pt, 1, 2)) <= 1e-9);
    }
    const EvalPoint pt = fix().at({0.3, 0.4}, {kHalfPi});
    CHECK_THROWS_AS(weak_commutativity(pt, 1, 1), ConfigError);
    CHECK_THROWS_AS(weak_commutativity(pt, 0, 2), ConfigError);
    CHECK_THROWS_AS(weak_commutativity(pt, 1, 3), ConfigError);
}

TEST_CASE("evaluation point validation") {
    GaussianJsaParams other;
    other.omega1 = 0.5;
    EvalPoint pt{InterferometerLayout::make({0.0, 0.0}, {kHalfPi}), other, &fix().quad};
    CHECK_THROWS_AS(pt.validate(), ConfigError);  // quadrature built for different spectra
    EvalPoint no_quad{InterferometerLayout::make({0.0, 0.0}, {kHalfPi}), fix().jsa, nullptr};
    CHECK_THROWS_AS(no_quad.validate(), ConfigError);
}
