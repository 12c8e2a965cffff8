#pragma once

#include <utility>

#include "ghom/errors.hpp"
#include "ghom/spectra.hpp"

namespace ghom::oracle {

// Closed-form reference expressions for the k=2 device with theta_2 = pi/2 (the
// exclusive-zero-coincidence phase). They are independent of the numeric engine:
// every frequency integral was carried out analytically against the Gaussian
// density. h11/h22/h12 refuse theta2 != pi/2; the coincidence form is general.
struct OracleParams {
    double omega0 = 5.0;
    double omega1 = 1.0 / 3.0;
    double omega2 = 1.0;
    double theta2 = 1.5707963267948966;

    void validate_half_pi() const;  // throws ConfigError unless theta2 == pi/2
};

double h11_closed(double tau1, double tau2, const OracleParams& p);
double h22_closed(double tau1, double tau2, const OracleParams& p);
double h12_closed(double tau1, double tau2, const OracleParams& p);

// On-axis restrictions (tau2 = 0 resp. tau1 = 0) in their compact 1-parameter
// forms; they agree with the 2-parameter expressions above to round-off.
double h11_on_axis(double tau1, const OracleParams& p);
double h22_on_axis(double tau2, const OracleParams& p);

// Coincidence probability R(tau1, tau2; theta2), any theta2. Values in [0, 1].
double coincidence_closed(double tau1, double tau2, double theta2, const OracleParams& p);

// Global maxima of the two diagonal entries, attained at tau = 0 with
// theta2 = pi/2: (omega2^2, 4 (omega0^2 + omega1^2)).
std::pair<double, double> qfim_max(const OracleParams& p);

// Every long expression above is transcribed twice, by independent code paths
// with different algebraic groupings. This cross-asserts the pair at ndraws
// random points and throws NumericError on mismatch; tests run it, and the CLI
// runs it once before trusting the oracle in a comparison.
void self_check(int ndraws, unsigned long long seed);

// Second, independently regrouped transcriptions (exposed for the tests).
namespace alt {
double h11_closed(double tau1, double tau2, const OracleParams& p);
double h22_closed(double tau1, double tau2, const OracleParams& p);
double h12_closed(double tau1, double tau2, const OracleParams& p);
double coincidence_closed(double tau1, double tau2, double theta2, const OracleParams& p);
}  // namespace alt

}  // namespace ghom::oracle
