#pragma once

#include <string>
#include <vector>

#include "ghom/optics.hpp"
#include "ghom/spectra.hpp"

namespace ghom {

// Coincidence probability R = integral |Psi_s|^2 |m12|^2 for any k.
double coincidence(const InterferometerLayout& layout, const Quadrature& quad);

// Achromatic-phase configurations with the exclusive-zero-coincidence property:
// R = 0 exactly when every delay vanishes.
struct EzcPhases {
    int k = 2;
    std::vector<double> thetas;  // theta_2 .. theta_k
};

// k = 2: theta_2 = pi/2. k = 4: theta_3 = acos(cot theta_2 cot theta_4) for the
// given pair (defaults theta_2 = pi/3, theta_4 = pi/4, so theta_3 = acos(1/sqrt 3)).
// k = 3 throws ConfigError: no phase choice yields the property.
EzcPhases ezc_phase_solution(int k);
EzcPhases ezc_phase_solution_k4(double theta2, double theta4);

// Uniform per-axis delay grid; must contain 0 in every axis.
struct EzcGrid {
    double min = -3.0;
    double max = 3.0;
    int count = 41;

    std::vector<double> points() const;
    void validate() const;  // count >= 2, min <= 0 <= max, 0 on the grid
};

struct EzcReport {
    bool pass = false;                            // zero set == exactly {origin}
    bool origin_is_zero = false;
    double origin_value = 0.0;
    double min_offorigin = 0.0;                   // smallest R away from the origin
    std::vector<std::vector<double>> zero_points; // delay vectors with R < tol
    double tol = 0.0;
    EzcGrid grid;
    int k = 0;

    std::string summary() const;
};

// Scans R over the full k-dimensional grid with the layout's phases held fixed
// and reports whether the near-zero set is exactly the origin. Failure is data,
// not an exception.
EzcReport ezc_verify(const InterferometerLayout& layout, const Quadrature& quad,
                     const EzcGrid& grid, double tol);

}  // namespace ghom
