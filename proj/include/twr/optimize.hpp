// Bracketed 1-D maximization used by the power optimizers.

#pragma once

#include <functional>

namespace twr {

struct ScalarMax {
    double x = 0.0;
    double value = 0.0;
};

// Golden-section maximization on [lo, hi]; stops when the bracket width
// falls below tol. Assumes f is unimodal on the interval; with a
// monotone f it converges to the better endpoint.
ScalarMax golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                             double tol);

// Maximization over [0, hi]: evaluates 0 plus a log-spaced scan of
// (hi*floor_scale, hi], refines every local maximum of the scan by
// golden section, then picks the best candidate. Ties resolve toward
// the smaller argument, so a flat objective yields 0 exactly.
ScalarMax scan_golden_max(const std::function<double(double)>& f, double hi,
                          int scan_points = 64, double tol_scale = 1e-8,
                          double floor_scale = 1e-6);

}  // namespace twr
