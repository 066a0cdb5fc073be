#include "twr/optimize.hpp"

#include <cmath>
#include <vector>

namespace twr {

ScalarMax golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                             double tol) {
    // invariant ratio (sqrt(5)-1)/2 of the shrinking bracket
    static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;

    double a = lo;
    double b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);

    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }

    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

ScalarMax scan_golden_max(const std::function<double(double)>& f, double hi, int scan_points,
                          double tol_scale, double floor_scale) {
    const double tol = tol_scale * hi;
    const double lo = floor_scale * hi;

    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(scan_points) + 1);
    xs.push_back(0.0);
    const double log_lo = std::log(lo);
    const double log_hi = std::log(hi);
    for (int i = 0; i < scan_points; ++i) {
        const double t = static_cast<double>(i) / (scan_points - 1);
        xs.push_back(std::exp(log_lo + t * (log_hi - log_lo)));
    }
    xs.back() = hi;  // kill rounding on the endpoint

    std::vector<double> fs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) fs[i] = f(xs[i]);

    ScalarMax best{xs[0], fs[0]};
    auto consider = [&](double x, double value) {
        if (value > best.value || (value == best.value && x < best.x)) best = {x, value};
    };
    for (std::size_t i = 1; i < xs.size(); ++i) consider(xs[i], fs[i]);

    // refine every scan-local maximum; the bracket is its neighbor pair
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const bool left_ok = i == 0 || fs[i] >= fs[i - 1];
        const bool right_ok = i + 1 == xs.size() || fs[i] >= fs[i + 1];
        if (!(left_ok && right_ok)) continue;
        const double a = i == 0 ? xs[0] : xs[i - 1];
        const double b = i + 1 == xs.size() ? xs.back() : xs[i + 1];
        if (b - a <= tol) continue;
        const ScalarMax refined = golden_section_max(f, a, b, tol);
        consider(refined.x, refined.value);
    }
    return best;
}

}  // namespace twr
