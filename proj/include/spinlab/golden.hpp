#pragma once

#include <cmath>
#include <utility>

namespace spinlab {

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
/// Stops once the bracket is narrower than `tol`; returns the midpoint.
template <typename F>
double golden_section_maximize(F&& f, double lo, double hi, double tol) {
    constexpr double inv_phi = 0.6180339887498948482; // (√5 - 1)/2
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace spinlab
