#pragma once

#include <cmath>
#include <utility>

namespace hypflow {

// Golden-section search on [lo, hi]; returns (argmin, min). Exact for
// unimodal sections, used as a local refiner after coarse gridding.
template <class F>
std::pair<double, double> golden_min(F&& f, double lo, double hi, double xtol) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    const double fm = f(xm);
    if (f1 <= f2 && f1 <= fm) return {x1, f1};
    if (f2 <= fm) return {x2, f2};
    return {xm, fm};
}

}  // namespace hypflow
