#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

namespace offt {

struct Extremum {
    double x = 0.0;
    double value = 0.0;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
/// Stops when the bracket is narrower than tol or floating-point resolution.
template <class F>
Extremum golden_section_max(F&& f, double lo, double hi, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int iter = 0; iter < 400; ++iter) {
        const double width = b - a;
        const double floor = 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(a) + std::abs(b));
        if (width <= tol || width <= floor) break;
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    Extremum best{0.5 * (a + b), 0.0};
    best.value = f(best.x);
    if (fc > best.value) best = {c, fc};
    if (fd > best.value) best = {d, fd};
    return best;
}

/// Global maximum on [lo, hi]: dense grid, then golden-section inside the
/// two cells around the best grid point.
template <class F>
Extremum grid_refine_max(F&& f, double lo, double hi, size_t points, double tol) {
    if (points < 3) points = 3;
    const double step = (hi - lo) / static_cast<double>(points - 1);
    size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < points; ++i) {
        const double v = f(lo + step * static_cast<double>(i));
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    const double x0 = lo + step * static_cast<double>(best);
    const double a = best == 0 ? lo : x0 - step;
    const double b = best + 1 == points ? hi : x0 + step;
    Extremum refined = golden_section_max(f, a, b, tol);
    if (refined.value < best_value) return {x0, best_value};
    return refined;
}

template <class F>
Extremum grid_refine_min(F&& f, double lo, double hi, size_t points, double tol) {
    Extremum e = grid_refine_max([&](double x) { return -f(x); }, lo, hi, points, tol);
    e.value = -e.value;
    return e;
}

} // namespace offt
