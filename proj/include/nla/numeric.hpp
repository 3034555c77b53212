#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace nla {

// Thrown when a solver or scan fails to converge; the CLI maps it to exit
// code 3, while std::invalid_argument (bad configuration or precondition)
// maps to exit code 2.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Tolerances {
    double eig  = 1e-10;   // eigenpair residual, relative to lambda1
    double lin  = 1e-12;   // linear solve residual, relative to rhs
    double pde_rel = 1e-9; // auxiliary solve residual, relative part
    double pde_abs = 1e-12;
    double fp   = 1e-10;   // sup-norm stopping for monotone iteration
    double zero = 1e-10;   // coefficient zero verification
    double g_match = 1e-6; // |g(u) - alpha*| in reconstructions
};

// Bisection for f with f(lo), f(hi) of opposite sign. Stops when the
// bracket width drops below xtol or |f| below ftol.
template <class F>
double bisect(F&& f, double lo, double hi, double xtol, double ftol = 0.0,
              int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw NumericError("bisect: endpoints do not bracket a sign change");
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < max_iter; ++it) {
        mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::abs(fm) <= ftol || hi - lo <= xtol) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return mid;
}

// Golden-section minimisation of a unimodal-enough f on [lo, hi].
template <class F>
std::pair<double, double> golden_min(F&& f, double lo, double hi, double xtol,
                                     int max_iter = 200) {
    static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
        if (fc < fd) {
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
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double xtol,
                                     int max_iter = 200) {
    auto neg = [&](double x) { return -f(x); };
    auto [x, v] = golden_min(neg, lo, hi, xtol, max_iter);
    return {x, -v};
}

// Dense scan of f on n points of (lo, hi), then golden-section refinement
// around the best grid neighbourhood. Returns (argmax, max).
template <class F>
std::pair<double, double> scan_max(F&& f, double lo, double hi, int n,
                                   double xtol) {
    const double step = (hi - lo) / (n + 1);
    double best_x = lo + step;
    double best_v = -kInf;
    for (int i = 1; i <= n; ++i) {
        const double x = lo + i * step;
        const double v = f(x);
        if (v > best_v) {
            best_v = v;
            best_x = x;
        }
    }
    const double a = std::max(lo, best_x - step);
    const double b = std::min(hi, best_x + step);
    auto [x, v] = golden_max(f, a, b, xtol);
    return v > best_v ? std::make_pair(x, v) : std::make_pair(best_x, best_v);
}

// Illinois regula falsi: root of f in a bracketing interval, aimed at
// expensive f (each call a PDE solve). Stops at |f| <= ftol.
template <class F>
double illinois_root(F&& f, double a, double b, double fa, double fb,
                     double ftol, int max_iter = 80) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa < 0.0) == (fb < 0.0))
        throw NumericError("illinois_root: endpoints do not bracket a sign change");
    int side = 0;
    double c = a, fc = fa;
    for (int it = 0; it < max_iter; ++it) {
        c = (a * fb - b * fa) / (fb - fa);
        if (!(c > std::min(a, b) && c < std::max(a, b))) c = 0.5 * (a + b);
        fc = f(c);
        if (std::abs(fc) <= ftol) return c;
        if ((fc < 0.0) == (fa < 0.0)) {
            a = c;
            fa = fc;
            if (side == -1) fb *= 0.5;
            side = -1;
        } else {
            b = c;
            fb = fc;
            if (side == +1) fa *= 0.5;
            side = +1;
        }
    }
    return c;
}

inline bool nearly_equal(double a, double b, double rel, double abs = 0.0) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs;
}

}  // namespace nla
