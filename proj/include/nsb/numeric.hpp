#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace nsb {

// Ceil/floor with a small tolerance absorbing pow/log roundoff.
//
// Schedule quantities like ceil(a * k^rho * l) and floor(t^nu) are defined
// over mathematically exact reals, but pow() can land an ulp below an exact
// integer (pow(4.0, 0.5) may return 2 - eps), which would shift a breakpoint
// or an epoch length by one. The tolerance grows mildly with |x| to cover
// ulp-scale error up to x ~ 1e7 while staying far below the gaps between
// genuinely fractional schedule values.

inline double int_tol(double x) { return 1e-9 + 4e-13 * std::fabs(x); }

inline long long ceil_tol(double x) {
    return static_cast<long long>(std::ceil(x - int_tol(x)));
}

inline long long floor_tol(double x) {
    return static_cast<long long>(std::floor(x + int_tol(x)));
}

// Neumaier-compensated accumulation; keeps long add/remove streams accurate
// to ~1e-12 even when the running sum repeatedly grows and shrinks.
inline void neumaier_add(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
        comp += (sum - t) + x;
    } else {
        comp += (x - t) + sum;
    }
    sum = t;
}

}  // namespace nsb
