#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/measure.hpp"
#include "orlicz/nfunction.hpp"

namespace orlicz {

// A function handed to the modular/norm layer: the evaluator plus its support
// and any kink locations, so quadrature never wastes panels or straddles a
// non-smooth point. Derivatives never happen here; channels carry analytic
// data from the corpus.
struct Channel {
    std::function<double(double)> f;
    double lo = -kInf;
    double hi = kInf;
    std::vector<double> breaks;

    Channel(std::function<double(double)> fn) : f(std::move(fn)) {}
    Channel(std::function<double(double)> fn, double a, double b, std::vector<double> br = {})
        : f(std::move(fn)), lo(a), hi(b), breaks(std::move(br)) {}

    Channel scaled(double c) const {
        auto g = f;
        return Channel([g, c](double x) { return c * g(x); }, lo, hi, breaks);
    }
};

struct ModularValue {
    double value = 0.0;
    double quadrature_error = 0.0;
};

// rho_M(f) = integral of M(|f|) d(mu)
inline ModularValue modular(const Channel& c, const NFunction& m, const WeightedMeasure& mu,
                            QuadratureSettings s = {}) {
    auto integrand = [&](double x) {
        const double fx = c.f(x);
        if (fx == 0.0)
            return 0.0;
        return clamp_value(m.value(std::fabs(fx)));
    };
    IntegralResult r = integrate(integrand, mu, s, c.breaks, c.lo, c.hi);
    return {r.value, r.error};
}

// Luxemburg norm: inf{ K > 0 : rho_M(f/K) <= 1 }, by bisection on the
// monotone map K -> rho_M(f/K). Returns 0 when f = 0 mu-a.e.
inline double luxemburg_norm(const Channel& c, const NFunction& m, const WeightedMeasure& mu,
                             QuadratureSettings s = {}) {
    const double rho0 = modular(c, m, mu, s).value;
    if (rho0 == 0.0)
        return 0.0;

    auto rho_at = [&](double k) { return modular(c.scaled(1.0 / k), m, mu, s).value; };

    const double cap = 1e12;
    double k_hi = std::min(std::max(1e-6, rho0), cap);
    double v_hi = rho_at(k_hi);
    while (v_hi > 1.0) {
        k_hi *= 2.0;
        if (k_hi > cap)
            throw NotInSpace("luxemburg_norm: no admissible K below 1e12");
        v_hi = rho_at(k_hi);
    }
    double k_lo = 0.5 * k_hi;
    while (rho_at(k_lo) <= 1.0) {
        k_lo *= 0.5;
        if (k_lo < 1e-300)
            return 0.0; // numerically indistinguishable from the zero function
    }

    for (int i = 0; i < 200 && (k_hi - k_lo) > 1e-10 * k_hi; ++i) {
        const double mid = 0.5 * (k_lo + k_hi);
        if (rho_at(mid) <= 1.0)
            k_hi = mid;
        else
            k_lo = mid;
    }
    return 0.5 * (k_lo + k_hi);
}

} // namespace orlicz
