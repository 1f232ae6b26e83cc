#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/numeric.hpp"

namespace orlicz {

// A convex Young function with value and derivative evaluators. Built-in
// families additionally carry their closed-form Legendre conjugate.
struct NFunction {
    std::function<double(double)> value;
    std::function<double(double)> derivative;      // may be empty for table-backed P/Q
    std::string label;
    std::function<double(double)> conjugate_value; // analytic conjugate, optional
    std::function<double(double)> conjugate_derivative;

    double operator()(double x) const { return clamp_value(value(x)); }
    bool has_analytic_conjugate() const { return static_cast<bool>(conjugate_value); }
    bool has_derivative() const { return static_cast<bool>(derivative); }
};

// ---------------------------------------------------------------------------
// Built-in families
// ---------------------------------------------------------------------------

// lambda^p, p > 1. Conjugate: (p-1) (y/p)^{p/(p-1)}.
inline NFunction make_power(double p) {
    if (!(p > 1.0))
        throw BadParams("power(p): need p > 1, got " + std::to_string(p));
    NFunction m;
    m.label = "power(" + std::to_string(p) + ")";
    m.value = [p](double x) { return clamp_value(std::pow(x, p)); };
    m.derivative = [p](double x) { return clamp_value(p * std::pow(x, p - 1.0)); };
    const double pc = p / (p - 1.0);
    m.conjugate_value = [p, pc](double y) { return clamp_value((p - 1.0) * std::pow(y / p, pc)); };
    m.conjugate_derivative = [p](double y) { return std::pow(y / p, 1.0 / (p - 1.0)); };
    return m;
}

// lambda^p / p. Conjugate: y^{p'} / p' with 1/p + 1/p' = 1.
inline NFunction make_hpower(double p) {
    if (!(p > 1.0))
        throw BadParams("hpower(p): need p > 1, got " + std::to_string(p));
    NFunction m;
    m.label = "hpower(" + std::to_string(p) + ")";
    m.value = [p](double x) { return clamp_value(std::pow(x, p) / p); };
    m.derivative = [p](double x) { return clamp_value(std::pow(x, p - 1.0)); };
    const double pc = p / (p - 1.0);
    m.conjugate_value = [pc](double y) { return clamp_value(std::pow(y, pc) / pc); };
    m.conjugate_derivative = [p](double y) { return std::pow(y, 1.0 / (p - 1.0)); };
    return m;
}

// lambda^p ln(2+lambda)^a, p > 1, a real. No closed-form conjugate.
inline NFunction make_powerlog(double p, double a) {
    if (!(p > 1.0))
        throw BadParams("powerlog(p,alpha): need p > 1");
    NFunction m;
    m.label = "powerlog(" + std::to_string(p) + "," + std::to_string(a) + ")";
    m.value = [p, a](double x) {
        if (x <= 0.0)
            return 0.0;
        return clamp_value(std::pow(x, p) * std::pow(std::log(2.0 + x), a));
    };
    m.derivative = [p, a](double x) {
        if (x <= 0.0)
            return 0.0;
        const double l = std::log(2.0 + x);
        return clamp_value(std::pow(x, p - 1.0) * std::pow(l, a - 1.0) * (p * l + a * x / (2.0 + x)));
    };
    return m;
}

// e^lambda - lambda - 1. Conjugate: (1+y) ln(1+y) - y.
inline NFunction make_exp_family() {
    NFunction m;
    m.label = "exp";
    m.value = [](double x) {
        if (x > 690.0)
            return kOverflowCap;
        return std::expm1(x) - x;
    };
    m.derivative = [](double x) {
        if (x > 690.0)
            return kOverflowCap;
        return std::expm1(x);
    };
    m.conjugate_value = [](double y) { return (1.0 + y) * std::log1p(y) - y; };
    m.conjugate_derivative = [](double y) { return std::log1p(y); };
    return m;
}

// ---------------------------------------------------------------------------
// Legendre conjugation
// ---------------------------------------------------------------------------

namespace detail {

// argmax over x > 0 of x*y - M(x); coarse log scan with adaptive range
// extension, then golden-section polish in log space.
inline double conjugate_argmax(const NFunction& m, double y) {
    double lo = 1e-10, hi = 1e10;
    auto h = [&](double x) { return x * y - clamp_value(m.value(x)); };
    for (;;) {
        const int pts = 121;
        const double la = std::log(lo), lb = std::log(hi);
        int best = 0;
        double hbest = -kInf;
        for (int i = 0; i < pts; ++i) {
            const double x = std::exp(la + (lb - la) * i / (pts - 1));
            const double v = h(x);
            if (v > hbest) {
                hbest = v;
                best = i;
            }
        }
        if (best == pts - 1) {
            if (hi >= 1e290)
                throw BracketFailure("conjugate: xy - M(x) keeps growing below the overflow cap "
                                     "(sublinear candidate, not an N-function), label=" +
                                     m.label);
            hi *= 1e10;
            continue;
        }
        if (best == 0) {
            if (lo <= 1e-290)
                return lo; // maximizer collapses to 0
            lo *= 1e-10;
            continue;
        }
        const double xa = std::exp(la + (lb - la) * (best - 1) / (pts - 1));
        const double xb = std::exp(la + (lb - la) * (best + 1) / (pts - 1));
        const double t = golden_max([&](double u) { return h(std::exp(u)); }, std::log(xa),
                                    std::log(xb), 200, 1e-14);
        return std::exp(t);
    }
}

struct ConjugateTable {
    Pchip value_loglog;  // log M*(y) over log y
    Pchip argmax_loglog; // log x*(y) over log y
};

inline ConjugateTable tabulate_conjugate(const NFunction& m, const LogGrid& grid) {
    const std::vector<double> ys = grid.points();
    std::vector<double> ly, lv, lx;
    ly.reserve(ys.size());
    lv.reserve(ys.size());
    lx.reserve(ys.size());
    for (double y : ys) {
        const double xs = conjugate_argmax(m, y);
        const double v = xs * y - clamp_value(m.value(xs));
        if (v <= 0.0 || xs <= 0.0)
            continue; // below resolution; conjugate ~ 0 there
        ly.push_back(std::log(y));
        lv.push_back(std::log(v));
        lx.push_back(std::log(xs));
    }
    if (ly.size() < 8)
        throw BracketFailure("conjugate: table degenerate for " + m.label);
    return ConjugateTable{Pchip(ly, lv), Pchip(ly, lx)};
}

} // namespace detail

// Numeric Legendre conjugate, tabulated on the grid with monotone convex
// interpolation in log-log coordinates; the derivative is the maximizer map
// y -> x*(y).
inline NFunction numeric_conjugate(const NFunction& m, const LogGrid& grid = {}) {
    auto table = std::make_shared<detail::ConjugateTable>(detail::tabulate_conjugate(m, grid));
    NFunction out;
    out.label = m.label + "*";
    out.value = [table](double y) {
        if (y <= 0.0)
            return 0.0;
        return clamp_value(std::exp(table->value_loglog(std::log(y))));
    };
    out.derivative = [table](double y) {
        if (y <= 0.0)
            return 0.0;
        return clamp_value(std::exp(table->argmax_loglog(std::log(y))));
    };
    return out;
}

// Conjugate with built-in analytic forms taking precedence over the numeric
// tabulation.
inline NFunction conjugate(const NFunction& m, const LogGrid& grid = {},
                           bool prefer_analytic = true) {
    if (prefer_analytic && m.has_analytic_conjugate()) {
        NFunction out;
        out.label = m.label + "*";
        auto cv = m.conjugate_value;
        out.value = [cv](double y) { return y <= 0.0 ? 0.0 : clamp_value(cv(y)); };
        out.derivative = m.conjugate_derivative;
        return out;
    }
    return numeric_conjugate(m, grid);
}

// M(x) + M*(y) - xy. The conjugate value is maximized directly at y, so the
// result is exact up to the maximizer's own convergence, never interpolation.
inline double young_gap(const NFunction& m, double x, double y) {
    if (!(x > 0.0) || !(y > 0.0))
        throw BadParams("young_gap: need x, y > 0");
    double mstar;
    if (m.has_analytic_conjugate()) {
        mstar = m.conjugate_value(y);
    } else {
        const double xs = detail::conjugate_argmax(m, y);
        mstar = std::max(0.0, xs * y - clamp_value(m.value(xs)));
    }
    return clamp_value(m.value(x)) + mstar - x * y;
}

// ---------------------------------------------------------------------------
// Delta_2 and Simonenko indices
// ---------------------------------------------------------------------------

struct SimonenkoIndices {
    double lower = 0.0; // d_M: grid inf of lambda M'(lambda) / M(lambda)
    double upper = 0.0; // D_M: grid sup
    bool lower_exceeds_one = false;
    bool upper_unbounded = false; // ratio grows without bound across the grid tail
};

namespace detail {

inline double index_ratio(const NFunction& m, double x) {
    const double v = clamp_value(m.value(x));
    if (v <= 0.0)
        throw DegenerateRatio("simonenko: M(lambda)=0 at lambda=" + std::to_string(x));
    return x * clamp_value(m.derivative(x)) / v;
}

} // namespace detail

inline SimonenkoIndices simonenko_indices(const NFunction& m, const LogGrid& grid = {}) {
    if (!m.has_derivative())
        throw BadParams("simonenko_indices: derivative required for " + m.label);
    const std::vector<double> xs = grid.points();
    std::vector<double> r(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        r[i] = detail::index_ratio(m, xs[i]);

    SimonenkoIndices idx;
    idx.lower = *std::min_element(r.begin(), r.end());
    idx.upper = *std::max_element(r.begin(), r.end());

    // golden-section polish around interior extrema
    auto ratio_fn = [&](double t) { return detail::index_ratio(m, std::exp(t)); };
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        const double a = std::log(xs[i - 1]), b = std::log(xs[i + 1]);
        if (r[i] > r[i - 1] && r[i] > r[i + 1]) {
            const double t = golden_max(ratio_fn, a, b, 120);
            idx.upper = std::max(idx.upper, ratio_fn(t));
        }
        if (r[i] < r[i - 1] && r[i] < r[i + 1]) {
            const double t = golden_min(ratio_fn, a, b, 120);
            idx.lower = std::min(idx.lower, ratio_fn(t));
        }
    }

    const std::size_t tail = std::min<std::size_t>(128, xs.size() / 8);
    if (tail >= 2 && r.back() > r[r.size() - tail] * 1.2 && r.back() > 1.2 * r[r.size() / 2])
        idx.upper_unbounded = true;
    idx.lower_exceeds_one = idx.lower > 1.0 + 1e-9;
    return idx;
}

// c_bar(a) = max(a^{d_M}, a^{D_M}); the scaling bound M(a*lambda) <= c_bar(a) M(lambda).
// Saturates at the overflow cap when the upper index is unbounded.
inline double scale_bound(const SimonenkoIndices& idx, double a) {
    if (!(a > 0.0))
        throw BadParams("scale_bound: need a > 0");
    return clamp_value(std::max(std::pow(a, idx.lower), std::pow(a, idx.upper)));
}

struct Delta2Result {
    double constant = 0.0; // grid sup of M(2 lambda) / M(lambda)
    bool fails = false;    // ratio grows monotonically past 2^64 across the grid tail
};

inline Delta2Result delta2_constant(const NFunction& m, const LogGrid& grid = {}) {
    const std::vector<double> xs = grid.points();
    Delta2Result res;
    std::vector<double> r(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double v = clamp_value(m.value(xs[i]));
        if (v <= 0.0)
            throw DegenerateRatio("delta2: M(lambda)=0 at lambda=" + std::to_string(xs[i]));
        r[i] = clamp_value(m.value(2.0 * xs[i])) / v;
    }
    res.constant = *std::max_element(r.begin(), r.end());
    const std::size_t tail = std::min<std::size_t>(128, xs.size() / 8);
    const double two64 = 1.8446744073709552e19;
    if (res.constant > two64 && r.back() >= r[r.size() - tail])
        res.fails = true;
    return res;
}

// Condition check: M'(lambda)/lambda bounded next to zero. Decided by probing
// whether the quotient grows toward the origin.
inline bool condition_m_bounded_near_zero(const NFunction& m) {
    if (!m.has_derivative())
        throw BadParams("condition check needs derivative: " + m.label);
    auto g = [&](double x) { return clamp_value(m.derivative(x)) / x; };
    const double g8 = g(1e-8), g4 = g(1e-4);
    return g8 <= g4 * (1.0 + 1e-6);
}

// (MF) hypothesis: M(lambda)/lambda^2 nondecreasing on the grid.
inline bool ratio_over_square_nondecreasing(const NFunction& m, const LogGrid& grid = {}) {
    const std::vector<double> xs = grid.points();
    double prev = -kInf;
    for (double x : xs) {
        const double h = clamp_value(m.value(x)) / (x * x);
        if (h < prev * (1.0 - 1e-9))
            return false;
        prev = std::max(prev, h);
    }
    return true;
}

// ---------------------------------------------------------------------------
// N-function audit (limits, convexity, derivative consistency)
// ---------------------------------------------------------------------------

struct NFunctionAudit {
    bool value_at_zero_ok = false;
    bool nondecreasing = false;
    bool convex = false;           // second divided differences >= -tol
    bool limit_at_zero = false;    // M(lambda)/lambda -> 0
    bool limit_at_infinity = false; // lambda/M(lambda) -> 0
    bool derivative_consistent = true;
    double max_derivative_rel_err = 0.0;

    bool is_nfunction() const {
        return value_at_zero_ok && nondecreasing && convex && limit_at_zero && limit_at_infinity &&
               derivative_consistent;
    }
};

inline NFunctionAudit audit_nfunction(const NFunction& m, const LogGrid& grid = {}) {
    NFunctionAudit a;
    a.value_at_zero_ok = clamp_value(m.value(0.0)) == 0.0;

    const std::vector<double> xs = grid.points();
    std::vector<double> vs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        vs[i] = clamp_value(m.value(xs[i]));

    a.nondecreasing = true;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        if (vs[i + 1] < vs[i] * (1.0 - 1e-12))
            a.nondecreasing = false;

    a.convex = true;
    for (std::size_t i = 0; i + 2 < xs.size(); ++i) {
        if (vs[i + 1] >= kOverflowCap)
            break; // saturated region carries no convexity information
        const double d1 = (vs[i + 1] - vs[i]) / (xs[i + 1] - xs[i]);
        const double d2 = (vs[i + 2] - vs[i + 1]) / (xs[i + 2] - xs[i + 1]);
        const double scale = std::max({std::fabs(d1), std::fabs(d2), 1e-300});
        if (d2 - d1 < -1e-7 * scale)
            a.convex = false;
    }

    const double r_lo0 = vs.front() / xs.front();
    const double r_lo1 = clamp_value(m.value(xs.front() * 100.0)) / (xs.front() * 100.0);
    a.limit_at_zero = r_lo0 <= 1e-2 && r_lo0 <= r_lo1 * (1.0 + 1e-9);
    const double r_hi = xs.back() / vs.back();
    a.limit_at_infinity = r_hi <= 1e-2;

    if (m.has_derivative()) {
        for (double x : LogGrid{1e-3, 1e3, 97}.points()) {
            const double h = x * 1e-6;
            if (clamp_value(m.value(x + h)) >= kOverflowCap)
                continue; // saturated, no slope information
            const double fd = (m.value(x + h) - m.value(x - h)) / (2.0 * h);
            const double dv = m.derivative(x);
            const double rel = std::fabs(fd - dv) / std::max(std::fabs(dv), 1e-300);
            a.max_derivative_rel_err = std::max(a.max_derivative_rel_err, rel);
        }
        a.derivative_consistent = a.max_derivative_rel_err <= 1e-5;
    }
    return a;
}

} // namespace orlicz
