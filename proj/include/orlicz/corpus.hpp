#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/measure.hpp"
#include "orlicz/norms.hpp"

namespace orlicz {

// Admissible test function with closed-form first and second derivatives.
struct TestFunction {
    std::string id;
    std::function<double(double)> u, u1, u2;
    double support_lo = -kInf;
    double support_hi = kInf;
    bool compact_support = false;
    std::vector<double> breaks; // interior kinks / transition points

    Channel ch_u() const { return Channel(u, support_lo, support_hi, breaks); }
    Channel ch_u1() const { return Channel(u1, support_lo, support_hi, breaks); }
    Channel ch_u2() const { return Channel(u2, support_lo, support_hi, breaks); }
};

namespace detail {

inline std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

// quintic smoothstep on [0,1]: C^2 with vanishing first and second
// derivatives at both ends
inline double sstep(double t) { return t * t * t * (10.0 + t * (-15.0 + 6.0 * t)); }
inline double sstep1(double t) { return 30.0 * t * t * (1.0 - t) * (1.0 - t); }
inline double sstep2(double t) { return 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t); }

} // namespace detail

// exp(-1/((x-a)(b-x))) on (a,b), zero outside.
inline TestFunction make_bump(double a, double b) {
    if (!(a < b))
        throw BadParams("bump: need a < b");
    TestFunction tf;
    tf.id = "bump(" + detail::fmt_g(a) + "," + detail::fmt_g(b) + ")";
    tf.support_lo = a;
    tf.support_hi = b;
    tf.compact_support = true;
    auto w = [a, b](double x) { return (x - a) * (b - x); };
    auto w1 = [a, b](double x) { return (a + b) - 2.0 * x; };
    tf.u = [w](double x) {
        const double ww = w(x);
        if (ww <= 0.0 || 1.0 / ww > 600.0)
            return 0.0;
        return std::exp(-1.0 / ww);
    };
    tf.u1 = [w, w1](double x) {
        const double ww = w(x);
        if (ww <= 0.0 || 1.0 / ww > 600.0)
            return 0.0;
        const double l1 = w1(x) / (ww * ww);
        return std::exp(-1.0 / ww) * l1;
    };
    tf.u2 = [w, w1](double x) {
        const double ww = w(x);
        if (ww <= 0.0 || 1.0 / ww > 600.0)
            return 0.0;
        const double l1 = w1(x) / (ww * ww);
        const double l2 = -2.0 / (ww * ww) - 2.0 * w1(x) * w1(x) / (ww * ww * ww);
        return std::exp(-1.0 / ww) * (l1 * l1 + l2);
    };
    return tf;
}

// 64 (t(1-t))^3 with t = (x-a)/(b-a): a C^2 piecewise polynomial, peak 1.
inline TestFunction make_spline(double a, double b) {
    if (!(a < b))
        throw BadParams("spline: need a < b");
    TestFunction tf;
    tf.id = "spline(" + detail::fmt_g(a) + "," + detail::fmt_g(b) + ")";
    tf.support_lo = a;
    tf.support_hi = b;
    tf.compact_support = true;
    const double w = b - a;
    auto t_of = [a, w](double x) { return (x - a) / w; };
    tf.u = [t_of](double x) {
        const double t = t_of(x);
        if (t <= 0.0 || t >= 1.0)
            return 0.0;
        const double g = t * (1.0 - t);
        return 64.0 * g * g * g;
    };
    tf.u1 = [t_of, w](double x) {
        const double t = t_of(x);
        if (t <= 0.0 || t >= 1.0)
            return 0.0;
        const double g = t * (1.0 - t);
        return 64.0 * 3.0 * g * g * (1.0 - 2.0 * t) / w;
    };
    tf.u2 = [t_of, w](double x) {
        const double t = t_of(x);
        if (t <= 0.0 || t >= 1.0)
            return 0.0;
        const double g = t * (1.0 - t);
        const double gp = 1.0 - 2.0 * t;
        return 64.0 * (6.0 * g * gp * gp - 6.0 * g * g) / (w * w);
    };
    return tf;
}

// x^k e^{-x} on (0, inf); rapidly decaying, not compactly supported.
inline TestFunction make_hermite_decay(int k) {
    if (k < 1)
        throw BadParams("hermite_decay: need k >= 1");
    TestFunction tf;
    tf.id = "hermite(" + std::to_string(k) + ")";
    tf.support_lo = 0.0;
    tf.support_hi = kInf;
    tf.compact_support = false;
    const double kk = k;
    tf.u = [kk](double x) {
        if (x <= 0.0 || x > 700.0)
            return 0.0;
        return std::pow(x, kk) * std::exp(-x);
    };
    tf.u1 = [kk](double x) {
        if (x <= 0.0 || x > 700.0)
            return 0.0;
        return (kk * std::pow(x, kk - 1.0) - std::pow(x, kk)) * std::exp(-x);
    };
    tf.u2 = [kk](double x) {
        if (x <= 0.0 || x > 700.0)
            return 0.0;
        const double a = kk < 2.0 ? (kk == 1.0 ? 0.0 : kk * (kk - 1.0) * std::pow(x, kk - 2.0))
                                  : kk * (kk - 1.0) * std::pow(x, kk - 2.0);
        return (a - 2.0 * kk * std::pow(x, kk - 1.0) + std::pow(x, kk)) * std::exp(-x);
    };
    return tf;
}

// u(x) -> u(c x); derivatives pick up c, c^2. Support scales by 1/c.
inline TestFunction dilate(const TestFunction& tf, double c) {
    if (!(c > 0.0))
        throw BadParams("dilate: need c > 0");
    TestFunction out;
    out.id = tf.id + "*dilate(" + detail::fmt_g(c) + ")";
    out.support_lo = tf.support_lo == -kInf ? -kInf : tf.support_lo / c;
    out.support_hi = tf.support_hi == kInf ? kInf : tf.support_hi / c;
    out.compact_support = tf.compact_support;
    for (double b : tf.breaks)
        out.breaks.push_back(b / c);
    auto u = tf.u, u1 = tf.u1, u2 = tf.u2;
    out.u = [u, c](double x) { return u(c * x); };
    out.u1 = [u1, c](double x) { return c * u1(c * x); };
    out.u2 = [u2, c](double x) { return c * c * u2(c * x); };
    return out;
}

// Multiply by a C^2 window: smooth rise on [r0,r1], plateau 1, smooth fall on
// [s0,s1]. Pass r0=r1 (or s0=s1) to skip a side. Used to cut decay families
// down to compact support strictly inside an open domain.
inline TestFunction windowed(const TestFunction& tf, double r0, double r1, double s0, double s1) {
    if (!(r0 <= r1) || !(s0 <= s1) || !(r1 <= s0))
        throw BadParams("windowed: need r0 <= r1 <= s0 <= s1");
    TestFunction out;
    out.id = tf.id + "*win(" + detail::fmt_g(r0) + "," + detail::fmt_g(r1) + "," +
             detail::fmt_g(s0) + "," + detail::fmt_g(s1) + ")";
    out.support_lo = std::max(tf.support_lo, r0);
    out.support_hi = std::min(tf.support_hi, s1);
    out.compact_support = true;
    out.breaks = tf.breaks;
    for (double b : {r1, s0})
        out.breaks.push_back(b);

    struct Win {
        double r0, r1, s0, s1;
        double W(double x) const {
            if (x <= r0 || x >= s1)
                return 0.0;
            if (x < r1)
                return detail::sstep((x - r0) / (r1 - r0));
            if (x <= s0)
                return 1.0;
            return 1.0 - detail::sstep((x - s0) / (s1 - s0));
        }
        double W1(double x) const {
            if (x <= r0 || x >= s1)
                return 0.0;
            if (x < r1)
                return detail::sstep1((x - r0) / (r1 - r0)) / (r1 - r0);
            if (x <= s0)
                return 0.0;
            return -detail::sstep1((x - s0) / (s1 - s0)) / (s1 - s0);
        }
        double W2(double x) const {
            if (x <= r0 || x >= s1)
                return 0.0;
            if (x < r1)
                return detail::sstep2((x - r0) / (r1 - r0)) / ((r1 - r0) * (r1 - r0));
            if (x <= s0)
                return 0.0;
            return -detail::sstep2((x - s0) / (s1 - s0)) / ((s1 - s0) * (s1 - s0));
        }
    };
    Win w{r0, r1, s0, s1};
    auto u = tf.u, u1 = tf.u1, u2 = tf.u2;
    out.u = [u, w](double x) { return u(x) * w.W(x); };
    out.u1 = [u, u1, w](double x) { return u1(x) * w.W(x) + u(x) * w.W1(x); };
    out.u2 = [u, u1, u2, w](double x) {
        return u2(x) * w.W(x) + 2.0 * u1(x) * w.W1(x) + u(x) * w.W2(x);
    };
    return out;
}

// Near-extremal family for the power-weight Hardy constant with mass at the
// origin (sigma > 0): u = t^{sigma (1+eps)} (1-t)^4 on (0,1). The algebraic
// taper keeps the gradient cost bounded while the singular part carries the
// ratio toward the sharp constant as eps -> 0. eps perturbs the extremal
// exponent by a relative factor so the approach rate is uniform in sigma.
inline TestFunction make_power_cutoff(double sigma, double eps) {
    if (!(sigma > 0.0) || !(eps > 0.0))
        throw BadParams("power_cutoff: need sigma > 0, eps > 0");
    const double s = sigma * (1.0 + eps);
    const double k = 4.0;
    TestFunction tf;
    tf.id = "powercut(sigma=" + detail::fmt_g(sigma) + ",eps=" + detail::fmt_g(eps) + ")";
    tf.support_lo = 0.0;
    tf.support_hi = 1.0;
    tf.compact_support = false; // support touches t = 0
    tf.u = [s, k](double x) {
        if (x <= 0.0 || x >= 1.0)
            return 0.0;
        return std::pow(x, s) * std::pow(1.0 - x, k);
    };
    tf.u1 = [s, k](double x) {
        if (x <= 0.0 || x >= 1.0)
            return 0.0;
        return s * std::pow(x, s - 1.0) * std::pow(1.0 - x, k) -
               k * std::pow(x, s) * std::pow(1.0 - x, k - 1.0);
    };
    tf.u2 = [s, k](double x) {
        if (x <= 0.0 || x >= 1.0)
            return 0.0;
        return s * (s - 1.0) * std::pow(x, s - 2.0) * std::pow(1.0 - x, k) -
               2.0 * s * k * std::pow(x, s - 1.0) * std::pow(1.0 - x, k - 1.0) +
               k * (k - 1.0) * std::pow(x, s) * std::pow(1.0 - x, k - 2.0);
    };
    return tf;
}

// Mirrored family with mass at infinity (sigma < 0, the alpha > p-1 regime):
// u = t^{sigma (1+eps)} R(log10(t) / W) on (1, inf), where R is a smoothstep
// rise spread over W decades. The mass of the near-critical tail lives across
// tens of decades, so only a log-scale riser keeps the gradient cost small
// against the |sigma|^p-weighted singular term.
inline TestFunction make_power_cutoff_tail(double sigma, double eps, double decades = 15.0) {
    if (!(sigma < 0.0) || !(eps > 0.0))
        throw BadParams("power_cutoff_tail: need sigma < 0, eps > 0");
    const double s = sigma * (1.0 + eps);
    const double c = decades * std::log(10.0);
    TestFunction tf;
    tf.id = "powercut_tail(sigma=" + detail::fmt_g(sigma) + ",eps=" + detail::fmt_g(eps) + ")";
    tf.support_lo = 1.0;
    tf.support_hi = kInf;
    tf.compact_support = false;
    tf.breaks.push_back(std::pow(10.0, decades));
    auto z_of = [c](double x) { return std::log(x) / c; };
    tf.u = [s, c, z_of](double x) {
        if (x <= 1.0)
            return 0.0;
        const double z = z_of(x);
        const double R = z >= 1.0 ? 1.0 : detail::sstep(z);
        return std::pow(x, s) * R;
    };
    tf.u1 = [s, c, z_of](double x) {
        if (x <= 1.0)
            return 0.0;
        const double z = z_of(x);
        const double R = z >= 1.0 ? 1.0 : detail::sstep(z);
        const double R1 = z >= 1.0 ? 0.0 : detail::sstep1(z);
        return s * std::pow(x, s - 1.0) * R + std::pow(x, s - 1.0) * R1 / c;
    };
    tf.u2 = [s, c, z_of](double x) {
        if (x <= 1.0)
            return 0.0;
        const double z = z_of(x);
        const double R = z >= 1.0 ? 1.0 : detail::sstep(z);
        const double R1 = z >= 1.0 ? 0.0 : detail::sstep1(z);
        const double R2 = z >= 1.0 ? 0.0 : detail::sstep2(z);
        return s * (s - 1.0) * std::pow(x, s - 2.0) * R +
               (2.0 * s - 1.0) * std::pow(x, s - 2.0) * R1 / c +
               std::pow(x, s - 2.0) * R2 / (c * c);
    };
    return tf;
}

// Carrier whose "u" channel is the source's first derivative (and whose
// gradient channel is the second). Lets a Hardy fit cover the scaled-gradient
// instances that downstream derivations consume.
inline TestFunction derivative_shift(const TestFunction& tf) {
    TestFunction out;
    out.id = tf.id + "'";
    out.support_lo = tf.support_lo;
    out.support_hi = tf.support_hi;
    out.compact_support = tf.compact_support;
    out.breaks = tf.breaks;
    out.u = tf.u1;
    out.u1 = tf.u2;
    out.u2 = [](double) { return 0.0; }; // unused by fits
    return out;
}

// ---------------------------------------------------------------------------
// Deterministic corpora
// ---------------------------------------------------------------------------

// Every admissible member for general campaigns on the given open interval.
// No randomness: two calls return identical parameter lists.
inline std::vector<TestFunction> default_corpus(double lo, double hi) {
    std::vector<TestFunction> out;
    if (std::isfinite(lo) && std::isfinite(hi)) {
        const double w = hi - lo;
        out.push_back(make_bump(lo + 0.10 * w, hi - 0.10 * w));
        out.push_back(make_bump(lo + 0.05 * w, lo + 0.50 * w));
        out.push_back(make_bump(lo + 0.50 * w, hi - 0.05 * w));
        out.push_back(make_bump(lo + 0.20 * w, lo + 0.40 * w));
        out.push_back(make_bump(lo + 0.60 * w, lo + 0.70 * w));
        out.push_back(make_spline(lo + 0.10 * w, hi - 0.10 * w));
        out.push_back(make_spline(lo + 0.30 * w, hi - 0.30 * w));
        out.push_back(make_spline(lo + 0.05 * w, lo + 0.35 * w));
        out.push_back(make_spline(lo + 0.55 * w, hi - 0.05 * w));
        if (lo >= 0.0) { // dilations stay inside only when the interval hugs 0
            const TestFunction base = make_bump(lo + 0.10 * w, hi - 0.10 * w);
            if (lo == 0.0) {
                out.push_back(dilate(base, 2.0));
                out.push_back(dilate(base, 4.0));
                out.push_back(dilate(make_spline(lo + 0.10 * w, hi - 0.10 * w), 2.0));
            } else {
                out.push_back(make_bump(lo + 0.12 * w, lo + 0.32 * w));
                out.push_back(make_bump(lo + 0.42 * w, lo + 0.52 * w));
                out.push_back(make_spline(lo + 0.15 * w, lo + 0.45 * w));
            }
        } else {
            out.push_back(make_bump(lo + 0.12 * w, lo + 0.32 * w));
            out.push_back(make_bump(lo + 0.42 * w, lo + 0.52 * w));
            out.push_back(make_spline(lo + 0.15 * w, lo + 0.45 * w));
        }
        return out;
    }
    if (lo == 0.0 && hi == kInf) {
        const TestFunction b = make_bump(0.5, 2.5);
        out.push_back(make_bump(0.1, 0.9));
        out.push_back(b);
        out.push_back(make_bump(1.0, 4.0));
        out.push_back(make_bump(2.0, 8.0));
        out.push_back(dilate(b, 0.5));
        out.push_back(dilate(b, 2.0));
        out.push_back(dilate(b, 4.0));
        out.push_back(make_spline(0.2, 1.8));
        out.push_back(make_spline(1.0, 6.0));
        out.push_back(make_hermite_decay(1));
        out.push_back(make_hermite_decay(2));
        out.push_back(make_hermite_decay(3));
        out.push_back(dilate(make_hermite_decay(1), 2.0));
        out.push_back(dilate(make_hermite_decay(1), 0.5));
        return out;
    }
    if (lo == -kInf && hi == kInf) {
        const TestFunction b = make_bump(-1.0, 1.0);
        out.push_back(b);
        out.push_back(dilate(b, 0.5));
        out.push_back(dilate(b, 2.0));
        out.push_back(dilate(b, 4.0));
        out.push_back(make_bump(0.0, 2.0));
        out.push_back(make_bump(-2.0, 0.0));
        out.push_back(make_bump(1.0, 3.0));
        out.push_back(make_bump(-4.0, 4.0));
        out.push_back(make_spline(-1.5, 1.5));
        out.push_back(make_spline(-1.0, 3.0));
        out.push_back(dilate(make_spline(-1.5, 1.5), 2.0));
        out.push_back(make_spline(0.5, 2.5));
        return out;
    }
    throw BadParams("default_corpus: unsupported domain");
}

// Members with compact support strictly inside the open domain: what a
// smooth-compactly-supported hypothesis actually quantifies over. Decay
// families enter only through two-sided windows.
inline std::vector<TestFunction> compact_corpus(double lo, double hi) {
    if (std::isfinite(lo) && std::isfinite(hi))
        return default_corpus(lo, hi);
    std::vector<TestFunction> out;
    for (auto& tf : default_corpus(lo, hi))
        if (tf.compact_support && tf.support_lo > lo && tf.support_hi < hi)
            out.push_back(tf);
    if (lo == 0.0 && hi == kInf) {
        out.push_back(windowed(make_hermite_decay(1), 0.2, 0.8, 6.0, 12.0));
        out.push_back(windowed(make_hermite_decay(2), 0.2, 0.8, 6.0, 12.0));
        out.push_back(windowed(make_hermite_decay(3), 0.2, 0.8, 6.0, 12.0));
    }
    return out;
}

} // namespace orlicz
