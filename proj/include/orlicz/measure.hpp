#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <queue>
#include <string>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/numeric.hpp"

namespace orlicz {

struct QuadratureSettings {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
};

struct IntegralResult {
    double value = 0.0;
    double error = 0.0;
};

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod (G7,K15) on possibly unbounded intervals.
// Unbounded ends are mapped to (0,1) by x = a + t/(1-t) (mirrored at -inf);
// panels split worst-error-first, which refines geometrically toward
// integrable endpoint singularities.
// ---------------------------------------------------------------------------

namespace detail {

// abscissae (positive half) and weights for G7 / K15
inline constexpr double kGK[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0,               0.204432940075298},
    {0.586087235467691, 0.0,               0.169004726639267},
    {0.864864423359769, 0.0,               0.104790010322250},
    {0.991455371120813, 0.0,               0.022935322010529}};

template <typename F>
void gk15(const F& f, double a, double b, double& val, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double y0 = f(c);
    double g7 = kGK[0][1] * y0;
    double k15 = kGK[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * kGK[i][0];
        const double yi = f(c + dx) + f(c - dx);
        g7 += kGK[i][1] * yi;
        k15 += kGK[i][2] * yi;
    }
    g7 *= h;
    k15 *= h;
    val = k15;
    if (!std::isfinite(val)) {
        val = 0.0;
        err = kOverflowCap;
        return;
    }
    // scale-normalized sharpening: err = scale * min(1, (200 d / scale)^{3/2})
    const double d = std::fabs(k15 - g7);
    const double scale = std::fabs(k15);
    if (scale > 0.0 && d < scale) {
        const double u = 200.0 * d / scale;
        err = scale * std::min(1.0, u * std::sqrt(u));
    } else {
        err = d;
    }
    err = std::max({err, 0.05 * d, 5e-16 * scale});
    if (!std::isfinite(err))
        err = kOverflowCap;
}

struct Segment {
    double t0, t1;                        // integration variable range
    std::function<double(double)> x_of_t; // map to the physical axis
    std::function<double(double)> jac;
};

struct Panel {
    double t0, t1, val, err;
    std::size_t seg;
};

struct PanelWorse {
    bool operator()(const Panel& a, const Panel& b) const {
        if (a.err != b.err)
            return a.err < b.err;
        return a.t0 > b.t0; // deterministic tie-break
    }
};

} // namespace detail

// Integral of g over (lo, hi) with optional interior breakpoints. Throws
// NonConvergent when the error budget is unmet after max_subdivisions panels.
inline IntegralResult integrate_raw(const std::function<double(double)>& g, double lo, double hi,
                                    QuadratureSettings s = {},
                                    const std::vector<double>& breakpoints = {}) {
    if (!(lo < hi))
        return {0.0, 0.0};

    std::vector<double> cuts;
    for (double b : breakpoints)
        if (b > lo && b < hi && std::isfinite(b))
            cuts.push_back(b);
    if (lo == -kInf && hi == kInf && cuts.empty())
        cuts.push_back(0.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<double> edges;
    edges.push_back(lo);
    for (double c : cuts)
        edges.push_back(c);
    edges.push_back(hi);

    // Unbounded ends: one direct panel of unit width, then x = a + e^{t/(1-t)}
    // so that slow power tails stay resolvable out to the overflow horizon
    // (the rational map alone exhausts double resolution near 1e16).
    std::vector<detail::Segment> segs;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double a = edges[i], b = edges[i + 1];
        detail::Segment sg;
        if (std::isfinite(a) && std::isfinite(b)) {
            sg.t0 = a;
            sg.t1 = b;
            sg.x_of_t = [](double t) { return t; };
            sg.jac = [](double) { return 1.0; };
            segs.push_back(std::move(sg));
        } else if (std::isfinite(a)) {
            detail::Segment s1;
            s1.t0 = a;
            s1.t1 = a + 1.0;
            s1.x_of_t = [](double t) { return t; };
            s1.jac = [](double) { return 1.0; };
            segs.push_back(std::move(s1));
            detail::Segment s2;
            s2.t0 = 0.0;
            s2.t1 = 1.0;
            s2.x_of_t = [a](double t) { return a + std::exp(t / (1.0 - t)); };
            s2.jac = [](double t) {
                const double d = 1.0 - t;
                return std::exp(t / d) / (d * d);
            };
            segs.push_back(std::move(s2));
        } else if (std::isfinite(b)) {
            detail::Segment s2;
            s2.t0 = 0.0;
            s2.t1 = 1.0;
            s2.x_of_t = [b](double t) { return b - std::exp(t / (1.0 - t)); };
            s2.jac = [](double t) {
                const double d = 1.0 - t;
                return std::exp(t / d) / (d * d);
            };
            segs.push_back(std::move(s2));
            detail::Segment s1;
            s1.t0 = b - 1.0;
            s1.t1 = b;
            s1.x_of_t = [](double t) { return t; };
            s1.jac = [](double) { return 1.0; };
            segs.push_back(std::move(s1));
        } else {
            throw Error("integrate_raw: doubly infinite segment should have been split");
        }
    }

    auto eval_panel = [&](std::size_t si, double t0, double t1, double& val, double& err) {
        const auto& sg = segs[si];
        auto f = [&](double t) {
            const double x = sg.x_of_t(t);
            if (!std::isfinite(x))
                return 0.0;
            const double j = sg.jac(t);
            if (!std::isfinite(j))
                return 0.0; // beyond representable range; integrable tails vanish here
            const double fx = g(x);
            if (fx == 0.0)
                return 0.0;
            const double v = fx * j;
            return std::isfinite(v) ? v : 0.0;
        };
        detail::gk15(f, t0, t1, val, err);
    };

    std::vector<detail::Panel> active; // max-heap by error
    std::vector<detail::Panel> done;   // midpoint no longer representable
    double sum = 0.0, esum = 0.0;      // incremental; resynced exactly below
    int count = 0;
    const detail::PanelWorse worse;

    auto push_panel = [&](std::size_t si, double t0, double t1) {
        detail::Panel p{t0, t1, 0.0, 0.0, si};
        eval_panel(si, t0, t1, p.val, p.err);
        sum += p.val;
        esum += p.err;
        const double mid = 0.5 * (t0 + t1);
        if (!(mid > t0 && mid < t1)) {
            done.push_back(p);
        } else {
            active.push_back(p);
            std::push_heap(active.begin(), active.end(), worse);
        }
        ++count;
    };

    // incremental sums drift when panel values dwarf the total; recompute both
    // exactly before trusting a convergence or failure decision
    auto resync = [&] {
        double v = 0.0, e = 0.0;
        for (const auto& p : active) {
            v += p.val;
            e += p.err;
        }
        for (const auto& p : done) {
            v += p.val;
            e += p.err;
        }
        sum = v;
        esum = e;
    };

    for (std::size_t si = 0; si < segs.size(); ++si) {
        const auto& sg = segs[si];
        const double mid = 0.5 * (sg.t0 + sg.t1);
        push_panel(si, sg.t0, mid);
        push_panel(si, mid, sg.t1);
    }

    auto budget = [&] { return std::max(s.abs_tol, s.rel_tol * std::fabs(sum)); };

    int since_resync = 0;
    for (;;) {
        if (esum <= budget()) {
            resync();
            since_resync = 0;
            if (esum <= budget())
                break;
        }
        if (active.empty())
            break;
        if (count >= s.max_subdivisions) {
            resync();
            if (esum <= budget())
                break;
            char msg[160];
            std::snprintf(msg, sizeof(msg),
                          "quadrature: error %.3e > budget %.3e after %d panels", esum, budget(),
                          count);
            throw NonConvergent(msg);
        }
        if (++since_resync >= 128) {
            resync();
            since_resync = 0;
        }
        std::pop_heap(active.begin(), active.end(), worse);
        detail::Panel p = active.back();
        active.pop_back();
        sum -= p.val;
        esum -= p.err;
        const double mid = 0.5 * (p.t0 + p.t1);
        push_panel(p.seg, p.t0, mid);
        push_panel(p.seg, mid, p.t1);
    }

    // deterministic final summation in panel position order
    std::vector<detail::Panel> all(std::move(done));
    all.insert(all.end(), active.begin(), active.end());
    std::sort(all.begin(), all.end(), [](const detail::Panel& a, const detail::Panel& b) {
        if (a.seg != b.seg)
            return a.seg < b.seg;
        return a.t0 < b.t0;
    });
    IntegralResult res;
    double verr = 0.0;
    for (const auto& p : all) {
        res.value += p.val;
        verr += p.err;
    }
    res.error = verr;
    if (res.error > std::max(s.abs_tol, s.rel_tol * std::fabs(res.value)) * 1.001 &&
        res.error > s.abs_tol) {
        char msg[120];
        std::snprintf(msg, sizeof(msg), "quadrature: residual error %.3e", res.error);
        throw NonConvergent(msg);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Weighted measures mu(dx) = exp(-phi(x)) dx on 1-D open intervals
// ---------------------------------------------------------------------------

class WeightedMeasure {
public:
    enum class Family { lebesgue, power, power_exponential, distance, custom };

    static WeightedMeasure lebesgue(double lo, double hi) {
        WeightedMeasure mu;
        mu.family_ = Family::lebesgue;
        mu.lo_ = lo;
        mu.hi_ = hi;
        mu.phi_ = [](double) { return 0.0; };
        mu.dphi_ = [](double) { return 0.0; };
        return mu;
    }

    // density t^alpha on (0, inf):  phi(t) = -alpha ln t
    static WeightedMeasure power(double alpha) {
        WeightedMeasure mu;
        mu.family_ = Family::power;
        mu.lo_ = 0.0;
        mu.hi_ = kInf;
        mu.alpha_ = alpha;
        mu.phi_ = [alpha](double t) { return -alpha * std::log(t); };
        mu.dphi_ = [alpha](double t) { return -alpha / t; };
        return mu;
    }

    // density x^alpha e^{-x^beta} on (0, inf)
    static WeightedMeasure power_exponential(double alpha, double beta) {
        if (!(beta > 0.0) || alpha < 0.0)
            throw BadParams("powerexp: need alpha >= 0, beta > 0");
        WeightedMeasure mu;
        mu.family_ = Family::power_exponential;
        mu.lo_ = 0.0;
        mu.hi_ = kInf;
        mu.alpha_ = alpha;
        mu.beta_ = beta;
        mu.phi_ = [alpha, beta](double x) { return -alpha * std::log(x) + std::pow(x, beta); };
        mu.dphi_ = [alpha, beta](double x) {
            return -alpha / x + beta * std::pow(x, beta - 1.0);
        };
        if (alpha > 0.0)
            mu.breaks_.push_back(std::pow(alpha / beta, 1.0 / beta)); // |phi'| vanishes here
        return mu;
    }

    // density delta(x)^a with delta(x) = min(x-lo, hi-x) on a bounded (lo, hi).
    // phi = -a ln delta; the derivative kink at the midpoint is a fixed split.
    static WeightedMeasure distance(double a, double lo, double hi) {
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
            throw BadParams("distance: need a bounded interval");
        WeightedMeasure mu;
        mu.family_ = Family::distance;
        mu.lo_ = lo;
        mu.hi_ = hi;
        mu.a_exp_ = a;
        const double mid = 0.5 * (lo + hi);
        mu.phi_ = [a, lo, hi](double x) {
            const double d = std::min(x - lo, hi - x);
            return -a * std::log(d);
        };
        mu.dphi_ = [a, lo, hi, mid](double x) {
            return x < mid ? -a / (x - lo) : a / (hi - x);
        };
        mu.breaks_.push_back(mid);
        return mu;
    }

    static WeightedMeasure custom(std::function<double(double)> phi,
                                  std::function<double(double)> phi_prime, double lo, double hi,
                                  std::vector<double> breaks = {}) {
        WeightedMeasure mu;
        mu.family_ = Family::custom;
        mu.lo_ = lo;
        mu.hi_ = hi;
        mu.phi_ = std::move(phi);
        mu.dphi_ = std::move(phi_prime);
        mu.breaks_ = std::move(breaks);
        return mu;
    }

    Family family() const { return family_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double distance_exponent() const { return a_exp_; }
    const std::vector<double>& breakpoints() const { return breaks_; }

    double phi(double x) const { return phi_(x); }
    double phi_prime(double x) const { return dphi_(x); }
    double density(double x) const {
        const double p = phi_(x);
        if (p > 700.0)
            return 0.0;
        if (p < -690.0)
            return kOverflowCap; // saturate instead of overflowing to inf
        return std::exp(-p);
    }

    // (e^{-phi(x)}, |phi'(x)|) at an interior point.
    std::pair<double, double> weight_at(double x) const {
        if (!(x > lo_) || !(x < hi_))
            throw OutOfDomain("weight_at: x outside open domain");
        return {density(x), std::fabs(dphi_(x))};
    }

    std::string spec_string() const {
        auto fmt = [](double v) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%g", v);
            return std::string(buf);
        };
        switch (family_) {
        case Family::lebesgue:
            return "lebesgue(interval=" + fmt(lo_) + "," + fmt(hi_) + ")";
        case Family::power:
            return "power(alpha=" + fmt(alpha_) + ")";
        case Family::power_exponential:
            return "powerexp(alpha=" + fmt(alpha_) + ",beta=" + fmt(beta_) + ")";
        case Family::distance:
            return "distance(a=" + fmt(a_exp_) + ",interval=" + fmt(lo_) + "," + fmt(hi_) + ")";
        default:
            return "custom";
        }
    }

private:
    Family family_ = Family::custom;
    double lo_ = 0.0, hi_ = 1.0;
    double alpha_ = 0.0, beta_ = 1.0, a_exp_ = 0.0;
    std::function<double(double)> phi_, dphi_;
    std::vector<double> breaks_;
};

// integral of f d(mu) = integral of f(x) e^{-phi(x)} dx
inline IntegralResult integrate(const std::function<double(double)>& f, const WeightedMeasure& mu,
                                QuadratureSettings s = {},
                                const std::vector<double>& extra_breaks = {}, double clip_lo = -kInf,
                                double clip_hi = kInf) {
    const double lo = std::max(mu.lo(), clip_lo);
    const double hi = std::min(mu.hi(), clip_hi);
    if (!(lo < hi))
        return {0.0, 0.0};
    std::vector<double> breaks = mu.breakpoints();
    breaks.insert(breaks.end(), extra_breaks.begin(), extra_breaks.end());
    auto g = [&](double x) {
        const double fv = f(x);
        if (fv == 0.0)
            return 0.0;
        const double d = mu.density(x);
        if (d == 0.0)
            return 0.0;
        return fv * d;
    };
    return integrate_raw(g, lo, hi, s, breaks);
}

} // namespace orlicz
