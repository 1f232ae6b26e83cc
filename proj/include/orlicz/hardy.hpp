#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "orlicz/corpus.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/measure.hpp"
#include "orlicz/nfunction.hpp"
#include "orlicz/norms.hpp"

namespace orlicz {

// ---------------------------------------------------------------------------
// Muckenhoupt criterion on (0, inf):
//   A(r) = integral_r^inf w_nu(x) e^{-phi(x)} dx,
//   B(r) = integral_0^r e^{phi(x)/(p-1)} dx,
//   finite  <=>  sup_r A(r)^{1/p} B(r)^{(p-1)/p} < inf.
// The numerator weight w_nu is |phi'|^p; for the pure power family the
// classical Hardy pairing x^{-p} e^{-phi} is used instead (|phi'| = alpha/x
// degenerates at alpha = 0 while the classical criterion stays meaningful;
// the two differ only by the constant factor alpha^p otherwise).
// All evaluation is done on normalized integrands so that e^{+-phi(r)} never
// overflows; the normalizers cancel exactly in the sup product.
// ---------------------------------------------------------------------------

struct MuckenhouptCurvePoint {
    double r = 0.0;
    double log_a = 0.0;
    double log_b = 0.0;
    double product = 0.0; // A^{1/p} B^{(p-1)/p}
};

struct MuckenhouptReport {
    double sup_value = 0.0;  // +inf when not finite
    double sup_location = 0.0;
    bool finite = false;
    double a_tail_exponent = 0.0; // fitted d(ln A)/d(ln r) over the last grid decade
    double b_tail_exponent = 0.0;
    std::string note;
    std::vector<MuckenhouptCurvePoint> curve; // filled when requested
};

struct MuckenhouptOptions {
    double r_lo = 1e-6;
    double r_hi = 1e3;
    int per_decade = 15;
    QuadratureSettings quad = {1e-8, 1e-14, 2000};
    bool collect_curve = false;
};

namespace detail {

inline double nu_weight(const WeightedMeasure& mu, double p, double x) {
    if (mu.family() == WeightedMeasure::Family::power)
        return std::pow(x, -p);
    return std::pow(std::fabs(mu.phi_prime(x)), p);
}

// local log-log slope of g between x0 and x1
inline double local_exponent(const std::function<double(double)>& lg, double x0, double x1) {
    return (lg(x1) - lg(x0)) / (std::log(x1) - std::log(x0));
}

} // namespace detail

inline MuckenhouptReport muckenhoupt_check(const WeightedMeasure& mu, double p,
                                           MuckenhouptOptions opt = {}) {
    if (!(p > 1.0))
        throw BadParams("muckenhoupt_check: need p > 1");
    if (mu.lo() != 0.0 || mu.hi() != kInf)
        throw BadParams("muckenhoupt_check: measure must live on (0, inf)");

    MuckenhouptReport rep;

    // log of the B integrand: e^{phi/(p-1)}
    auto lgB = [&](double x) { return mu.phi(x) / (p - 1.0); };
    // log of the A integrand: w_nu e^{-phi}
    auto lgA = [&](double x) { return std::log(detail::nu_weight(mu, p, x)) - mu.phi(x); };

    // Endpoint divergence probes: a local integrand exponent at or below -1
    // (respectively at or above -1 at infinity) marks a non-integrable end.
    // The 0.05 band absorbs sub-power corrections at the probe points.
    const double sB = detail::local_exponent(lgB, 1e-7, 1e-6);
    const double sA = detail::local_exponent(lgA, 1e6, 1e7);
    rep.b_tail_exponent = sB;
    rep.a_tail_exponent = sA;
    if (sB <= -1.0 + 0.05) {
        rep.finite = false;
        rep.sup_value = kInf;
        rep.note = "B diverges at 0 (integrand exponent " + std::to_string(sB) + ")";
        return rep;
    }
    if (sA >= -1.0 - 0.05) {
        rep.finite = false;
        rep.sup_value = kInf;
        rep.note = "A diverges at infinity (integrand exponent " + std::to_string(sA) + ")";
        return rep;
    }

    // normalized integrals: log A = -phi(r) + log Ahat, log B = phi(r)/(p-1) + log Bhat,
    // and the phi(r) terms cancel in (1/p) log A + ((p-1)/p) log B.
    auto log_product = [&](double r, double* log_a = nullptr, double* log_b = nullptr) {
        const double phir = mu.phi(r);
        const double scale = 1.0 / (1.0 + std::fabs(mu.phi_prime(r)));
        std::vector<double> hintsA{r + scale, r + 10.0 * scale, r + 100.0 * scale};
        auto fa = [&](double x) {
            const double e = -(mu.phi(x) - phir);
            if (e < -700.0)
                return 0.0;
            return detail::nu_weight(mu, p, x) * std::exp(std::min(e, 690.0));
        };
        const double ahat = integrate_raw(fa, r, kInf, opt.quad, hintsA).value;
        std::vector<double> hintsB;
        for (double h : {scale, 10.0 * scale, 100.0 * scale})
            if (r - h > 0.0)
                hintsB.push_back(r - h);
        auto fb = [&](double x) {
            const double e = (mu.phi(x) - phir) / (p - 1.0);
            if (e < -700.0)
                return 0.0;
            return std::exp(std::min(e, 690.0));
        };
        const double bhat = integrate_raw(fb, 0.0, r, opt.quad, hintsB).value;
        if (!(ahat > 0.0) || !(bhat > 0.0))
            return -kInf;
        if (log_a)
            *log_a = -phir + std::log(ahat);
        if (log_b)
            *log_b = phir / (p - 1.0) + std::log(bhat);
        return std::log(ahat) / p + std::log(bhat) * (p - 1.0) / p;
    };

    const int decades = static_cast<int>(std::round(std::log10(opt.r_hi / opt.r_lo)));
    const int n = std::max(2, decades * opt.per_decade + 1);
    double best = -kInf, best_r = opt.r_lo;
    std::vector<double> rs(n), lp(n);
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        rs[i] = opt.r_lo * std::pow(opt.r_hi / opt.r_lo, t);
        try {
            if (opt.collect_curve) {
                MuckenhouptCurvePoint pt;
                pt.r = rs[i];
                lp[i] = log_product(rs[i], &pt.log_a, &pt.log_b);
                pt.product = std::exp(lp[i]);
                rep.curve.push_back(pt);
            } else {
                lp[i] = log_product(rs[i]);
            }
        } catch (const NonConvergent&) {
            // endpoint blow-up at this radius is a divergence verdict
            rep.finite = false;
            rep.sup_value = kInf;
            rep.note = "quadrature diverges at r = " + std::to_string(rs[i]);
            return rep;
        }
        if (lp[i] > best) {
            best = lp[i];
            best_r = rs[i];
        }
    }

    // growth across the last two decades means the sup is not attained
    const int per2 = 2 * opt.per_decade;
    if (n > per2 && lp[n - 1] > lp[n - 1 - per2] + std::log(4.0)) {
        rep.finite = false;
        rep.sup_value = kInf;
        rep.note = "sup product grows across the grid tail";
        return rep;
    }

    // fitted tail exponents of A and B over the last decade
    double la0 = 0, lb0 = 0, la1 = 0, lb1 = 0;
    log_product(rs[n - 1 - opt.per_decade], &la0, &lb0);
    log_product(rs[n - 1], &la1, &lb1);
    const double dlr = std::log(rs[n - 1] / rs[n - 1 - opt.per_decade]);
    rep.a_tail_exponent = (la1 - la0) / dlr;
    rep.b_tail_exponent = (lb1 - lb0) / dlr;

    rep.finite = true;
    rep.sup_value = std::exp(best);
    rep.sup_location = best_r;
    if (mu.family() != WeightedMeasure::Family::power &&
        mu.family() != WeightedMeasure::Family::power_exponential)
        rep.note = "sup estimated on the r-grid only";
    return rep;
}

// ---------------------------------------------------------------------------
// Power-exponential tail asymptotics, mu(dx) = x^alpha e^{-x^beta} dx:
//   A(r) = integral_r^inf x^{(beta-1)p + alpha} e^{-x^beta} dx
//        ~ (1/beta)   r^{(beta-1)(p-1)+alpha} e^{-r^beta},
//   B(r) = integral_0^r x^{-alpha/(p-1)} e^{x^beta/(p-1)} dx
//        ~ ((p-1)/beta) r^{-alpha/(p-1)-(beta-1)} e^{r^beta/(p-1)}.
// Ratios against the leading terms are computed on normalized integrands so
// they remain finite past the point where e^{-r^beta} underflows.
// ---------------------------------------------------------------------------

struct AsymptoticsResult {
    double a_ratio = 0.0;
    double b_ratio = 0.0;
    bool underflow_flagged = false; // e^{-r^beta} not representable; log-space path used
};

inline AsymptoticsResult powerexp_asymptotics(double alpha, double beta, double p, double r) {
    if (!(alpha >= 0.0) || !(beta > 0.0) || !(p > 1.0))
        throw BadParams("powerexp_asymptotics: need alpha >= 0, beta > 0, p > 1");
    if (!(r >= 5.0))
        throw BadParams("powerexp_asymptotics: asymptotic regime needs r >= 5");
    AsymptoticsResult res;
    res.underflow_flagged = std::pow(r, beta) > 700.0;
    QuadratureSettings qs{1e-10, 1e-16, 2000};

    const double a_exp = (beta - 1.0) * p + alpha;
    const double a_norm = (beta - 1.0) * (p - 1.0) + alpha;
    const double rb = std::pow(r, beta);
    auto fa = [&](double s) {
        const double x = r + s;
        const double e = -(std::pow(x, beta) - rb);
        if (e < -700.0)
            return 0.0;
        return std::pow(x, a_exp) * std::exp(e);
    };
    const double scale = 1.0 / (1.0 + beta * std::pow(r, beta - 1.0));
    const double ahat =
        integrate_raw(fa, 0.0, kInf, qs, {scale, 10.0 * scale, 100.0 * scale}).value;
    // ahat = A(r) e^{+r^beta}; leading term of A is r^{a_norm} e^{-r^beta}
    res.a_ratio = ahat / std::pow(r, a_norm);

    const double b_a = alpha / (p - 1.0);
    const double b_norm = -alpha / (p - 1.0) - (beta - 1.0);
    auto fb = [&](double x) {
        if (x <= 0.0)
            return 0.0;
        const double e = (std::pow(x, beta) - rb) / (p - 1.0);
        if (e < -700.0)
            return 0.0;
        return std::pow(x, -b_a) * std::exp(std::min(e, 0.0));
    };
    std::vector<double> hintsB;
    for (double h : {scale, 10.0 * scale, 100.0 * scale})
        if (r - h > 0.0)
            hintsB.push_back(r - h);
    const double bhat = integrate_raw(fb, 0.0, r, qs, hintsB).value;
    // bhat = B(r) e^{-r^beta/(p-1)}; leading term = r^{b_norm} e^{r^beta/(p-1)}
    res.b_ratio = bhat / std::pow(r, b_norm);
    return res;
}

// ---------------------------------------------------------------------------
// Classical power-weight Hardy ratio and Orlicz Hardy constant fitting
// ---------------------------------------------------------------------------

// (integral |u|^p t^{alpha-p} dt) / (integral |u'|^p t^alpha dt) on (0, inf).
// Bounded by (p / |alpha - p + 1|)^p for admissible u.
inline double classical_hardy_ratio(const TestFunction& u, double p, double alpha,
                                    QuadratureSettings s = {}) {
    if (!(p > 1.0))
        throw BadParams("classical_hardy_ratio: need p > 1");
    if (std::fabs(alpha - (p - 1.0)) < 1e-12)
        throw BadParams("classical_hardy_ratio: alpha = p-1 excluded");
    // near-critical power tails spread over many decades
    s.max_subdivisions = std::max(s.max_subdivisions, 6000);
    const double lo = std::max(0.0, u.support_lo);
    const double hi = u.support_hi;
    // |v|^p t^w in log space: the factors can individually over/underflow at
    // extreme t while the product stays tame
    auto weighted = [&](double v, double t, double w) {
        if (v == 0.0 || t <= 0.0)
            return 0.0;
        const double lp = p * std::log(v) + w * std::log(t);
        if (lp < -700.0)
            return 0.0;
        if (lp > 690.0)
            return kOverflowCap;
        return std::exp(lp);
    };
    auto num = [&](double t) { return weighted(std::fabs(u.u(t)), t, alpha - p); };
    auto den = [&](double t) { return weighted(std::fabs(u.u1(t)), t, alpha); };
    // slow tails may not reach the requested tolerance inside the panel
    // budget; retry with a relaxed tolerance before giving up
    auto integrate_retry = [&](const std::function<double(double)>& f) {
        QuadratureSettings local = s;
        for (;;) {
            try {
                return integrate_raw(f, lo, hi, local, u.breaks).value;
            } catch (const NonConvergent&) {
                local.rel_tol *= 100.0;
                if (local.rel_tol > 1e-5)
                    throw;
            }
        }
    };
    const double top = integrate_retry(num);
    const double bot = integrate_retry(den);
    if (bot == 0.0)
        throw DivisionByZero("classical_hardy_ratio: gradient integral vanishes for " + u.id);
    return top / bot;
}

inline double classical_hardy_bound(double p, double alpha) {
    const double d = std::fabs(alpha - p + 1.0);
    if (d == 0.0)
        return kInf;
    return std::pow(p / d, p);
}

// Fitted constants of the Hardy inequality
//   rho_P(|phi'| |u|) <= K rho_P(A |u'|)                      (plain)
//   rho_P(|phi'| |u|) <= K1 rho_P(A |u'|) + K2 rho_M(|u|)     (with remainder)
// over a finite corpus. K is the max ratio; (K1, K2) minimizes K1 + K2 over a
// K1 grid with K2 the smallest feasible remainder coefficient.
struct HardyFit {
    bool valid = false;
    bool with_remainder = false;
    double k = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;
    double a_dilation = 1.0;
    std::string worst_function;
    std::vector<std::string> skipped; // members whose enrichment modulars diverge
};

inline HardyFit fit_hardy_constants(const NFunction& p_fn, const NFunction& m_fn,
                                    const WeightedMeasure& mu,
                                    const std::vector<TestFunction>& corpus, double a_dilation,
                                    bool with_remainder, QuadratureSettings s = {},
                                    bool skip_nonconvergent = false) {
    struct Terms {
        double lhs, r1, r2;
        std::string id;
    };
    std::vector<Terms> rows;
    HardyFit fit;
    fit.with_remainder = with_remainder;
    fit.a_dilation = a_dilation;

    for (const auto& u : corpus) {
        auto uu = u.u, du = u.u1;
        Channel lhs_ch(
            [&mu, uu](double x) { return std::fabs(mu.phi_prime(x)) * std::fabs(uu(x)); },
            u.support_lo, u.support_hi, u.breaks);
        Channel r1_ch([du, a_dilation](double x) { return a_dilation * std::fabs(du(x)); },
                      u.support_lo, u.support_hi, u.breaks);
        try {
            const double lhs = modular(lhs_ch, p_fn, mu, s).value;
            const double r1 = modular(r1_ch, p_fn, mu, s).value;
            const double r2 = with_remainder ? modular(u.ch_u(), m_fn, mu, s).value : 0.0;
            if (lhs == 0.0 && r1 == 0.0)
                continue; // u == 0 a.e.: excluded
            rows.push_back({lhs, r1, r2, u.id});
        } catch (const NonConvergent&) {
            if (!skip_nonconvergent)
                throw;
            fit.skipped.push_back(u.id);
        }
    }
    if (rows.empty())
        return fit;

    if (!with_remainder) {
        for (const auto& t : rows) {
            if (t.r1 == 0.0)
                throw DivisionByZero("hardy fit: gradient modular vanishes for " + t.id +
                                     " while the left side does not");
            const double ratio = t.lhs / t.r1;
            if (ratio > fit.k) {
                fit.k = ratio;
                fit.worst_function = t.id;
            }
        }
        fit.valid = true;
        return fit;
    }

    double k_cap = 0.0;
    for (const auto& t : rows)
        k_cap = std::max(k_cap, t.r1 > 0.0 ? t.lhs / t.r1 : 1e6);
    const int grid_n = 201;
    double best_sum = kInf;
    for (int i = 0; i < grid_n; ++i) {
        const double k1 = k_cap * static_cast<double>(i) / (grid_n - 1);
        double k2 = 0.0;
        bool feasible = true;
        std::string worst;
        for (const auto& t : rows) {
            const double resid = t.lhs - k1 * t.r1;
            if (resid <= 0.0)
                continue;
            if (t.r2 == 0.0) {
                feasible = false;
                break;
            }
            const double need = resid / t.r2;
            if (need > k2) {
                k2 = need;
                worst = t.id;
            }
        }
        if (!feasible)
            continue;
        if (k1 + k2 < best_sum) {
            best_sum = k1 + k2;
            fit.k1 = k1;
            fit.k2 = k2;
            fit.worst_function = worst.empty() ? rows.front().id : worst;
        }
    }
    if (best_sum == kInf)
        throw DivisionByZero("hardy fit: no feasible (K1, K2) on the scan grid");
    fit.valid = true;
    return fit;
}

} // namespace orlicz
