#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "orlicz/corpus.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/hardy.hpp"
#include "orlicz/measure.hpp"
#include "orlicz/nfunction.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/numeric.hpp"
#include "orlicz/triple.hpp"

namespace orlicz {

enum class HardyMode { H, H1 };

// Derived constants of the interpolation inequalities.
//   plain mode:      L = K + 1,  B = 2 (alpha_n + A)
//   remainder mode:  L = K1 + 1, B = 2 (alpha_n + A + A cbar(1/A) K2)
//   L~ = L1 = 2 (L + 2) sqrt(B),  L2 = 2 (L + 2) B.
struct ConstantLedger {
    double alpha_n = 0.0;
    double a_dilation = 1.0;
    double k = 0.0, k1 = 0.0, k2 = 0.0;
    double l = 0.0, b = 0.0;
    double l_tilde = 0.0, l1 = 0.0, l2 = 0.0;
    HardyMode mode = HardyMode::H;
};

inline ConstantLedger build_ledger(const HardyFit& fit, double alpha_n,
                                   const SimonenkoIndices& idx) {
    if (!fit.valid)
        throw MissingFit("build_ledger: hardy fit is not populated");
    ConstantLedger led;
    led.alpha_n = alpha_n;
    led.a_dilation = fit.a_dilation;
    led.mode = fit.with_remainder ? HardyMode::H1 : HardyMode::H;
    if (led.mode == HardyMode::H) {
        led.k = fit.k;
        led.l = fit.k + 1.0;
        led.b = 2.0 * (alpha_n + fit.a_dilation);
    } else {
        led.k1 = fit.k1;
        led.k2 = fit.k2;
        led.l = fit.k1 + 1.0;
        const double cbar = scale_bound(idx, 1.0 / fit.a_dilation);
        led.b = 2.0 * (alpha_n + fit.a_dilation + fit.a_dilation * cbar * fit.k2);
    }
    led.l_tilde = 2.0 * (led.l + 2.0) * std::sqrt(led.b);
    led.l1 = led.l_tilde;
    led.l2 = 2.0 * (led.l + 2.0) * led.b;
    return led;
}

// ---------------------------------------------------------------------------
// theta minimization of theta*b + (1/theta)*c, the final step of the
// norm-form derivations.
// ---------------------------------------------------------------------------

struct ThetaMin {
    double theta_star = 1.0;
    double value = 0.0;
    bool bound_ok = true; // value <= 2 (sqrt(bc) + c)
};

inline ThetaMin theta_minimize(double b_term, double c_term, bool restricted) {
    if (b_term < 0.0 || c_term < 0.0)
        throw BadParams("theta_minimize: need b, c >= 0");
    ThetaMin out;
    if (b_term == 0.0 && c_term == 0.0) {
        out.theta_star = 1.0;
        out.value = 0.0;
        return out;
    }
    if (b_term == 0.0) {
        // inf over theta of c/theta: restricted attains at theta = 1
        out.theta_star = 1.0;
        out.value = restricted ? c_term : 0.0;
        out.bound_ok = out.value <= 2.0 * (std::sqrt(b_term * c_term) + c_term) + 1e-15;
        return out;
    }
    const double t = std::sqrt(c_term / b_term);
    if (!restricted || t < 1.0) {
        out.theta_star = t;
        out.value = 2.0 * std::sqrt(b_term * c_term);
    } else {
        out.theta_star = 1.0;
        out.value = b_term + c_term;
    }
    const double bound = 2.0 * (std::sqrt(b_term * c_term) + c_term);
    out.bound_ok = out.value <= bound * (1.0 + 1e-12) + 1e-300;
    return out;
}

// ---------------------------------------------------------------------------
// alpha_n calibration, 1-D. Smallest alpha with
//   I <= alpha I1 + I2 on every corpus member, where
//   I  = integral M(|u'|) dmu
//   I1 = integral_{u' != 0} M(|u'|)/|u'|^2 |u''| |u| dmu
//   I2 = integral_{u' != 0} M(|u'|)/|u'|   |phi'| |u| dmu.
// ---------------------------------------------------------------------------

namespace detail {

// M(g)/g^2 and M(g)/g with a floor that realizes the g -> 0 limit without
// dividing by zero (the limits are finite for every eligible M).
inline double ratio_m_sq(const NFunction& m, double g) {
    const double t = std::max(g, 1e-10);
    return clamp_value(m.value(t)) / (t * t);
}

inline double ratio_m_lin(const NFunction& m, double g) {
    const double t = std::max(g, 1e-10);
    return clamp_value(m.value(t)) / t;
}

} // namespace detail

inline double calibrate_alpha_n(const std::vector<TestFunction>& corpus, const NFunction& m,
                                const WeightedMeasure& mu, QuadratureSettings s = {}) {
    double alpha = 0.0;
    for (const auto& u : corpus) {
        auto uu = u.u, du = u.u1, ddu = u.u2;
        auto fI = [&m, du](double x) {
            const double g = std::fabs(du(x));
            return g == 0.0 ? 0.0 : clamp_value(m.value(g));
        };
        auto fI1 = [&m, uu, du, ddu](double x) {
            const double g = std::fabs(du(x));
            if (g == 0.0)
                return 0.0;
            return detail::ratio_m_sq(m, g) * std::fabs(ddu(x)) * std::fabs(uu(x));
        };
        auto fI2 = [&m, uu, du, &mu](double x) {
            const double g = std::fabs(du(x));
            if (g == 0.0)
                return 0.0;
            return detail::ratio_m_lin(m, g) * std::fabs(mu.phi_prime(x)) * std::fabs(uu(x));
        };
        const double I = integrate(fI, mu, s, u.breaks, u.support_lo, u.support_hi).value;
        const double I1 = integrate(fI1, mu, s, u.breaks, u.support_lo, u.support_hi).value;
        const double I2 = integrate(fI2, mu, s, u.breaks, u.support_lo, u.support_hi).value;
        if (I1 <= 0.0) {
            if (I - I2 > 1e-12 * std::max(I, 1.0))
                throw DegenerateCalibration("alpha_n: I1 = 0 but I > I2 for " + u.id);
            continue;
        }
        alpha = std::max(alpha, (I - I2) / I1);
    }
    return alpha;
}

// ---------------------------------------------------------------------------
// Interpolation inequality checks
// ---------------------------------------------------------------------------

struct GnModularRow {
    std::string member;
    double theta = 0.0;
    double lhs = 0.0;    // rho_M(|u'|)
    double rhs_p = 0.0;  // rho_P(theta |u''|)
    double rhs_q = 0.0;  // rho_Q((B/theta) |u|)
    double ratio = 0.0;  // lhs / (L rhs_p + rhs_q)
    bool satisfied = false;
};

inline std::vector<double> default_theta_grid(HardyMode mode) {
    std::vector<double> g{0.01, 0.02};
    for (int k = 1; k <= 20; ++k)
        g.push_back(0.05 * k);
    if (mode == HardyMode::H)
        for (double t : {1.5, 2.0, 4.0})
            g.push_back(t);
    return g;
}

inline std::vector<GnModularRow> gn_modular_check(const TestFunction& u, const YoungTriple& t,
                                                  const WeightedMeasure& mu,
                                                  const ConstantLedger& led,
                                                  std::vector<double> theta_grid,
                                                  QuadratureSettings s = {}) {
    if (theta_grid.empty())
        theta_grid = default_theta_grid(led.mode);
    if (led.mode == HardyMode::H1)
        for (double th : theta_grid)
            if (th > 1.0)
                throw BadParams("gn_modular_check: remainder mode restricts theta to (0, 1]");

    const double lhs = modular(u.ch_u1(), t.m, mu, s).value;

    // numeric minimizer of the upper envelope, appended to the grid
    auto rhs_at = [&](double th) {
        const double rp = modular(u.ch_u2().scaled(th), t.p, mu, s).value;
        const double rq = modular(u.ch_u().scaled(led.b / th), t.q, mu, s).value;
        return std::pair<double, double>(rp, rq);
    };
    if (lhs > 0.0) {
        const double hi = led.mode == HardyMode::H1 ? 1.0 : 8.0;
        const double lt = golden_min(
            [&](double lth) {
                auto [rp, rq] = rhs_at(std::exp(lth));
                return led.l * rp + rq;
            },
            std::log(0.01), std::log(hi), 36);
        theta_grid.push_back(std::exp(lt));
    }

    std::vector<GnModularRow> rows;
    rows.reserve(theta_grid.size());
    for (double th : theta_grid) {
        auto [rp, rq] = rhs_at(th);
        GnModularRow row;
        row.member = u.id;
        row.theta = th;
        row.lhs = lhs;
        row.rhs_p = rp;
        row.rhs_q = rq;
        const double rhs = led.l * rp + rq;
        row.ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? kInf : 0.0);
        row.satisfied = lhs <= rhs * (1.0 + 1e-9) + 1e-300;
        rows.push_back(row);
    }
    return rows;
}

struct GnNormRow {
    std::string member;
    double lhs_norm = 0.0;         // || u' ||_M
    double rhs_product_term = 0.0; // L~ sqrt(||u''||_P ||u||_Q)   (or L1 ...)
    double rhs_linear_term = 0.0;  // L2 ||u||_Q in remainder mode
    bool satisfied = false;
};

inline GnNormRow gn_norm_check(const TestFunction& u, const YoungTriple& t,
                               const WeightedMeasure& mu, const ConstantLedger& led,
                               QuadratureSettings s = {}) {
    if (!t.p_is_nfunction || !t.q_is_nfunction)
        throw NotNFunctions("gn_norm_check: P and Q must be N-functions (triple " + t.label + ")");
    GnNormRow row;
    row.member = u.id;
    row.lhs_norm = luxemburg_norm(u.ch_u1(), t.m, mu, s);
    const double n2 = luxemburg_norm(u.ch_u2(), t.p, mu, s);
    const double n0 = luxemburg_norm(u.ch_u(), t.q, mu, s);
    if (led.mode == HardyMode::H) {
        row.rhs_product_term = led.l_tilde * std::sqrt(n2 * n0);
        row.rhs_linear_term = 0.0;
    } else {
        row.rhs_product_term = led.l1 * std::sqrt(n2 * n0);
        row.rhs_linear_term = led.l2 * n0;
    }
    const double rhs = row.rhs_product_term + row.rhs_linear_term;
    row.satisfied = row.lhs_norm <= rhs * (1.0 + 1e-9) + 1e-300;
    return row;
}

// ---------------------------------------------------------------------------
// Campaign pipeline: fit Hardy constants -> calibrate alpha_n -> ledger ->
// modular and norm checks over the corpus.
// ---------------------------------------------------------------------------

struct GnCampaignResult {
    HardyFit fit;
    double alpha_n = 0.0;
    ConstantLedger ledger;
    std::vector<GnModularRow> modular_rows;
    std::vector<GnNormRow> norm_rows;
    bool all_satisfied = false;
};

struct GnCampaignOptions {
    double a_dilation = 1.0;
    std::vector<double> theta_grid; // empty -> default grid + envelope minimizer
    QuadratureSettings quad = {};
    double b_scale = 1.0; // sensitivity knob: scales B after the ledger is built
    unsigned jobs = 1;
};

// The Hardy fit runs over the corpus enriched with first-derivative carriers:
// the downstream certification applies the Hardy inequality to scaled
// gradients, so the fitted constant has to cover those instances too.
// Enrichment members with divergent modulars are skipped and recorded.
inline GnCampaignResult run_gn_campaign(const YoungTriple& t, const WeightedMeasure& mu,
                                        const std::vector<TestFunction>& corpus, HardyMode mode,
                                        GnCampaignOptions opt = {}) {
    GnCampaignResult res;

    std::vector<TestFunction> fit_corpus = corpus;
    for (const auto& u : corpus)
        fit_corpus.push_back(derivative_shift(u));
    res.fit = fit_hardy_constants(t.p, t.m, mu, fit_corpus, opt.a_dilation,
                                  mode == HardyMode::H1, opt.quad, /*skip_nonconvergent=*/true);
    res.alpha_n = calibrate_alpha_n(corpus, t.m, mu, opt.quad);
    res.ledger = build_ledger(res.fit, res.alpha_n, simonenko_indices(t.m));
    res.ledger.b *= opt.b_scale;
    res.ledger.l_tilde = 2.0 * (res.ledger.l + 2.0) * std::sqrt(res.ledger.b);
    res.ledger.l1 = res.ledger.l_tilde;
    res.ledger.l2 = 2.0 * (res.ledger.l + 2.0) * res.ledger.b;

    std::vector<std::vector<GnModularRow>> mod_rows(corpus.size());
    std::vector<GnNormRow> norm_rows(corpus.size());
    parallel_for(corpus.size(), opt.jobs, [&](std::size_t i) {
        mod_rows[i] = gn_modular_check(corpus[i], t, mu, res.ledger, opt.theta_grid, opt.quad);
        norm_rows[i] = gn_norm_check(corpus[i], t, mu, res.ledger, opt.quad);
    });

    res.all_satisfied = true;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        for (const auto& r : mod_rows[i]) {
            res.modular_rows.push_back(r);
            res.all_satisfied = res.all_satisfied && r.satisfied;
        }
        res.norm_rows.push_back(norm_rows[i]);
        res.all_satisfied = res.all_satisfied && norm_rows[i].satisfied;
    }
    return res;
}

} // namespace orlicz
