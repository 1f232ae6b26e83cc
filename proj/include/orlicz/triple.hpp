#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

#include "orlicz/errors.hpp"
#include "orlicz/nfunction.hpp"
#include "orlicz/numeric.hpp"

namespace orlicz {

enum class TripleProvenance { mf, explicit_ };

// A validated (M, P, Q, C) quadruple: M(u)/u^2 * v * w <= M(u) + P(v) + Q(w).
// P and Q are stored as monotone functions; whether they are N-functions is
// flagged separately because only the norm-form results need that.
struct YoungTriple {
    NFunction m;
    NFunction p;
    NFunction q;
    double c = 1.0;
    TripleProvenance provenance = TripleProvenance::explicit_;
    bool p_is_nfunction = false;
    bool q_is_nfunction = false;
    std::string label;
};

struct ViolationReport {
    double max_rel_violation = 0.0; // max(0, LHS - RHS) / RHS over the sample
    double worst_u = 0.0, worst_v = 0.0, worst_w = 0.0;
    int samples = 0;
};

// Draws log-uniform (u, v, w) in [1e-4, 1e4]^3 from a seeded generator and
// reports the worst relative violation of the Young-type inequality.
inline ViolationReport validate_Y(const YoungTriple& t, int samples, std::uint64_t seed = 2024) {
    Uniform rng(seed);
    ViolationReport rep;
    rep.samples = samples;
    for (int i = 0; i < samples; ++i) {
        const double u = rng.log_uniform(1e-4, 1e4);
        const double v = rng.log_uniform(1e-4, 1e4);
        const double w = rng.log_uniform(1e-4, 1e4);
        const double mu = clamp_value(t.m.value(u));
        const double lhs = mu / (u * u) * v * w;
        const double rhs = mu + clamp_value(t.p.value(v)) + clamp_value(t.q.value(w));
        if (lhs > rhs) {
            const double viol = (lhs - rhs) / rhs;
            if (viol > rep.max_rel_violation) {
                rep.max_rel_violation = viol;
                rep.worst_u = u;
                rep.worst_v = v;
                rep.worst_w = w;
            }
        }
    }
    return rep;
}

namespace detail {

inline void check_mf_eligibility(const NFunction& m) {
    const Delta2Result d2 = delta2_constant(m);
    if (d2.fails)
        throw NotEligible("(MF): " + m.label + " fails the doubling condition");
    if (!ratio_over_square_nondecreasing(m))
        throw NotEligible("(MF): " + m.label + " has M(lambda)/lambda^2 decreasing on the grid");
}

inline NFunction compose_mf(const NFunction& m, const NFunction& f, double c,
                            const std::string& label) {
    auto mv = m.value;
    auto fv = f.value;
    NFunction out;
    out.label = label;
    out.value = [mv, fv, c](double lam) {
        if (lam <= 0.0)
            return 0.0;
        return clamp_value(c * clamp_value(mv(clamp_value(fv(std::sqrt(lam))))));
    };
    return out;
}

} // namespace detail

// (MF) recipe: P(lambda) = C M(F(sqrt(lambda))), Q(lambda) = C M(F*(sqrt(lambda))).
// Requires M doubling with M(lambda)/lambda^2 nondecreasing and F an N-function.
inline YoungTriple build_mf_triple(const NFunction& m, const NFunction& f, double c) {
    detail::check_mf_eligibility(m);
    const NFunction fstar = conjugate(f);
    YoungTriple t;
    t.m = m;
    t.c = c;
    t.provenance = TripleProvenance::mf;
    t.label = "mf(" + m.label + ";" + f.label + ")";
    t.p = detail::compose_mf(m, f, c, "P[" + t.label + "]");
    t.q = detail::compose_mf(m, fstar, c, "Q[" + t.label + "]");
    t.p_is_nfunction = audit_nfunction(t.p).is_nfunction();
    t.q_is_nfunction = audit_nfunction(t.q).is_nfunction();
    return t;
}

// Smallest sample-validated C, found by bisection of validate_Y over C (the
// constant scales P and Q linearly, so one composed triple is reused). The
// returned triple carries the validated endpoint, so re-validating with the
// same seed reports zero violations.
inline YoungTriple build_mf_triple_fitted(const NFunction& m, const NFunction& f,
                                          std::uint64_t seed = 2024, int samples = 100000) {
    YoungTriple base = build_mf_triple(m, f, 1.0);
    auto scaled = [&base](double c) {
        YoungTriple t = base;
        t.c = c;
        auto pv = base.p.value, qv = base.q.value;
        t.p.value = [pv, c](double lam) { return clamp_value(c * pv(lam)); };
        t.q.value = [qv, c](double lam) { return clamp_value(c * qv(lam)); };
        return t;
    };
    auto violates = [&](double c) {
        return validate_Y(scaled(c), samples, seed).max_rel_violation > 0.0;
    };
    double hi = 1.0;
    int guard = 0;
    while (violates(hi)) {
        hi *= 2.0;
        if (++guard > 60)
            throw NotEligible("(MF) fit: no validating C up to 2^60");
    }
    double lo = hi * 0.5;
    if (hi == 1.0) {
        while (lo > 1e-9 && !violates(lo)) {
            hi = lo;
            lo *= 0.5;
        }
    }
    for (int i = 0; i < 60 && (hi - lo) > 1e-6 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (violates(mid))
            lo = mid;
        else
            hi = mid;
    }
    return build_mf_triple(m, f, hi);
}

inline YoungTriple explicit_triple(const NFunction& m, NFunction p, NFunction q, double c = 1.0,
                                   const std::string& label = "") {
    YoungTriple t;
    t.m = m;
    t.p = std::move(p);
    t.q = std::move(q);
    t.c = c;
    t.provenance = TripleProvenance::explicit_;
    t.label = label.empty() ? "explicit(" + m.label + ")" : label;
    t.p_is_nfunction = audit_nfunction(t.p).is_nfunction();
    t.q_is_nfunction = audit_nfunction(t.q).is_nfunction();
    return t;
}

// P = Q = M with C = 1; valid whenever M is doubling with M/lambda^2
// nondecreasing (the F = lambda^2/2 choice collapses to this identity form).
inline YoungTriple identity_triple(const NFunction& m) {
    detail::check_mf_eligibility(m);
    YoungTriple t = explicit_triple(m, m, m, 1.0, "identity(" + m.label + ")");
    return t;
}

// Classical interpolation triple for M = lambda^p (p >= 2):
// P = lambda^q / q, Q = lambda^r / r with 2/p = 1/q + 1/r; the three-factor
// Young inequality makes it valid outright.
inline YoungTriple power_triple(double p, double q) {
    if (!(p >= 2.0))
        throw BadParams("power_triple: need p >= 2");
    const double inv_r = 2.0 / p - 1.0 / q;
    if (!(inv_r > 0.0) || !(inv_r < 1.0))
        throw BadParams("power_triple: need r > 1, got 1/r = " + std::to_string(inv_r));
    const double r = 1.0 / inv_r;
    if (!(q > 1.0))
        throw BadParams("power_triple: need q > 1");
    YoungTriple t = explicit_triple(make_power(p), make_hpower(q), make_hpower(r), 1.0,
                                    "powertriple(p=" + std::to_string(p) +
                                        ",q=" + std::to_string(q) + ",r=" + std::to_string(r) + ")");
    return t;
}

// ---------------------------------------------------------------------------
// Growth-exponent fitting: G(lambda) ~ c lambda^a ln(lambda)^b at large lambda,
// solved from three log-spaced samples. Used to audit the classical and
// logarithmic interpolation triples.
// ---------------------------------------------------------------------------

struct GrowthFit {
    double power_exponent = 0.0;
    double log_exponent = 0.0;
};

inline GrowthFit fit_growth_exponents(const std::function<double(double)>& g, double l1 = 1e6,
                                      double l2 = 3.16227766e7, double l3 = 1e9) {
    const double x1 = std::log(l1), x2 = std::log(l2), x3 = std::log(l3);
    const double z1 = std::log(x1), z2 = std::log(x2), z3 = std::log(x3);
    const double y1 = std::log(g(l1)), y2 = std::log(g(l2)), y3 = std::log(g(l3));
    // solve [1 x z][c a b]^T = y by elimination
    const double a21 = x2 - x1, a22 = z2 - z1, r2 = y2 - y1;
    const double a31 = x3 - x1, a32 = z3 - z1, r3 = y3 - y1;
    const double det = a21 * a32 - a22 * a31;
    GrowthFit fit;
    fit.power_exponent = (r2 * a32 - a22 * r3) / det;
    fit.log_exponent = (a21 * r3 - r2 * a31) / det;
    return fit;
}

} // namespace orlicz
