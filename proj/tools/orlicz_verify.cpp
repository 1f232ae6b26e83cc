// orlicz-verify: campaign runner for Hardy / interpolation inequality checks
// over weighted Orlicz spaces. Subcommands:
//   conjugate    tabulate a numeric Legendre conjugate (vs analytic if known)
//   indices      Simonenko indices, doubling constant, scaling bound
//   triple       build a Young triple and validate it by sampling
//   muckenhoupt  weighted Hardy criterion on (0, inf)
//   hardy        classical power-weight ratios and Orlicz constant fits
//   gn           full pipeline: fit -> calibrate -> ledger -> modular/norm checks
//   sweep        verdict grid over power-exponential weight parameters
//
// Exit codes: 0 all assertions pass, 1 an inequality assertion failed,
// 2 configuration error, 3 numeric failure.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "orlicz/config.hpp"
#include "orlicz/corpus.hpp"
#include "orlicz/gn.hpp"
#include "orlicz/hardy.hpp"
#include "orlicz/measure.hpp"
#include "orlicz/nfunction.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/numeric.hpp"
#include "orlicz/report.hpp"
#include "orlicz/triple.hpp"

namespace fs = std::filesystem;
using namespace orlicz;

namespace {

struct RunContext {
    Config cfg;
    fs::path out_dir = "reports";
    unsigned jobs = 1;
    std::uint64_t seed = 42;
    QuadratureSettings quad;
    bool assertion_failed = false;
    std::vector<std::string> failures;

    void fail(const std::string& what) {
        assertion_failed = true;
        failures.push_back(what);
        std::cerr << "ASSERTION FAILED: " << what << "\n";
    }

    Json base_json(const std::string& command) const {
        Json j;
        j["schema"] = kReportSchemaVersion;
        j["command"] = command;
        j["seed"] = seed;
        Json c = Json::object();
        for (const auto& [sec, kv] : cfg.sections()) {
            Json s = Json::object();
            for (const auto& [k, v] : kv)
                s[k] = v;
            c[sec] = s;
        }
        j["config"] = c;
        return j;
    }
};

std::string fmt(double v) { return format_value(v); }

std::vector<TestFunction> select_corpus(const RunContext& ctx, const WeightedMeasure& mu,
                                        const std::string& fallback = "default") {
    const std::string kind = ctx.cfg.get("corpus", fallback);
    if (kind == "default")
        return default_corpus(mu.lo(), mu.hi());
    if (kind == "compact")
        return compact_corpus(mu.lo(), mu.hi());
    throw ConfigError("unknown corpus selector: " + kind);
}

// ---------------------------------------------------------------------------

int run_conjugate(RunContext& ctx) {
    const NFunction m = parse_nfunction(ctx.cfg.get("m", "hpower(2)"));
    const double lo = ctx.cfg.get_double("grid_lo", 1e-2);
    const double hi = ctx.cfg.get_double("grid_hi", 1e2);
    const int n = static_cast<int>(ctx.cfg.get_int("grid_points", 257));
    const double tol = ctx.cfg.get_double("tol", 1e-6);

    const NFunction num = numeric_conjugate(m);
    CsvWriter csv((ctx.out_dir / "conjugate.csv").string(),
                  {"y", "mstar_numeric", "mstar_analytic", "rel_err"});
    double max_err = 0.0;
    for (double y : LogGrid{lo, hi, static_cast<std::size_t>(n)}.points()) {
        const double v = num.value(y);
        if (m.has_analytic_conjugate()) {
            const double a = m.conjugate_value(y);
            const double err = std::fabs(v - a) / std::max(std::fabs(a), 1e-300);
            max_err = std::max(max_err, err);
            csv.row({fmt(y), fmt(v), fmt(a), fmt(err)});
        } else {
            csv.row({fmt(y), fmt(v), "", ""});
        }
    }
    if (m.has_analytic_conjugate() && max_err > tol)
        ctx.fail("conjugate: max relative error " + fmt(max_err) + " > " + fmt(tol) + " for " +
                 m.label);

    Json j = ctx.base_json("conjugate");
    j["summary"] = {{"label", m.label},
                    {"max_rel_err", m.has_analytic_conjugate() ? max_err : -1.0}};
    j["pass"] = !ctx.assertion_failed;
    write_json((ctx.out_dir / "conjugate.json").string(), j);
    return 0;
}

int run_indices(RunContext& ctx) {
    const NFunction m = parse_nfunction(ctx.cfg.get("m", "power(3)"));
    const SimonenkoIndices idx = simonenko_indices(m);
    const Delta2Result d2 = delta2_constant(m);
    const bool cm = condition_m_bounded_near_zero(m);
    const bool mf_ok = ratio_over_square_nondecreasing(m);

    CsvWriter csv((ctx.out_dir / "indices.csv").string(),
                  {"label", "lower", "upper", "upper_unbounded", "delta2", "delta2_fails",
                   "cbar_2", "condition_m", "ratio_sq_nondecreasing"});
    csv.row({m.label, fmt(idx.lower), fmt(idx.upper), idx.upper_unbounded ? "1" : "0",
             fmt(d2.constant), d2.fails ? "1" : "0", fmt(scale_bound(idx, 2.0)), cm ? "1" : "0",
             mf_ok ? "1" : "0"});

    Json j = ctx.base_json("indices");
    j["summary"] = {{"label", m.label},
                    {"lower", idx.lower},
                    {"upper", idx.upper},
                    {"upper_unbounded", idx.upper_unbounded},
                    {"delta2", d2.constant},
                    {"delta2_fails", d2.fails},
                    {"condition_m", cm},
                    {"ratio_sq_nondecreasing", mf_ok}};
    j["pass"] = true;
    write_json((ctx.out_dir / "indices.json").string(), j);
    return 0;
}

int run_triple(RunContext& ctx) {
    const NFunction m = parse_nfunction(ctx.cfg.get("m", "power(2)"));
    const std::string tspec = ctx.cfg.get("triple", "mf(f=hpower(2))");
    const int samples = static_cast<int>(ctx.cfg.get_int("samples", 100000));
    const double tol = ctx.cfg.get_double("tol", 1e-9);

    const YoungTriple t = parse_triple(tspec, m, ctx.seed, samples);
    const ViolationReport rep = validate_Y(t, samples, ctx.seed);
    const GrowthFit pf = fit_growth_exponents(t.p.value);
    const GrowthFit qf = fit_growth_exponents(t.q.value);

    CsvWriter csv((ctx.out_dir / "triple.csv").string(),
                  {"triple", "c", "provenance", "max_violation", "worst_u", "worst_v", "worst_w",
                   "p_power_exp", "p_log_exp", "q_power_exp", "q_log_exp", "p_is_nfunction",
                   "q_is_nfunction"});
    csv.row({t.label, fmt(t.c), t.provenance == TripleProvenance::mf ? "mf" : "explicit",
             fmt(rep.max_rel_violation), fmt(rep.worst_u), fmt(rep.worst_v), fmt(rep.worst_w),
             fmt(pf.power_exponent), fmt(pf.log_exponent), fmt(qf.power_exponent),
             fmt(qf.log_exponent), t.p_is_nfunction ? "1" : "0", t.q_is_nfunction ? "1" : "0"});

    if (rep.max_rel_violation > tol)
        ctx.fail("triple " + t.label + ": violation " + fmt(rep.max_rel_violation) + " at (u,v,w)=(" +
                 fmt(rep.worst_u) + "," + fmt(rep.worst_v) + "," + fmt(rep.worst_w) + ")");

    Json j = ctx.base_json("triple");
    j["summary"] = {{"triple", t.label},
                    {"c", t.c},
                    {"max_violation", rep.max_rel_violation},
                    {"samples", rep.samples},
                    {"p_power_exp", pf.power_exponent},
                    {"q_power_exp", qf.power_exponent}};
    j["pass"] = !ctx.assertion_failed;
    write_json((ctx.out_dir / "triple.json").string(), j);
    return 0;
}

int run_muckenhoupt(RunContext& ctx) {
    const WeightedMeasure mu = parse_measure(ctx.cfg.get("measure", "powerexp(alpha=0,beta=2)"));
    const double p = ctx.cfg.get_double("p", 2.0);
    MuckenhouptOptions opt;
    opt.collect_curve = true;
    const MuckenhouptReport rep = muckenhoupt_check(mu, p, opt);

    CsvWriter csv((ctx.out_dir / "muckenhoupt.csv").string(),
                  {"family", "p", "alpha", "beta", "verdict", "sup", "r_star", "a_tail_exponent",
                   "b_tail_exponent"});
    csv.row({mu.spec_string(), fmt(p), fmt(mu.alpha()), fmt(mu.beta()),
             rep.finite ? "finite" : "infinite", rep.finite ? fmt(rep.sup_value) : "inf",
             fmt(rep.sup_location), fmt(rep.a_tail_exponent), fmt(rep.b_tail_exponent)});

    CsvWriter curve((ctx.out_dir / "muckenhoupt_curve.csv").string(),
                    {"r", "log_a", "log_b", "product"});
    for (const auto& pt : rep.curve)
        curve.row({fmt(pt.r), fmt(pt.log_a), fmt(pt.log_b), fmt(pt.product)});

    Json j = ctx.base_json("muckenhoupt");
    j["summary"] = {{"measure", mu.spec_string()}, {"p", p},         {"finite", rep.finite},
                    {"sup", rep.finite ? rep.sup_value : -1.0},      {"r_star", rep.sup_location},
                    {"note", rep.note}};
    j["pass"] = true;
    write_json((ctx.out_dir / "muckenhoupt.json").string(), j);
    return 0;
}

int run_hardy(RunContext& ctx) {
    const WeightedMeasure mu = parse_measure(ctx.cfg.get("measure", "power(alpha=0)"));
    const double p = ctx.cfg.get_double("p", 2.0);
    const NFunction p_fn = parse_nfunction(
        ctx.cfg.get("p_fn", "power(" + std::to_string(p) + ")"));
    const NFunction m_fn = parse_nfunction(
        ctx.cfg.get("m", "power(" + std::to_string(p) + ")"));
    const double a_dil = ctx.cfg.get_double("a_dilation", 1.0);
    const bool with_rem = ctx.cfg.get_bool("with_remainder", false);
    const double eps = ctx.cfg.get_double("near_extremal_eps", 0.05);

    std::vector<TestFunction> corpus = select_corpus(ctx, mu);
    std::string note;

    const bool is_power = mu.family() == WeightedMeasure::Family::power;
    const double alpha = mu.alpha();

    CsvWriter ratios((ctx.out_dir / "hardy_ratios.csv").string(),
                     {"member", "p", "alpha", "ratio", "bound", "ok"});
    if (is_power && std::fabs(alpha - (p - 1.0)) > 1e-12) {
        const double sigma = (p - 1.0 - alpha) / p;
        if (sigma > 0.0)
            corpus.push_back(make_power_cutoff(sigma, eps));
        else
            corpus.push_back(make_power_cutoff_tail(sigma, eps));
        const double bound = classical_hardy_bound(p, alpha);
        for (const auto& u : corpus) {
            const double ratio = classical_hardy_ratio(u, p, alpha, ctx.quad);
            const bool ok = ratio <= bound * (1.0 + 1e-6);
            ratios.row({u.id, fmt(p), fmt(alpha), fmt(ratio), fmt(bound), ok ? "1" : "0"});
            if (!ok)
                ctx.fail("hardy ratio " + fmt(ratio) + " exceeds bound " + fmt(bound) + " for " +
                         u.id);
        }
    }

    if (mu.family() == WeightedMeasure::Family::distance) {
        const double a = mu.distance_exponent();
        note = a < p - 1.0
                   ? "distance weight: a < q-1, inside the classical validity range"
                   : "distance weight: a >= q-1, outside the classical validity range (a < q-1)";
    }

    MuckenhouptReport mrep;
    bool have_mrep = false;
    if (mu.lo() == 0.0 && mu.hi() == kInf) {
        mrep = muckenhoupt_check(mu, p);
        have_mrep = true;
    }

    const HardyFit fit =
        fit_hardy_constants(p_fn, m_fn, mu, corpus, a_dil, with_rem, ctx.quad, true);

    CsvWriter csv((ctx.out_dir / "hardy.csv").string(),
                  {"family", "p", "alpha", "beta", "verdict", "sup", "r_star", "K", "K1", "K2"});
    csv.row({mu.spec_string(), fmt(p), fmt(mu.alpha()), fmt(mu.beta()),
             have_mrep ? (mrep.finite ? "finite" : "infinite") : "n/a",
             have_mrep && mrep.finite ? fmt(mrep.sup_value) : "", have_mrep ? fmt(mrep.sup_location) : "",
             fmt(fit.k), fmt(fit.k1), fmt(fit.k2)});

    Json j = ctx.base_json("hardy");
    j["summary"] = {{"measure", mu.spec_string()},
                    {"p", p},
                    {"K", fit.k},
                    {"K1", fit.k1},
                    {"K2", fit.k2},
                    {"worst_function", fit.worst_function},
                    {"note", note}};
    j["pass"] = !ctx.assertion_failed;
    write_json((ctx.out_dir / "hardy.json").string(), j);
    return 0;
}

int run_gn(RunContext& ctx) {
    const WeightedMeasure mu = parse_measure(ctx.cfg.get("measure", "powerexp(alpha=0,beta=2)"));
    const NFunction m = parse_nfunction(ctx.cfg.get("m", "power(2)"));
    const YoungTriple t = parse_triple(ctx.cfg.get("triple", "identity"), m, ctx.seed);
    const HardyMode mode = ctx.cfg.get("mode", "H") == "H1" ? HardyMode::H1 : HardyMode::H;

    GnCampaignOptions opt;
    opt.a_dilation = ctx.cfg.get_double("a_dilation", 1.0);
    opt.quad = ctx.quad;
    opt.b_scale = ctx.cfg.get_double("b_scale", 1.0);
    opt.jobs = ctx.jobs;
    opt.theta_grid = ctx.cfg.get_list("theta_grid", {});

    const std::vector<TestFunction> corpus = select_corpus(ctx, mu, "compact");
    const GnCampaignResult res = run_gn_campaign(t, mu, corpus, mode, opt);

    CsvWriter csv((ctx.out_dir / "gn.csv").string(),
                  {"member", "theta", "lhs", "rhs_p", "rhs_q", "ratio", "satisfied"});
    double worst_ratio = 0.0;
    std::string worst_member;
    for (const auto& r : res.modular_rows) {
        csv.row({r.member, fmt(r.theta), fmt(r.lhs), fmt(r.rhs_p), fmt(r.rhs_q), fmt(r.ratio),
                 r.satisfied ? "1" : "0"});
        if (r.ratio > worst_ratio) {
            worst_ratio = r.ratio;
            worst_member = r.member;
        }
        if (!r.satisfied)
            ctx.fail("gn modular: " + r.member + " at theta=" + fmt(r.theta) + " lhs=" +
                     fmt(r.lhs) + " > rhs=" + fmt(res.ledger.l * r.rhs_p + r.rhs_q));
    }
    CsvWriter ncsv((ctx.out_dir / "gn_norm.csv").string(),
                   {"member", "lhs_norm", "rhs_product_term", "rhs_linear_term", "satisfied"});
    for (const auto& r : res.norm_rows) {
        ncsv.row({r.member, fmt(r.lhs_norm), fmt(r.rhs_product_term), fmt(r.rhs_linear_term),
                  r.satisfied ? "1" : "0"});
        if (!r.satisfied)
            ctx.fail("gn norm: " + r.member + " lhs=" + fmt(r.lhs_norm));
    }

    Json j = ctx.base_json("gn");
    j["summary"] = {{"measure", mu.spec_string()},
                    {"triple", t.label},
                    {"mode", mode == HardyMode::H ? "H" : "H1"},
                    {"alpha_n", res.alpha_n},
                    {"K", res.fit.k},
                    {"K1", res.fit.k1},
                    {"K2", res.fit.k2},
                    {"L", res.ledger.l},
                    {"B", res.ledger.b},
                    {"L_tilde", res.ledger.l_tilde},
                    {"L1", res.ledger.l1},
                    {"L2", res.ledger.l2},
                    {"worst_ratio", worst_ratio},
                    {"worst_member", worst_member},
                    {"skipped_fit_members", res.fit.skipped},
                    {"all_satisfied", res.all_satisfied}};
    j["pass"] = res.all_satisfied;
    write_json((ctx.out_dir / "gn.json").string(), j);
    return 0;
}

int run_sweep(RunContext& ctx) {
    const std::vector<double> alphas = ctx.cfg.get_list("alphas", {0.0, 0.3, 0.9, 1.0, 1.5});
    const std::vector<double> betas = ctx.cfg.get_list("betas", {0.5, 1.0, 2.0});
    const std::vector<double> ps = ctx.cfg.get_list("ps", {1.5, 2.0, 3.0});

    struct Row {
        double alpha, beta, p;
        bool finite, expected;
        double sup;
    };
    std::vector<Row> rows;
    for (double a : alphas)
        for (double b : betas)
            for (double p : ps)
                rows.push_back({a, b, p, false, a < p - 1.0, 0.0});

    parallel_for(rows.size(), ctx.jobs, [&](std::size_t i) {
        auto& r = rows[i];
        const MuckenhouptReport rep =
            muckenhoupt_check(WeightedMeasure::power_exponential(r.alpha, r.beta), r.p);
        r.finite = rep.finite;
        r.sup = rep.finite ? rep.sup_value : -1.0;
    });

    CsvWriter csv((ctx.out_dir / "sweep.csv").string(),
                  {"alpha", "beta", "p", "verdict", "expected", "agree", "sup"});
    int disagreements = 0;
    for (const auto& r : rows) {
        const bool agree = r.finite == r.expected;
        if (!agree) {
            ++disagreements;
            ctx.fail("sweep: verdict mismatch at alpha=" + fmt(r.alpha) + " beta=" + fmt(r.beta) +
                     " p=" + fmt(r.p));
        }
        csv.row({fmt(r.alpha), fmt(r.beta), fmt(r.p), r.finite ? "finite" : "infinite",
                 r.expected ? "finite" : "infinite", agree ? "1" : "0",
                 r.finite ? fmt(r.sup) : ""});
    }

    Json j = ctx.base_json("sweep");
    j["summary"] = {{"points", rows.size()}, {"disagreements", disagreements}};
    j["pass"] = disagreements == 0;
    write_json((ctx.out_dir / "sweep.json").string(), j);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification campaigns for weighted Orlicz inequalities"};
    app.require_subcommand(1);
    app.fallthrough(); // global options are valid after the subcommand name

    std::string config_path, out_dir = "reports";
    unsigned jobs = 1;
    std::uint64_t seed = 42;
    double tol = -1.0;
    std::vector<std::string> sets;
    app.add_option("--config", config_path, "campaign config file (key = value lines)");
    app.add_option("--out", out_dir, "report output directory");
    app.add_option("--jobs", jobs, "worker threads for campaign rows");
    app.add_option("--seed", seed, "seed for sampled validation");
    app.add_option("--tol", tol, "override quadrature relative tolerance");
    app.add_option("--set", sets, "override a config key, KEY=VALUE")->take_all();

    for (const char* name : {"conjugate", "indices", "triple", "muckenhoupt", "hardy", "gn",
                             "sweep"})
        app.add_subcommand(name);

    CLI11_PARSE(app, argc, argv);

    try {
        RunContext ctx;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in)
                throw ConfigError("cannot read config file: " + config_path);
            std::stringstream ss;
            ss << in.rdbuf();
            ctx.cfg = Config::parse(ss.str());
        }
        for (const std::string& kv : sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw ConfigError("--set expects KEY=VALUE, got " + kv);
            ctx.cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        ctx.out_dir = ctx.cfg.get("out", out_dir);
        ctx.jobs = static_cast<unsigned>(ctx.cfg.get_int("jobs", jobs));
        ctx.seed = static_cast<std::uint64_t>(ctx.cfg.get_int("seed", static_cast<std::int64_t>(seed)));
        ctx.quad.rel_tol = tol > 0.0 ? tol : ctx.cfg.get_double("rel_tol", 1e-9);
        ctx.quad.abs_tol = ctx.cfg.get_double("abs_tol", 1e-12);
        ctx.quad.max_subdivisions = static_cast<int>(ctx.cfg.get_int("max_subdivisions", 2000));
        fs::create_directories(ctx.out_dir);

        int rc = 0;
        if (app.got_subcommand("conjugate"))
            rc = run_conjugate(ctx);
        else if (app.got_subcommand("indices"))
            rc = run_indices(ctx);
        else if (app.got_subcommand("triple"))
            rc = run_triple(ctx);
        else if (app.got_subcommand("muckenhoupt"))
            rc = run_muckenhoupt(ctx);
        else if (app.got_subcommand("hardy"))
            rc = run_hardy(ctx);
        else if (app.got_subcommand("gn"))
            rc = run_gn(ctx);
        else if (app.got_subcommand("sweep"))
            rc = run_sweep(ctx);
        if (rc != 0)
            return rc;
        return ctx.assertion_failed ? 1 : 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const BadParams& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
