#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include "orlicz/errors.hpp"

namespace orlicz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Evaluations clamp here; callers treat a clamped value as saturation.
inline constexpr double kOverflowCap = 1e300;

inline double clamp_value(double v) {
    if (!std::isfinite(v))
        return v > 0 ? kOverflowCap : 0.0;
    return std::min(v, kOverflowCap);
}

// Log-spaced evaluation grid; every "sup over lambda > 0" in the library is a
// sup over such a grid, refined near interior extrema.
struct LogGrid {
    double lo = 1e-8;
    double hi = 1e8;
    std::size_t n = 2048;

    std::vector<double> points() const {
        std::vector<double> xs(n);
        const double la = std::log(lo), lb = std::log(hi);
        for (std::size_t i = 0; i < n; ++i) {
            const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
            xs[i] = std::exp(la + t * (lb - la));
        }
        xs.front() = lo;
        xs.back() = hi;
        return xs;
    }
};

// Golden-section maximization of a unimodal f on [a, b].
inline double golden_max(const std::function<double(double)>& f, double a, double b,
                         int iters = 160, double xtol = 1e-13) {
    const double gr = 0.6180339887498949;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters && (b - a) > xtol * (std::fabs(a) + std::fabs(b) + 1e-300); ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

inline double golden_min(const std::function<double(double)>& f, double a, double b,
                         int iters = 160, double xtol = 1e-13) {
    return golden_max([&](double x) { return -f(x); }, a, b, iters, xtol);
}

// Monotone cubic interpolant (Fritsch-Carlson). Strictly increasing xs.
class Pchip {
public:
    Pchip() = default;

    Pchip(std::vector<double> xs, std::vector<double> ys) : xs_(std::move(xs)), ys_(std::move(ys)) {
        const std::size_t n = xs_.size();
        ms_.assign(n, 0.0);
        if (n < 2)
            return;
        std::vector<double> d(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i)
            d[i] = (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
        ms_[0] = d[0];
        ms_[n - 1] = d[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (d[i - 1] * d[i] <= 0.0) {
                ms_[i] = 0.0;
            } else {
                const double w1 = 2.0 * (xs_[i + 1] - xs_[i]) + (xs_[i] - xs_[i - 1]);
                const double w2 = (xs_[i + 1] - xs_[i]) + 2.0 * (xs_[i] - xs_[i - 1]);
                ms_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
            }
        }
        // clip endpoint slopes so monotone data stays monotone
        for (std::size_t i : {std::size_t{0}, n - 1}) {
            const double dd = i == 0 ? d[0] : d[n - 2];
            if (ms_[i] * dd <= 0.0)
                ms_[i] = 0.0;
            else if (std::fabs(ms_[i]) > 3.0 * std::fabs(dd))
                ms_[i] = 3.0 * dd;
        }
    }

    bool empty() const { return xs_.size() < 2; }
    double x_min() const { return xs_.front(); }
    double x_max() const { return xs_.back(); }

    double operator()(double x) const {
        const std::size_t n = xs_.size();
        if (x <= xs_.front()) // linear extrapolation with edge slope
            return ys_.front() + ms_.front() * (x - xs_.front());
        if (x >= xs_.back())
            return ys_.back() + ms_.back() * (x - xs_.back());
        auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
        const double h = xs_[i + 1] - xs_[i];
        const double t = (x - xs_[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1;
        const double h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2;
        const double h11 = t3 - t2;
        (void)n;
        return h00 * ys_[i] + h10 * h * ms_[i] + h01 * ys_[i + 1] + h11 * h * ms_[i + 1];
    }

private:
    std::vector<double> xs_, ys_, ms_;
};

// Deterministic uniforms: mt19937_64 raw bits, independent of libstdc++'s
// distribution implementations.
class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : eng_(seed) {}

    double next01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double log_uniform(double lo, double hi) {
        return std::exp(std::log(lo) + next01() * (std::log(hi) - std::log(lo)));
    }

    double uniform(double lo, double hi) { return lo + next01() * (hi - lo); }

private:
    std::mt19937_64 eng_;
};

// Index-ordered parallel map; results land by input index so the output is
// independent of scheduling.
template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const unsigned k = std::min<unsigned>(jobs, static_cast<unsigned>(n));
    pool.reserve(k);
    for (unsigned t = 0; t < k; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
}

} // namespace orlicz
