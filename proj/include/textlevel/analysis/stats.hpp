#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "textlevel/util/error.hpp"

namespace textlevel {

// Sample Pearson correlation; absent when either side is constant.
inline std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ValidationError("pearson: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) return std::nullopt;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0 || syy <= 0) return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace detail {

// Continued fraction for the incomplete beta function (modified Lentz).
inline double beta_cf(double a, double b, double x) {
    constexpr int max_iter = 500;
    constexpr double eps = 1e-15, tiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

}  // namespace detail

// Regularized incomplete beta I_x(a, b).
inline double incomplete_beta(double a, double b, double x) {
    if (a <= 0 || b <= 0) throw ValidationError("incomplete_beta: parameters must be positive");
    if (x <= 0) return 0.0;
    if (x >= 1) return 1.0;
    const double lbt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(lbt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * detail::beta_cf(a, b, x) / a;
    return 1.0 - bt * detail::beta_cf(b, a, 1.0 - x) / b;
}

// Upper tail P(F > f) for an F(d1, d2) variable.
inline double f_upper_tail(double f, double d1, double d2) {
    if (std::isinf(f)) return 0.0;
    if (f <= 0) return 1.0;
    return incomplete_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
}

enum class EffectBand { weak, moderate, strong };

inline const char* band_name(EffectBand b) {
    switch (b) {
        case EffectBand::weak: return "weak";
        case EffectBand::moderate: return "moderate";
        default: return "strong";
    }
}

inline EffectBand effect_band(double omega_sq) {
    const double w = std::clamp(omega_sq, 0.0, 1.0);
    if (w < 0.06) return EffectBand::weak;
    if (w < 0.14) return EffectBand::moderate;
    return EffectBand::strong;
}

struct AnovaResult {
    double F = 0, p = 1, omega_sq = 0;
    double ssb = 0, ssw = 0, sst = 0;
    EffectBand band = EffectBand::weak;
    bool degenerate = false;  // zero within-group variance
    std::vector<double> group_means;
};

inline AnovaResult one_way_anova(const std::vector<std::vector<double>>& groups) {
    const std::size_t k = groups.size();
    if (k < 2) throw ValidationError("anova needs at least 2 groups");
    std::size_t n = 0;
    double grand = 0;
    for (const auto& g : groups) {
        if (g.size() < 2) throw ValidationError("anova needs at least 2 values per group");
        n += g.size();
        for (double v : g) grand += v;
    }
    if (n <= k) throw ValidationError("anova needs more values than groups");
    grand /= static_cast<double>(n);

    AnovaResult r;
    for (const auto& g : groups) {
        double m = 0;
        for (double v : g) m += v;
        m /= static_cast<double>(g.size());
        r.group_means.push_back(m);
        r.ssb += static_cast<double>(g.size()) * (m - grand) * (m - grand);
        for (double v : g) r.ssw += (v - m) * (v - m);
    }
    r.sst = r.ssb + r.ssw;
    const double dfb = static_cast<double>(k - 1), dfw = static_cast<double>(n - k);
    const double msb = r.ssb / dfb, msw = r.ssw / dfw;
    // relative guard so that rounding noise on constant data counts as zero
    const double scale = std::max(1.0, grand * grand) * static_cast<double>(n) * 1e-24;
    if (r.ssw <= scale) {
        r.degenerate = true;
        if (r.ssb <= scale) {
            r.F = 0;
            r.p = 1;
            r.omega_sq = 0;
        } else {
            r.F = std::numeric_limits<double>::infinity();
            r.p = 0;
            r.omega_sq = 1.0;
        }
    } else {
        r.F = msb / msw;
        r.p = f_upper_tail(r.F, dfb, dfw);
        r.omega_sq = (r.ssb - dfb * msw) / (r.sst + msw);
    }
    r.band = effect_band(r.omega_sq);
    return r;
}

}  // namespace textlevel
