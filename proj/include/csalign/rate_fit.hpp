#pragma once

// Decay-rate estimation on sampled series: power-law and ln(t)/t fits, the
// weighted tail integral of a variation, and the decay of the minimal distance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diagnostics.hpp"
#include "errors.hpp"
#include "kernels.hpp"

namespace csalign {

enum class RateModel { PowerLaw, LogOverT };

inline std::string_view to_string(RateModel m) { return m == RateModel::PowerLaw ? "power" : "log_over_t"; }

inline RateModel rate_model_from_string(std::string_view s) {
    if (s == "power" || s == "powerlaw" || s == "power_law") return RateModel::PowerLaw;
    if (s == "log_over_t" || s == "logovert" || s == "log") return RateModel::LogOverT;
    throw ConfigError("unknown rate model: " + std::string(s));
}

struct RateWindow {
    double t_lo = 1.0;
    double t_hi = INFINITY;
};

inline constexpr std::size_t min_fit_samples = 10;

struct RateFit {
    RateWindow window;
    RateModel model = RateModel::PowerLaw;
    double exponent = 0.0;   // gamma in V ~ C t^(-gamma); 1 for LogOverT
    double amplitude = 0.0;  // C
    double residual = 0.0;   // RMS of the log-coordinate residuals
    std::size_t samples = 0;
};

/// Last two decades of the series: [t_end / 100, t_end], t_lo >= 1.
inline RateWindow default_window(std::span<const double> t) {
    if (t.empty()) throw InsufficientData("empty series");
    const double hi = t.back();
    return {std::max(1.0, hi / 100.0), hi};
}

/// Least squares in log coordinates. PowerLaw regresses ln V on ln t; LogOverT
/// fits ln(V t / ln t) by a constant.
inline RateFit rate_fit(std::span<const double> t, std::span<const double> v, RateModel model, RateWindow w) {
    if (t.size() != v.size()) throw StructuralError("rate_fit: series lengths differ");
    if (!(w.t_lo >= 1.0)) throw DomainError("rate window must start at t >= 1");
    if (!(w.t_hi > w.t_lo)) throw DomainError("rate window is empty");
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < w.t_lo || t[k] > w.t_hi) continue;
        if (!(v[k] > 0.0) || !std::isfinite(v[k]))
            throw DataError("nonpositive value at t = " + std::to_string(t[k]) +
                            " (alignment at the floating-point floor; shrink the window)");
        if (model == RateModel::LogOverT) {
            if (!(t[k] > 1.0)) continue;  // ln 1 = 0
            xs.push_back(0.0);
            ys.push_back(std::log(v[k] * t[k] / std::log(t[k])));
        } else {
            xs.push_back(std::log(t[k]));
            ys.push_back(std::log(v[k]));
        }
    }
    if (xs.size() < min_fit_samples)
        throw InsufficientData("rate window holds " + std::to_string(xs.size()) + " samples, need at least " +
                               std::to_string(min_fit_samples));
    const double n = static_cast<double>(xs.size());
    RateFit f;
    f.window = w;
    f.model = model;
    f.samples = xs.size();
    double my = 0.0;
    for (double y : ys) my += y;
    my /= n;
    double slope = 0.0, icpt = my;
    if (model == RateModel::PowerLaw) {
        double mx = 0.0;
        for (double x : xs) mx += x;
        mx /= n;
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            sxx += (xs[k] - mx) * (xs[k] - mx);
            sxy += (xs[k] - mx) * (ys[k] - my);
        }
        if (sxx == 0.0) throw InsufficientData("rate window has a single abscissa");
        slope = sxy / sxx;
        icpt = my - slope * mx;
        f.exponent = -slope;
    } else {
        f.exponent = 1.0;
    }
    f.amplitude = std::exp(icpt);
    double ss = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double e = ys[k] - (icpt + slope * xs[k]);
        ss += e * e;
    }
    f.residual = std::sqrt(ss / n);
    return f;
}

struct TailIntegral {
    std::vector<double> t;
    std::vector<double> partial;       // int_0^t Phi(c s + D0) V(s) ds
    double total = 0.0;
    double last_decade_increment = 0.0;  // growth over [t_end / 10, t_end]
    double relative_increment = 0.0;     // last_decade_increment / total (0 if total = 0)
};

namespace detail {

inline TailIntegral tail_integral(std::span<const double> t, std::span<const double> v, const KernelSpec& k,
                                  double c_speed, double D0) {
    if (t.size() != v.size()) throw StructuralError("tail integral: series lengths differ");
    TailIntegral out;
    out.t.assign(t.begin(), t.end());
    out.partial.assign(t.size(), 0.0);
    auto integrand = [&](std::size_t q) { return tail_minorant(k, c_speed * t[q] + D0) * v[q]; };
    for (std::size_t q = 1; q < t.size(); ++q)
        out.partial[q] = out.partial[q - 1] + 0.5 * (t[q] - t[q - 1]) * (integrand(q) + integrand(q - 1));
    if (t.empty()) return out;
    out.total = out.partial.back();
    const double t10 = t.back() / 10.0;
    std::size_t q10 = 0;
    while (q10 + 1 < t.size() && t[q10] < t10) ++q10;
    out.last_decade_increment = out.total - out.partial[q10];
    out.relative_increment = out.total > 0.0 ? out.last_decade_increment / out.total : 0.0;
    return out;
}

}  // namespace detail

/// Trapezoid value of int_0^H Phi(c t + D0) V_p(t) dt over the records, with
/// its growth over the last decade of the horizon.
inline TailIntegral tail_integral_check(std::span<const DiagnosticsRecord> recs, const KernelSpec& k, double c_speed,
                                        double D0, double p = 2.0) {
    if (p != 2.0 && p != 4.0) throw DomainError("tail integral is defined for V2 and V4");
    std::vector<double> t, v;
    for (const auto& r : recs) {
        t.push_back(r.t);
        v.push_back(p == 2.0 ? r.V2 : r.V4);
    }
    return detail::tail_integral(t, v, k, c_speed, D0);
}

inline TailIntegral tail_integral_check(std::span<const double> t, std::span<const double> v, const KernelSpec& k,
                                        double c_speed, double D0) {
    return detail::tail_integral(t, v, k, c_speed, D0);
}

struct MinDistanceRate {
    double beta = 2.0;
    double exponent = 0.0;            // fitted slope of ln d_min against ln t (beta > 2)
    double predicted_exponent = 0.0;  // -1/(beta - 2); -inf marks beta = 2
    double constant = 0.0;            // min_t d_min(t) / bound(t) with unit constants
    double sqrt_rate = 0.0;           // beta = 2: fitted C in ln d_min ~ -C sqrt(t) - c
    double residual = 0.0;
    std::size_t samples = 0;
};

/// Decay of the minimal distance on t >= 1. For beta > 2 the bound is
/// c t^(-1/(beta-2)); for beta = 2 it is c exp(-C sqrt t).
inline MinDistanceRate min_distance_rate_check(std::span<const DiagnosticsRecord> recs, double beta) {
    if (!(beta >= 2.0)) throw UnsupportedQuery("minimal-distance rate needs beta >= 2");
    std::vector<double> xs, ys, ts;
    for (const auto& r : recs) {
        if (r.t < 1.0) continue;
        if (!(r.dmin > 0.0) || !std::isfinite(r.dmin)) throw DataError("minimal distance must be positive and finite");
        ts.push_back(r.t);
        xs.push_back(beta > 2.0 ? std::log(r.t) : std::sqrt(r.t));
        ys.push_back(std::log(r.dmin));
    }
    if (xs.size() < 2) throw InsufficientData("minimal-distance fit needs samples with t >= 1");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
    }
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    MinDistanceRate out;
    out.beta = beta;
    out.samples = xs.size();
    double ss = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double e = ys[k] - (my + slope * (xs[k] - mx));
        ss += e * e;
    }
    out.residual = std::sqrt(ss / n);
    out.constant = INFINITY;
    if (beta > 2.0) {
        out.exponent = slope;
        out.predicted_exponent = -1.0 / (beta - 2.0);
        for (std::size_t k = 0; k < ts.size(); ++k)
            out.constant = std::min(out.constant, std::exp(ys[k]) * std::pow(ts[k], 1.0 / (beta - 2.0)));
    } else {
        out.sqrt_rate = -slope;
        out.predicted_exponent = -INFINITY;
        for (std::size_t k = 0; k < ts.size(); ++k)
            out.constant = std::min(out.constant, std::exp(ys[k] + std::max(0.0, -slope) * std::sqrt(ts[k])));
    }
    return out;
}

}  // namespace csalign
