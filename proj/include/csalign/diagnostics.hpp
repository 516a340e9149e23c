#pragma once

// Functionals sampled along a flock trajectory: variations V_p, dissipations
// I_p, correctors, Lyapunov combinations, the collision potential, the
// cluster energy and the good-set decomposition of a Lagrangian flock.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "kernels.hpp"
#include "state.hpp"

namespace csalign {

namespace detail {

inline double pair_speed2(const FlockState& s, std::size_t i, std::size_t j) {
    double q = 0.0;
    for (std::size_t c = 0; c < s.dim; ++c) {
        const double d = s.v[i * s.dim + c] - s.v[j * s.dim + c];
        q += d * d;
    }
    return q;
}

// |w|^p from |w|^2 without pow for the common exponents.
inline double power_from_square(double q, double p) {
    if (p == 2.0) return q;
    if (p == 1.0) return std::sqrt(q);
    if (p == 4.0) return q * q;
    if (p == 3.0) return q * std::sqrt(q);
    return std::pow(std::sqrt(q), p);
}

inline void require_p(double p) {
    if (!(p >= 1.0)) throw DomainError("variation order p must be >= 1");
}

}  // namespace detail

/// V_p = sum_{i,j} m_i m_j |v_i - v_j|^p (ordered pairs, fixed order).
inline double variation(const FlockState& s, double p) {
    detail::require_p(p);
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (i == j) continue;
            sum += s.m[i] * s.m[j] * detail::power_from_square(detail::pair_speed2(s, i, j), p);
        }
    return sum;
}

/// I_p = p sum_{i,j} m_i m_j |v_ij|^p phi(|x_ij|).
inline double dissipation(const FlockState& s, const KernelSpec& k, const Domain& dom, double p) {
    detail::require_p(p);
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (i == j) continue;
            const double phi = eval(k, distance(dom, s.pos(i), s.pos(j)));
            sum += s.m[i] * s.m[j] * detail::power_from_square(detail::pair_speed2(s, i, j), p) * phi;
        }
    return p * sum;
}

/// Euclidean corrector sum m_i m_j |v_ij|^order psi(d_ij) chi(|x_ij|) with
/// d_ij = -x_ij . v_ij / |v_ij|; order 1 gives G, order 3 gives G3.
inline double corrector_euclidean(const FlockState& s, const Domain& dom, double r0, int order) {
    if (dom.is_circle()) throw UnsupportedQuery("euclidean corrector on a circle domain");
    if (order != 1 && order != 3) throw DomainError("corrector order must be 1 or 3");
    const AuxiliaryProfile chi_p{r0, ProfileVariant::ChiTruncation};
    const AuxiliaryProfile psi_p{r0, ProfileVariant::PsiEuclidean};
    std::vector<double> xij(s.dim), vij(s.dim);
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (i == j) continue;
            double r2 = 0.0, w2 = 0.0;
            for (std::size_t c = 0; c < s.dim; ++c) {
                xij[c] = s.x[i * s.dim + c] - s.x[j * s.dim + c];
                vij[c] = s.v[i * s.dim + c] - s.v[j * s.dim + c];
                r2 += xij[c] * xij[c];
                w2 += vij[c] * vij[c];
            }
            const double cut = chi(chi_p, std::sqrt(r2));
            if (cut == 0.0) continue;
            const auto dij = directed_distance_euclidean(xij, vij);
            if (!dij) continue;
            sum += s.m[i] * s.m[j] * detail::power_from_square(w2, order) * psi(psi_p, *dij) * cut;
        }
    return sum;
}

/// Periodic corrector sum m_i m_j |v_ij| psi(d_ij), d_ij the contracting arc.
inline double corrector_circle(const FlockState& s, const Domain& dom, double r0) {
    if (!dom.is_circle()) throw UnsupportedQuery("periodic corrector on a euclidean domain");
    const AuxiliaryProfile prof{r0, ProfileVariant::PsiPeriodic};
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (i == j) continue;
            const double vij = s.v[i] - s.v[j];
            if (vij == 0.0) continue;
            const double dij = directed_distance_circle(s.x[i], s.x[j], vij > 0.0 ? 1 : -1);
            sum += s.m[i] * s.m[j] * std::abs(vij) * psi(prof, dij);
        }
    return sum;
}

enum class LyapunovVariant { EuclideanV2, EuclideanV4, CircleI, CircleII, CircleIII };

inline std::string_view to_string(LyapunovVariant v) {
    switch (v) {
        case LyapunovVariant::EuclideanV2: return "euclidean_v2";
        case LyapunovVariant::EuclideanV4: return "euclidean_v4";
        case LyapunovVariant::CircleI: return "circle_i";
        case LyapunovVariant::CircleII: return "circle_ii";
        case LyapunovVariant::CircleIII: return "circle_iii";
    }
    return "?";
}

inline LyapunovVariant lyapunov_variant_from_string(std::string_view s) {
    for (auto v : {LyapunovVariant::EuclideanV2, LyapunovVariant::EuclideanV4, LyapunovVariant::CircleI,
                   LyapunovVariant::CircleII, LyapunovVariant::CircleIII})
        if (to_string(v) == s) return v;
    throw ConfigError("unknown lyapunov variant '" + std::string(s) + "'");
}

inline bool is_circle_variant(LyapunovVariant v) {
    return v == LyapunovVariant::CircleI || v == LyapunovVariant::CircleII || v == LyapunovVariant::CircleIII;
}

/// Coefficients of the Lyapunov combination and the corrector radius.
struct LyapunovConfig {
    LyapunovVariant variant = LyapunovVariant::EuclideanV2;
    double a = 1.0;
    double b = 1.0;
    double c = 1.0;
    double r0 = 1.0;

    bool operator==(const LyapunovConfig&) const = default;
};

inline void validate(const LyapunovConfig& l) {
    if (!(l.a > 0.0 && l.b > 0.0 && l.c > 0.0)) throw ConfigError("lyapunov: a, b, c must be positive");
    if (!(l.r0 > 0.0)) throw ConfigError("lyapunov: r0 must be positive");
    if (is_circle_variant(l.variant) && !(l.r0 < pi)) throw ConfigError("lyapunov: circle corrector needs r0 < pi");
}

/// Constants read off the periodic corrector estimate: a = pi/(lambda (pi - r0)),
/// b = r0/(pi - r0), c = 4 r0 M (bound of the remainder by c I_1).
inline LyapunovConfig torus_default_constants(LyapunovVariant v, double lambda, double r0, double mass = 1.0) {
    return {v, pi / (lambda * (pi - r0)), r0 / (pi - r0), 4.0 * r0 * mass, r0};
}

/// Effective agent count 1/min_i m_i (equals N for uniform weights).
inline double effective_count(const FlockState& s) {
    return 1.0 / *std::min_element(s.m.begin(), s.m.end());
}

namespace detail {

inline double assemble_lyapunov(const LyapunovConfig& cfg, double t, double n_eff, double G, double G3, double V1,
                                double V2) {
    switch (cfg.variant) {
        case LyapunovVariant::EuclideanV2: return G + cfg.a * V2 + cfg.b * n_eff * V1;
        case LyapunovVariant::EuclideanV4: return G3 + cfg.a * V2;
        case LyapunovVariant::CircleI: return G + 0.5 * cfg.c * n_eff * V1 + cfg.b * t * V2 + cfg.a * V2;
        case LyapunovVariant::CircleII:
        case LyapunovVariant::CircleIII: return G + cfg.b * t * V2 + cfg.a * V2;
    }
    return 0.0;
}

}  // namespace detail

inline double lyapunov(const FlockState& s, const LyapunovConfig& cfg, const Domain& dom) {
    if (is_circle_variant(cfg.variant) != dom.is_circle())
        throw UnsupportedQuery("lyapunov variant does not match the domain");
    double G = 0.0, G3 = 0.0;
    if (dom.is_circle()) G = corrector_circle(s, dom, cfg.r0);
    else if (cfg.variant == LyapunovVariant::EuclideanV4) G3 = corrector_euclidean(s, dom, cfg.r0, 3);
    else G = corrector_euclidean(s, dom, cfg.r0, 1);
    return detail::assemble_lyapunov(cfg, s.t, effective_count(s), G, G3, variation(s, 1.0), variation(s, 2.0));
}

/// Local collision functional sum_{i != j} m_i m_j f(|x_ij| ^ r0) with
/// f(r) = r^(2 - beta) for beta > 2 and ln r for beta = 2.
inline double collision_potential(const FlockState& s, const Domain& dom, double beta, double r0) {
    if (!(beta >= 2.0)) throw UnsupportedQuery("collision potential needs beta >= 2");
    if (!(r0 > 0.0)) throw DomainError("collision potential needs r0 > 0");
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (i == j) continue;
            const double r = distance(dom, s.pos(i), s.pos(j));
            if (r == 0.0) throw CollisionError(i, j, s.t);
            const double rc = std::min(r, r0);
            sum += s.m[i] * s.m[j] * (beta == 2.0 ? std::log(rc) : std::pow(rc, 2.0 - beta));
        }
    return sum;
}

/// E = sqrt(V*) + C2 int_{D*}^1 phi, with V* = sum_{i,j in I*} |v_ij|^2 and D*
/// the diameter of the subset.
inline double cluster_energy(const FlockState& s, const KernelSpec& k, const Domain& dom,
                             std::span<const std::size_t> subset, double C2) {
    if (subset.empty()) throw DomainError("cluster energy of an empty subset");
    double vstar = 0.0, dstar = 0.0;
    for (std::size_t i : subset)
        for (std::size_t j : subset) {
            if (i >= s.size() || j >= s.size()) throw StructuralError("cluster index out of range");
            vstar += detail::pair_speed2(s, i, j);
            dstar = std::max(dstar, distance(dom, s.pos(i), s.pos(j)));
        }
    if (!(dstar > 0.0)) throw DomainError("cluster energy needs a subset of positive diameter");
    return std::sqrt(vstar) + C2 * primitive_integral(k, dstar, 1.0).value();
}

struct CollisionSpec {
    double beta = 2.0;
    double r0 = 1.0;
    bool operator==(const CollisionSpec&) const = default;
};

/// What to evaluate besides the always-present functionals.
struct DiagnosticsOptions {
    double corrector_r0 = 1.0;
    std::optional<LyapunovConfig> lyapunov;
    std::optional<CollisionSpec> collision;
};

struct DiagnosticsRecord {
    double t = 0.0;
    double V1 = 0.0, V2 = 0.0, V4 = 0.0;
    double I1 = 0.0, I2 = 0.0, I4 = 0.0;
    double G = 0.0;                 // G on R^d, periodic G on the circle
    std::optional<double> G3;       // R^d only
    std::optional<double> L;
    std::optional<double> C;
    double D = 0.0;
    double dmin = std::numeric_limits<double>::infinity();
    std::vector<double> momentum;
    double vdiam = 0.0;
    double dissipated = 0.0;        // int_0^t M I_2 ds, tracked by the integrator
    double mass = 1.0;

    bool operator==(const DiagnosticsRecord&) const = default;
};

inline DiagnosticsRecord make_record(const FlockState& s, const KernelSpec& k, const Domain& dom,
                                     const DiagnosticsOptions& opt, double dissipated = 0.0) {
    DiagnosticsRecord r;
    r.t = s.t;
    // single pass; same per-term expressions and order as variation() / dissipation()
    double v1 = 0.0, v2 = 0.0, v4 = 0.0, i1 = 0.0, i2 = 0.0, i4 = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (i == j) continue;
            const double q = detail::pair_speed2(s, i, j);
            const double phi = eval(k, distance(dom, s.pos(i), s.pos(j)));
            const double w1 = s.m[i] * s.m[j] * detail::power_from_square(q, 1.0);
            const double w2 = s.m[i] * s.m[j] * detail::power_from_square(q, 2.0);
            const double w4 = s.m[i] * s.m[j] * detail::power_from_square(q, 4.0);
            v1 += w1;
            v2 += w2;
            v4 += w4;
            i1 += w1 * phi;
            i2 += w2 * phi;
            i4 += w4 * phi;
        }
    r.V1 = v1;
    r.V2 = v2;
    r.V4 = v4;
    r.I1 = i1;
    r.I2 = 2.0 * i2;
    r.I4 = 4.0 * i4;
    if (dom.is_circle()) {
        r.G = corrector_circle(s, dom, opt.corrector_r0);
    } else {
        r.G = corrector_euclidean(s, dom, opt.corrector_r0, 1);
        r.G3 = corrector_euclidean(s, dom, opt.corrector_r0, 3);
    }
    if (opt.lyapunov) {
        const LyapunovConfig& lc = *opt.lyapunov;
        if (is_circle_variant(lc.variant) != dom.is_circle())
            throw UnsupportedQuery("lyapunov variant does not match the domain");
        double G = r.G, G3 = r.G3.value_or(0.0);
        if (lc.r0 != opt.corrector_r0) {
            if (dom.is_circle()) G = corrector_circle(s, dom, lc.r0);
            else if (lc.variant == LyapunovVariant::EuclideanV4) G3 = corrector_euclidean(s, dom, lc.r0, 3);
            else G = corrector_euclidean(s, dom, lc.r0, 1);
        }
        r.L = detail::assemble_lyapunov(lc, s.t, effective_count(s), G, G3, r.V1, r.V2);
    }
    if (opt.collision) r.C = collision_potential(s, dom, opt.collision->beta, opt.collision->r0);
    r.D = flock_diameter(s, dom);
    r.dmin = closest_pair(s, dom).distance;
    r.momentum = momentum(s);
    r.vdiam = velocity_diameter(s);
    r.dissipated = dissipated;
    r.mass = s.total_mass();
    return r;
}

/// Trapezoid rule over sample abscissae.
inline double trapezoid(std::span<const double> t, std::span<const double> y) {
    if (t.size() != y.size()) throw StructuralError("trapezoid: size mismatch");
    double s = 0.0;
    for (std::size_t k = 1; k < t.size(); ++k) s += 0.5 * (t[k] - t[k - 1]) * (y[k] + y[k - 1]);
    return s;
}

enum class EnergyQuadrature {
    StepIntegrated,  // dissipation integrated by the stepper alongside the state
    Trapezoid,       // trapezoid rule over the recorded I_2 samples
};

/// max_t |V2(t) - V2(0) + int_0^t M I_2 ds|.
inline double energy_residual(std::span<const DiagnosticsRecord> recs,
                              EnergyQuadrature q = EnergyQuadrature::StepIntegrated) {
    if (recs.size() < 2) throw InsufficientData("energy residual needs at least two samples");
    double worst = 0.0, integral = 0.0;
    for (std::size_t k = 0; k < recs.size(); ++k) {
        if (q == EnergyQuadrature::StepIntegrated) {
            integral = recs[k].dissipated - recs[0].dissipated;
        } else if (k > 0) {
            integral += 0.5 * (recs[k].t - recs[k - 1].t) *
                        (recs[k].mass * recs[k].I2 + recs[k - 1].mass * recs[k - 1].I2);
        }
        worst = std::max(worst, std::abs(recs[k].V2 - recs[0].V2 + integral));
    }
    return worst;
}

/// Per-agent dissipation rate f_a = sum_b m_b phi_ab |v_a - v_b|^2.
inline std::vector<double> agent_dissipation(const FlockState& s, const KernelSpec& k, const Domain& dom) {
    std::vector<double> f(s.size(), 0.0);
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = 0; b < s.size(); ++b) {
            if (a == b) continue;
            f[a] += s.m[b] * eval(k, distance(dom, s.pos(a), s.pos(b))) * detail::pair_speed2(s, a, b);
        }
    return f;
}

struct GoodSetReport {
    double T = 0.0;
    double horizon = 0.0;  // upper limit actually used for the time integral
    double delta = 0.0;
    std::vector<double> F;
    std::vector<std::size_t> members;
    double complement_mass = 0.0;
    double epsilon = 0.0;  // sum_a m_a F(a, T)
    double member_velocity_spread = 0.0;  // velocity diameter of the members at the first sample >= T
};

/// Splits the agents by their forward dissipation F(a, T) = int_T^H f_a dt
/// (trapezoid over the snapshots, truncated at the last snapshot H).
inline GoodSetReport good_set(std::span<const FlockState> snaps, const KernelSpec& k, const Domain& dom, double T,
                              double delta) {
    if (!(delta > 0.0)) throw DomainError("good set needs delta > 0");
    if (snaps.empty() || T > snaps.back().t) throw InsufficientData("good set: T beyond the trajectory horizon");
    if (T < snaps.front().t) throw InsufficientData("good set: T before the first snapshot");
    const std::size_t n = snaps.front().size();
    GoodSetReport rep;
    rep.T = T;
    rep.horizon = snaps.back().t;
    rep.delta = delta;
    rep.F.assign(n, 0.0);

    std::size_t first = 0;
    while (snaps[first].t < T) ++first;
    std::vector<double> prev = agent_dissipation(snaps[first], k, dom);
    double tprev = snaps[first].t;
    if (first > 0 && snaps[first].t > T) {
        // linear interpolation of the integrand at T
        const auto before = agent_dissipation(snaps[first - 1], k, dom);
        const double w = (T - snaps[first - 1].t) / (snaps[first].t - snaps[first - 1].t);
        for (std::size_t a = 0; a < n; ++a) {
            const double fT = (1.0 - w) * before[a] + w * prev[a];
            rep.F[a] += 0.5 * (snaps[first].t - T) * (fT + prev[a]);
        }
    }
    for (std::size_t q = first + 1; q < snaps.size(); ++q) {
        const auto cur = agent_dissipation(snaps[q], k, dom);
        const double h = snaps[q].t - tprev;
        for (std::size_t a = 0; a < n; ++a) rep.F[a] += 0.5 * h * (prev[a] + cur[a]);
        prev = cur;
        tprev = snaps[q].t;
    }

    const FlockState& at = snaps[first];
    for (std::size_t a = 0; a < n; ++a) {
        rep.epsilon += at.m[a] * rep.F[a];
        if (rep.F[a] <= delta) rep.members.push_back(a);
        else rep.complement_mass += at.m[a];
    }
    double spread = 0.0;
    for (std::size_t i : rep.members)
        for (std::size_t j : rep.members) spread = std::max(spread, detail::pair_speed2(at, i, j));
    rep.member_velocity_spread = std::sqrt(spread);
    return rep;
}

}  // namespace csalign
