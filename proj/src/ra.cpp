#include "ccr/ra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ccr/error.hpp"

namespace ccr::ra {

double power_cap(double p, double g, double itc) {
    if (!(p > 0.0) || !(itc > 0.0) || g < 0.0) throw DomainError("power cap: invalid arguments");
    if (g == 0.0) return 1.0;
    return std::min(1.0, itc / (p * g));
}

PowerCaps channel_caps(const link::ChannelParams& params, const link::LinkBudget& budget, std::size_t k,
                       std::size_t n_primary) {
    const auto pu = k % n_primary;
    const double g_s = params.itc_pathloss ? budget.sbs_pu.at(pu) : 1.0;
    const double g_r = params.itc_pathloss ? budget.uav_pu.at(pu) : 1.0;
    return {power_cap(params.p_sbs, g_s, params.itc), power_cap(params.p_uav, g_r, params.itc)};
}

std::vector<double> alpha_at(double I_r, std::size_t c, double gamma) {
    std::vector<double> a(c);
    double f = I_r * gamma;
    for (std::size_t n = c; n-- > 0;) {
        a[n] = f;
        f *= 1.0 + gamma;
    }
    return a;
}

std::vector<double> beta_at(std::span<const double> I, double gamma) {
    std::vector<double> b(I.size());
    double tail = 0.0;
    for (std::size_t n = I.size(); n-- > 0;) {
        b[n] = gamma * (I[n] + tail);
        tail += b[n];
    }
    return b;
}

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(what);
}

double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

PhaseSolution phase1_allocation(double I_r, double phi1, std::size_t c) {
    require_positive(I_r, "phase 1: I_r must be > 0");
    require_positive(phi1, "phase 1: budget must be > 0");
    if (c == 0) throw DomainError("phase 1: cluster must not be empty");
    const double g = std::expm1(std::log1p(phi1 / I_r) / static_cast<double>(c));
    return {g, alpha_at(I_r, c, g)};
}

PhaseSolution phase2_allocation(std::span<const double> I, double phi2) {
    require_positive(phi2, "phase 2: budget must be > 0");
    if (I.empty()) throw DomainError("phase 2: cluster must not be empty");
    for (double v : I) require_positive(v, "phase 2: I_n must be > 0");

    double g = 0.0;
    if (I.size() == 1) {
        g = phi2 / I[0];
    } else if (I.size() == 2) {
        const double s = I[0] + I[1];
        g = (std::sqrt(4.0 * I[1] * phi2 + s * s) - s) / (2.0 * I[1]);
    } else {
        // sum beta(g) is a polynomial with positive coefficients; bisect to the
        // last representable feasible point.
        double lo = 0.0;
        double hi = phi2 / *std::min_element(I.begin(), I.end());
        while (true) {
            const double mid = lo + 0.5 * (hi - lo);
            if (mid <= lo || mid >= hi) break;
            if (sum(beta_at(I, mid)) <= phi2)
                lo = mid;
            else
                hi = mid;
        }
        g = lo;
    }
    return {g, beta_at(I, g)};
}

AllocationResult allocate(double I_r, std::span<const double> I_n, const PowerCaps& caps, double bandwidth) {
    const auto p1 = phase1_allocation(I_r, caps.phi1, I_n.size());
    const auto p2 = phase2_allocation(I_n, caps.phi2);
    AllocationResult r;
    r.gamma_star = std::min(p1.gamma, p2.gamma);
    r.alpha = p1.gamma <= p2.gamma ? p1.fractions : alpha_at(I_r, I_n.size(), r.gamma_star);
    r.beta = p2.gamma <= p1.gamma ? p2.fractions : beta_at(I_n, r.gamma_star);
    r.lambda = 0.5;
    r.maxmin_rate = 0.5 * bandwidth * std::log2(1.0 + r.gamma_star);
    r.energy = sum(r.alpha) + sum(r.beta);
    return r;
}

AllocationResult allocate_cluster(const link::ClusterLinkState& s, const PowerCaps& caps, double bandwidth) {
    return allocate(s.agg_I_r, s.agg_I_n, caps, bandwidth);
}

namespace {

// Best min-SIDNR over the grid on the face sum v = phi of one phase.
template <class Sidnr>
PhaseSolution grid_face(std::size_t c, double phi, double step, Sidnr&& sidnr_of) {
    PhaseSolution best{-1.0, {}};
    std::vector<double> v(c, 0.0);
    const auto steps = static_cast<long>(std::floor(phi / step + 1e-9));
    auto evaluate = [&] {
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t n = 0; n < c; ++n) worst = std::min(worst, sidnr_of(v, n));
        if (worst > best.gamma) best = {worst, v};
    };
    if (c == 1) {
        v[0] = phi;
        evaluate();
    } else if (c == 2) {
        for (long i = 0; i <= steps; ++i) {
            v[0] = i * step;
            v[1] = phi - v[0];
            if (v[1] < 0.0) continue;
            evaluate();
        }
    } else {
        for (long i = 0; i <= steps; ++i) {
            for (long j = 0; i + j <= steps; ++j) {
                v[0] = i * step;
                v[1] = j * step;
                v[2] = phi - v[0] - v[1];
                if (v[2] < 0.0) continue;
                evaluate();
            }
        }
    }
    return best;
}

}  // namespace

AllocationResult grid_oracle_allocate(const link::ClusterLinkState& s, const PowerCaps& caps, double bandwidth,
                                      double grid_step) {
    const auto c = s.size();
    if (c == 0 || c > 3) throw DomainError("grid oracle supports clusters of 1 to 3 users");
    if (!(grid_step > 0.0)) throw DomainError("grid oracle: step must be > 0");
    // Raising every fraction of a phase by a common factor weakly raises each
    // SIDNR of that phase, so the optimum lies on the budget face.
    const auto p1 = grid_face(c, caps.phi1, grid_step, [&](const std::vector<double>& a, std::size_t n) {
        return link::broadcast_sidnr(s, a, n);
    });
    const auto p2 = grid_face(c, caps.phi2, grid_step, [&](const std::vector<double>& b, std::size_t n) {
        return link::relay_sidnr(s, b, n);
    });
    AllocationResult r;
    r.alpha = p1.fractions;
    r.beta = p2.fractions;
    r.gamma_star = std::min(p1.gamma, p2.gamma);
    r.lambda = 0.5;
    r.maxmin_rate = 0.5 * bandwidth * std::log2(1.0 + r.gamma_star);
    r.energy = sum(r.alpha) + sum(r.beta);
    return r;
}

}  // namespace ccr::ra
