#include "ccr/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ccr/channel.hpp"
#include "ccr/error.hpp"
#include "ccr/parallel.hpp"
#include "ccr/rng.hpp"
#include "ccr/special.hpp"

namespace ccr::coverage {

using special::binomial;
using special::factorial;
using special::gamma_p_int;
using special::gamma_q_int;
using special::rising;

Thresholds sidnr_thresholds(double rbar, double lambda, double w) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("thresholds: lambda must lie in [0, 1]");
    if (!(w > 0.0)) throw DomainError("thresholds: bandwidth must be > 0");
    if (rbar < 0.0) throw DomainError("thresholds: rate must be >= 0");
    auto one = [&](double share) {
        if (rbar == 0.0) return 0.0;
        if (share == 0.0) return infinity;
        return std::expm1(rbar / (share * w) * std::log(2.0));
    };
    return {one(lambda), one(1.0 - lambda)};
}

CdfParams cdf_params(const PhaseInputs& in, double gbar) {
    const auto& t = in.terms;
    CdfParams p;
    p.x = in.shapes.serving;
    p.y = in.shapes.pu;
    p.z = in.shapes.pbs;
    p.A = in.v - gbar * (in.sic + t.hi_var);
    p.Lambda = in.Lambda;
    if (p.A <= 0.0) return p;
    // Dividing by the mean of |h_est|^2 makes X unit-mean.
    const double k = gbar / (p.A * t.est_gain);
    p.calI = t.pbs_interf * k;
    p.calE = t.err_power * k;
    p.calS = t.noise * k;
    if (std::isfinite(p.Lambda)) {
        p.calU = p.calI / p.Lambda;
        p.calV = p.calS / p.Lambda;
    }
    return p;
}

double cdf_delta_term(const CdfParams& p) {
    if (!(p.A > 0.0)) throw DomainError("delta term requires A > 0");
    const double py = std::isfinite(p.Lambda) ? gamma_p_int(p.y, p.y * p.Lambda) : 1.0;
    if (py == 0.0) return 0.0;
    const int x = p.x;
    const int z = p.z;
    const double c = p.calE + p.calS;
    const double w = z + x * p.calI;
    const double lead = std::pow(z / w, z);
    double series = 0.0;
    for (int q = 0; q < x; ++q) {
        double inner = 0.0;
        for (int l = 0; l <= q; ++l)
            inner += binomial(q, l) * std::pow(c, q - l) * std::pow(p.calI / w, l) * rising(z, l);
        series += std::pow(x, q) / factorial(q) * inner;
    }
    const double bracket = 1.0 - std::exp(-x * c) * lead * series;
    return py * std::clamp(bracket, 0.0, 1.0);
}

double cdf_upsilon_term(const CdfParams& p) {
    if (!(p.A > 0.0)) throw DomainError("upsilon term requires A > 0");
    if (!std::isfinite(p.Lambda)) return 0.0;
    const int x = p.x;
    const int y = p.y;
    const double qy = gamma_q_int(y, y * p.Lambda);
    if (qy < 1e-15) return 0.0;
    const double e_lead = std::exp(-x * p.calE);

    auto upsilon1 = [&](double zv) {
        const double b = zv * p.calU + p.calV;
        const double w = y + x * b;
        const double lead = std::pow(y / w, y);
        double series = 0.0;
        for (int k = 0; k < x; ++k) {
            double inner = 0.0;
            for (int j = 0; j <= k; ++j)
                inner += binomial(k, j) * std::pow(p.calE, k - j) * rising(y, j) * std::pow(b / w, j) *
                         gamma_q_int(y + j, p.Lambda * w);
            series += std::pow(x, k) / factorial(k) * inner;
        }
        return qy - e_lead * lead * series;
    };
    auto integrand = [&](double zv) { return special::gamma_unit_pdf(p.z, zv) * upsilon1(zv); };
    const double v = special::integrate_half_line(integrand).value;
    return std::clamp(v, 0.0, qy);
}

double sidnr_cdf(const PhaseInputs& in, double gbar) {
    if (gbar <= 0.0) return 0.0;
    if (!std::isfinite(gbar)) return 1.0;
    const auto p = cdf_params(in, gbar);
    if (p.A <= 0.0) return 1.0;
    return std::clamp(cdf_delta_term(p) + cdf_upsilon_term(p), 0.0, 1.0);
}

CoverageModel make_model(const ScenarioConfig& cfg, const link::ChannelParams& params,
                         const link::LinkBudget& budget, link::ClusterLinkState state, std::size_t k) {
    CoverageModel m;
    m.state = std::move(state);
    m.shapes = cfg.impairments.fading;
    m.itc = params.itc;
    const auto pu = k % cfg.primary_users.size();
    m.itc_gain_sbs = params.p_sbs * (params.itc_pathloss ? budget.sbs_pu.at(pu) : 1.0);
    m.itc_gain_uav = params.p_uav * (params.itc_pathloss ? budget.uav_pu.at(pu) : 1.0);
    m.bandwidth = params.bandwidth;
    return m;
}

namespace {

double lambda_for(double itc, double gain, double fraction) {
    const double mean = gain * fraction;
    if (!(mean > 0.0) || !std::isfinite(itc)) return infinity;
    return itc / mean;
}

double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

double tail(std::span<const double> v, std::size_t n) {
    return std::accumulate(v.begin() + static_cast<std::ptrdiff_t>(n) + 1, v.end(), 0.0);
}

}  // namespace

std::pair<double, double> itc_lambdas(const CoverageModel& m, const ra::AllocationResult& a) {
    return {lambda_for(m.itc, m.itc_gain_sbs, sum(a.alpha)), lambda_for(m.itc, m.itc_gain_uav, sum(a.beta))};
}

std::vector<CoverageResult> coverage_probability(const CoverageModel& m, const ra::AllocationResult& a,
                                                 double rbar) {
    const auto th = sidnr_thresholds(rbar, a.lambda, m.bandwidth);
    const auto [l1, l2] = itc_lambdas(m, a);
    std::vector<CoverageResult> out;
    for (std::size_t n = 0; n < m.state.size(); ++n) {
        const PhaseInputs p1{m.state.broadcast, a.alpha[n], tail(a.alpha, n), l1, m.shapes};
        const PhaseInputs p2{m.state.relay[n], a.beta[n], tail(a.beta, n), l2, m.shapes};
        CoverageResult r;
        r.p_phase1 = 1.0 - sidnr_cdf(p1, th.broadcast);
        r.p_phase2 = 1.0 - sidnr_cdf(p2, th.relay);
        r.p_e2e = r.p_phase1 * r.p_phase2;
        out.push_back(r);
    }
    return out;
}

double cluster_coverage(const CoverageModel& m, const ra::AllocationResult& a, double rbar) {
    double worst = 1.0;
    for (const auto& r : coverage_probability(m, a, rbar)) worst = std::min(worst, r.p_e2e);
    return worst;
}

namespace {

constexpr std::size_t block_trials = 1 << 15;

// SIDNR with every transmitted component scaled by s (ITC back-off); the PBS
// interference and thermal noise are unaffected.
double scaled_sidnr(const link::PhaseTerms& t, double x, double zv, double s, double v, double sic) {
    const double sig = s * x;
    return sig * v / (sig * sic + sig * t.hi_var + s * t.err_power + zv * t.pbs_interf + t.noise);
}

double backoff(double y, double lambda) { return y > lambda ? lambda / y : 1.0; }

struct Counts {
    std::vector<std::int64_t> c1, c2, c12;  // [threshold * members + n]
};

}  // namespace

std::vector<std::vector<CoverageResult>> monte_carlo_coverage(const CoverageModel& m,
                                                              const ra::AllocationResult& a,
                                                              std::span<const double> rbars, std::size_t trials,
                                                              std::uint64_t seed) {
    if (trials == 0) throw DomainError("monte carlo: trials must be >= 1");
    const auto c = m.state.size();
    const auto nt = rbars.size();
    std::vector<Thresholds> th;
    for (double r : rbars) th.push_back(sidnr_thresholds(r, a.lambda, m.bandwidth));
    const auto [l1, l2] = itc_lambdas(m, a);
    std::vector<double> sic1(c), sic2(c);
    for (std::size_t n = 0; n < c; ++n) {
        sic1[n] = tail(a.alpha, n);
        sic2[n] = tail(a.beta, n);
    }
    const auto& sh = m.shapes;
    const std::size_t blocks = (trials + block_trials - 1) / block_trials;
    std::vector<Counts> per_block(blocks);

    parallel_for(blocks, [&](std::size_t b) {
        Rng rng(seed, Stream::monte_carlo, b);
        Counts cnt{std::vector<std::int64_t>(nt * c), std::vector<std::int64_t>(nt * c),
                   std::vector<std::int64_t>(nt * c)};
        std::vector<double> g1(c), g2(c);
        const std::size_t begin = b * block_trials;
        const std::size_t end = std::min(trials, begin + block_trials);
        for (std::size_t t = begin; t < end; ++t) {
            const double xs = m.state.broadcast.est_gain * channel::sample_nakagami_power(sh.serving, rng);
            const double zs = channel::sample_nakagami_power(sh.pbs, rng);
            const double ys = channel::sample_nakagami_power(sh.pu, rng);
            const double yr = channel::sample_nakagami_power(sh.pu, rng);
            const double s1 = backoff(ys, l1);
            const double s2 = backoff(yr, l2);
            for (std::size_t n = 0; n < c; ++n) {
                const auto& rt = m.state.relay[n];
                const double xr = rt.est_gain * channel::sample_nakagami_power(sh.serving, rng);
                const double zr = channel::sample_nakagami_power(sh.pbs, rng);
                g1[n] = scaled_sidnr(m.state.broadcast, xs, zs, s1, a.alpha[n], sic1[n]);
                g2[n] = scaled_sidnr(rt, xr, zr, s2, a.beta[n], sic2[n]);
            }
            for (std::size_t i = 0; i < nt; ++i) {
                for (std::size_t n = 0; n < c; ++n) {
                    const bool ok1 = g1[n] >= th[i].broadcast;
                    const bool ok2 = g2[n] >= th[i].relay;
                    cnt.c1[i * c + n] += ok1;
                    cnt.c2[i * c + n] += ok2;
                    cnt.c12[i * c + n] += ok1 && ok2;
                }
            }
        }
        per_block[b] = std::move(cnt);
    });

    std::vector<std::vector<CoverageResult>> out(nt, std::vector<CoverageResult>(c));
    const double nn = static_cast<double>(trials);
    for (std::size_t i = 0; i < nt; ++i) {
        for (std::size_t n = 0; n < c; ++n) {
            std::int64_t s1 = 0, s2 = 0, s12 = 0;
            for (const auto& cnt : per_block) {
                s1 += cnt.c1[i * c + n];
                s2 += cnt.c2[i * c + n];
                s12 += cnt.c12[i * c + n];
            }
            auto& r = out[i][n];
            r.method = Method::monte_carlo;
            r.p_phase1 = s1 / nn;
            r.p_phase2 = s2 / nn;
            r.p_e2e = s12 / nn;
            r.mc_stderr = std::sqrt(r.p_e2e * (1.0 - r.p_e2e) / nn);
        }
    }
    return out;
}

}  // namespace ccr::coverage
