#pragma once

// Invariant suites behind `spec2d verify`: each check yields a measured defect,
// a threshold and a pass flag. Brute-force oracles (direct series, independent
// quadratures) live here so the suites do not test a formula against itself.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "spec2d/momentum_rep.hpp"
#include "spec2d/slab_limit.hpp"
#include "spec2d/spectral_core.hpp"

namespace spec2d::verify {

struct CheckRow {
    std::string suite;
    std::string name;
    double measured;
    double threshold;
    bool pass;
};

inline CheckRow row(const std::string& suite, const std::string& name, double measured,
                    double threshold) {
    return {suite, name, measured, threshold, measured <= threshold};
}

// ---------------------------------------------------------------------------
// oracles
// ---------------------------------------------------------------------------

/// Direct partial sum of sum 1/((2n+1)(2n+1-a)) with an integral tail estimate.
inline double identity_sum_bruteforce(double a, long nterms = 2000000) {
    double s = 0.0, c = 0.0;
    for (long n = nterms - 1; n >= 0; --n) {
        double q = 2.0 * n + 1.0;
        double t = 1.0 / (q * (q - a)) - c;
        double tmp = s + t;
        c = (tmp - s) - t;
        s = tmp;
    }
    // tail: integral approximation of sum_{n>=N} 1/((2n+1)(2n+1-a))
    double q = 2.0 * nterms + 1.0;
    s += 0.5 * std::log(q / (q - a)) / a + 0.0 * a;
    if (std::fabs(a) < 1e-12) s += -0.5 / q * 0.0; // a=0 handled by the log limit below
    return s;
}

inline double identity_sum_bruteforce_a0(long nterms = 2000000) {
    double s = 0.0;
    for (long n = nterms - 1; n >= 0; --n) {
        double q = 2.0 * n + 1.0;
        s += 1.0 / (q * q);
    }
    double q = 2.0 * nterms + 1.0;
    return s + 0.5 / q;
}

/// Adaptive quadrature of int_0^inf y/((1+e^{pi y})(y^2+a)) dy (real a > 0).
inline double identity_int_bruteforce(double a) {
    auto f = [a](double y) { return y / ((1.0 + std::exp(pi * y)) * (y * y + a)); };
    return quad::adaptive(f, 0.0, 40.0, 1e-13);
}

// ---------------------------------------------------------------------------
// suites
// ---------------------------------------------------------------------------

inline std::vector<CheckRow> verify_specfun(std::uint64_t seed = 0xC0FFEE) {
    using namespace specfun;
    std::vector<CheckRow> rows;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ur(0.3, 4.0), ui(-2.0, 2.0);

    double worst = 0.0;
    for (int t = 0; t < 40; ++t) {
        cplx z(ur(rng), ui(rng));
        worst = std::max(worst, std::abs(digamma(z + 1.0) - digamma(z) - 1.0 / z) /
                                    std::max(1.0, std::abs(digamma(z))));
    }
    rows.push_back(row("specfun", "digamma_recurrence", worst, 1e-10));

    worst = 0.0;
    for (int t = 0; t < 40; ++t) {
        cplx z(ur(rng), ui(rng));
        worst = std::max(worst, std::abs(log_gamma(z + 1.0) - log_gamma(z) - std::log(z)));
    }
    rows.push_back(row("specfun", "gamma_recurrence", worst, 1e-10));

    worst = 0.0;
    for (int t = 0; t < 40; ++t) {
        int n = 2 + int(4 * ur(rng));
        double alpha = ur(rng), x = 3.0 * ur(rng);
        double l0 = laguerre(n - 1, alpha, x), l1 = laguerre(n, alpha, x),
               l2 = laguerre(n + 1, alpha, x);
        double resid = (n + 1.0) * l2 - ((2 * n + 1 + alpha - x) * l1 - (n + alpha) * l0);
        worst = std::max(worst, std::fabs(resid) / std::max(1.0, std::fabs(l2)));
    }
    rows.push_back(row("specfun", "laguerre_recurrence", worst, 1e-10));

    // Whittaker Wronskian drift across z in [0.25, 8]
    worst = 0.0;
    std::uniform_real_distribution<double> ukap(-1.5, 1.5), umu(0.05, 1.4);
    for (int t = 0; t < 20; ++t) {
        cplx kap(ukap(rng)), mu(umu(rng));
        auto wronsk = [&](double z) {
            double h = 1e-5 * z;
            auto M = [&](double zz) { return whittaker_m(kap, mu, cplx(zz)); };
            auto W = [&](double zz) { return whittaker_w(kap, mu, cplx(zz)); };
            cplx dM = (M(z + h) - M(z - h)) / (2.0 * h);
            cplx dW = (W(z + h) - W(z - h)) / (2.0 * h);
            return W(z) * dM - M(z) * dW;
        };
        cplx w1 = wronsk(0.25), w2 = wronsk(1.0), w3 = wronsk(8.0);
        double drift = std::max(std::abs(w1 - w2), std::abs(w2 - w3)) / std::abs(w2);
        worst = std::max(worst, drift);
    }
    rows.push_back(row("specfun", "whittaker_wronskian_drift", worst, 1e-8));

    // Whittaker ODE residual under central differencing at h = 1e-4
    worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        cplx kap(ukap(rng)), mu(umu(rng));
        double z = 1.0 + 5.0 * (ur(rng) - 0.3) / 3.7;
        double h = 1e-4;
        for (int which = 0; which < 2; ++which) {
            auto F = [&](double zz) {
                return which ? whittaker_w(kap, mu, cplx(zz)) : whittaker_m(kap, mu, cplx(zz));
            };
            cplx f0 = F(z), fp = F(z + h), fm = F(z - h);
            cplx d2 = (fp - 2.0 * f0 + fm) / (h * h);
            cplx resid = d2 + (-0.25 + kap / z + (0.25 - mu * mu) / (z * z)) * f0;
            worst = std::max(worst, std::abs(resid) / std::max(1.0, std::abs(f0)));
        }
    }
    rows.push_back(row("specfun", "whittaker_ode_residual", worst, 1e-7));

    // K0 positive and strictly decreasing on sampled points
    double mono = 0.0;
    double prev = bessel_k0(0.05);
    for (double x = 0.1; x < 25.0; x += 0.35) {
        double cur = bessel_k0(x);
        if (cur <= 0.0 || cur >= prev) mono = 1.0;
        prev = cur;
    }
    rows.push_back(row("specfun", "k0_monotone_positive", mono, 0.5));

    return rows;
}

inline std::vector<CheckRow> verify_spectral(std::uint64_t seed = 0xC0FFEE) {
    using namespace spectral;
    std::vector<CheckRow> rows;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uz(0.5, 3.0), uk(-2.0, 2.0);

    // scaling law over random (Z, kappa)
    double worst = 0.0;
    for (int t = 0; t < 6; ++t) {
        double Z = uz(rng), kap = uk(rng);
        auto ta = point_levels(SpectralParams(Z, kap), 3);
        auto tb = point_levels(SpectralParams(1.0, kap + std::log(Z)), 3);
        for (int j = 0; j < 3; ++j)
            worst = std::max(worst, std::fabs(ta.levels[j].epsilon -
                                              Z * Z * tb.levels[j].epsilon) /
                                        std::fabs(ta.levels[j].epsilon));
    }
    rows.push_back(row("spectral", "scaling_law", worst, 1e-10));

    // monotonicity in kappa and interlacing
    double bad = 0.0;
    std::vector<double> prev_eps;
    for (double kap = -4.0; kap <= 6.0; kap += 1.0) {
        auto t = point_levels(SpectralParams(1.0, kap), 4);
        for (int j = 0; j < 4; ++j) {
            double lam_lo = (j == 0) ? -std::numeric_limits<double>::infinity()
                                     : lambda_level(1.0, j);
            double lam_hi = lambda_level(1.0, j + 1);
            if (!(t.levels[j].epsilon > lam_lo && t.levels[j].epsilon < lam_hi)) bad = 1.0;
            if (!prev_eps.empty() && !(t.levels[j].epsilon > prev_eps[j])) bad = 1.0;
        }
        prev_eps.clear();
        for (auto& l : t.levels) prev_eps.push_back(l.epsilon);
    }
    rows.push_back(row("spectral", "interlacing_and_monotonicity", bad, 0.5));

    // Green ODE residual off-diagonal
    double worst_ode = 0.0;
    SpectralParams p(1.0, 0.0);
    for (int t = 0; t < 6; ++t) {
        cplx z(-0.3 - uz(rng) * 0.4, (t % 2) ? 0.2 : 0.0);
        double rho = 0.8 + t * 0.2, rp = rho + 0.9;
        int m = t % 3;
        double h = 1e-4;
        auto G = [&](double r) { return green_radial(p, m, z, r, rp).value; };
        cplx g0 = G(rho);
        cplx d2 = (G(rho + h) - 2.0 * g0 + G(rho - h)) / (h * h);
        cplx d1 = (G(rho + h) - G(rho - h)) / (2.0 * h);
        cplx resid = -d2 - d1 / rho + (double(m * m) / (rho * rho) - 1.0 / rho - z) * g0;
        worst_ode = std::max(worst_ode, std::abs(resid));
    }
    rows.push_back(row("spectral", "green_ode_residual", worst_ode, 1e-5));

    // phi^kappa poles collocate with point levels
    double worst_pole = 0.0;
    for (double kap : {-1.0, 0.0, 2.0}) {
        SpectralParams pk(1.0, kap);
        auto table = point_levels(pk, 3);
        for (auto& l : table.levels) {
            auto denom = [&](double zz) {
                cplx s = specfun::sqrt_minus(cplx(zz));
                return (2.0 * euler_gamma + std::log(2.0 * s) +
                        specfun::digamma(0.5 - pk.Z / (2.0 * s)) + kap)
                    .real();
            };
            double zl = l.epsilon * (1.0 + 1e-6) - 1e-12, zh = l.epsilon * (1.0 - 1e-6) + 1e-12;
            double zroot = brent(denom, zl, zh, 1e-15);
            worst_pole = std::max(worst_pole, std::fabs(zroot - l.epsilon));
        }
    }
    rows.push_back(row("spectral", "phi_pole_collocation", worst_pole, 1e-9));

    // Krein boundary condition f1/f0 = kappa
    {
        SpectralParams pk(1.0, 1.3);
        auto f = [&](double r) { return green_kappa_radial(pk, cplx(-1.7), r, 0.9).value; };
        auto bv = boundary_values(f, 1e-5, 1e-3);
        rows.push_back(row("spectral", "krein_boundary_condition",
                           std::abs(bv.f1 / bv.f0 - 1.3), 1e-4));
    }

    // free-kernel continuity at Z -> 0
    {
        auto gf = green_full(SpectralParams::friedrichs_ext(1e-6), cplx(-0.3), {1.0, 0.2},
                             {1.7, 1.1}, 80, 1e-12);
        double d = std::sqrt(1.0 + 1.7 * 1.7 - 2.0 * 1.7 * std::cos(0.9));
        double freev = specfun::bessel_k0(std::sqrt(0.3) * d) / (2.0 * pi);
        rows.push_back(row("spectral", "free_kernel_continuity",
                           std::abs(gf.value.real() - freev), 1e-4));
    }
    return rows;
}

struct MomentumVerifyOptions {
    bool full_grids = false; ///< acceptance-grade grids (slower)
    int nthreads = 0;
};

inline std::vector<CheckRow> verify_momentum(const MomentumVerifyOptions& opt = {},
                                             std::uint64_t seed = 0xC0FFEE) {
    using namespace momentum;
    std::vector<CheckRow> rows;
    double Z = 1.0;

    TransformGridSpec us = opt.full_grids ? TransformGridSpec::unitarity(Z)
                                          : TransformGridSpec::unitarity_compact(Z);
    TransformGridSpec as = opt.full_grids ? TransformGridSpec::annihilation(Z)
                                          : TransformGridSpec::annihilation_compact(Z);
    TransformPlan up = TransformPlan::build(Z, 0, us, opt.nthreads);
    TransformPlan lp = TransformPlan::build(Z, 0, as, opt.nthreads);
    TransformReport rep = transform_checks(up, lp, opt.full_grids ? 5 : 2);
    rows.push_back(row("momentum", "parseval_defect", rep.parseval_defect, 1e-5));
    rows.push_back(row("momentum", "completeness_defect", rep.completeness_defect, 1e-4));
    rows.push_back(row("momentum", "bound_state_leakage", rep.bound_state_leakage, 1e-6));
    rows.push_back(row("momentum", "roundtrip_error", rep.roundtrip_error, 1e-5));
    rows.push_back(row("momentum", "diagonalization_residual", rep.diagonalization_residual, 1e-4));

    // dual-solver agreement on a (Z, kappa) grid
    double worst = 0.0;
    for (double Zg : {0.5, 1.0, 2.0, 3.0, 5.0}) {
        for (double kap : {-2.0, -1.0, 0.0, 1.0, 3.0}) {
            auto tc = spectral::point_levels(spectral::SpectralParams(Zg, kap), 3);
            double kh = kap + std::log(Zg) + euler_gamma - 3.0 * ln2;
            auto tm = momentum_point_levels(Zg, kh, 3);
            for (int j = 0; j < 3; ++j)
                worst = std::max(worst, std::fabs(tm.levels[j].epsilon - tc.levels[j].epsilon) /
                                            std::fabs(tc.levels[j].epsilon));
        }
    }
    rows.push_back(row("momentum", "dual_solver_agreement", worst, 1e-9));

    // closed-form identities vs brute force
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ua(-4.5, 4.5);
    double worst_sum = 0.0, worst_int = 0.0;
    for (int t = 0; t < 20; ++t) {
        double a = ua(rng);
        if (std::fabs(a - std::round(a)) < 0.05 && std::lround(std::round(a)) % 2 != 0) {
            a += 0.11;
        }
        worst_sum = std::max(worst_sum,
                             std::fabs(identity_sum(a) - identity_sum_bruteforce(a)));
        double ai = 0.3 + std::fabs(a);
        worst_int = std::max(worst_int, std::abs(identity_int(cplx(ai)).real() -
                                                 identity_int_bruteforce(ai)));
    }
    rows.push_back(row("momentum", "identity_sum_oracle", worst_sum, 1e-10));
    rows.push_back(row("momentum", "identity_int_oracle", worst_int, 1e-10));
    return rows;
}

struct SlabVerifyOptions {
    bool full_grids = false;
    std::vector<double> a_list = {0.4, 0.2, 0.1, 0.05};
    double xi = -0.5;
    int n_modes = 4;
    std::uint64_t seed = 0xC0FFEE;
};

inline std::vector<CheckRow> verify_slab(const SlabVerifyOptions& opt = {}) {
    using namespace slab;
    std::vector<CheckRow> rows;

    // matrix-level form inequality
    {
        RadialGrid g(opt.full_grids ? 0.01 : 0.02, 20.0);
        SlabParams sp(0.1, 1);
        DiscreteOperator hc = discretize(OperatorKind::coulomb2d, g);
        DiscreteOperator he = discretize(OperatorKind::effective, g, sp);
        double e1 = transverse_energy(0.1, 1);
        double minv = std::numeric_limits<double>::infinity();
        for (int i = 0; i < hc.dim(); ++i)
            minv = std::min(minv, he.mat.coeff(i, i) - hc.mat.coeff(i, i) - e1);
        rows.push_back(row("slab", "form_inequality_slack", -minv, 1e-10));
    }

    // discrete Kato inequality
    {
        RadialGrid g(opt.full_grids ? 0.02 : 0.04, opt.full_grids ? 40.0 : 30.0);
        rows.push_back(row("slab", "kato_inequality_slack", -kato_slack(g), 1e-8));
    }

    // HS sandwich between the analytic bounds
    {
        double iw = w_integral();
        double i02 = quad::adaptive([](double r) { return w_profile(r); }, 0.0, 2.0, 1e-10);
        for (double a : {0.2, 0.1, 0.05, 0.02}) {
            double h = a / 10.0;
            RadialGrid g(h, std::min(12.0, (max_operator_dim / 2) * h));
            double v = hs_sandwich_norm(a, g, opt.seed);
            double lo = 0.5 * i02 * a * std::log(1.0 / (2.0 * a));
            double hi = std::sqrt(12.0 * a * a * std::pow(std::log(a), 2) * iw * iw +
                                  32.0 * a * a * iw);
            bool ok = lo < v && v < hi;
            rows.push_back({"slab", "hs_sandwich_a=" + std::to_string(a), v,
                            ok ? v + 1.0 : v - 1.0, ok});
        }
    }

    // convergence study
    {
        double hmin = opt.full_grids ? 0.00625 : 0.02;
        double R = opt.full_grids ? 25.0 : 20.0;
        RadialGrid g(hmin, R);
        auto recs = convergence_study(opt.xi, opt.a_list, g, opt.n_modes, opt.seed);
        double prev = std::numeric_limits<double>::infinity();
        bool decreasing = true, bounds = true;
        std::vector<double> ratios;
        for (auto& r : recs) {
            if (r.diff_slab >= prev) decreasing = false;
            prev = r.diff_slab;
            bounds = bounds && r.within_bounds;
            ratios.push_back(r.diff_slab / (r.a * std::fabs(std::log(r.a))));
            rows.push_back({"slab", "resolvent_diff_a=" + std::to_string(r.a), r.diff_slab,
                            r.rhs_theorem, r.diff_slab <= r.rhs_theorem});
        }
        rows.push_back({"slab", "resolvent_diff_decreasing", decreasing ? 0.0 : 1.0, 0.5,
                        decreasing});
        std::sort(ratios.begin(), ratios.end());
        double med = ratios[ratios.size() / 2];
        bool band = ratios.front() >= 0.1 * med && ratios.back() <= 10.0 * med;
        rows.push_back({"slab", "a_log_a_ratio_band", ratios.back() / med, 10.0, band});
    }
    return rows;
}

} // namespace spec2d::verify
