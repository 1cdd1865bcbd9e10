#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "spec2d/momentum_rep.hpp"

using namespace spec2d;
using namespace spec2d::momentum;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("normalization factor N(k)", "[momentum]") {
    CHECK_THAT(normalization_n(1.0, 1e-6), WithinRel(std::sqrt(2.0), 1e-12));
    CHECK_THAT(normalization_n(1.0, 1e8), WithinRel(1.0, 1e-7));
    double prev = normalization_n(1.0, 0.01);
    for (double k = 0.05; k <= 100.0; k *= 1.6) {
        double cur = normalization_n(1.0, k);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("generalized eigenfunctions", "[momentum]") {
    // phases cancel: psi_m(k, rho) is real
    for (auto [k, r] : {std::pair{0.5, 1.0}, {0.05, 30.0}, {3.0, 5.0}, {2.0, 40.0},
                        {10.0, 30.0}, {0.03, 300.0}}) {
        for (int m : {0, 2, -1}) {
            cplx v = gen_eigenfunction(1.0, m, k, r);
            CHECK(std::abs(v.imag()) < 1e-8 * std::max(1.0, std::abs(v.real())));
        }
    }
    // small-rho behavior ~ rho^{|m|} for m = 2
    double a1 = std::abs(gen_eigenfunction(1.0, 2, 0.8, 1e-5));
    double a2 = std::abs(gen_eigenfunction(1.0, 2, 0.8, 2e-5));
    CHECK_THAT(a2 / a1, WithinAbs(4.0, 1e-3));
    // eigenfunction relation (L_0 - k^2) psi = 0 under central differences
    double k = 0.8, rho = 2.0, h = 1e-4, Z = 1.0;
    auto f = [&](double r) { return gen_eigenfunction(Z, 0, k, r).real(); };
    double d2 = (f(rho + h) - 2 * f(rho) + f(rho - h)) / (h * h);
    double d1 = (f(rho + h) - f(rho - h)) / (2 * h);
    CHECK_THAT(-d2 - d1 / rho - (Z / rho) * f(rho) - k * k * f(rho), WithinAbs(0.0, 1e-4));
}

TEST_CASE("transform pair on compact grids", "[momentum][slow]") {
    TransformPlan up = TransformPlan::build(1.0, 0, TransformGridSpec::unitarity_compact(1.0));
    TransformPlan lp = TransformPlan::build(1.0, 0, TransformGridSpec::annihilation_compact(1.0));
    auto rep = transform_checks(up, lp, 2, 600);
    INFO("parseval " << rep.parseval_defect << " completeness " << rep.completeness_defect
                     << " leakage " << rep.bound_state_leakage << " roundtrip "
                     << rep.roundtrip_error << " diag " << rep.diagonalization_residual);
    CHECK(rep.parseval_defect < 1e-5);
    CHECK(rep.completeness_defect < 1e-4);
    CHECK(rep.bound_state_leakage < 1e-6);
    CHECK(rep.roundtrip_error < 1e-5);
    CHECK(rep.diagonalization_residual < 1e-4);

    // linearity and zero input
    std::vector<double> f1(up.rho.size()), f2(up.rho.size());
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t i = 0; i < f1.size(); ++i) {
        f1[i] = u(rng) * std::exp(-0.1 * up.rho.nodes[i]);
        f2[i] = u(rng) * std::exp(-0.2 * up.rho.nodes[i]);
    }
    auto g1 = up.forward(f1), g2 = up.forward(f2);
    std::vector<double> fsum(f1.size());
    for (std::size_t i = 0; i < f1.size(); ++i) fsum[i] = f1[i] + 2.0 * f2[i];
    auto gs = up.forward(fsum);
    double worst = 0.0;
    for (std::size_t i = 0; i < gs.size(); ++i)
        worst = std::max(worst, std::fabs(gs[i] - g1[i] - 2.0 * g2[i]));
    CHECK(worst < 1e-12);
    std::vector<double> zero(up.k.size(), 0.0);
    auto fz = up.inverse(zero);
    for (double v : fz) CHECK(v == 0.0);
}

TEST_CASE("S functional", "[momentum][paper]") {
    double Z = 1.0;
    Grid1D kg = make_k_grid(TransformGridSpec::annihilation(Z));
    // S(0, g) = S(g) consistency on compactly supported samples
    {
        MomentumVector g;
        g.kgrid = kg;
        g.samples.resize(kg.size());
        for (std::size_t i = 0; i < kg.size(); ++i) {
            double k = kg.nodes[i];
            g.samples[i] = (k > 1.0 && k < 3.0) ? std::exp(-k) : 0.0;
        }
        g.coeffs = {cplx(0.4), cplx(-0.2)};
        CHECK(s_functional(Z, 0.0, g) == s_functional(Z, cplx(0.0), g));
    }
    // S(1, f_z) at z = i Z^2/2 against the closed form
    {
        MomentumVector fz = fz_deficiency(Z, cplx(0.0, 0.5), kg, 64);
        cplx S = s_functional(Z, 1.0, fz, 1e-12);
        double re_want = 0.32888635722945935034 - euler_gamma - 3.5 * ln2;
        double im_want = 1.0 + pi / 4.0 + pi / (2.0 * std::tanh(pi / 2.0));
        CHECK_THAT(S.real(), WithinAbs(re_want, 1e-9));
        CHECK_THAT(S.imag(), WithinAbs(im_want, 1e-9));
        // linearity in f at fixed xi
        MomentumVector fz2 = fz;
        for (auto& c : fz2.coeffs) c *= 2.0;
        for (auto& s : fz2.samples) s *= 2.0;
        auto tail_old = fz.coeff_tail;
        fz2.coeff_tail = [tail_old](long n) { return 2.0 * tail_old(n); };
        auto stail_old = fz.sample_tail;
        fz2.sample_tail = [stail_old](double kk) { return 2.0 * stail_old(kk); };
        cplx S2 = s_functional(Z, 2.0, fz2, 1e-12);
        CHECK_THAT(std::abs(S2 - 2.0 * S), WithinAbs(0.0, 1e-10));
    }
    // integrability violation: f(k) ~ 1/k makes the integrand non-decaying
    {
        MomentumVector bad;
        bad.kgrid = kg;
        bad.samples.assign(kg.size(), 0.0);
        bad.sample_tail = [](double k) { return cplx(1.0 / k); };
        CHECK_THROWS_AS(s_functional(Z, 0.0, bad), IntegrabilityError);
    }
}

TEST_CASE("deficiency element norms (paper identities)", "[momentum][paper]") {
    double Z = 1.0, zz = -4.0, s = 2.0;
    Grid1D kg = make_k_grid(TransformGridSpec::annihilation(Z));
    MomentumVector fz = fz_deficiency(Z, cplx(zz), kg, 64);
    // sum (f_z)_n^2 = (Psi'(1/2-1/(2s)) - Psi'(1/2+1/(2s))) / (4 (-z)^{3/2})
    double sum2 = 0.0;
    for (long n = 0; n < 3000000; ++n) {
        double q = 2.0 * n + 1.0;
        double c = 2.0 / (std::pow(q, 1.5) * (-1.0 / (q * q) - zz));
        sum2 += c * c;
    }
    double want_sum = (specfun::trigamma(cplx(0.5 - 0.5 / s)).real() -
                       specfun::trigamma(cplx(0.5 + 0.5 / s)).real()) /
                      (4.0 * std::pow(-zz, 1.5));
    CHECK_THAT(sum2, WithinAbs(want_sum, 1e-10));
    // int f_z(k)^2 k dk = -1/(2z) + Psi'(1/2+1/(2s)) / (4 (-z)^{3/2})
    double int2 = 0.0;
    for (std::size_t i = 0; i < kg.size(); ++i)
        int2 += kg.weights[i] * kg.nodes[i] * std::norm(fz.samples[i]);
    int2 += quad::to_infinity(
        [&](double k) {
            double N = normalization_n(Z, k);
            return N * N * k / std::pow(k * k - zz, 2);
        },
        kg.hi, 1e-13, 20.0);
    double want_int = -1.0 / (2.0 * zz) +
                      specfun::trigamma(cplx(0.5 + 0.5 / s)).real() / (4.0 * std::pow(-zz, 1.5));
    CHECK_THAT(int2, WithinAbs(want_int, 1e-10));
    // unitarity: ||f_z||^2 = |C(z)|^2 int fcheck_z^2 rho drho,
    // C(z) = (-z)^{-1/4} Gamma(1/2 - 1/(2s)) / sqrt(2)
    double lhs = sum2 + int2;
    double gam = specfun::gamma(cplx(0.5 - 0.5 / s)).real();
    double C2 = std::pow(-zz, -0.5) * gam * gam / 2.0;
    auto fw = [&](double r) {
        double w = specfun::whittaker_w(cplx(0.5 / s), cplx(0.0), cplx(2.0 * s * r)).real();
        return w * w / r * r;
    };
    double rhs = C2 * quad::adaptive(fw, 0.0, 12.0, 1e-12);
    CHECK_THAT(lhs, WithinRel(rhs, 1e-6));
}

TEST_CASE("summation identity", "[momentum][paper]") {
    CHECK_THAT(identity_sum(-1.0), WithinRel(ln2, 1e-13));
    CHECK_THAT(identity_sum(0.0), WithinRel(pi * pi / 8.0, 1e-13));
    CHECK_THROWS_AS(identity_sum(3.0), PoleError);
    // brute-force oracle on random parameters (tail-corrected partial sum)
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ua(-4.5, 4.5);
    for (int t = 0; t < 20; ++t) {
        double a = ua(rng);
        double r = std::round(a);
        if (r >= 1.0 && std::lround(r) % 2 == 1 && std::fabs(a - r) < 0.05) a += 0.1;
        if (std::fabs(a) < 1e-3) a += 0.01;
        double brute = 0.0;
        const long N = 1000000;
        for (long n = N - 1; n >= 0; --n) {
            double q = 2.0 * n + 1.0;
            brute += 1.0 / (q * (q - a));
        }
        double q = 2.0 * N + 1.0;
        brute += 0.5 * std::log(q / (q - a)) / a;
        CHECK_THAT(identity_sum(a), WithinAbs(brute, 1e-10));
    }
}

TEST_CASE("integral identity", "[momentum][paper]") {
    CHECK_THAT(identity_int(cplx(1.0)).real(), WithinRel(0.5 * (ln2 - euler_gamma), 1e-13));
    CHECK_THROWS_AS(identity_int(cplx(-1.0)), BranchCutError);
    auto brute = [](double a) {
        return quad::adaptive(
            [a](double y) { return y / ((1.0 + std::exp(pi * y)) * (y * y + a)); }, 0.0, 40.0,
            1e-14);
    };
    CHECK_THAT(identity_int(cplx(4.0)).real(), WithinAbs(brute(4.0), 1e-11));
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> ua(0.05, 9.0);
    for (int t = 0; t < 20; ++t) {
        double a = ua(rng);
        CHECK_THAT(identity_int(cplx(a)).real(), WithinAbs(brute(a), 1e-10));
    }
    // large-a decay like O(1/a)
    CHECK(std::abs(identity_int(cplx(4000.0))) < 0.3 / 4000.0 * 10.0);
}

TEST_CASE("momentum point levels and the kappa map", "[momentum][paper]") {
    double Z = 1.0;
    double kh = euler_gamma - 3.0 * ln2; // maps to kappa = 0 at Z = 1
    auto tm = momentum_point_levels(Z, kh, 4);
    // roots avoid odd integers, interlaced between them
    for (auto& l : tm.levels) {
        double x = 1.0 / l.k;
        CHECK(std::fabs(x - std::round(x)) > 1e-6);
        CHECK(x > std::max(0.0, 2.0 * l.j - 1.0));
        CHECK(x < 2.0 * l.j + 1.0);
    }
    // same roots as the coordinate solver
    CHECK_THAT(tm.levels[0].k, WithinAbs(3.224653505147578816, 1e-11));
    // kappa-hat -> +infinity pushes x_j up against the odd tan poles
    auto thigh = momentum_point_levels(Z, 2000.0, 3);
    for (auto& l : thigh.levels) {
        double x = 1.0 / l.k;
        CHECK(2.0 * l.j + 1.0 - x < 2e-3);
        CHECK(x < 2.0 * l.j + 1.0);
    }
    // map basics
    CHECK_THAT(kappa_map(0.0, 1.0), WithinRel(-euler_gamma + 3.0 * ln2, 1e-14));
    CHECK_THAT(kappa_map(0.3, std::exp(1.0) * 2.0) - kappa_map(0.3, 2.0), WithinAbs(-1.0, 1e-13));
    // composed with the scaling law: both representations at (Z=2, kh=1)
    {
        auto tmom = momentum_point_levels(2.0, 1.0, 3);
        auto tcoo = spectral::point_levels(spectral::SpectralParams(2.0, kappa_map(1.0, 2.0)), 3);
        for (int j = 0; j < 3; ++j)
            CHECK_THAT(tmom.levels[j].epsilon,
                       WithinRel(tcoo.levels[j].epsilon, 1e-9));
    }
}

TEST_CASE("dual-solver agreement grid", "[momentum][property]") {
    double worst = 0.0;
    for (double Z : {0.5, 1.0, 2.0, 3.0, 5.0})
        for (double kap : {-2.0, -1.0, 0.0, 1.0, 3.0}) {
            auto tc = spectral::point_levels(spectral::SpectralParams(Z, kap), 3);
            double kh = kap + std::log(Z) + euler_gamma - 3.0 * ln2;
            auto tm = momentum_point_levels(Z, kh, 3);
            for (int j = 0; j < 3; ++j)
                worst = std::max(worst, std::fabs(tm.levels[j].epsilon - tc.levels[j].epsilon) /
                                            std::fabs(tc.levels[j].epsilon));
        }
    CHECK(worst < 1e-9);
}

TEST_CASE("coordinate correspondence of f_z", "[momentum][paper][slow]") {
    std::vector<double> rg;
    for (double r = 0.1; r <= 5.0; r += 0.35) rg.push_back(r);
    auto res = fz_coordinate_check(1.0, -4.0, rg);
    INFO("max residual " << res.max_residual);
    CHECK(res.max_residual < 1e-4);
    // scaling invariance (Z, z, rho) -> (sZ, s^2 z, rho/s)
    auto res2 = fz_coordinate_check(2.0, -16.0, {0.05, 0.5, 1.5, 2.5});
    CHECK(res2.max_residual < 1e-4);
    CHECK_THROWS_AS(fz_coordinate_check(1.0, -0.5, {1.0}), std::invalid_argument);
}

TEST_CASE("small-rho asymptote of the deficiency integral", "[momentum][paper][slow]") {
    double Z = 1.0;
    double d1, d2;
    {
        double rho = 1e-2;
        double got = fz_boundary_integral(Z, rho, 1e-6);
        double want = -std::log(Z * rho) - euler_gamma + 3.0 * ln2;
        d1 = std::fabs(got - want);
        CHECK(d1 < 5.0 * rho * std::fabs(std::log(rho)));
    }
    {
        double rho = 1e-3;
        double got = fz_boundary_integral(Z, rho, 1e-6);
        double want = -std::log(Z * rho) - euler_gamma + 3.0 * ln2;
        d2 = std::fabs(got - want);
        CHECK(d2 < 5.0 * rho * std::fabs(std::log(rho)));
    }
    // defect shrinks like O(rho ln rho)
    CHECK(d2 < 0.35 * d1);
}
