#include <catch2/catch_amalgamated.hpp>

#include "spec2d/slab_limit.hpp"

using namespace spec2d;
using namespace spec2d::slab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("transversal modes", "[slab][paper]") {
    CHECK_THAT(transverse_energy(pi, 1), WithinRel(1.0, 1e-15));
    double a = 0.7;
    auto f = [&](double z) {
        double c = transverse_mode(a, 1, z);
        return c * c;
    };
    CHECK_THAT(quad::adaptive(f, -a / 2 + 1e-14, a / 2 - 1e-14, 1e-12), WithinAbs(1.0, 1e-10));
    CHECK_THAT(transverse_mode(a, 2, 0.2) + transverse_mode(a, 2, -0.2), WithinAbs(0.0, 1e-15));
    CHECK_THROWS_AS(transverse_mode(a, 1, 0.35), std::domain_error);
    CHECK_THROWS_AS(transverse_mode(a, 1, -0.4), std::domain_error);
}

TEST_CASE("effective potential", "[slab][paper]") {
    // bounds 0 < V_eff^a < 1/rho on random samples
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> ua(0.05, 0.45), ur(0.01, 8.0);
    for (int t = 0; t < 20; ++t) {
        double a = ua(rng), rho = ur(rng);
        double v = v_eff(a, rho);
        CHECK(v > 0.0);
        CHECK(v < 1.0 / rho);
    }
    // independent direct quadrature of the defining integral
    {
        double a = 0.37, rho = 0.82;
        auto f = [&](double z) {
            double c = std::cos(pi * z / a);
            return c * c / std::sqrt(rho * rho + z * z);
        };
        double direct = 2.0 / a * quad::adaptive(f, -a / 2, a / 2, 1e-13);
        CHECK_THAT(v_eff(a, rho), WithinRel(direct, 1e-11));
    }
    // scaling identity and the small-rho log law: V + (4/a) ln(rho) bounded
    {
        double a = 0.2;
        CHECK_THAT(v_eff(a, 0.9), WithinRel(v_eff_unit(0.9 / a) / a, 1e-14));
        double b1 = v_eff(a, 1e-6 * a) + 4.0 / a * std::log(1e-6);
        double b2 = v_eff(a, 1e-9 * a) + 4.0 / a * std::log(1e-9);
        CHECK_THAT(b1, WithinAbs(b2, 1e-3 / a));
    }
}

TEST_CASE("W profile", "[slab][paper]") {
    CHECK_THAT(w_profile(0.9), WithinRel(1.0 - 0.9 * v_eff_unit(0.9), 1e-10));
    for (double r : {0.05, 0.3, 1.0, 4.0}) {
        double w = w_profile(r);
        CHECK(w > 0.0);
        CHECK(w < 1.0);
    }
    // large-rho tail bound rho^2 W <= int z^2 cos^2(pi z) dz = 1/24 - 1/(4 pi^2)
    double zmom = quad::adaptive(
        [](double z) { return z * z * std::cos(pi * z) * std::cos(pi * z); }, -0.5, 0.5, 1e-14);
    CHECK_THAT(zmom, WithinRel(1.0 / 24.0 - 1.0 / (4.0 * pi * pi), 1e-12));
    for (double r : {3.0, 5.0, 10.0}) CHECK(r * r * w_profile(r) <= zmom * (1.0 + 1e-9));
    // int_0^inf W = 1/4 - 1/pi^2
    double T = 300.0;
    double iw = quad::adaptive([](double r) { return w_profile(r); }, 0.0, T, 1e-11) + zmom / T;
    CHECK_THAT(iw, WithinAbs(w_integral(), 1e-8));
}

TEST_CASE("explicit constants", "[slab][paper]") {
    SlabConstants c = constants();
    CHECK(c.c1 > 1.0);
    // dual evaluation paths: direct tgamma vs exp(log_gamma)
    double g4 = std::pow(std::tgamma(0.25), 4);
    double c1_direct = (g4 + std::sqrt(g4 * g4 + 64.0 * std::pow(pi, 4))) / (8.0 * pi * pi);
    CHECK_THAT(c.c1, WithinRel(c1_direct, 1e-12));
    // C_III = C_I^2 Gamma(1/4)^4 / (6 sqrt(2) pi^3)
    CHECK_THAT(c.c3, WithinRel(c.c1 * c.c1 * g4 / (6.0 * std::sqrt(2.0) * std::pow(pi, 3)), 1e-12));
    // frozen independent high-precision values
    CHECK_THAT(c.c1, WithinRel(4.594529378616988452, 1e-13));
    CHECK_THAT(c.c2, WithinRel(3.188705055847144322, 1e-13));
    CHECK_THAT(c.c3, WithinRel(13.86406224675396377, 1e-12));
}

TEST_CASE("mode coupling matrix", "[slab]") {
    double a = 0.3, rho = 1.1;
    CHECK_THAT(coulomb_mode_matrix(a, 1, 1, rho), WithinRel(v_eff(a, rho), 1e-12));
    CHECK(coulomb_mode_matrix(a, 1, 2, rho) == 0.0); // parity
    CHECK_THAT(coulomb_mode_matrix(a, 1, 3, rho),
               WithinRel(coulomb_mode_matrix(a, 3, 1, rho), 1e-13));
}

TEST_CASE("discretized Coulomb ground state", "[slab]") {
    // lowest eigenvalue approaches lambda_1 = -1; observed error O(h)
    double err_prev = 1e9;
    for (double h : {0.04, 0.02, 0.01}) {
        RadialGrid g(h, 30.0);
        double e0 = min_eigenvalue(discretize(OperatorKind::coulomb2d, g), -2.5);
        double err = std::fabs(e0 + 1.0);
        CHECK(err < 0.62 * err_prev); // roughly first-order decrease
        err_prev = err;
    }
    CHECK(err_prev < 0.02);
    // resource cap
    CHECK_THROWS_AS(discretize(OperatorKind::coulomb2d, RadialGrid(1e-4, 40.0)), ResourceError);
}

TEST_CASE("matrix form inequality and slab reduction", "[slab][paper]") {
    RadialGrid g(0.02, 20.0);
    SlabParams sp(0.1, 1);
    DiscreteOperator hc = discretize(OperatorKind::coulomb2d, g);
    DiscreteOperator he = discretize(OperatorKind::effective, g, sp);
    double e1 = transverse_energy(0.1, 1);
    double minv = 1e300;
    for (int i = 0; i < hc.dim(); ++i)
        minv = std::min(minv, he.mat.coeff(i, i) - hc.mat.coeff(i, i) - e1);
    CHECK(minv >= -1e-10); // H_C + E_1 <= H_eff
    // slab with a single transverse mode is exactly the effective operator
    DiscreteOperator hs1 = discretize(OperatorKind::slab, g, sp);
    double md = 0.0;
    for (int kk = 0; kk < hs1.mat.outerSize(); ++kk)
        for (Eigen::SparseMatrix<double>::InnerIterator it(hs1.mat, kk); it; ++it)
            md = std::max(md, std::fabs(it.value() - he.mat.coeff(it.row(), it.col())));
    CHECK(md == 0.0);
}

TEST_CASE("resolvent difference", "[slab]") {
    RadialGrid g(0.02, 20.0);
    DiscreteOperator hc = discretize(OperatorKind::coulomb2d, g);
    CHECK_THAT(resolvent_diff(hc, hc, -0.5), WithinAbs(0.0, 1e-12));
    // adjoint symmetry: swapping roles and embedding direction gives the same norm
    SlabParams sp(0.2, 1);
    DiscreteOperator he = discretize(OperatorKind::effective, g, sp)
                              .shifted(-transverse_energy(0.2, 1));
    double d1 = resolvent_diff(he, hc, -0.5);
    double d2 = resolvent_diff(hc, he, -0.5);
    CHECK_THAT(d1, WithinRel(d2, 1e-6));
    // xi inside the spectrum is rejected via the gap estimate
    double gap = spectral_gap(hc, -0.5);
    CHECK_THAT(gap, WithinAbs(coulomb_distance(-0.5), 0.01));
}

TEST_CASE("slab converges to the Coulomb resolvent", "[slab][paper][slow]") {
    RadialGrid g(0.02, 20.0);
    auto recs = convergence_study(-0.5, {0.4, 0.2, 0.1, 0.05}, g, 3);
    for (std::size_t i = 1; i < recs.size(); ++i)
        CHECK(recs[i].diff_slab < recs[i - 1].diff_slab);
    for (auto& r : recs) CHECK(r.within_bounds);
    // the ratio diff/(a |ln a|) stays within a decade band around the median
    std::vector<double> ratios;
    for (auto& r : recs) ratios.push_back(r.diff_slab / (r.a * std::fabs(std::log(r.a))));
    std::sort(ratios.begin(), ratios.end());
    double med = ratios[ratios.size() / 2];
    CHECK(ratios.front() >= 0.1 * med);
    CHECK(ratios.back() <= 10.0 * med);
    // admissibility at these desk-scale widths is correctly reported as false
    for (auto& r : recs) {
        CHECK_FALSE(r.admissible_theorem);
        CHECK_FALSE(r.admissible_prop);
    }
    // mode-truncation effect: slab(N_t) vs effective shrinks with a, O(a)-like
    double prev = 1e9;
    for (double a : {0.4, 0.2, 0.1}) {
        SlabParams sp(a, 4);
        double e1 = transverse_energy(a, 1);
        DiscreteOperator heff = discretize(OperatorKind::effective, g, sp).shifted(-e1);
        DiscreteOperator ha = discretize(OperatorKind::slab, g, sp).shifted(-e1);
        double d = resolvent_diff(ha, heff, -0.5);
        CHECK(d < prev);
        prev = d;
    }
}

TEST_CASE("Hilbert-Schmidt sandwich between the analytic bounds", "[slab][paper][slow]") {
    double iw = w_integral();
    double i02 = quad::adaptive([](double r) { return w_profile(r); }, 0.0, 2.0, 1e-10);
    for (double a : {0.2, 0.1, 0.05, 0.02}) {
        double h = a / 10.0;
        RadialGrid g(h, std::min(12.0, 20000 * h));
        double v = hs_sandwich_norm(a, g);
        double lo = 0.5 * i02 * a * std::log(1.0 / (2.0 * a));
        double hi = std::sqrt(12.0 * a * a * std::log(a) * std::log(a) * iw * iw +
                              32.0 * a * a * iw);
        INFO("a=" << a << " lo=" << lo << " v=" << v << " hi=" << hi);
        CHECK(v > lo);
        CHECK(v < hi);
    }
    CHECK_THROWS_AS(hs_sandwich_norm(0.7, RadialGrid(0.01, 10.0)), std::invalid_argument);
}

TEST_CASE("discrete Kato inequality", "[slab][paper]") {
    RadialGrid g(0.04, 30.0);
    CHECK(kato_slack(g) >= -1e-8);
}

TEST_CASE("admissibility thresholds", "[slab]") {
    double d = coulomb_distance(-0.5);
    CHECK_THAT(d, WithinRel(0.5 - 1.0 / 9.0 - 0.0, 1e-12) || WithinRel(7.0 / 18.0, 1e-12));
    double a0 = admissible_width_theorem(d);
    CHECK(a0 > 0.0);
    CHECK(a0 < 1e-3); // the paper's constants are far from tight at desk scale
    SlabConstants c = constants();
    double coef = 2.0 * c.c1 * c.c1 * c.c2 / d;
    // a0 either solves the a|ln a| equation or is the d/(8 C_III) cap
    bool solves = std::fabs(coef * a0 * std::fabs(std::log(a0)) - 0.5) < 1e-8;
    bool capped = std::fabs(a0 - d / (8.0 * c.c3)) < 1e-12;
    CHECK((solves || capped));
}
