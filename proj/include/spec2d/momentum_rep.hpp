#pragma once

// Momentum-representation machinery: normalized generalized eigenfunctions,
// the eigenfunction integral transform and its inverse, the S functional with
// its closed-form summation/integral identities, the deficiency element f_z,
// the alternate point-interaction family parameterized by kappa-hat, and the
// dictionary back to the coordinate representation.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "spec2d/parallel.hpp"
#include "spec2d/policy.hpp"
#include "spec2d/quadrature.hpp"
#include "spec2d/roots.hpp"
#include "spec2d/spectral_core.hpp"

namespace spec2d::momentum {

using spec2d::cplx;
using spectral::PointLevelTable;

/// N(k) = (2 / (1 + e^{-pi Z / k}))^{1/2}.
inline double normalization_n(double Z, double k) {
    if (!(k > 0.0)) throw std::invalid_argument("normalization_n: k must be > 0");
    return std::sqrt(2.0 / (1.0 + std::exp(-pi * Z / k)));
}

/// Generalized eigenfunction psi_m(k, rho) of the continuum at energy k^2.
/// Real up to roundoff; returned as complex per the phase convention.
inline cplx gen_eigenfunction(double Z, int m, double k, double rho, const EvalPolicy& pol = {}) {
    if (!(k > 0.0) || !(rho > 0.0))
        throw std::invalid_argument("gen_eigenfunction: need k > 0, rho > 0");
    int ma = std::abs(m);
    double pref = normalization_n(Z, k);
    for (int s = 0; s < ma; ++s) {
        double sp = s + 0.5;
        pref *= std::sqrt(sp * sp + Z * Z / (4.0 * k * k));
    }
    pref *= std::exp(-std::lgamma(2.0 * ma + 1.0));
    cplx z(0.0, 2.0 * k * rho);
    cplx kap(0.0, -Z / (2.0 * k));
    cplx mw = specfun::whittaker_m(kap, double(ma), z, pol);
    static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    cplx im = ipow[((m % 4) + 4) % 4];
    return pref * im / std::sqrt(z) * mw;
}

// ---------------------------------------------------------------------------
// transform grids and plan
// ---------------------------------------------------------------------------

/// Quadrature layout for the transform pair: composite Gauss-Legendre panels
/// on [0, rho_max], and on [0, k_max] with log-graded panels near k = 0.
struct TransformGridSpec {
    double rho_max;
    double rho_panel;
    double k_max;
    double k_panel;
    int k_log_levels = 12;
    int order = 16;

    /// Unitarity grid: k panels fine enough that e^{i k rho} stays resolved
    /// across the whole rho range (k_panel * rho_max <= ~8).
    static TransformGridSpec unitarity(double Z) {
        return {60.0 / Z, 0.5 / Z, 40.0 * Z, 0.125 * Z, 12, 16};
    }
    /// Annihilation grid: long rho reach so the slow e^{-Z rho/(2n+1)}
    /// bound-state tails (n <= 5) are integrated out; k sampling is only a
    /// probe set here.
    static TransformGridSpec annihilation(double Z) {
        return {400.0 / Z, 0.5 / Z, 40.0 * Z, 1.0 * Z, 12, 16};
    }
    static TransformGridSpec unitarity_compact(double Z) {
        return {40.0 / Z, 0.5 / Z, 30.0 * Z, 0.2 * Z, 10, 16};
    }
    static TransformGridSpec annihilation_compact(double Z) {
        return {150.0 / Z, 0.5 / Z, 40.0 * Z, 1.0 * Z, 10, 16};
    }
    static TransformGridSpec defaults(double Z) { return unitarity(Z); }
};

inline Grid1D make_rho_grid(const TransformGridSpec& s) {
    int n = std::max(1, int(std::ceil(s.rho_max / s.rho_panel)));
    return quad::panels(0.0, s.rho_max, n, s.order);
}

inline Grid1D make_k_grid(const TransformGridSpec& s) {
    Grid1D g;
    double lo = s.k_max * std::pow(2.0, -s.k_log_levels);
    quad::add_panel(g, 0.0, lo, s.order);
    double b = lo;
    while (b < s.k_max - 1e-12 && b <= s.k_panel) {
        double top = std::min(2.0 * b, s.k_max);
        quad::add_panel(g, b, top, s.order);
        b = top;
    }
    while (b < s.k_max - 1e-12) {
        double top = std::min(b + s.k_panel, s.k_max);
        quad::add_panel(g, b, top, s.order);
        b = top;
    }
    return g;
}

/// Precomputed kernel matrix psi_m(k_i, rho_q) over a grid pair. Rows are
/// independent; the build fans out over k.
struct TransformPlan {
    double Z;
    int m;
    Grid1D rho;
    Grid1D k;
    std::vector<double> psi; // k-major: psi[i*rho.size() + q]

    static TransformPlan build(double Z, int m, const TransformGridSpec& spec,
                               int nthreads = 0, const EvalPolicy& pol = {}) {
        TransformPlan p;
        p.Z = Z;
        p.m = m;
        p.rho = make_rho_grid(spec);
        p.k = make_k_grid(spec);
        p.psi.resize(p.k.size() * p.rho.size());
        parallel_for(p.k.size(), [&](std::size_t i) {
            double kv = p.k.nodes[i];
            for (std::size_t q = 0; q < p.rho.size(); ++q)
                p.psi[i * p.rho.size() + q] =
                    gen_eigenfunction(Z, m, kv, p.rho.nodes[q], pol).real();
        }, nthreads);
        return p;
    }

    /// T_m[f](k_i) for f sampled on the rho grid.
    std::vector<double> forward(const std::vector<double>& f) const {
        std::vector<double> out(k.size());
        for (std::size_t i = 0; i < k.size(); ++i) {
            double s = 0.0;
            const double* row = &psi[i * rho.size()];
            for (std::size_t q = 0; q < rho.size(); ++q)
                s += rho.weights[q] * rho.nodes[q] * row[q] * f[q];
            out[i] = s;
        }
        return out;
    }

    /// T_m^{-1}[g](rho_q) for g sampled on the k grid.
    std::vector<double> inverse(const std::vector<double>& g) const {
        std::vector<double> out(rho.size(), 0.0);
        for (std::size_t i = 0; i < k.size(); ++i) {
            double wk = k.weights[i] * k.nodes[i] * g[i];
            const double* row = &psi[i * rho.size()];
            for (std::size_t q = 0; q < rho.size(); ++q) out[q] += wk * row[q];
        }
        return out;
    }

    std::vector<double> sample_rho(const std::function<double(double)>& f) const {
        std::vector<double> v(rho.size());
        for (std::size_t q = 0; q < rho.size(); ++q) v[q] = f(rho.nodes[q]);
        return v;
    }
    std::vector<double> sample_k(const std::function<double(double)>& g) const {
        std::vector<double> v(k.size());
        for (std::size_t i = 0; i < k.size(); ++i) v[i] = g(k.nodes[i]);
        return v;
    }
    double norm_sq_rho(const std::vector<double>& f) const {
        double s = 0.0;
        for (std::size_t q = 0; q < rho.size(); ++q)
            s += rho.weights[q] * rho.nodes[q] * f[q] * f[q];
        return s;
    }
    double norm_sq_k(const std::vector<double>& g) const {
        double s = 0.0;
        for (std::size_t i = 0; i < k.size(); ++i)
            s += k.weights[i] * k.nodes[i] * g[i] * g[i];
        return s;
    }
    double inner_rho(const std::vector<double>& f, const std::vector<double>& g) const {
        double s = 0.0;
        for (std::size_t q = 0; q < rho.size(); ++q)
            s += rho.weights[q] * rho.nodes[q] * f[q] * g[q];
        return s;
    }
};

inline std::vector<double> forward_transform(const TransformPlan& plan,
                                             const std::function<double(double)>& f) {
    return plan.forward(plan.sample_rho(f));
}

inline std::vector<double> inverse_transform(const TransformPlan& plan,
                                             const std::function<double(double)>& g) {
    return plan.inverse(plan.sample_k(g));
}

/// Defects of the unitarity claims, measured on a plan's grids.
struct TransformReport {
    double parseval_defect;          ///< on a wave packet orthogonal to the bound states
    double completeness_defect;      ///< l^2 part + integral part vs the full norm
    double bound_state_leakage;      ///< max |T_0[psi_{0,n}]| over the probe k grid
    double roundtrip_error;          ///< relative norm of T^{-1}T f - f
    double diagonalization_residual; ///< relative norm of T[H_0 f] - k^2 T[f]
};

/// Standard m = 0 transform checks.
///  - Parseval and roundtrip use f = T^{-1}[g] for a momentum-space Gaussian g:
///    such f carries no bound-state content up to quadrature error.
///  - Completeness uses a coordinate-space Gaussian bump: its l^2 coefficients
///    decay only like n^{-3/2}, so they are summed explicitly (n < 1000) and
///    added to the integral part.
///  - Diagonalization uses the bump as well: the transform annihilates the
///    point spectrum, so T[H_0 f] = k^2 T[f] regardless of bound content.
inline TransformReport transform_checks(const TransformPlan& unit_plan,
                                        const TransformPlan& leak_plan, int n_leak = 5,
                                        int n_coeff = 1000) {
    const double Z = unit_plan.Z;
    spectral::SpectralParams sp(Z, 0.0);

    // wave packet from a momentum-space bump
    const double k0 = 2.0 * Z, kw = 0.4 * Z;
    auto gk = [&](double k) { return std::exp(-0.5 * (k - k0) * (k - k0) / (kw * kw)); };
    std::vector<double> g0 = unit_plan.sample_k(gk);
    std::vector<double> f = unit_plan.inverse(g0);
    double nf = unit_plan.norm_sq_rho(f);
    std::vector<double> g1 = unit_plan.forward(f);
    double parseval = std::fabs(unit_plan.norm_sq_k(g1) / nf - 1.0);
    std::vector<double> f2 = unit_plan.inverse(g1);
    double rt = 0.0;
    for (std::size_t q = 0; q < f.size(); ++q) {
        double d = f2[q] - f[q];
        rt += unit_plan.rho.weights[q] * unit_plan.rho.nodes[q] * d * d;
    }
    rt = std::sqrt(rt / nf);

    // coordinate-space bump: completeness and diagonalization
    const double c = 3.0 / Z, sig = 0.6 / Z;
    auto bump = [&](double r) { return std::exp(-0.5 * (r - c) * (r - c) / (sig * sig)); };
    auto h_bump = [&](double r) {
        double b = bump(r);
        double u = r - c;
        double b1 = -(u / (sig * sig)) * b;
        double b2 = (u * u / (sig * sig * sig * sig) - 1.0 / (sig * sig)) * b;
        return -b2 - b1 / r - Z / r * b;
    };
    std::vector<double> fb = unit_plan.sample_rho(bump);
    double nb = unit_plan.norm_sq_rho(fb);
    std::vector<double> gb = unit_plan.forward(fb);
    double coeff_sq = 0.0;
    for (int n = 0; n < n_coeff; ++n) {
        double cn = unit_plan.inner_rho(
            fb, unit_plan.sample_rho([&](double r) { return spectral::radial_eigenfunction(sp, 0, n, r); }));
        coeff_sq += cn * cn;
    }
    double completeness = std::fabs((unit_plan.norm_sq_k(gb) + coeff_sq) / nb - 1.0);

    std::vector<double> ghf = unit_plan.forward(unit_plan.sample_rho(h_bump));
    double diag = 0.0;
    for (std::size_t i = 0; i < unit_plan.k.size(); ++i) {
        double d = ghf[i] - unit_plan.k.nodes[i] * unit_plan.k.nodes[i] * gb[i];
        diag += unit_plan.k.weights[i] * unit_plan.k.nodes[i] * d * d;
    }
    diag = std::sqrt(diag / nb);

    double leak = 0.0;
    for (int n = 0; n <= n_leak; ++n) {
        std::vector<double> gl = leak_plan.forward(leak_plan.sample_rho(
            [&](double r) { return spectral::radial_eigenfunction(sp, 0, n, r); }));
        for (double v : gl) leak = std::max(leak, std::fabs(v));
    }

    return {parseval, completeness, leak, rt, diag};
}

// ---------------------------------------------------------------------------
// S functional and the deficiency element
// ---------------------------------------------------------------------------

/// Element of l^2(Z+) + L^2(R+, k dk): stored coefficients and grid samples,
/// with optional analytic tails beyond the stored ranges.
struct MomentumVector {
    std::vector<cplx> coeffs;
    std::function<cplx(long)> coeff_tail;     // n >= coeffs.size()
    Grid1D kgrid;
    std::vector<cplx> samples;
    std::function<cplx(double)> sample_tail;  // k > kgrid range

    double norm_sq() const {
        double s = 0.0;
        for (const cplx& cn : coeffs) s += std::norm(cn);
        for (std::size_t i = 0; i < kgrid.size(); ++i)
            s += kgrid.weights[i] * kgrid.nodes[i] * std::norm(samples[i]);
        return s;
    }
};

/// S(xi, f) = sum 2Z (2n+1)^{-3/2} f_n + int N(k) (f(k) - xi N(k)/(k^2+Z^2)) k dk.
/// The coefficient tail is summed in doubling blocks; the k tail must decay
/// integrably (checked by a log-log slope probe).
inline cplx s_functional(double Z, cplx xi, const MomentumVector& f, double tol = 1e-12) {
    cplx sum = 0.0;
    for (std::size_t n = 0; n < f.coeffs.size(); ++n)
        sum += 2.0 * Z * std::pow(2.0 * n + 1.0, -1.5) * f.coeffs[n];
    if (f.coeff_tail) {
        long n0 = long(f.coeffs.size());
        long lo = n0, width = std::max<long>(n0, 64);
        for (int b = 0; b < 40; ++b) {
            cplx block = 0.0;
            for (long n = lo; n < lo + width; ++n)
                block += 2.0 * Z * std::pow(2.0 * n + 1.0, -1.5) * f.coeff_tail(n);
            sum += block;
            lo += width;
            width *= 2;
            if (std::abs(block) < 0.3 * tol * std::max(1.0, std::abs(sum))) break;
            if (lo > 80000000L)
                throw NonConvergenceError("s_functional: coefficient tail did not converge");
        }
    }
    auto integrand_grid = [&](double k, cplx fk) {
        double N = normalization_n(Z, k);
        return N * (fk - xi * N / (k * k + Z * Z)) * k;
    };
    cplx integral = 0.0;
    for (std::size_t i = 0; i < f.kgrid.size(); ++i)
        integral += f.kgrid.weights[i] * integrand_grid(f.kgrid.nodes[i], f.samples[i]);
    if (f.sample_tail) {
        double K = f.kgrid.nodes.empty() ? 1.0 : f.kgrid.hi;
        // integrability probe: integrand must fall off faster than 1/k
        double m1 = std::abs(integrand_grid(2.0 * K, f.sample_tail(2.0 * K)));
        double m2 = std::abs(integrand_grid(16.0 * K, f.sample_tail(16.0 * K)));
        if (m2 > 0.0) {
            double slope = std::log(m2 / std::max(m1, 1e-300)) / std::log(8.0);
            if (slope > -1.02)
                throw IntegrabilityError("s_functional: k-tail not integrable against k dk");
        }
        auto tail_f = [&](double k) { return integrand_grid(k, f.sample_tail(k)); };
        integral += quad::to_infinity(tail_f, K, 0.3 * tol, std::max(1.0, 0.5 * K));
    }
    return sum + integral;
}

/// Deficiency element f_z: coefficients 2Z/((2n+1)^{3/2} (lambda_{0,n} - z)),
/// function part N(k)/(k^2 - z); analytic tails attached.
inline MomentumVector fz_deficiency(double Z, cplx z, const Grid1D& kgrid, int n_max = 64) {
    MomentumVector v;
    v.kgrid = kgrid;
    auto coef = [Z, z](long n) {
        double q = 2.0 * n + 1.0;
        return 2.0 * Z / (std::pow(q, 1.5) * (-Z * Z / (q * q) - z));
    };
    v.coeffs.resize(n_max);
    for (int n = 0; n < n_max; ++n) v.coeffs[n] = coef(n);
    v.coeff_tail = coef;
    v.samples.resize(kgrid.size());
    for (std::size_t i = 0; i < kgrid.size(); ++i) {
        double k = kgrid.nodes[i];
        v.samples[i] = normalization_n(Z, k) / (k * k - z);
    }
    v.sample_tail = [Z, z](double k) { return normalization_n(Z, k) / (k * k - z); };
    return v;
}

// ---------------------------------------------------------------------------
// closed-form identities
// ---------------------------------------------------------------------------

/// sum_{n>=0} 1/((2n+1)(2n+1-a)) = (Psi(1/2) - Psi((1-a)/2)) / (2a); the a = 0
/// limit is pi^2/8.
inline double identity_sum(double a) {
    double r = std::round(a);
    if (r >= 1.0 && std::fabs(a - r) < 1e-9 && std::lround(r) % 2 == 1)
        throw PoleError("identity_sum: a at an odd positive integer", std::lround(r));
    if (std::fabs(a) < 1e-6) {
        const double zeta3 = 1.2020569031595942854;
        return pi * pi / 8.0 + a * 0.875 * zeta3;
    }
    double psi_half = -euler_gamma - 2.0 * ln2;
    return (psi_half - specfun::digamma(cplx(0.5 * (1.0 - a))).real()) / (2.0 * a);
}

/// int_0^inf y / ((1+e^{pi y})(y^2+a)) dy = -ln(4a)/4 + Psi(sqrt a) - Psi(sqrt a / 2)/2.
inline cplx identity_int(cplx a) {
    if (a.imag() == 0.0 && a.real() <= 0.0)
        throw BranchCutError("identity_int: a on the cut (-inf,0]");
    cplx sq = std::sqrt(a);
    return -0.25 * std::log(4.0 * a) + specfun::digamma(sq) - 0.5 * specfun::digamma(0.5 * sq);
}

// ---------------------------------------------------------------------------
// point levels in the momentum representation
// ---------------------------------------------------------------------------

/// Left-hand side of the momentum-side eigenvalue equation
/// pi tan(pi x/2) + ln x - Psi((1+x)/2) - gamma - 4 ln 2.
inline double momentum_level_equation(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("momentum_level_equation: x must be > 0");
    double r = std::round(x);
    if (std::fabs(x - r) < 1e-14 && std::lround(r) % 2 == 1)
        throw PoleError("momentum_level_equation: tan pole at odd x", std::lround(r));
    return pi * std::tan(0.5 * pi * x) + std::log(x) -
           specfun::digamma(cplx(0.5 * (1.0 + x))).real() - euler_gamma - 4.0 * ln2;
}

/// kappa = kappa_hat - ln Z - gamma + 3 ln 2.
inline double kappa_map(double kappa_hat, double Z) {
    return kappa_hat - std::log(Z) - euler_gamma + 3.0 * ln2;
}

/// Roots x_j of the momentum-side equation, one per interval between odd
/// integers; lambda_j = -Z^2/x_j^2. The table's kappa field records kappa_hat.
inline PointLevelTable momentum_point_levels(double Z, double kappa_hat, int j_max,
                                             double tol = 1e-13) {
    if (!std::isfinite(kappa_hat))
        throw std::invalid_argument("momentum_point_levels: kappa_hat must be finite");
    auto g = [kappa_hat](double x) { return momentum_level_equation(x) - kappa_hat; };
    PointLevelTable table{Z, kappa_hat, tol, {}};
    for (int j = 0; j < j_max; ++j) {
        double a, b;
        if (j == 0) {
            b = 1.0 - 1e-12;
            a = std::min(0.5, std::exp(kappa_hat - 4.0));
            int guard = 0;
            while (g(a) > 0.0 && ++guard < 400) a *= 0.5;
            if (g(a) > 0.0) throw BracketError("momentum_point_levels: lower bracket failed");
        } else {
            double lo = 2.0 * j - 1.0, hi = 2.0 * j + 1.0;
            double off = 1e-12;
            a = lo * (1.0 + off);
            b = hi * (1.0 - off);
            int guard = 0;
            while (g(a) > 0.0 && ++guard < 20) { off *= 1e-1; a = lo * (1.0 + off); }
            off = 1e-12;
            guard = 0;
            while (g(b) < 0.0 && ++guard < 20) { off *= 1e-1; b = hi * (1.0 - off); }
        }
        double x = brent(g, a, b, tol * 0.01);
        table.levels.push_back({j, -Z * Z / (x * x), 1.0 / x, g(x)});
    }
    return table;
}

// ---------------------------------------------------------------------------
// coordinate correspondence
// ---------------------------------------------------------------------------

/// int_0^inf psi_0(k, rho) N(k)/(k^2+Z^2) k dk; equals
/// -ln(Z rho) - gamma + 3 ln 2 + O(rho ln rho) as rho -> 0. The integrand
/// falls off like 1/k only up to k ~ 1/rho, so the upper limit is extended
/// adaptively in doubling blocks with oscillation-resolving panels.
inline double fz_boundary_integral(double Z, double rho, double tol = 1e-6,
                                   const EvalPolicy& pol = {}) {
    auto integrand = [&](double k) {
        return gen_eigenfunction(Z, 0, k, rho, pol).real() * normalization_n(Z, k) * k /
               (k * k + Z * Z);
    };
    Grid1D base;
    double lo = 0.0;
    for (int l = 14; l >= 0; --l) {
        double hi = 40.0 * Z * std::pow(2.0, -l);
        quad::add_panel(base, lo, hi, 16);
        lo = hi;
    }
    double total = quad::integrate(base, integrand);
    double K = lo;
    for (int b = 0; b < 24; ++b) {
        double K2 = 2.0 * K;
        int npan = std::max(4, int(std::ceil((K2 - K) * rho / 4.0)));
        Grid1D blk = quad::panels(K, K2, npan, 16);
        double bl = quad::integrate(blk, integrand);
        total += bl;
        K = K2;
        if (std::fabs(bl) < 0.25 * tol && b >= 2) return total;
    }
    throw NonConvergenceError("fz_boundary_integral: k-tail did not settle");
}

struct CorrespondenceResult {
    std::vector<double> rho;
    std::vector<double> expansion_side;
    std::vector<double> closed_side;
    double max_residual;
};

/// The deficiency-element dictionary between representations, checked
/// pointwise: the eigenfunction expansion of f_z (bound-state sum plus
/// momentum integral) against the closed Whittaker form, for z < -Z^2. Inputs
/// are rescaled to Z = 1 (simple scaling covariance).
inline CorrespondenceResult fz_coordinate_check(double Z, double z, std::vector<double> rho_grid,
                                                int n_sum = 2000, double tol = 1e-6,
                                                const EvalPolicy& pol = {}) {
    if (!(z < -Z * Z))
        throw std::invalid_argument("fz_coordinate_check: requires z < -Z^2");
    double zu = z / (Z * Z); // unit-coupling spectral point
    spectral::SpectralParams unit(1.0, 0.0);
    CorrespondenceResult res;
    res.rho = rho_grid;
    res.expansion_side.resize(rho_grid.size());
    res.closed_side.resize(rho_grid.size());
    res.max_residual = 0.0;

    double sq = std::sqrt(-zu);
    double rho_top = 0.0, rho_min = std::numeric_limits<double>::infinity();
    for (double r : rho_grid) {
        rho_top = std::max(rho_top, Z * r);
        rho_min = std::min(rho_min, Z * r);
    }

    auto weight = [&](double k) { return normalization_n(1.0, k) * k / (k * k - zu); };

    // shared base integral on [0, K_osc], phase-resolving panels
    std::vector<double> integral(rho_grid.size(), 0.0);
    auto add_block = [&](double ka, double kb, int npan) {
        Grid1D blk = quad::panels(ka, kb, npan, 16);
        for (std::size_t i = 0; i < blk.size(); ++i) {
            double k = blk.nodes[i];
            double w = blk.weights[i] * weight(k);
            for (std::size_t q = 0; q < rho_grid.size(); ++q)
                integral[q] += w * gen_eigenfunction(1.0, 0, k, Z * rho_grid[q], pol).real();
        }
    };
    double lo = 0.0;
    for (int l = 12; l >= 0; --l) {
        double hi = 40.0 * std::pow(2.0, -l);
        add_block(lo, hi, std::max(2, int(std::ceil((hi - lo) * std::max(rho_top, 1.0) / 4.0))));
        lo = hi;
    }
    double k_osc = std::max(40.0, 35.0 / rho_min);
    if (k_osc > lo) {
        add_block(lo, k_osc, std::max(4, int(std::ceil((k_osc - lo) * rho_top / 4.0))));
        lo = k_osc;
    }

    // per-rho tail: sum over oscillation cells of width pi/rho, accelerated by
    // iterated averaging of the partial sums (the cell sums alternate)
    const int ncells = 24;
    const Grid1D& g8 = quad::gauss_legendre(8);
    for (std::size_t q = 0; q < rho_grid.size(); ++q) {
        double r = Z * rho_grid[q];
        double cw = pi / r;
        std::vector<double> partial(ncells);
        double acc = 0.0, left = lo;
        for (int cidx = 0; cidx < ncells; ++cidx) {
            double mid = left + 0.5 * cw, half = 0.5 * cw;
            double s = 0.0;
            for (std::size_t i = 0; i < g8.size(); ++i) {
                double k = mid + half * g8.nodes[i];
                s += half * g8.weights[i] * weight(k) * gen_eigenfunction(1.0, 0, k, r, pol).real();
            }
            acc += s;
            partial[cidx] = acc;
            left += cw;
        }
        for (int lev = ncells - 1; lev > 0; --lev)
            for (int i = 0; i < lev; ++i) partial[i] = 0.5 * (partial[i] + partial[i + 1]);
        integral[q] += partial[0];
    }
    (void)tol;

    double gam_u = specfun::gamma(cplx(0.5 - 0.5 / sq)).real();
    for (std::size_t q = 0; q < rho_grid.size(); ++q) {
        double r = Z * rho_grid[q];
        double bound_sum = 0.0;
        for (int n = n_sum - 1; n >= 0; --n) {
            double qn = 2.0 * n + 1.0;
            double fzn = 2.0 / (std::pow(qn, 1.5) * (-1.0 / (qn * qn) - zu));
            bound_sum += fzn * spectral::radial_eigenfunction(unit, 0, n, r);
        }
        res.expansion_side[q] = bound_sum + integral[q];
        res.closed_side[q] =
            std::pow(-zu, -0.25) * gam_u / std::sqrt(2.0 * r) *
            specfun::whittaker_w(cplx(0.5 / sq), cplx(0.0), cplx(2.0 * sq * r), pol).real();
        res.max_residual =
            std::max(res.max_residual, std::fabs(res.expansion_side[q] - res.closed_side[q]));
    }
    return res;
}

} // namespace spec2d::momentum
