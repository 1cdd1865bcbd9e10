#pragma once

// Coordinate-representation spectral objects of the 2D Coulomb-like Hamiltonian
// with a central point interaction: exact bound states, the point-level solver,
// the Krein function phi^kappa, and the resolvent kernels (radial and full).

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "spec2d/policy.hpp"
#include "spec2d/roots.hpp"
#include "spec2d/specfun.hpp"

namespace spec2d::spectral {

using spec2d::cplx;

/// Coupling Z > 0 plus extension parameter kappa in R u {infinity}.
/// kappa = infinity (the Friedrichs extension H_C) is a distinguished state,
/// never a large float.
struct SpectralParams {
    double Z;
    double kappa = 0.0;
    bool friedrichs = false;

    SpectralParams(double Z_, double kappa_) : Z(Z_), kappa(kappa_) { validate(); }
    static SpectralParams friedrichs_ext(double Z_) {
        SpectralParams p(Z_, 0.0);
        p.friedrichs = true;
        return p;
    }
    void validate() const {
        if (!(Z > 0.0)) throw std::invalid_argument("SpectralParams: Z must be > 0");
        if (!friedrichs && !std::isfinite(kappa))
            throw std::invalid_argument("SpectralParams: kappa must be finite (use friedrichs_ext)");
    }
    /// kappa_0 = kappa + ln Z, the shift appearing in the point-level equation.
    double kappa0() const { return kappa + std::log(Z); }
};

struct BoundState {
    int m;
    int n;
    double lambda;
    int principal; ///< N = |m| + n + 1
    int multiplicity() const { return 2 * principal - 1; }
};

/// lambda_{m,n} = -Z^2/(2|m|+2n+1)^2.
inline BoundState eigenvalue(const SpectralParams& p, int m, int n) {
    if (n < 0) throw std::invalid_argument("eigenvalue: n must be >= 0");
    double q = 2.0 * std::abs(m) + 2.0 * n + 1.0;
    return {m, n, -p.Z * p.Z / (q * q), std::abs(m) + n + 1};
}

inline double lambda_level(double Z, int N) { return -Z * Z / ((2.0 * N - 1.0) * (2.0 * N - 1.0)); }

/// Radial part of psi_{m,n}, normalized in L^2(rho drho).
inline double radial_eigenfunction(const SpectralParams& p, int m, int n, double rho) {
    if (n < 0 || rho <= 0.0) throw std::invalid_argument("radial_eigenfunction: need n >= 0, rho > 0");
    int ma = std::abs(m);
    double q = 2.0 * ma + 2.0 * n + 1.0;
    double x = 2.0 * p.Z * rho / q;
    double lognorm = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(n + 2.0 * ma + 1.0));
    double amp = std::exp(lognorm + ma * std::log(x) - 0.5 * x) * 2.0 * p.Z / std::pow(q, 1.5);
    return amp * specfun::laguerre(n, 2.0 * ma, x);
}

/// Full normalized eigenfunction psi_{m,n}(rho, phi), including e^{i m phi}.
inline cplx eigenfunction(const SpectralParams& p, int m, int n, double rho, double phi) {
    double r = radial_eigenfunction(p, m, n, rho) / std::sqrt(2.0 * pi);
    return r * std::exp(cplx(0.0, m * phi));
}

// ---------------------------------------------------------------------------
// point levels
// ---------------------------------------------------------------------------

/// Residual of the point-level equation 2 gamma + ln(2k) + Psi(1/2 - 1/(2k)) + kappa_0.
inline double point_level_equation(double k, double kappa0) {
    if (!(k > 0.0)) throw std::invalid_argument("point_level_equation: k must be > 0");
    cplx u(0.5 - 0.5 / k, 0.0);
    if (is_nonpositive_integer(u))
        throw PoleError("point_level_equation: Psi pole (k = 1/(2j+1))", std::lround(u.real()));
    return 2.0 * euler_gamma + std::log(2.0 * k) + specfun::digamma(u).real() + kappa0;
}

struct PointLevel {
    int j;
    double epsilon; ///< energy, < 0
    double k;       ///< sqrt(-epsilon)/Z
    double residual;
};

struct PointLevelTable {
    double Z;
    double kappa;
    double solver_tol;
    std::vector<PointLevel> levels;
};

/// Solve the point-level equation for j = 0..j_max-1. The j-th root is
/// bracketed in its interlacing interval: k_0 in (1, inf) for every finite
/// kappa, k_j in (1/(2j+1), 1/(2j-1)) for j >= 1 (one sign change per interval
/// by the pole structure of Psi).
inline PointLevelTable point_levels(const SpectralParams& p, int j_max, double tol = 1e-13) {
    if (p.friedrichs) throw std::invalid_argument("point_levels: kappa must be finite");
    if (j_max < 1) throw std::invalid_argument("point_levels: j_max must be >= 1");
    double kappa0 = p.kappa0();
    auto g = [kappa0](double k) { return point_level_equation(k, kappa0); };
    PointLevelTable table{p.Z, p.kappa, tol, {}};
    for (int j = 0; j < j_max; ++j) {
        double a, b;
        if (j == 0) {
            a = 1.0 + 1e-11;
            b = 2.0;
            int guard = 0;
            while (g(b) < 0.0) {
                b *= 4.0;
                if (++guard > 60) throw BracketError("point_levels: upper bracket expansion failed");
            }
        } else {
            double lo = 1.0 / (2.0 * j + 1.0), hi = 1.0 / (2.0 * j - 1.0);
            double off = 1e-12;
            a = lo * (1.0 + off);
            b = hi * (1.0 - off);
            int guard = 0;
            while (g(a) > 0.0 && ++guard < 20) { off *= 1e-1; a = lo * (1.0 + off); }
            off = 1e-12;
            guard = 0;
            while (g(b) < 0.0 && ++guard < 20) { off *= 1e-1; b = hi * (1.0 - off); }
        }
        double k = brent(g, a, b, tol * 0.01);
        table.levels.push_back({j, -p.Z * p.Z * k * k, k, g(k)});
    }
    return table;
}

/// Normalized point-level eigenfunction eta_j(kappa; rho) (m = 0 sector,
/// phi-independent).
inline double point_eigenfunction(const SpectralParams& p, const PointLevelTable& table, int j,
                                  double rho, const EvalPolicy& pol = {}) {
    if (j < 0 || j >= int(table.levels.size()))
        throw std::invalid_argument("point_eigenfunction: j outside computed table");
    if (!(rho > 0.0)) throw std::invalid_argument("point_eigenfunction: rho must be > 0");
    double k = table.levels[j].k;
    double u = 0.5 - 0.5 / k;
    double tri = specfun::trigamma(cplx(u)).real();
    double gam = specfun::gamma(cplx(u)).real();
    double norm = k / std::sqrt(k + 0.5 * tri);
    double w = specfun::whittaker_w(cplx(0.5 / k), cplx(0.0), cplx(2.0 * k * p.Z * rho), pol).real();
    return std::sqrt(p.Z / (2.0 * pi * rho)) * norm * gam * w;
}

inline double point_eigenfunction(const SpectralParams& p, int j, double rho,
                                  const EvalPolicy& pol = {}) {
    PointLevelTable table = point_levels(p, j + 1);
    return point_eigenfunction(p, table, j, rho, pol);
}

// ---------------------------------------------------------------------------
// Green functions
// ---------------------------------------------------------------------------

/// Value of a resolvent kernel, with truncation metadata for the angular series.
struct GreenEval {
    cplx z;
    cplx value;
    int m_truncation = -1;  ///< angular cutoff used; -1 for radial kernels
    double tail_bound = 0.0;
};

/// Radial kernel G_m(z; rho, rho') of the partial Hamiltonian (Friedrichs in
/// the m = 0 sector).
inline GreenEval green_radial(const SpectralParams& p, int m, cplx z, double rho, double rho2,
                              const EvalPolicy& pol = {}) {
    if (!(rho > 0.0) || !(rho2 > 0.0)) throw std::invalid_argument("green_radial: rho must be > 0");
    if (z.imag() == 0.0 && z.real() >= 0.0)
        throw SpectralPointError("green_radial: z on the essential spectrum [0,inf)");
    int ma = std::abs(m);
    cplx s = specfun::sqrt_minus(z);
    cplx w = p.Z / (2.0 * s);
    cplx garg = 0.5 + double(ma) - w;
    if (is_nonpositive_integer(garg, 1e-13))
        throw SpectralPointError("green_radial: z at an eigenvalue lambda_{m,n}");
    double rl = std::min(rho, rho2), rg = std::max(rho, rho2);
    cplx pref = std::exp(specfun::log_gamma(garg) - std::lgamma(2.0 * ma + 1.0)) /
                (2.0 * s * std::sqrt(rho * rho2));
    cplx val = pref * specfun::whittaker_m(w, double(ma), 2.0 * s * rl, pol) *
               specfun::whittaker_w(w, double(ma), 2.0 * s * rg, pol);
    return {z, val, -1, 0.0};
}

/// Krein function phi^kappa(z); zero for the Friedrichs extension.
inline cplx phi_kappa(const SpectralParams& p, cplx z) {
    if (p.friedrichs) return 0.0;
    cplx s = specfun::sqrt_minus(z);
    cplx w = p.Z / (2.0 * s);
    cplx u = 0.5 - w;
    if (is_nonpositive_integer(u, 1e-13))
        throw SpectralPointError("phi_kappa: Gamma(1/2 - Z/(2 sqrt(-z))) pole (z at lambda_{0,n})");
    cplx denom = 2.0 * euler_gamma + std::log(2.0 * s) + specfun::digamma(u) + p.kappa;
    if (denom == 0.0)
        throw SpectralPointError("phi_kappa: z exactly at a point level");
    return std::exp(2.0 * specfun::log_gamma(u)) / (2.0 * s * denom);
}

/// G_0^kappa(z; rho, rho') = G_0 + phi^kappa(z) (rho rho')^{-1/2} W(..rho) W(..rho').
inline GreenEval green_kappa_radial(const SpectralParams& p, cplx z, double rho, double rho2,
                                    const EvalPolicy& pol = {}) {
    GreenEval g0 = green_radial(p, 0, z, rho, rho2, pol);
    if (p.friedrichs) return g0;
    cplx s = specfun::sqrt_minus(z);
    cplx w = p.Z / (2.0 * s);
    cplx kr = phi_kappa(p, z) / std::sqrt(rho * rho2) *
              specfun::whittaker_w(w, 0.0, 2.0 * s * rho, pol) *
              specfun::whittaker_w(w, 0.0, 2.0 * s * rho2, pol);
    return {z, g0.value + kr, -1, 0.0};
}

struct PolarPoint {
    double rho;
    double phi;
};

/// Full-plane kernel G^kappa(z; p1, p2) via the angular series over G_m plus
/// the Krein term. Terms fall off geometrically like (rho_< / rho_>)^m; the
/// tail bound extrapolates the measured ratio.
inline GreenEval green_full(const SpectralParams& p, cplx z, PolarPoint p1, PolarPoint p2,
                            int m_max = 64, double tol = 1e-10, const EvalPolicy& pol = {}) {
    if (p1.rho == p2.rho)
        throw std::invalid_argument("green_full: kernel is log-singular across rho = rho'; "
                                    "use distinct radii");
    double dphi = p1.phi - p2.phi;
    cplx sum = green_radial(p, 0, z, p1.rho, p2.rho, pol).value / (2.0 * pi);
    if (!p.friedrichs) {
        cplx s = specfun::sqrt_minus(z);
        cplx w = p.Z / (2.0 * s);
        sum += phi_kappa(p, z) / (2.0 * pi * std::sqrt(p1.rho * p2.rho)) *
               specfun::whittaker_w(w, 0.0, 2.0 * s * p1.rho, pol) *
               specfun::whittaker_w(w, 0.0, 2.0 * s * p2.rho, pol);
    }
    double prev = 0.0, tail = std::numeric_limits<double>::infinity();
    int m_used = 0;
    for (int m = 1; m <= m_max; ++m) {
        cplx gm = green_radial(p, m, z, p1.rho, p2.rho, pol).value;
        sum += gm * std::cos(m * dphi) / pi;
        double am = std::abs(gm) / pi;
        m_used = m;
        if (m >= 3 && prev > 0.0) {
            double q = std::min(am / prev, 0.995);
            tail = am * q / (1.0 - q);
            if (tail < tol * std::max(std::abs(sum), 1e-280) && m >= 5) break;
        }
        prev = am;
    }
    if (!(tail < tol * std::max(std::abs(sum), 1e-280)))
        throw NonConvergenceError("green_full: angular truncation not converged at m_max");
    return {z, sum, m_used, tail};
}

// ---------------------------------------------------------------------------
// boundary values at the origin
// ---------------------------------------------------------------------------

/// f0 = lim (-ln rho)^{-1} f(rho), f1 = lim (f(rho) + f0 ln rho), extracted by
/// Richardson extrapolation on rho_j = rho0 4^{-j}.
struct BoundaryValues {
    cplx f0;
    cplx f1;
    double achieved_tol;
};

namespace detail_bv {

// Solve the 4x4 system fitting f = -f0 ln r + f1 + c1 r ln r + c2 r through
// four sample points (Gaussian elimination with partial pivoting).
inline void fit4(const double* r, const cplx* fv, cplx& f0, cplx& f1) {
    cplx A[4][5];
    for (int i = 0; i < 4; ++i) {
        double lr = std::log(r[i]);
        A[i][0] = -lr;
        A[i][1] = 1.0;
        A[i][2] = r[i] * lr;
        A[i][3] = r[i];
        A[i][4] = fv[i];
    }
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int i = c + 1; i < 4; ++i)
            if (std::abs(A[i][c]) > std::abs(A[piv][c])) piv = i;
        for (int k = 0; k < 5; ++k) std::swap(A[c][k], A[piv][k]);
        for (int i = c + 1; i < 4; ++i) {
            cplx fct = A[i][c] / A[c][c];
            for (int k = c; k < 5; ++k) A[i][k] -= fct * A[c][k];
        }
    }
    cplx x[4];
    for (int i = 3; i >= 0; --i) {
        cplx s = A[i][4];
        for (int k = i + 1; k < 4; ++k) s -= A[i][k] * x[k];
        x[i] = s / A[i][i];
    }
    f0 = x[0];
    f1 = x[1];
}

} // namespace detail_bv

/// The limits are extracted on rho_j = rho0 4^{-j} by sliding log-aware fits
/// (the near-origin model is log-linear with r ln r corrections); the two
/// deepest windows must agree to the requested tolerance.
inline BoundaryValues boundary_values(const std::function<cplx(double)>& f, double tol,
                                      double rho0 = 1e-3, int npoints = 8) {
    if (npoints < 5) throw std::invalid_argument("boundary_values: need at least 5 points");
    std::vector<double> r(npoints);
    std::vector<cplx> fv(npoints);
    for (int j = 0; j < npoints; ++j) {
        r[j] = rho0 * std::pow(4.0, -j);
        fv[j] = f(r[j]);
    }
    cplx f0, f1, f0p, f1p;
    detail_bv::fit4(&r[npoints - 4], &fv[npoints - 4], f0, f1);
    detail_bv::fit4(&r[npoints - 5], &fv[npoints - 5], f0p, f1p);
    double achieved = std::max(std::abs(f0 - f0p), std::abs(f1 - f1p));
    double scale = std::max({1.0, std::abs(f0), std::abs(f1)});
    if (achieved > tol * scale)
        throw NonConvergenceError("boundary_values: extrapolants did not stabilize");
    return {f0, f1, achieved};
}

} // namespace spec2d::spectral
