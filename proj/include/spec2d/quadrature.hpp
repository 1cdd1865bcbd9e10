#pragma once

// Gauss-Legendre rules, composite panel grids and adaptive quadrature.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "spec2d/policy.hpp"

namespace spec2d {

/// Quadrature nodes/weights for one axis; weights already include the panel
/// metric. lo/hi track the covered interval.
struct Grid1D {
    std::vector<double> nodes;
    std::vector<double> weights;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t size() const { return nodes.size(); }
};

namespace quad {

/// n-point Gauss-Legendre rule on [-1,1] via Newton iteration on P_n.
inline const Grid1D& gauss_legendre(int n) {
    static thread_local std::vector<Grid1D> cache(65);
    if (n < 2 || n > 64) throw std::invalid_argument("gauss_legendre: order out of range");
    Grid1D& g = cache[n];
    if (!g.nodes.empty()) return g;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pd = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pd = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pd;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        g.nodes[i] = -x;
        g.nodes[n - 1 - i] = x;
        g.weights[i] = g.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pd * pd);
    }
    return g;
}

/// Append an n-point rule for [a,b] to an existing grid.
inline void add_panel(Grid1D& g, double a, double b, int n = 16) {
    const Grid1D& base = gauss_legendre(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        g.nodes.push_back(mid + half * base.nodes[i]);
        g.weights.push_back(half * base.weights[i]);
    }
    if (g.nodes.size() == std::size_t(n)) g.lo = a;
    g.lo = std::min(g.lo, a);
    g.hi = std::max(g.hi, b);
}

/// Composite grid of equal panels on [a,b].
inline Grid1D panels(double a, double b, int npanels, int order = 16) {
    Grid1D g;
    double w = (b - a) / npanels;
    for (int p = 0; p < npanels; ++p) add_panel(g, a + p * w, a + (p + 1) * w, order);
    return g;
}

template <typename F>
auto integrate(const Grid1D& g, F&& f) {
    using R = decltype(f(0.0) * 1.0);
    R s{};
    for (std::size_t i = 0; i < g.size(); ++i) s += g.weights[i] * f(g.nodes[i]);
    return s;
}

namespace detail_q {

template <typename F, typename R>
void adapt_rec(F& f, double a, double b, double tol, R& acc, int depth, double scale) {
    const Grid1D& lo = gauss_legendre(8);
    const Grid1D& hi = gauss_legendre(16);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    R slo{}, shi{};
    for (std::size_t i = 0; i < lo.size(); ++i) slo += half * lo.weights[i] * f(mid + half * lo.nodes[i]);
    for (std::size_t i = 0; i < hi.size(); ++i) shi += half * hi.weights[i] * f(mid + half * hi.nodes[i]);
    double err = std::abs(shi - slo);
    if (err < tol * std::max(1.0, scale) || depth > 48) {
        if (depth > 48 && err > 100 * tol * std::max(1.0, scale))
            throw NonConvergenceError("adaptive quadrature: refinement stalled");
        acc += shi;
        return;
    }
    adapt_rec(f, a, mid, tol * 0.6, acc, depth + 1, scale);
    adapt_rec(f, mid, b, tol * 0.6, acc, depth + 1, scale);
}

} // namespace detail_q

/// Adaptive quadrature on [a,b]; tol is absolute relative to max(1,|result scale|).
template <typename F>
auto adaptive(F&& f, double a, double b, double tol = 1e-12) {
    using R = decltype(f(0.0) * 1.0);
    R acc{};
    detail_q::adapt_rec(f, a, b, tol, acc, 0, 0.0);
    // one refinement pass with the measured scale so tol acts semi-relatively
    R acc2{};
    detail_q::adapt_rec(f, a, b, tol, acc2, 0, std::abs(acc));
    return acc2;
}

/// Integral over [a, inf): doubling panels until the last block is negligible.
template <typename F>
auto to_infinity(F&& f, double a, double tol = 1e-12, double first = 1.0, int max_blocks = 60) {
    using R = decltype(f(0.0) * 1.0);
    R total{};
    double left = a, width = first;
    for (int b = 0; b < max_blocks; ++b) {
        R block = adaptive(f, left, left + width, tol);
        total += block;
        left += width;
        width *= 2.0;
        if (std::abs(block) < tol * std::max(1.0, std::abs(total)) && b > 2) return total;
    }
    throw NonConvergenceError("semi-infinite quadrature: tail did not decay");
}

} // namespace quad
} // namespace spec2d
