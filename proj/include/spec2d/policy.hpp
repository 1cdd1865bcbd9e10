#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace spec2d {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338328;
inline constexpr double euler_gamma = 0.57721566490153286060651209008;
inline constexpr double ln2 = 0.69314718055994530941723212146;

/// Tolerances and switching thresholds for the scalar special-function kernel.
struct EvalPolicy {
    double rel_tol = 1e-12;      ///< target relative accuracy (where conditioning permits)
    int max_terms = 2000;        ///< hard cap on convergent series length
    double switch_radius = 30.0; ///< |z| threshold between series and asymptotic regimes

    void validate() const {
        if (!(rel_tol > 0.0)) throw std::invalid_argument("EvalPolicy: rel_tol must be > 0");
        if (max_terms < 1) throw std::invalid_argument("EvalPolicy: max_terms must be >= 1");
        if (!(switch_radius > 0.0)) throw std::invalid_argument("EvalPolicy: switch_radius must be > 0");
    }
};

/// Evaluation at a pole of Gamma/psi (nonpositive-integer argument).
class PoleError : public std::domain_error {
public:
    PoleError(const std::string& what, long offending)
        : std::domain_error(what + " (pole at nonpositive integer " + std::to_string(offending) + ")"),
          offending_integer(offending) {}
    long offending_integer;
};

/// Argument on a branch cut (principal-branch functions reject (-inf,0]).
class BranchCutError : public std::domain_error {
    using std::domain_error::domain_error;
};

/// A series or iteration failed to reach the requested tolerance.
class NonConvergenceError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Spectral parameter hit an eigenvalue / point level where a kernel is singular.
class SpectralPointError : public std::domain_error {
    using std::domain_error::domain_error;
};

/// A root bracket did not change sign (signals a kernel fault upstream).
class BracketError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The integrand fails the L^1 tail-decay check.
class IntegrabilityError : public std::domain_error {
    using std::domain_error::domain_error;
};

/// Requested discretization exceeds the configured resource cap.
class ResourceError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_nonpositive_integer(cplx z, double tol = 1e-13) {
    double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) < tol && std::abs(z.imag()) < tol;
}

} // namespace spec2d
