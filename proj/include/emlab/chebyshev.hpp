#pragma once

#include <cstdint>
#include <vector>

#include "emlab/errors.hpp"

namespace emlab {

// Chebyshev polynomials of the first (T) and second (U) kind.  |x| <= 1 uses
// the three-term recurrence; outside, the closed forms in alpha = x +
// sqrt(x^2-1), with U as a sum of positive powers so nothing cancels as
// x -> 1+.  U accepts m = -1 (value 0).
double cheb_T(int64_t m, double x);
double cheb_U(int64_t m, double x);

// alpha = (lambda + sqrt(lambda^2 - 4)) / 2, the root > 1 of
// alpha + 1/alpha = lambda.  Needs lambda > 2.
double alpha_of_lambda(double lambda);

// Strict monotonicity of z -> (T_m(z) - 1) / U_{m-1}(z) across the given
// sample points (all must be >= 1; evaluated in the order given).
bool ratio_fact_increasing(int64_t m, const std::vector<double>& z_samples);

// U_{m-1}(z) >= ((2 T_m(z) + 2) / U_{m-1}(z))^{m-1}, with 1e-12 slack.
// Needs m >= 4, z >= 1.
bool cheb_fact_b(int64_t m, double z);

// Largest y with 2 T_m(y) + 2 = sizeS * U_{m-1}(y).  Needs sizeS >= 2 and
// m >= 4 so the left end is negative (value 4 - m*sizeS at y = 1); the root
// is then unique in (1, inf) and found by bracket doubling plus bisection.
double y0(int64_t sizeS, int64_t m);

// 2 T_m(x) <= U_{m-1}(x) * (sizeS - kappa) + 2, with 1e-9 slack.
bool irrep_gap_bound(double x, int64_t m, int64_t sizeS, double kappa);

enum class CheckOutcome { Holds, Fails, NotApplicable };

// The contrapositive the subdivided construction relies on: when
// sizeS^(m-1) >= 4/kappa, no sample x > y0 may satisfy irrep_gap_bound.
// Samples at or below y0 are ignored.  Returns NotApplicable when the
// power-vs-4/kappa premise does not hold.
CheckOutcome cheby_gap_implication(int64_t m, int64_t sizeS, double kappa,
                                   const std::vector<double>& x_samples);

// Scale constants of the eigenvalue transfer argument.
struct TransferParams {
    int64_t ell;
    double alpha0; // (3 + sqrt(17)) / 2, the root of a = 2/a + 3
    double c1;     // 0.001
};
TransferParams make_transfer_params(int64_t ell);
double transfer_alpha0();
inline constexpr double kTransferC1 = 0.001;

// The eigenvalue transfer function of the two-level construction with path
// length ell, f(lambda) = (lambda - 3 U_{l-2}(lambda/2) / U_{l-1}(lambda/2)
// - 3) * U_{l-1}(lambda/2), evaluated as A(alpha) * B(alpha) with
// B = (alpha^l - alpha^-l) / (alpha - 1/alpha) and
// A = alpha - 2/alpha - 3 + 3 alpha^-l / B.  Needs lambda > 2, ell >= 2.
double f_eval(double lambda, int64_t ell);

// Analytic derivative of f via d(alpha)/d(lambda) = 1 / (1 - alpha^-2).
double f_prime(double lambda, int64_t ell);

// The unique root of f above 3.  Needs ell > 10.
double lambda_star(int64_t ell);

// The unique lambda in [lambda_star, inf) with f(lambda) = mu.  Needs
// mu >= 0 and ell > 10.
double f_inverse(double mu, int64_t ell);

// f(lambda) >= (alpha - alpha0) * alpha0^(ell-1), with small slack.  Needs
// lambda >= lambda_star and alpha(lambda) >= alpha0.
bool f_lower_bound_check(double lambda, int64_t ell);

} // namespace emlab
