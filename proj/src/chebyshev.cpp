#include "emlab/chebyshev.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace emlab {

static double alpha_from_x(double x) { return x + std::sqrt(x * x - 1.0); }

// sum_{i=0..m} alpha^(m-2i): equals U_m((alpha + 1/alpha)/2) and stays a sum
// of positive terms all the way down to alpha = 1
static double u_power_sum(int64_t m, double alpha) {
    double s = 0.0;
    for (int64_t i = 0; i <= m; ++i) s += std::pow(alpha, static_cast<double>(m - 2 * i));
    return s;
}

double cheb_T(int64_t m, double x) {
    if (m < 0) throw DomainError("T_m needs m >= 0");
    if (x > 1.0) {
        double a = alpha_from_x(x);
        return 0.5 * (std::pow(a, static_cast<double>(m)) + std::pow(a, static_cast<double>(-m)));
    }
    if (x < -1.0) {
        double t = cheb_T(m, -x);
        return (m % 2 == 0) ? t : -t;
    }
    double prev = 1.0, cur = x;
    if (m == 0) return prev;
    for (int64_t k = 2; k <= m; ++k) {
        double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double cheb_U(int64_t m, double x) {
    if (m < -1) throw DomainError("U_m needs m >= -1");
    if (m == -1) return 0.0;
    if (x > 1.0) return u_power_sum(m, alpha_from_x(x));
    if (x < -1.0) {
        double u = cheb_U(m, -x);
        return (m % 2 == 0) ? u : -u;
    }
    double prev = 1.0, cur = 2.0 * x;
    if (m == 0) return prev;
    for (int64_t k = 2; k <= m; ++k) {
        double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double alpha_of_lambda(double lambda) {
    if (!(lambda > 2.0)) throw DomainError("alpha_of_lambda needs lambda > 2");
    return 0.5 * (lambda + std::sqrt(lambda * lambda - 4.0));
}

bool ratio_fact_increasing(int64_t m, const std::vector<double>& z_samples) {
    if (m < 1) throw DomainError("ratio check needs m >= 1");
    for (double z : z_samples)
        if (z < 1.0) throw DomainError("ratio check needs samples >= 1");
    bool first = true;
    double last = 0.0;
    for (double z : z_samples) {
        double r = (cheb_T(m, z) - 1.0) / cheb_U(m - 1, z);
        if (!first && !(r > last)) return false;
        last = r;
        first = false;
    }
    return true;
}

bool cheb_fact_b(int64_t m, double z) {
    if (m < 4) throw DomainError("cheb_fact_b needs m >= 4");
    if (z < 1.0) throw DomainError("cheb_fact_b needs z >= 1");
    double u = cheb_U(m - 1, z);
    double lhs = u;
    double rhs = std::pow((2.0 * cheb_T(m, z) + 2.0) / u, static_cast<double>(m - 1));
    return lhs >= rhs - 1e-12 * (1.0 + std::abs(rhs));
}

// Bisection on [lo, hi] with fn(lo) <= 0 < fn(hi), run to the floating-point
// fixpoint (well past the 1e-12 contract).
template <typename F>
static double bisect_to_fixpoint(F&& fn, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (fn(mid) <= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double y0(int64_t sizeS, int64_t m) {
    if (sizeS < 2) throw DomainError("y0 needs sizeS >= 2");
    if (m < 4) throw DomainError("y0 needs m >= 4");
    auto g = [&](double y) {
        return 2.0 * cheb_T(m, y) + 2.0 - static_cast<double>(sizeS) * cheb_U(m - 1, y);
    };
    double lo = 1.0, hi = 2.0;
    int guard = 0;
    while (!(g(hi) > 0.0)) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 60) throw BracketFailureError("no sign change while expanding y0 bracket");
    }
    double root = bisect_to_fixpoint(g, lo, hi);
    // the terms of g grow like alpha^m, so the achievable residual scales with them
    double scale = 2.0 * std::abs(cheb_T(m, root)) + 2.0 +
                   static_cast<double>(sizeS) * std::abs(cheb_U(m - 1, root));
    double limit = 1e-9 * std::max(1.0, scale);
    if (std::abs(g(root)) > limit) {
        std::ostringstream os;
        os << "y0 residual " << std::abs(g(root)) << " exceeds " << limit;
        throw SolveFailureError(os.str());
    }
    return root;
}

bool irrep_gap_bound(double x, int64_t m, int64_t sizeS, double kappa) {
    if (m < 4) throw DomainError("irrep_gap_bound needs m >= 4");
    double lhs = 2.0 * cheb_T(m, x);
    double rhs = cheb_U(m - 1, x) * (static_cast<double>(sizeS) - kappa) + 2.0;
    return lhs <= rhs + 1e-9 * (1.0 + std::abs(lhs) + std::abs(rhs));
}

CheckOutcome cheby_gap_implication(int64_t m, int64_t sizeS, double kappa,
                                   const std::vector<double>& x_samples) {
    if (m < 4) throw DomainError("gap implication needs m >= 4");
    if (sizeS < 2) throw DomainError("gap implication needs sizeS >= 2");
    if (!(kappa > 0.0)) throw DomainError("gap implication needs kappa > 0");
    if (std::pow(static_cast<double>(sizeS), static_cast<double>(m - 1)) < 4.0 / kappa)
        return CheckOutcome::NotApplicable;
    double root = y0(sizeS, m);
    for (double x : x_samples) {
        if (x <= root) continue;
        if (irrep_gap_bound(x, m, sizeS, kappa)) return CheckOutcome::Fails;
    }
    return CheckOutcome::Holds;
}

double transfer_alpha0() { return 0.5 * (3.0 + std::sqrt(17.0)); }

static void check_ell(int64_t ell, int64_t min_ell) {
    if (ell > 180) throw TooLargeError("ell = " + std::to_string(ell) +
                                       " exceeds the overflow cap 180");
    if (ell < min_ell)
        throw DomainError("ell = " + std::to_string(ell) + " must be >= " +
                          std::to_string(min_ell));
}

TransferParams make_transfer_params(int64_t ell) {
    check_ell(ell, 2);
    return TransferParams{ell, transfer_alpha0(), kTransferC1};
}

// A and B of the alpha-form, with B evaluated as the positive power sum.
static void transfer_ab(double lambda, int64_t ell, double& alpha, double& a, double& b) {
    alpha = alpha_of_lambda(lambda);
    if (static_cast<double>(ell) * std::log(alpha) > 700.0)
        throw TooLargeError("alpha^ell overflows at lambda = " + std::to_string(lambda));
    b = u_power_sum(ell - 1, alpha);
    a = alpha - 2.0 / alpha - 3.0 + 3.0 * std::pow(alpha, static_cast<double>(-ell)) / b;
}

double f_eval(double lambda, int64_t ell) {
    check_ell(ell, 2);
    double alpha, a, b;
    transfer_ab(lambda, ell, alpha, a, b);
    return a * b;
}

double f_prime(double lambda, int64_t ell) {
    check_ell(ell, 2);
    double alpha, a, b;
    transfer_ab(lambda, ell, alpha, a, b);
    // B' = sum over i < (ell-1)/2 of (ell-1-2i) (alpha^(ell-2-2i) - alpha^(2i-ell)),
    // each term positive: the paired-up derivative of the power sum
    double bp = 0.0;
    for (int64_t i = 0; 2 * i < ell - 1; ++i)
        bp += static_cast<double>(ell - 1 - 2 * i) *
              (std::pow(alpha, static_cast<double>(ell - 2 - 2 * i)) -
               std::pow(alpha, static_cast<double>(2 * i - ell)));
    double am = std::pow(alpha, static_cast<double>(-ell));
    double ap = 1.0 + 2.0 / (alpha * alpha) +
                3.0 * (-static_cast<double>(ell) * am / alpha * b - am * bp) / (b * b);
    double dadl = 1.0 / (1.0 - 1.0 / (alpha * alpha));
    return dadl * (ap * b + a * bp);
}

double lambda_star(int64_t ell) {
    check_ell(ell, 11);
    auto f = [&](double x) { return f_eval(x, ell); };
    if (!(f(3.0) < 0.0)) throw BracketFailureError("f(3) is not negative");
    double a0 = transfer_alpha0();
    double hi = a0 + 1.0 / a0;
    int guard = 0;
    while (!(f(hi) > 0.0)) {
        hi += 1.0;
        if (++guard > 100) throw BracketFailureError("no sign change above 3 for lambda_star");
    }
    return bisect_to_fixpoint(f, 3.0, hi);
}

double f_inverse(double mu, int64_t ell) {
    check_ell(ell, 11);
    if (mu < 0.0) throw DomainError("f_inverse needs mu >= 0");
    double ls = lambda_star(ell);
    if (mu == 0.0) return ls;
    auto g = [&](double x) { return f_eval(x, ell) - mu; };
    double lo = ls, hi = ls + 0.5;
    int guard = 0;
    while (!(g(hi) > 0.0)) {
        hi = ls + (hi - ls) * 2.0;
        if (++guard > 200) throw BracketFailureError("no upper bracket for f_inverse");
    }
    return bisect_to_fixpoint(g, lo, hi);
}

bool f_lower_bound_check(double lambda, int64_t ell) {
    check_ell(ell, 11);
    double alpha = alpha_of_lambda(lambda);
    double a0 = transfer_alpha0();
    if (alpha < a0 - 1e-12) throw DomainError("bound check needs alpha >= alpha0");
    if (lambda < lambda_star(ell) - 1e-9)
        throw DomainError("bound check needs lambda >= lambda_star");
    double f = f_eval(lambda, ell);
    double rhs = (alpha - a0) * std::pow(a0, static_cast<double>(ell - 1));
    return f >= rhs - 1e-9 * (1.0 + std::abs(f));
}

} // namespace emlab
