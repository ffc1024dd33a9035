#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "emlab/algebra.hpp"
#include "emlab/graphcore.hpp"
#include "emlab/spectra.hpp"

namespace emlab {

// ---------------------------------------------------------------------------
// General high-multiplicity Cayley recipe
//
// Data for building Cay(Gamma, S u {t, t^-1}) whose second eigenvalue
// multiplicity is at least |Gamma|/|Pi| - 1, where Pi = <S>.  The hypotheses
// are: S symmetric, gap(Cay(Pi,S)) >= 4, exactly two (Pi,Pi) double cosets,
// t outside Pi, and t not an involution.
// ---------------------------------------------------------------------------

struct CayleyGeneralInstance {
    GroupPtr gamma;
    GeneratingSet s; // symmetric subset of gamma
    GroupElement t;  // extra generator outside <S>
};

// Quantities measured while verifying the hypotheses.
struct CayleyGeneralChecks {
    GroupPtr pi;                      // <S>
    double pi_gap = 0.0;              // spectral gap of Cay(Pi, S)
    int64_t double_cosets = 0;        // |Pi \ Gamma / Pi|
    int64_t claimed_multiplicity = 0; // |Gamma| / |Pi| - 1
};

// Verifies every hypothesis; throws HypothesisFailure naming the first one
// violated ("t != t^-1", "t outside Pi", "double coset count = 2",
// "gap(Cay(Pi,S)) >= 4").
CayleyGeneralChecks validate_cayley_general(const CayleyGeneralInstance& inst);

// Validates, then returns Cay(Gamma, S u {t, t^-1}); degree |S| + 2,
// connected under the hypotheses.
Graph build_cayley_general(const CayleyGeneralInstance& inst);

// ---------------------------------------------------------------------------
// Generating-set search
// ---------------------------------------------------------------------------

struct SearchHit {
    GeneratingSet set;
    double gap = 0.0; // measured spectral gap of Cay(pi, set)
};

// Looks for a symmetric identity-free subset of `pi` of the given size whose
// Cayley graph is connected with spectral gap >= gap_target.  When the number
// of symmetric candidates is at most `budget` they are enumerated
// exhaustively in deterministic order; otherwise `budget` candidates are
// sampled with the seeded generator.  Returns the first hit, or nothing.
std::optional<SearchHit> search_generating_set(const GroupPtr& pi, int64_t size,
                                               double gap_target, int64_t budget,
                                               uint64_t seed);

// ---------------------------------------------------------------------------
// Gap amplification: (Pi, S) -> (Pi x Z_N, S x Z_N)
//
// The augmented Cayley graph's spectrum is N times the base spectrum plus
// |Pi| (N-1) extra zeros, so the gap scales by N at the cost of degree |S| N.
// ---------------------------------------------------------------------------

struct AugmentResult {
    GroupPtr group;
    GeneratingSet set;
    int64_t pad_count = 0; // |Pi| (N - 1) zeros added to the spectrum
};

AugmentResult augment_gap(const GroupPtr& pi, const GeneratingSet& s, int64_t n_copies);

// ---------------------------------------------------------------------------
// 18-regular family on SL(2,q) |x F_q^2
// ---------------------------------------------------------------------------

struct SemidirectCayleyOptions {
    int64_t q = 3;
    std::vector<GroupElement> s0; // optional seed set on PSL(2,q); searched when empty
    int64_t budget = 4096;        // candidate sets examined per search
    uint64_t seed = 0;
};

struct SemidirectCayleyResult {
    Graph graph;       // Cay(SL(2,q) |x F_q^2, S u {t, t^-1})
    std::string route; // "lift" (PSL set doubled into SL) or "direct" (SL search)
    int64_t q = 0;
    int64_t n = 0;      // q^3 (q^2 - 1) vertices
    int64_t degree = 0; // |S| + 2 (18 on the lift route)
    double psl_gap = 0.0;
    double sl_gap = 0.0;
    bool lift_doubling_ok = false; // spec(SL lift) = 2 spec(PSL) with |PSL| zeros
    int64_t pad_count = 0;
    int64_t claimed_multiplicity = 0; // q^2 - 1
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    MultiplicityReport mult; // second-eigenvalue cluster of the final graph
};

SemidirectCayleyResult build_semidirect_cayley(const SemidirectCayleyOptions& opt);

// ---------------------------------------------------------------------------
// Degree-4 family: subdivided affine Cayley graph
//
// Cay(affine(q), {s, s^-1, t, t^-1}) with s the smallest primitive root and
// t the unit translation, every t-edge replaced by an m-edge path.
// ---------------------------------------------------------------------------

struct BoundedOptions {
    int64_t q = 5;
    int64_t m = 0; // 0 picks max(4, ceil(2 log2(q-1)) - 2)
};

struct BoundedResult {
    Graph graph;
    int64_t q = 0;
    int64_t m = 0;
    int64_t n = 0;         // q (q-1) m vertices
    int64_t formula_m = 0; // ceil(2 log2(q-1)) - 2 before the floor at 4
    bool m_is_formula = false;
    double kappa_closed = 0.0;   // 2 - 2 cos(2 pi / (q-1))
    double kappa_measured = 0.0; // gap of Cay(Pi, {s, s^-1})
    double y0_threshold = 0.0;   // y0(2, m)
    bool y0_check = false;       // lambda2 / 2 > y0
    int64_t claimed_multiplicity = 0; // q - 1
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    MultiplicityReport mult;
};

BoundedResult build_bounded_degree(const BoundedOptions& opt);

// ---------------------------------------------------------------------------
// Subdivided expander family G(H, ell) and its base-graph sampling
// ---------------------------------------------------------------------------

struct ApproxInstance {
    int64_t n_base = 0; // N: even vertex count of H
    int64_t ell = 0;    // path length, > 10
    double eps = 0.0;
    uint64_t seed = 0;
    Graph h;
    double lambda2_h = 0.0;
    double gap_h = 0.0;
    int64_t h_interval_count = 0; // eigenvalues of H in [(1-eps) lambda2, lambda2]
    double a_eps_value = 0.0;
    bool degenerate = false; // a(eps) N < 1: the count condition is vacuous
    int64_t tries_used = 0;
};

// Resamples 3-regular graphs until one is connected with gap >= 0.01 and has
// at least a(eps) n eigenvalues in [(1-eps) lambda2, lambda2].
ApproxInstance sample_good_H(int64_t n, double eps, uint64_t seed, int64_t max_tries = 100);

// Deterministic regression fixture with H fixed to the Petersen graph.
ApproxInstance petersen_instance(double eps, int64_t ell);

// Limiting spectral mass of the top interval:
// a(eps) = 1/2 * integral of 3 sqrt(8-z^2) / (2 pi (9-z^2)) over
// [2 sqrt2 - sqrt2 eps, 2 sqrt2], computed by adaptive quadrature after a
// substitution that removes the square-root corner at the upper endpoint.
double a_eps(double eps);

// Mass of the limiting density 3 sqrt(8-z^2) / (2 pi (9-z^2)) over
// [lo, hi] intersected with [-2 sqrt2, 2 sqrt2], via the substitution
// z = 2 sqrt2 sin(theta) which makes the integrand smooth at both edges.
// A deliberately different quadrature route from a_eps.
double km_mass(double lo, double hi);

// How well the subdivided graph's upper spectrum maps onto the base graph's
// spectrum under the transfer function.
struct FCorrespondence {
    double worst_map_dist = 0.0; // max over lambda > 2 of min_j |f(lambda) - mu_j|
    bool all_mapped = false;     // worst_map_dist <= map_tol
    bool mult_ok = false;        // every mu >= 0 cluster reappears with >= multiplicity
    int64_t lambda_checked = 0;  // eigenvalues of G above 2
    int64_t mu_checked = 0;      // distinct mu >= 0 clusters of H
    double map_tol = 0.0;
    double cluster_tol = 0.0;
};

// Builds G(h, ell) and compares both spectra.
FCorrespondence verify_f_correspondence(const Graph& h, int64_t ell, double map_tol = 1e-6);
// Same check on precomputed spectra.
FCorrespondence verify_f_correspondence(const Spectrum& h_spec, const Spectrum& g_spec,
                                        int64_t ell, double map_tol = 1e-6);

struct ApproxResult {
    Graph graph; // G(H, ell)
    int64_t n = 0;
    bool connected = false;
    int64_t max_deg = 0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double f_lambda1 = 0.0; // should equal the top eigenvalue 3 of H
    double f_lambda2 = 0.0;
    double kappa = 0.0;       // measured gap
    double kappa_bound = 0.0; // 0.001 alpha0^-ell
    bool kappa_ok = false;
    double kappa_proof_bound = 0.0; // (f(l1) - f(l2)) / (3 alpha0^ell)
    bool kappa_proof_ok = false;
    int64_t interval_count_proof = 0;     // window 300 eps alpha0^-ell below lambda2
    int64_t interval_count_statement = 0; // window (1/0.001) eps alpha0^-ell
    bool interval_ok = false;             // proof-window count >= h_interval_count
    bool interval_vs_aeps = false;        // proof-window count >= a(eps) N
    FCorrespondence fcheck;
    double implied_big_c = 0.0; // C with ell = log_alpha0((0.001/C) ln N)
    double implied_delta = 0.0; // 2 alpha0 C eps / 0.001^2
};

ApproxResult build_approx_graph(const ApproxInstance& inst);

// ---------------------------------------------------------------------------
// Subdivision determinant identity
//
// With G = overlay(h1, h2) whose h2 edges are split into m-edge paths and
// h2 d-regular:
//   det(A_G - 2xI) = +- U_{m-1}(x)^{e(h2)}
//                    * det(A_h1 - (2x - d U_{m-2}(x)/U_{m-1}(x)) I
//                          + U_{m-1}(x)^{-1} A_h2).
// Both sides are evaluated at each abscissa; the sign is resolved at the
// first sample where both are nonzero.  Relative agreement 1e-8 required.
// ---------------------------------------------------------------------------

bool verify_pathlen_identity(const Graph& h1, const Graph& h2, int64_t m,
                             const std::vector<double>& x_samples);

// ---------------------------------------------------------------------------
// Random 3-regular graphs (pairing model with rejection)
// ---------------------------------------------------------------------------

// Uniform simple connected 3-regular graph on n labeled vertices; pairs
// degree stubs at random and rejects loops, parallel edges, and disconnected
// outcomes, retrying up to retry_cap times.
Graph random_regular_graph(int64_t n, uint64_t seed, int64_t retry_cap = 1000);

// Unbiased index in [0, k) by rejection; the portable core of every seeded
// shuffle here (results must not depend on the standard library's
// distribution implementations).
uint64_t uniform_index(std::mt19937_64& rng, uint64_t k);

} // namespace emlab
