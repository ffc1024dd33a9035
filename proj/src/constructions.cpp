#include "emlab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "emlab/chebyshev.hpp"
#include "emlab/eigensolver.hpp"
#include "emlab/errors.hpp"

namespace emlab {

namespace {

EigOptions values_only() {
    EigOptions o;
    o.with_vectors = false;
    return o;
}

double ipow_double(double b, int64_t e) {
    double r = 1.0;
    for (int64_t i = 0; i < e; ++i) r *= b;
    return r;
}

// Binomial coefficient saturated at `cap` so counting never overflows.
double comb_capped(int64_t n, int64_t k, double cap) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int64_t i = 1; i <= k; ++i) {
        r *= static_cast<double>(n - k + i) / static_cast<double>(i);
        if (r > cap) return cap;
    }
    return r;
}

// Advance a k-subset of [0, n) in lexicographic order; false when done.
bool next_combination(std::vector<int64_t>& c, int64_t n) {
    int64_t k = static_cast<int64_t>(c.size());
    for (int64_t i = k - 1; i >= 0; --i) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (int64_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Uniform double in [0, 1) from the top 53 bits of the generator.
double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// First `k` entries of a seeded partial shuffle of [0, n).
std::vector<int64_t> sample_distinct(std::mt19937_64& rng, int64_t n, int64_t k) {
    std::vector<int64_t> idx(n);
    for (int64_t i = 0; i < n; ++i) idx[i] = i;
    for (int64_t i = 0; i < k; ++i) {
        uint64_t j = i + uniform_index(rng, static_cast<uint64_t>(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

Graph assemble_cayley_general(const CayleyGeneralInstance& inst) {
    std::vector<GroupElement> elems = inst.s.elems;
    elems.push_back(inst.t);
    elems.push_back(inst.gamma->inv(inst.t));
    Graph g = cayley_graph(make_generating_set(inst.gamma, std::move(elems)));
    // Pi and Pi t Pi cover the group, so S u {t, t^-1} generates
    if (!is_connected(g))
        throw Error("hypotheses hold but the graph is disconnected (broken construction)");
    return g;
}

} // namespace

uint64_t uniform_index(std::mt19937_64& rng, uint64_t k) {
    if (k == 0) throw DomainError("uniform_index needs k >= 1");
    // accept only below the largest multiple of k so every residue is equally likely
    uint64_t r = (std::numeric_limits<uint64_t>::max() % k + 1) % k;
    for (;;) {
        uint64_t x = rng();
        if (r == 0 || x < static_cast<uint64_t>(0) - r) return x % k;
    }
}

// ---------------------------------------------------------------------------
// General Cayley recipe
// ---------------------------------------------------------------------------

CayleyGeneralChecks validate_cayley_general(const CayleyGeneralInstance& inst) {
    if (!inst.gamma) throw Error("null group");
    if (inst.s.parent != inst.gamma)
        throw Error("generating set is bound to a different group");
    const GroupElement tinv = inst.gamma->inv(inst.t);
    if (tinv == inst.t)
        throw HypothesisFailure("t != t^-1", "t is an involution or the identity");
    CayleyGeneralChecks out;
    out.pi = generated_subgroup(inst.gamma, inst.s.elems);
    if (out.pi->contains(inst.t))
        throw HypothesisFailure("t outside Pi", "t lies in the subgroup generated by S");
    out.double_cosets = double_coset_count(inst.gamma, out.pi);
    if (out.double_cosets != 2)
        throw HypothesisFailure("double coset count = 2",
                                "measured " + std::to_string(out.double_cosets));
    GeneratingSet s_pi = make_generating_set(out.pi, inst.s.elems);
    Spectrum sp = adjacency_spectrum(cayley_graph(s_pi), values_only());
    out.pi_gap = spectral_gap(sp);
    if (!(out.pi_gap >= 4.0 - 1e-9)) {
        std::ostringstream os;
        os << "measured gap " << out.pi_gap;
        throw HypothesisFailure("gap(Cay(Pi,S)) >= 4", os.str());
    }
    out.claimed_multiplicity = inst.gamma->order() / out.pi->order() - 1;
    return out;
}

Graph build_cayley_general(const CayleyGeneralInstance& inst) {
    validate_cayley_general(inst);
    return assemble_cayley_general(inst);
}

// ---------------------------------------------------------------------------
// Generating-set search
// ---------------------------------------------------------------------------

std::optional<SearchHit> search_generating_set(const GroupPtr& pi, int64_t size,
                                               double gap_target, int64_t budget,
                                               uint64_t seed) {
    if (!pi) throw Error("null group");
    if (size < 1) throw DomainError("generating set size must be >= 1");
    if (budget < 0) throw DomainError("budget must be >= 0");
    const FiniteGroup& g = *pi;

    // symmetric sets decompose into involutions plus inverse pairs
    std::vector<int64_t> invol;
    std::vector<std::pair<int64_t, int64_t>> pairs;
    for (int64_t i = 0; i < g.order(); ++i) {
        if (i == g.identity_idx()) continue;
        int64_t j = g.inv_idx(i);
        if (j == i) invol.push_back(i);
        else if (i < j) pairs.emplace_back(i, j);
    }
    const int64_t ni = static_cast<int64_t>(invol.size());
    const int64_t np = static_cast<int64_t>(pairs.size());

    std::vector<int64_t> counts; // feasible involution counts, ascending
    for (int64_t a = size % 2; a <= std::min(ni, size); a += 2) {
        if ((size - a) / 2 <= np) counts.push_back(a);
    }
    if (counts.empty()) return std::nullopt;

    auto evaluate = [&](const std::vector<int64_t>& isel,
                        const std::vector<int64_t>& psel) -> std::optional<SearchHit> {
        std::vector<GroupElement> elems;
        elems.reserve(size);
        for (int64_t ii : isel) elems.push_back(g.element(invol[ii]));
        for (int64_t pp : psel) {
            elems.push_back(g.element(pairs[pp].first));
            elems.push_back(g.element(pairs[pp].second));
        }
        GeneratingSet s = make_generating_set(pi, std::move(elems));
        Graph c = cayley_graph(s);
        if (!is_connected(c)) return std::nullopt;
        Spectrum sp = adjacency_spectrum(c, values_only());
        double gap = spectral_gap(sp);
        if (gap >= gap_target - 1e-9) return SearchHit{std::move(s), gap};
        return std::nullopt;
    };

    const double cap = static_cast<double>(budget) + 1.0;
    double total = 0.0;
    for (int64_t a : counts) {
        total += comb_capped(ni, a, cap) * comb_capped(np, (size - a) / 2, cap);
        if (total > static_cast<double>(budget)) break;
    }

    if (total <= static_cast<double>(budget)) {
        // exhaustive, in deterministic lexicographic order
        for (int64_t a : counts) {
            int64_t b = (size - a) / 2;
            std::vector<int64_t> isel(a);
            for (int64_t i = 0; i < a; ++i) isel[i] = i;
            do {
                std::vector<int64_t> psel(b);
                for (int64_t i = 0; i < b; ++i) psel[i] = i;
                do {
                    if (auto hit = evaluate(isel, psel)) return hit;
                } while (next_combination(psel, np));
            } while (next_combination(isel, ni));
        }
        return std::nullopt;
    }

    // seeded sampling: involution count drawn with probability proportional
    // to the number of candidates carrying it
    std::vector<double> weights;
    double wsum = 0.0;
    for (int64_t a : counts) {
        double w = comb_capped(ni, a, 1e18) * comb_capped(np, (size - a) / 2, 1e18);
        weights.push_back(w);
        wsum += w;
    }
    std::mt19937_64 rng(seed);
    for (int64_t trial = 0; trial < budget; ++trial) {
        double u = uniform_unit(rng) * wsum;
        size_t pick = 0;
        for (; pick + 1 < weights.size() && u >= weights[pick]; ++pick) u -= weights[pick];
        int64_t a = counts[pick];
        int64_t b = (size - a) / 2;
        std::vector<int64_t> isel = sample_distinct(rng, ni, a);
        std::vector<int64_t> psel = sample_distinct(rng, np, b);
        if (auto hit = evaluate(isel, psel)) return hit;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Gap amplification
// ---------------------------------------------------------------------------

AugmentResult augment_gap(const GroupPtr& pi, const GeneratingSet& s, int64_t n_copies) {
    if (!pi) throw Error("null group");
    if (s.parent != pi) throw Error("generating set is bound to a different group");
    if (n_copies < 1) throw DomainError("augment_gap needs at least one copy");
    GroupPtr zn = make_cyclic(n_copies);
    GroupPtr prod = make_product(pi, zn);
    std::vector<GroupElement> elems;
    elems.reserve(s.elems.size() * static_cast<size_t>(n_copies));
    for (const auto& e : s.elems) {
        for (int64_t z = 0; z < n_copies; ++z) {
            elems.push_back(make_pair_element(*prod, e, GroupElement{{static_cast<int32_t>(z)}}));
        }
    }
    AugmentResult out;
    out.group = prod;
    out.set = make_generating_set(prod, std::move(elems));
    out.pad_count = pi->order() * (n_copies - 1);
    return out;
}

// ---------------------------------------------------------------------------
// 18-regular family on SL(2,q) |x F_q^2
// ---------------------------------------------------------------------------

SemidirectCayleyResult build_semidirect_cayley(const SemidirectCayleyOptions& opt) {
    SemidirectCayleyResult out;
    out.q = opt.q;
    out.claimed_multiplicity = opt.q * opt.q - 1;
    GroupPtr psl = make_psl2(opt.q);
    GroupPtr sl = make_sl2(opt.q);

    std::vector<GroupElement> s0_elems;
    std::vector<GroupElement> s_sl_elems;
    if (!opt.s0.empty()) {
        GeneratingSet s0 = make_generating_set(psl, opt.s0);
        Spectrum sp0 = adjacency_spectrum(cayley_graph(s0), values_only());
        out.psl_gap = spectral_gap(sp0);
        if (!(out.psl_gap > 2.0)) {
            std::ostringstream os;
            os << "measured gap " << out.psl_gap;
            throw HypothesisFailure("gap(Cay(PSL,S0)) > 2", os.str());
        }
        s0_elems = s0.elems;
        s_sl_elems = quotient_preimage_sl2(opt.q, s0_elems);
        out.route = "lift";
    } else {
        auto hit = search_generating_set(psl, 8, 2.0 + 1e-6, opt.budget, opt.seed);
        if (hit) {
            out.psl_gap = hit->gap;
            s0_elems = hit->set.elems;
            s_sl_elems = quotient_preimage_sl2(opt.q, s0_elems);
            out.route = "lift";
        } else {
            auto direct = search_generating_set(sl, 16, 4.0, opt.budget, opt.seed);
            if (!direct)
                throw SearchExhaustedError(
                    "no generating set with the required gap within budget " +
                    std::to_string(opt.budget) +
                    "; widen the budget or amplify a smaller-gap set with augment_gap");
            s_sl_elems = direct->set.elems;
            out.route = "direct";
        }
    }

    GeneratingSet s_sl = make_generating_set(sl, s_sl_elems);
    Spectrum sp_sl = adjacency_spectrum(cayley_graph(s_sl), values_only());
    out.sl_gap = spectral_gap(sp_sl);
    if (out.route == "lift") {
        // the lift doubles every eigenvalue and pads with |PSL| zeros
        Spectrum sp_psl =
            adjacency_spectrum(cayley_graph(make_generating_set(psl, s0_elems)), values_only());
        out.pad_count = psl->order();
        out.lift_doubling_ok =
            spectra_match(sp_psl, sp_sl, AffineMap{2.0, 0.0}, 0.0, out.pad_count, 1e-9);
    }

    GroupPtr v2 = make_vec2(opt.q);
    GroupPtr gamma = make_semidirect(sl2_standard_action(sl, v2));
    std::vector<GroupElement> s_gamma;
    s_gamma.reserve(s_sl.elems.size());
    const GroupElement zero{{0, 0}};
    for (const auto& e : s_sl.elems) s_gamma.push_back(make_pair_element(*gamma, e, zero));
    const GroupElement t = make_pair_element(*gamma, sl->identity(), GroupElement{{1, 0}});

    CayleyGeneralInstance inst{gamma, make_generating_set(gamma, std::move(s_gamma)), t};
    CayleyGeneralChecks checks = validate_cayley_general(inst);
    if (checks.claimed_multiplicity != out.claimed_multiplicity)
        throw Error("double coset structure disagrees with the q^2 - 1 bound");
    out.graph = assemble_cayley_general(inst);
    out.n = out.graph.n;
    out.degree = max_degree(out.graph);

    Spectrum sp = adjacency_spectrum(out.graph, values_only());
    out.lambda1 = sp.values[0];
    out.lambda2 = sp.values[1];
    out.mult = second_multiplicity(sp);
    return out;
}

// ---------------------------------------------------------------------------
// Degree-4 family
// ---------------------------------------------------------------------------

BoundedResult build_bounded_degree(const BoundedOptions& opt) {
    const int64_t q = opt.q;
    if (q < 2 || !is_prime(q)) throw NotPrimeError("q must be prime, got " + std::to_string(q));
    if (q < 5) throw DomainError("the subdivided affine family needs q >= 5");
    if (opt.m < 0) throw DomainError("m must be >= 0 (0 picks the formula default)");

    BoundedResult out;
    out.q = q;
    out.claimed_multiplicity = q - 1;

    // smallest k with 2^k >= (q-1)^2 gives ceil(2 log2(q-1))
    const int64_t v = (q - 1) * (q - 1);
    int64_t k = 0;
    while ((int64_t{1} << k) < v) ++k;
    out.formula_m = k - 2;
    const int64_t m = opt.m > 0 ? opt.m : std::max<int64_t>(4, out.formula_m);
    out.m = m;
    out.m_is_formula = (m == std::max<int64_t>(4, out.formula_m));
    if (m < 4) throw HypothesisFailure("m >= 4", "got m = " + std::to_string(m));

    GroupPtr gamma = make_affine(q);
    const int32_t root = static_cast<int32_t>(smallest_primitive_root(q));
    const GroupElement s{{root, 0}};
    const GroupElement sinv = gamma->inv(s);
    const GroupElement t{{1, 1}};
    const GroupElement tinv = gamma->inv(t);
    if (tinv == t) throw HypothesisFailure("t != t^-1", "translation by 1 is an involution");

    std::vector<GroupElement> s_elems{s, sinv};
    GroupPtr pi = generated_subgroup(gamma, s_elems);
    if (pi->contains(t))
        throw HypothesisFailure("t outside Pi", "t lies in the subgroup generated by S");
    const int64_t dcc = double_coset_count(gamma, pi);
    if (dcc != 2)
        throw HypothesisFailure("double coset count = 2", "measured " + std::to_string(dcc));

    Spectrum sp_pi = adjacency_spectrum(cayley_graph(make_generating_set(pi, s_elems)), values_only());
    out.kappa_measured = spectral_gap(sp_pi);
    out.kappa_closed = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi / static_cast<double>(q - 1));
    if (!(std::pow(2.0, static_cast<double>(m - 1)) >= 4.0 / out.kappa_measured - 1e-9)) {
        std::ostringstream os;
        os << "2^" << (m - 1) << " = " << std::pow(2.0, static_cast<double>(m - 1)) << " < 4/kappa = "
           << 4.0 / out.kappa_measured;
        throw HypothesisFailure("|S|^(m-1) >= 4/kappa", os.str());
    }

    Graph full = cayley_graph(make_generating_set(gamma, {s, sinv, t, tinv}));
    const int64_t t_idx = gamma->index_of(t);
    EdgeSelection sel;
    sel.edges.reserve(gamma->order());
    for (int64_t i = 0; i < gamma->order(); ++i) {
        int64_t j = gamma->mul_idx(i, t_idx);
        sel.edges.push_back(EdgeRef{std::min(i, j), std::max(i, j), 1});
    }
    out.graph = subdivide(full, sel, m);
    out.n = out.graph.n;
    if (out.n != q * (q - 1) * m) throw Error("vertex count disagrees with q (q-1) m");
    if (!is_connected(out.graph))
        throw Error("hypotheses hold but the graph is disconnected (broken construction)");

    Spectrum sp = adjacency_spectrum(out.graph, values_only());
    out.lambda1 = sp.values[0];
    out.lambda2 = sp.values[1];
    out.mult = second_multiplicity(sp);
    out.y0_threshold = y0(2, m);
    out.y0_check = out.lambda2 / 2.0 > out.y0_threshold;
    return out;
}

// ---------------------------------------------------------------------------
// Limiting spectral mass a(eps)
// ---------------------------------------------------------------------------

namespace {

double adaptive_simpson_rec(const std::function<double(double)>& fn, double a, double b,
                            double fa, double fm, double fb, double whole, double tol,
                            int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = fn(lm);
    const double frm = fn(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double both = left + right;
    if (depth <= 0 || std::abs(both - whole) <= 15.0 * tol)
        return both + (both - whole) / 15.0;
    return adaptive_simpson_rec(fn, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(fn, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& fn, double a, double b, double tol) {
    const double fa = fn(a);
    const double fb = fn(b);
    const double m = 0.5 * (a + b);
    const double fm = fn(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_rec(fn, a, b, fa, fm, fb, whole, tol, 48);
}

} // namespace

double a_eps(double eps) {
    if (!(eps > 0.0) || eps > 2.0) throw DomainError("a_eps needs eps in (0, 2]");
    const double edge = 2.0 * std::sqrt(2.0);
    // substitute z = edge - u^2: sqrt(edge - z) = u cancels the corner, leaving
    // a smooth integrand 3 u^2 sqrt(edge + z) / (pi (9 - z^2))
    const double u1 = std::sqrt(std::sqrt(2.0) * eps);
    auto fn = [edge](double u) {
        const double z = edge - u * u;
        return 3.0 * u * u * std::sqrt(edge + z) / (std::numbers::pi * (9.0 - z * z));
    };
    return 0.5 * adaptive_simpson(fn, 0.0, u1, 1e-12);
}

double km_mass(double lo, double hi) {
    const double edge = 2.0 * std::sqrt(2.0);
    lo = std::max(lo, -edge);
    hi = std::min(hi, edge);
    if (!(lo < hi)) return 0.0;
    // z = edge sin(theta) turns 3 sqrt(8-z^2) / (2 pi (9-z^2)) dz into
    // 12 cos^2(theta) / (pi (9 - 8 sin^2(theta))) dtheta
    auto fn = [](double t) {
        const double s = std::sin(t);
        const double c = std::cos(t);
        return 12.0 * c * c / (std::numbers::pi * (9.0 - 8.0 * s * s));
    };
    return adaptive_simpson(fn, std::asin(lo / edge), std::asin(hi / edge), 1e-12);
}

// ---------------------------------------------------------------------------
// Random 3-regular graphs
// ---------------------------------------------------------------------------

Graph random_regular_graph(int64_t n, uint64_t seed, int64_t retry_cap) {
    if (n < 4 || n % 2 != 0) throw DomainError("3-regular pairing needs even n >= 4");
    if (retry_cap < 1) throw DomainError("retry_cap must be positive");
    std::mt19937_64 rng(seed);
    std::vector<int32_t> stubs(static_cast<size_t>(3 * n));
    std::vector<std::pair<int32_t, int32_t>> edges;
    for (int64_t attempt = 0; attempt < retry_cap; ++attempt) {
        for (size_t i = 0; i < stubs.size(); ++i) stubs[i] = static_cast<int32_t>(i / 3);
        for (size_t i = stubs.size() - 1; i > 0; --i) {
            uint64_t j = uniform_index(rng, static_cast<uint64_t>(i) + 1);
            std::swap(stubs[i], stubs[j]);
        }
        bool simple = true;
        edges.clear();
        for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
            int32_t u = stubs[i];
            int32_t v = stubs[i + 1];
            if (u == v) {
                simple = false;
                break;
            }
            edges.emplace_back(std::min(u, v), std::max(u, v));
        }
        if (!simple) continue;
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
        Graph g(n);
        for (const auto& [u, v] : edges) g.add_edge(u, v);
        if (!is_connected(g)) continue;
        return g;
    }
    throw RetryExhaustedError("no simple connected 3-regular pairing in " +
                              std::to_string(retry_cap) + " attempts");
}

// ---------------------------------------------------------------------------
// Base-graph sampling
// ---------------------------------------------------------------------------

ApproxInstance sample_good_H(int64_t n, double eps, uint64_t seed, int64_t max_tries) {
    if (n < 4 || n % 2 != 0) throw DomainError("sample_good_H needs even n >= 4");
    if (max_tries < 1) throw DomainError("max_tries must be positive");
    const double a = a_eps(eps);
    const double need = a * static_cast<double>(n);
    const bool degenerate = need < 1.0;
    double best_gap = -1.0;
    int64_t best_count = -1;
    for (int64_t t = 0; t < max_tries; ++t) {
        const uint64_t seed_t = seed ^ (0x9E3779B97F4A7C15ull * static_cast<uint64_t>(t + 1));
        Graph h;
        try {
            h = random_regular_graph(n, seed_t);
        } catch (const RetryExhaustedError&) {
            continue;
        }
        Spectrum sp = adjacency_spectrum(h, values_only());
        const double gap = spectral_gap(sp);
        const double l2 = sp.values[1];
        const double lo = std::min((1.0 - eps) * l2, l2);
        const double hi = std::max((1.0 - eps) * l2, l2);
        const int64_t count = interval_count(sp, lo, hi);
        best_gap = std::max(best_gap, gap);
        best_count = std::max(best_count, count);
        if (gap >= 0.01 && (degenerate || static_cast<double>(count) >= need - 1e-12)) {
            ApproxInstance inst;
            inst.n_base = n;
            inst.ell = 0; // chosen by the caller
            inst.eps = eps;
            inst.seed = seed;
            inst.h = std::move(h);
            inst.lambda2_h = l2;
            inst.gap_h = gap;
            inst.h_interval_count = count;
            inst.a_eps_value = a;
            inst.degenerate = degenerate;
            inst.tries_used = t + 1;
            return inst;
        }
    }
    std::ostringstream os;
    os << "no base graph met gap >= 0.01 and interval count >= " << need << " in " << max_tries
       << " tries (best gap " << best_gap << ", best count " << best_count << ")";
    throw RetryExhaustedError(os.str());
}

ApproxInstance petersen_instance(double eps, int64_t ell) {
    ApproxInstance inst;
    inst.n_base = 10;
    inst.ell = ell;
    inst.eps = eps;
    inst.seed = 0;
    inst.h = petersen();
    inst.a_eps_value = a_eps(eps);
    Spectrum sp = adjacency_spectrum(inst.h, values_only());
    inst.gap_h = spectral_gap(sp);
    inst.lambda2_h = sp.values[1];
    const double lo = std::min((1.0 - eps) * inst.lambda2_h, inst.lambda2_h);
    const double hi = std::max((1.0 - eps) * inst.lambda2_h, inst.lambda2_h);
    inst.h_interval_count = interval_count(sp, lo, hi);
    inst.degenerate = inst.a_eps_value * 10.0 < 1.0;
    inst.tries_used = 0;
    return inst;
}

// ---------------------------------------------------------------------------
// Transfer-function correspondence
// ---------------------------------------------------------------------------

FCorrespondence verify_f_correspondence(const Spectrum& h_spec, const Spectrum& g_spec,
                                        int64_t ell, double map_tol) {
    if (ell <= 10) throw DomainError("the correspondence needs ell > 10");
    if (h_spec.values.empty() || g_spec.values.empty()) throw DomainError("empty spectrum");
    FCorrespondence out;
    out.map_tol = map_tol;
    out.cluster_tol = default_cluster_tolerance(g_spec);

    double worst = 0.0;
    for (double lam : g_spec.values) {
        if (!(lam > 2.0 + 1e-9)) continue;
        ++out.lambda_checked;
        const double fv = f_eval(lam, ell);
        double best = std::numeric_limits<double>::infinity();
        for (double mu : h_spec.values) best = std::min(best, std::abs(fv - mu));
        worst = std::max(worst, best);
    }
    out.worst_map_dist = worst;
    out.all_mapped = worst <= map_tol;

    // each cluster of H at mu >= 0 must reappear in G at f^{-1}(mu) with at
    // least its multiplicity; tiny negative representatives of a zero
    // cluster are clamped into the branch
    const double h_tol = default_cluster_tolerance(h_spec);
    out.mult_ok = true;
    const std::vector<double>& mu = h_spec.values;
    size_t i = 0;
    while (i < mu.size()) {
        size_t j = i + 1;
        while (j < mu.size() && mu[i] - mu[j] <= h_tol) ++j;
        const int64_t mult_h = static_cast<int64_t>(j - i);
        if (mu[i] >= -h_tol) {
            const double lam = f_inverse(std::max(mu[i], 0.0), ell);
            MultiplicityReport mr = multiplicity(g_spec, lam, out.cluster_tol);
            ++out.mu_checked;
            if (mr.count < mult_h) out.mult_ok = false;
        }
        i = j;
    }
    return out;
}

FCorrespondence verify_f_correspondence(const Graph& h, int64_t ell, double map_tol) {
    for (int64_t v = 0; v < h.n; ++v) {
        if (h.weighted_degree(v) != 3)
            throw NotRegularError("base graph must be 3-regular; vertex " + std::to_string(v) +
                                  " has degree " + std::to_string(h.weighted_degree(v)));
    }
    Spectrum sp_h = adjacency_spectrum(h, values_only());
    Graph g = build_G_of_H(h, ell);
    Spectrum sp_g = adjacency_spectrum(g, values_only());
    return verify_f_correspondence(sp_h, sp_g, ell, map_tol);
}

// ---------------------------------------------------------------------------
// Subdivided expander family
// ---------------------------------------------------------------------------

ApproxResult build_approx_graph(const ApproxInstance& inst) {
    if (inst.n_base != inst.h.n)
        throw SizeMismatchError("instance vertex count disagrees with its base graph");
    if (inst.ell <= 10)
        throw HypothesisFailure("ell > 10", "got ell = " + std::to_string(inst.ell));
    make_transfer_params(inst.ell); // enforces the upper cap on ell
    if (!(inst.eps > 0.0)) throw HypothesisFailure("eps > 0", "got a non-positive eps");
    for (int64_t v = 0; v < inst.h.n; ++v) {
        if (inst.h.weighted_degree(v) != 3)
            throw HypothesisFailure("H 3-regular", "vertex " + std::to_string(v) +
                                                       " has degree " +
                                                       std::to_string(inst.h.weighted_degree(v)));
    }
    if (!is_connected(inst.h)) throw HypothesisFailure("H connected", "base graph is disconnected");
    Spectrum sp_h = adjacency_spectrum(inst.h, values_only());
    const double gap_h = spectral_gap(sp_h);
    if (!(gap_h >= 0.01 - 1e-12)) {
        std::ostringstream os;
        os << "measured gap " << gap_h;
        throw HypothesisFailure("gap(H) >= 0.01", os.str());
    }

    ApproxResult out;
    out.graph = build_G_of_H(inst.h, inst.ell);
    out.n = out.graph.n;
    out.connected = is_connected(out.graph);
    out.max_deg = max_degree(out.graph);

    Spectrum sp_g = adjacency_spectrum(out.graph, values_only());
    out.lambda1 = sp_g.values[0];
    out.lambda2 = sp_g.values[1];
    out.f_lambda1 = f_eval(out.lambda1, inst.ell);
    out.f_lambda2 = f_eval(out.lambda2, inst.ell);
    out.kappa = out.lambda1 - out.lambda2;

    const double a0 = transfer_alpha0();
    const double a0ml = std::pow(a0, -static_cast<double>(inst.ell));
    out.kappa_bound = kTransferC1 * a0ml;
    out.kappa_ok = out.kappa >= out.kappa_bound;
    out.kappa_proof_bound = (out.f_lambda1 - out.f_lambda2) / (3.0 * std::pow(a0, static_cast<double>(inst.ell)));
    out.kappa_proof_ok = out.kappa >= out.kappa_proof_bound - 1e-15;

    const double w_proof = 300.0 * inst.eps * a0ml;
    const double w_stmt = inst.eps * a0ml / kTransferC1;
    const double lo_proof = std::min((1.0 - w_proof) * out.lambda2, out.lambda2);
    const double lo_stmt = std::min((1.0 - w_stmt) * out.lambda2, out.lambda2);
    out.interval_count_proof = interval_count(sp_g, lo_proof, out.lambda2);
    out.interval_count_statement = interval_count(sp_g, lo_stmt, out.lambda2);
    out.interval_ok = out.interval_count_proof >= inst.h_interval_count;
    out.interval_vs_aeps = static_cast<double>(out.interval_count_proof) >=
                           inst.a_eps_value * static_cast<double>(inst.n_base) - 1e-12;

    out.fcheck = verify_f_correspondence(sp_h, sp_g, inst.ell);

    out.implied_big_c = kTransferC1 * std::log(static_cast<double>(inst.n_base)) * a0ml;
    out.implied_delta = 2.0 * a0 * out.implied_big_c * inst.eps / (kTransferC1 * kTransferC1);
    return out;
}

// ---------------------------------------------------------------------------
// Subdivision determinant identity
// ---------------------------------------------------------------------------

bool verify_pathlen_identity(const Graph& h1, const Graph& h2, int64_t m,
                             const std::vector<double>& x_samples) {
    if (h1.n != h2.n) throw SizeMismatchError("the two graphs must share a vertex set");
    if (m < 1) throw DomainError("path length m must be >= 1");
    if (x_samples.empty()) throw DomainError("need at least one abscissa");
    const int64_t d = h2.n > 0 ? h2.weighted_degree(0) : 0;
    for (int64_t v = 0; v < h2.n; ++v) {
        if (h2.weighted_degree(v) != d)
            throw NotRegularError("the subdivided graph must be regular");
    }
    const int64_t e2 = edge_unit_count(h2);
    Graph g = subdivide(overlay(h1, h2), all_edges(h2), m);
    SymMatrix a1 = adjacency_matrix(h1);
    SymMatrix a2 = adjacency_matrix(h2);
    SymMatrix ag = adjacency_matrix(g);

    std::vector<std::pair<double, double>> sides;
    sides.reserve(x_samples.size());
    double sign = 0.0;
    for (double x : x_samples) {
        const double um1 = cheb_U(m - 1, x);
        if (std::abs(um1) < 1e-9)
            throw DomainError("abscissa too close to a root of U_{m-1}");
        const double um2 = cheb_U(m - 2, x);
        const double shift = 2.0 * x - static_cast<double>(d) * (um2 / um1);
        SymMatrix core(h1.n);
        for (int64_t i = 0; i < h1.n; ++i) {
            for (int64_t j = 0; j < h1.n; ++j) {
                core.at(i, j) = a1.at(i, j) + a2.at(i, j) / um1;
            }
            core.at(i, i) -= shift;
        }
        const double rhs = ipow_double(um1, e2) * determinant(core);
        SymMatrix shifted = ag;
        for (int64_t i = 0; i < g.n; ++i) shifted.at(i, i) -= 2.0 * x;
        const double lhs = determinant(shifted);
        sides.emplace_back(lhs, rhs);
        if (sign == 0.0) {
            const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
            if (std::abs(lhs) > 1e-8 * scale && std::abs(rhs) > 1e-8 * scale)
                sign = ((lhs > 0) == (rhs > 0)) ? 1.0 : -1.0;
        }
    }
    if (sign == 0.0) sign = 1.0;
    for (const auto& [lhs, rhs] : sides) {
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
        if (std::abs(lhs - sign * rhs) > 1e-8 * scale) return false;
    }
    return true;
}

} // namespace emlab
