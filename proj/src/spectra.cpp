#include "emlab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace emlab {

SymMatrix adjacency_matrix(const Graph& g) {
    SymMatrix m(g.n);
    for (int64_t u = 0; u < g.n; ++u)
        for (const auto& [v, w] : g.adj[u]) m.at(u, v) = static_cast<double>(w);
    return m;
}

Spectrum adjacency_spectrum(const Graph& g, const EigOptions& opts) {
    EigResult r = dense_sym_eig(adjacency_matrix(g), opts);
    return Spectrum{std::move(r.values), r.residual_bound, g.n};
}

Spectrum spectrum_from_values(std::vector<double> values, double residual_bound) {
    std::sort(values.begin(), values.end(), std::greater<>());
    int64_t n = static_cast<int64_t>(values.size());
    return Spectrum{std::move(values), residual_bound, n};
}

double spectral_gap(const Spectrum& s) {
    if (s.n < 2) throw DomainError("spectral gap needs at least 2 eigenvalues");
    return s.values[0] - s.values[1];
}

double default_cluster_tolerance(const Spectrum& s) {
    if (s.n < 1) throw DomainError("empty spectrum");
    return std::max(1e-8, 1e-12 * static_cast<double>(s.n) * std::abs(s.values[0]));
}

MultiplicityReport multiplicity(const Spectrum& s, double target, double tolerance) {
    if (s.n < 1) throw DomainError("empty spectrum");
    if (tolerance < 0.0) tolerance = default_cluster_tolerance(s);

    MultiplicityReport rep;
    rep.target = target;
    rep.tolerance = tolerance;
    rep.cluster_min = target;
    rep.cluster_max = target;
    rep.separation = std::numeric_limits<double>::infinity();
    bool first = true;
    for (double v : s.values) {
        double dist = std::abs(v - target);
        if (dist <= tolerance) {
            ++rep.count;
            if (first) {
                rep.cluster_min = rep.cluster_max = v;
                first = false;
            } else {
                rep.cluster_min = std::min(rep.cluster_min, v);
                rep.cluster_max = std::max(rep.cluster_max, v);
            }
        } else {
            rep.separation = std::min(rep.separation, dist);
        }
    }
    rep.ambiguous = rep.separation <= 2.0 * tolerance;
    return rep;
}

MultiplicityReport second_multiplicity(const Spectrum& s, double tolerance) {
    if (s.n < 2) throw DomainError("second multiplicity needs at least 2 eigenvalues");
    return multiplicity(s, s.values[1], tolerance);
}

int64_t interval_count(const Spectrum& s, double lo, double hi) {
    if (lo > hi) throw BadIntervalError("interval [" + std::to_string(lo) + ", " +
                                        std::to_string(hi) + "] is empty");
    int64_t count = 0;
    for (double v : s.values)
        if (v >= lo && v <= hi) ++count;
    return count;
}

std::vector<int64_t> histogram(const Spectrum& s, double lo, double hi, int64_t bins) {
    if (bins < 1) throw DomainError("histogram needs at least one bin");
    if (!(lo < hi)) throw BadIntervalError("histogram needs lo < hi");
    std::vector<int64_t> counts(bins, 0);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (double v : s.values) {
        if (v < lo || v > hi) continue;
        int64_t idx = static_cast<int64_t>(std::ceil((v - lo) / width)) - 1;
        idx = std::clamp<int64_t>(idx, 0, bins - 1);
        ++counts[idx];
    }
    return counts;
}

bool spectra_match(const Spectrum& a, const Spectrum& b, const AffineMap& map, double pad_value,
                   int64_t pad_count, double tol) {
    if (pad_count < 0) throw DomainError("pad count must be nonnegative");
    if (tol < 0) throw DomainError("tolerance must be nonnegative");
    if (b.n != a.n + pad_count)
        throw SizeMismatchError("expected " + std::to_string(a.n + pad_count) +
                                " eigenvalues, got " + std::to_string(b.n));
    std::vector<double> expect;
    expect.reserve(b.n);
    for (double v : a.values) expect.push_back(map.scale * v + map.shift);
    for (int64_t i = 0; i < pad_count; ++i) expect.push_back(pad_value);
    std::sort(expect.begin(), expect.end(), std::greater<>());
    for (int64_t i = 0; i < b.n; ++i)
        if (std::abs(expect[i] - b.values[i]) > tol) return false;
    return true;
}

} // namespace emlab
