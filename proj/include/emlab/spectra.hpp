#pragma once

#include <cstdint>
#include <vector>

#include "emlab/eigensolver.hpp"
#include "emlab/graphcore.hpp"

namespace emlab {

// Eigenvalues in descending order plus the solver's accuracy bound.
struct Spectrum {
    std::vector<double> values;
    double residual_bound = 0.0;
    int64_t n = 0;
};

SymMatrix adjacency_matrix(const Graph& g);
Spectrum adjacency_spectrum(const Graph& g, const EigOptions& opts = {});

// Wrap raw values (sorted here) with a caller-supplied accuracy bound.
Spectrum spectrum_from_values(std::vector<double> values, double residual_bound);

// lambda_1 - lambda_2 of the adjacency spectrum; needs n >= 2.
double spectral_gap(const Spectrum& s);

// max(1e-8, 1e-12 * n * |lambda_1|)
double default_cluster_tolerance(const Spectrum& s);

struct MultiplicityReport {
    double target = 0.0;
    double tolerance = 0.0;
    int64_t count = 0;
    // extent of the counted cluster; both equal target when count = 0
    double cluster_min = 0.0;
    double cluster_max = 0.0;
    // distance from target to the nearest eigenvalue outside the tolerance;
    // +inf when everything is inside
    double separation = 0.0;
    // the nearest excluded eigenvalue is within twice the tolerance, so the
    // count could change under a perturbation of that size
    bool ambiguous = false;
};

// Number of eigenvalues within `tolerance` of target.  tolerance < 0 selects
// default_cluster_tolerance.
MultiplicityReport multiplicity(const Spectrum& s, double target, double tolerance = -1.0);

// multiplicity() at target = lambda_2; needs n >= 2.
MultiplicityReport second_multiplicity(const Spectrum& s, double tolerance = -1.0);

// Number of eigenvalues in the closed interval [lo, hi].
int64_t interval_count(const Spectrum& s, double lo, double hi);

// Equal-width bins over [lo, hi]; bin 0 is [lo, lo+w], later bins are
// half-open (a, b].  Eigenvalues outside [lo, hi] are not counted.
std::vector<int64_t> histogram(const Spectrum& s, double lo, double hi, int64_t bins);

struct AffineMap {
    double scale = 1.0;
    double shift = 0.0;
};

// True when b equals {scale * x + shift : x in a} together with pad_count
// copies of pad_value, compared entrywise within tol after sorting.  Sizes
// must satisfy b.n = a.n + pad_count.
bool spectra_match(const Spectrum& a, const Spectrum& b, const AffineMap& map, double pad_value,
                   int64_t pad_count, double tol);

} // namespace emlab
