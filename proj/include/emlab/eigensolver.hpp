#pragma once

#include <cstdint>
#include <vector>

#include "emlab/errors.hpp"

namespace emlab {

// Dense symmetric matrix, row-major full storage.
struct SymMatrix {
    int64_t n = 0;
    std::vector<double> a;

    SymMatrix() = default;
    explicit SymMatrix(int64_t nn) : n(nn), a(nn * nn, 0.0) {}
    double& at(int64_t i, int64_t j) { return a[i * n + j]; }
    double at(int64_t i, int64_t j) const { return a[i * n + j]; }
};

struct EigOptions {
    // With vectors the residual bound is computed from the eigenpairs and is
    // a certificate; without them the solve is roughly 3x faster and the
    // bound is an a-priori estimate of the QL algorithm's accuracy.
    bool with_vectors = true;
    // 0 means: take EMLAB_SIZE_CAP from the environment, default 20000.
    int64_t size_cap = 0;
};

struct EigResult {
    std::vector<double> values;  // descending
    std::vector<double> vectors; // eigenvector k occupies [k*n, (k+1)*n); empty if not requested
    // max_k ||A v_k - lambda_k v_k||_2 / ||A||_2 when certified, else the
    // a-priori estimate 30 n eps (relative to ||A||_2 in both cases).
    double residual_bound = 0.0;
    bool certified_by_residual = false;
};

int64_t effective_size_cap(int64_t requested);

// Householder tridiagonalization + implicit-shift QL.  Eigenvalues are
// bitwise identical with and without vectors, and for any OpenMP thread
// count: every parallel loop writes each output element from exactly one
// iteration whose inner arithmetic is serial and in fixed order.
// Throws SizeCapError past the cap and SolveFailureError on non-convergence.
EigResult dense_sym_eig(const SymMatrix& m, const EigOptions& opts = {});

// Serial cyclic Jacobi, kept as an independent reference implementation.
EigResult dense_sym_eig_jacobi(const SymMatrix& m, const EigOptions& opts = {});

// LU with partial pivoting; exact zero pivot gives 0.
double determinant(SymMatrix m);

} // namespace emlab
