#include "emlab/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

namespace emlab {

int64_t effective_size_cap(int64_t requested) {
    if (requested > 0) return requested;
    if (const char* s = std::getenv("EMLAB_SIZE_CAP")) {
        char* end = nullptr;
        long long v = std::strtoll(s, &end, 10);
        if (end == s || *end != '\0' || v <= 0)
            throw Error("EMLAB_SIZE_CAP must be a positive integer, got '" + std::string(s) + "'");
        return v;
    }
    return 20000;
}

static void check_input(const SymMatrix& m, const EigOptions& opts) {
    if (m.n < 1) throw DomainError("eigensolver needs n >= 1");
    if (static_cast<int64_t>(m.a.size()) != m.n * m.n)
        throw SizeMismatchError("matrix storage does not match its dimension");
    int64_t cap = effective_size_cap(opts.size_cap);
    if (m.n > cap)
        throw SizeCapError("matrix dimension " + std::to_string(m.n) + " exceeds cap " +
                           std::to_string(cap));
    for (int64_t i = 0; i < m.n; ++i)
        for (int64_t j = i + 1; j < m.n; ++j)
            if (m.at(i, j) != m.at(j, i))
                throw Error("matrix is not symmetric at (" + std::to_string(i) + ", " +
                            std::to_string(j) + ")");
}

// Householder reduction to tridiagonal form (EISPACK tred2 layout).  On exit
// d is the diagonal, e[1..n-1] the subdiagonal (e[0] = 0), and, when with_q,
// a holds the accumulated orthogonal transformation Q (a[k*n+j] = Q_kj).
static void tridiagonalize(std::vector<double>& a, int64_t n, std::vector<double>& d,
                           std::vector<double>& e, bool with_q) {
    for (int64_t i = n - 1; i >= 1; --i) {
        const int64_t l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (int64_t k = 0; k <= l; ++k) scale += std::abs(a[i * n + k]);
            if (scale == 0.0) {
                e[i] = a[i * n + l];
            } else {
                for (int64_t k = 0; k <= l; ++k) {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                double f = a[i * n + l];
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;

#pragma omp parallel for schedule(static)
                for (int64_t j = 0; j <= l; ++j) {
                    if (with_q) a[j * n + i] = a[i * n + j] / h;
                    double gj = 0.0;
                    for (int64_t k = 0; k <= j; ++k) gj += a[j * n + k] * a[i * n + k];
                    for (int64_t k = j + 1; k <= l; ++k) gj += a[k * n + j] * a[i * n + k];
                    e[j] = gj / h;
                }
                double f2 = 0.0;
                for (int64_t j = 0; j <= l; ++j) f2 += e[j] * a[i * n + j];
                const double hh = f2 / (h + h);
                for (int64_t j = 0; j <= l; ++j) e[j] -= hh * a[i * n + j];

#pragma omp parallel for schedule(static)
                for (int64_t j = 0; j <= l; ++j) {
                    const double fj = a[i * n + j];
                    const double gj = e[j];
                    for (int64_t k = 0; k <= j; ++k)
                        a[j * n + k] -= fj * e[k] + gj * a[i * n + k];
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;

    if (with_q) {
        for (int64_t i = 0; i < n; ++i) {
            const int64_t l = i;
            if (d[i] != 0.0) {
#pragma omp parallel for schedule(static)
                for (int64_t j = 0; j < l; ++j) {
                    double g = 0.0;
                    for (int64_t k = 0; k < l; ++k) g += a[i * n + k] * a[k * n + j];
                    for (int64_t k = 0; k < l; ++k) a[k * n + j] -= g * a[k * n + i];
                }
            }
            d[i] = a[i * n + i];
            a[i * n + i] = 1.0;
            for (int64_t j = 0; j < l; ++j) a[j * n + i] = a[i * n + j] = 0.0;
        }
    } else {
        for (int64_t i = 0; i < n; ++i) d[i] = a[i * n + i];
    }
}

// Implicit-shift QL on the tridiagonal (d, e).  When z is non-null, the
// plane rotations of each sweep are collected and applied to the rows of z
// in one parallel pass; every z row sees the rotations in the same order, so
// the result does not depend on the thread count.
static void ql_implicit(std::vector<double>& d, std::vector<double>& e, std::vector<double>* z,
                        int64_t n) {
    struct Rot {
        int64_t i;
        double c, s;
    };
    std::vector<Rot> rots;
    const double eps = std::numeric_limits<double>::epsilon();
    const double tiny = std::numeric_limits<double>::min();

    for (int64_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    for (int64_t l = 0; l < n; ++l) {
        int iter = 0;
        while (true) {
            int64_t m = l;
            while (m < n - 1) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd + tiny) break;
                ++m;
            }
            if (m == l) break;
            if (++iter > 50)
                throw SolveFailureError("QL failed to converge at eigenvalue " +
                                        std::to_string(l));
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            rots.clear();
            int64_t i = m - 1;
            bool underflow = false;
            for (; i >= l; --i) {
                double f = s * e[i];
                double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if (z) rots.push_back({i, c, s});
            }
            if (z && !rots.empty()) {
                std::vector<double>& zz = *z;
#pragma omp parallel for schedule(static)
                for (int64_t k = 0; k < n; ++k) {
                    double* row = &zz[k * n];
                    for (const Rot& t : rots) {
                        double f = row[t.i + 1];
                        row[t.i + 1] = t.s * row[t.i] + t.c * f;
                        row[t.i] = t.c * row[t.i] - t.s * f;
                    }
                }
            }
            if (underflow && i >= l) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

// Sort descending; ties keep ascending original index.  Returns the
// permutation applied.
static std::vector<int64_t> sort_descending(std::vector<double>& values) {
    std::vector<int64_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int64_t x, int64_t y) { return values[x] > values[y]; });
    std::vector<double> sorted(values.size());
    for (size_t k = 0; k < order.size(); ++k) sorted[k] = values[order[k]];
    values = std::move(sorted);
    return order;
}

// max_k ||A v_k - lambda_k v_k||_2 relative to max |lambda| (the 2-norm of A).
static double relative_residual(const SymMatrix& orig, const std::vector<double>& values,
                                const std::vector<double>& vectors) {
    const int64_t n = orig.n;
    double worst2 = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst2)
    for (int64_t k = 0; k < n; ++k) {
        const double* v = &vectors[k * n];
        double acc = 0.0;
        for (int64_t i = 0; i < n; ++i) {
            double av = 0.0;
            const double* row = &orig.a[i * n];
            for (int64_t j = 0; j < n; ++j) av += row[j] * v[j];
            double r = av - values[k] * v[i];
            acc += r * r;
        }
        worst2 = std::max(worst2, acc);
    }
    double norm = std::max(std::abs(values.front()), std::abs(values.back()));
    if (norm == 0.0) return std::sqrt(worst2);
    return std::sqrt(worst2) / norm;
}

static double apriori_residual(int64_t n) {
    return 30.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon();
}

EigResult dense_sym_eig(const SymMatrix& m, const EigOptions& opts) {
    check_input(m, opts);
    const int64_t n = m.n;
    std::vector<double> work = m.a;
    std::vector<double> d(n, 0.0), e(n, 0.0);

    if (n == 1) {
        EigResult r;
        r.values = {m.a[0]};
        if (opts.with_vectors) {
            r.vectors = {1.0};
            r.residual_bound = 0.0;
            r.certified_by_residual = true;
        } else {
            r.residual_bound = apriori_residual(1);
        }
        return r;
    }

    tridiagonalize(work, n, d, e, opts.with_vectors);
    ql_implicit(d, e, opts.with_vectors ? &work : nullptr, n);

    EigResult r;
    r.values = std::move(d);
    auto order = sort_descending(r.values);

    if (opts.with_vectors) {
        // work holds Q with eigenvector j in column j; emit row-major per
        // eigenvector in sorted order
        r.vectors.resize(n * n);
#pragma omp parallel for schedule(static)
        for (int64_t k = 0; k < n; ++k) {
            const int64_t src = order[k];
            for (int64_t i = 0; i < n; ++i) r.vectors[k * n + i] = work[i * n + src];
        }
        r.residual_bound = relative_residual(m, r.values, r.vectors);
        r.certified_by_residual = true;
    } else {
        r.residual_bound = apriori_residual(n);
        r.certified_by_residual = false;
    }
    return r;
}

EigResult dense_sym_eig_jacobi(const SymMatrix& m, const EigOptions& opts) {
    check_input(m, opts);
    const int64_t n = m.n;
    std::vector<double> a = m.a;
    std::vector<double> v;
    if (opts.with_vectors) {
        v.assign(n * n, 0.0);
        for (int64_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
    }

    double fro2 = 0.0;
    for (double x : a) fro2 += x * x;
    const double eps = std::numeric_limits<double>::epsilon();
    const double stop2 = fro2 * (30.0 * n * eps) * (30.0 * n * eps);

    bool converged = false;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        double off2 = 0.0;
        for (int64_t p = 0; p < n; ++p)
            for (int64_t q = p + 1; q < n; ++q) off2 += 2.0 * a[p * n + q] * a[p * n + q];
        if (off2 <= stop2) {
            converged = true;
            break;
        }
        for (int64_t p = 0; p < n - 1; ++p)
            for (int64_t q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (apq == 0.0) continue;
                double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e10) {
                    t = 0.5 / theta;
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                double app = a[p * n + p], aqq = a[q * n + q];
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = a[q * n + p] = 0.0;
                for (int64_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = a[p * n + k] = c * akp - s * akq;
                    a[k * n + q] = a[q * n + k] = s * akp + c * akq;
                }
                if (opts.with_vectors)
                    for (int64_t k = 0; k < n; ++k) {
                        double vkp = v[k * n + p], vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
            }
    }
    if (!converged) {
        // final check: the last sweep may have finished the job
        double off2 = 0.0;
        for (int64_t p = 0; p < n; ++p)
            for (int64_t q = p + 1; q < n; ++q) off2 += 2.0 * a[p * n + q] * a[p * n + q];
        if (off2 > stop2) throw SolveFailureError("Jacobi failed to converge");
    }

    EigResult r;
    r.values.resize(n);
    for (int64_t i = 0; i < n; ++i) r.values[i] = a[i * n + i];
    auto order = sort_descending(r.values);
    if (opts.with_vectors) {
        r.vectors.resize(n * n);
        for (int64_t k = 0; k < n; ++k)
            for (int64_t i = 0; i < n; ++i) r.vectors[k * n + i] = v[i * n + order[k]];
        r.residual_bound = relative_residual(m, r.values, r.vectors);
        r.certified_by_residual = true;
    } else {
        r.residual_bound = apriori_residual(n);
    }
    return r;
}

double determinant(SymMatrix m) {
    const int64_t n = m.n;
    if (static_cast<int64_t>(m.a.size()) != n * n)
        throw SizeMismatchError("matrix storage does not match its dimension");
    double det = 1.0;
    for (int64_t col = 0; col < n; ++col) {
        int64_t piv = col;
        for (int64_t r = col + 1; r < n; ++r)
            if (std::abs(m.at(r, col)) > std::abs(m.at(piv, col))) piv = r;
        if (m.at(piv, col) == 0.0) return 0.0;
        if (piv != col) {
            for (int64_t j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
            det = -det;
        }
        det *= m.at(col, col);
        for (int64_t r = col + 1; r < n; ++r) {
            double f = m.at(r, col) / m.at(col, col);
            if (f == 0.0) continue;
            for (int64_t j = col; j < n; ++j) m.at(r, j) -= f * m.at(col, j);
        }
    }
    return det;
}

} // namespace emlab
