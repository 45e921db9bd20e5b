#ifndef BLOCKFIEDLER_LINALG_HPP
#define BLOCKFIEDLER_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "blockfiedler/errors.hpp"
#include "blockfiedler/graph.hpp"

namespace blockfiedler {

using Vector = std::vector<double>;

/// Dense symmetric matrix, row-major, both triangles stored. Every write goes
/// through set(), which mirrors, so symmetry is exact.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t order) : n_(order), a_(order * order, 0.0) {}

    static SymMatrix identity(std::size_t order) {
        SymMatrix m(order);
        for (std::size_t i = 0; i < order; ++i) m.set(i, i, 1.0);
        return m;
    }

    std::size_t order() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    void set(std::size_t i, std::size_t j, double v) {
        a_[i * n_ + j] = v;
        a_[j * n_ + i] = v;
    }

    std::span<const double> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }

    double frobenius_norm() const {
        double s = 0.0;
        for (double x : a_) s += x * x;
        return std::sqrt(s);
    }

    Vector multiply(std::span<const double> x) const {
        Vector y(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            const double *r = a_.data() + i * n_;
            double s = 0.0;
            for (std::size_t j = 0; j < n_; ++j) s += r[j] * x[j];
            y[i] = s;
        }
        return y;
    }

    friend bool operator==(const SymMatrix &, const SymMatrix &) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double max_abs(std::span<const double> a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

/// ||m x - lambda x||_2
inline double eigen_residual(const SymMatrix &m, std::span<const double> x, double lambda) {
    auto y = m.multiply(x);
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double d = y[i] - lambda * x[i];
        s += d * d;
    }
    return std::sqrt(s);
}

/// L(G) = D - A with weights; vertex v is row v-1.
inline SymMatrix laplacian(const Graph &g) {
    SymMatrix l(g.order());
    std::vector<double> diag(g.order(), 0.0);
    for (const auto &e : g.edges()) {
        l.set(e.u - 1, e.v - 1, -e.weight);
        diag[e.u - 1] += e.weight;
        diag[e.v - 1] += e.weight;
    }
    for (std::size_t i = 0; i < g.order(); ++i) l.set(i, i, diag[i]);
    return l;
}

/// Rows and columns of `vertices` (1-based labels, ascending).
inline SymMatrix principal_submatrix(const SymMatrix &m, const VertexSet &vertices) {
    if (vertices.empty()) throw PreconditionError("principal_submatrix: empty vertex set");
    SymMatrix out(vertices.size());
    for (std::size_t a = 0; a < vertices.size(); ++a) {
        if (vertices[a] < 1 || vertices[a] > m.order()) {
            throw PreconditionError("principal_submatrix: vertex " + std::to_string(vertices[a]) + " out of range");
        }
        if (a > 0 && vertices[a] <= vertices[a - 1]) {
            throw PreconditionError("principal_submatrix: vertex set must be strictly ascending");
        }
        for (std::size_t b = 0; b <= a; ++b) out.set(a, b, m(vertices[a] - 1, vertices[b] - 1));
    }
    return out;
}

// ---------------------------------------------------------------------------

struct JacobiOptions {
    double offdiag_tol = 1e-12;  // stop when off-diagonal Frobenius mass < tol * ||M||_F
    std::size_t max_sweeps = 100;
};

struct EigenDecomposition {
    Vector eigenvalues;                // ascending
    std::vector<Vector> eigenvectors;  // eigenvectors[i] pairs with eigenvalues[i]; unit 2-norm
    std::size_t sweeps = 0;
};

/// Flips v so that its largest-magnitude entry is positive. Entries within a
/// relative 1e-9 of the maximum count as tied; the lowest index wins.
inline void canonicalize_sign(Vector &v) {
    const double m = max_abs(v);
    if (m == 0.0) return;
    for (double x : v) {
        if (std::abs(x) >= m * (1.0 - 1e-9)) {
            if (x < 0.0)
                for (double &y : v) y = -y;
            return;
        }
    }
}

/// Cyclic Jacobi eigensolver for dense symmetric matrices.
inline EigenDecomposition eig_sym(const SymMatrix &m, const JacobiOptions &opts = {}) {
    const std::size_t n = m.order();
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
    std::vector<double> v(n * n, 0.0);  // columns are eigenvectors
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    auto offdiag = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a[i * n + j] * a[i * n + j];
        return std::sqrt(s);
    };

    const double scale = m.frobenius_norm();
    std::size_t sweep = 0;
    if (scale > 0.0) {
        const double threshold = opts.offdiag_tol * scale;
        while (offdiag() >= threshold) {
            if (sweep == opts.max_sweeps) {
                throw ConvergenceError("eig_sym: no convergence after " + std::to_string(opts.max_sweeps) +
                                       " Jacobi sweeps");
            }
            ++sweep;
            for (std::size_t p = 0; p + 1 < n; ++p) {
                for (std::size_t q = p + 1; q < n; ++q) {
                    const double apq = a[p * n + q];
                    if (apq == 0.0) continue;
                    const double app = a[p * n + p], aqq = a[q * n + q];
                    const double theta = (aqq - app) / (2.0 * apq);
                    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    const double c = 1.0 / std::sqrt(t * t + 1.0);
                    const double s = t * c;
                    const double tau = s / (1.0 + c);
                    a[p * n + p] = app - t * apq;
                    a[q * n + q] = aqq + t * apq;
                    a[p * n + q] = a[q * n + p] = 0.0;
                    for (std::size_t r = 0; r < n; ++r) {
                        if (r == p || r == q) continue;
                        const double arp = a[r * n + p], arq = a[r * n + q];
                        const double np = arp - s * (arq + tau * arp);
                        const double nq = arq + s * (arp - tau * arq);
                        a[r * n + p] = a[p * n + r] = np;
                        a[r * n + q] = a[q * n + r] = nq;
                    }
                    for (std::size_t r = 0; r < n; ++r) {
                        const double vrp = v[r * n + p], vrq = v[r * n + q];
                        v[r * n + p] = vrp - s * (vrq + tau * vrp);
                        v[r * n + q] = vrq + s * (vrp - tau * vrq);
                    }
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });

    EigenDecomposition out;
    out.sweeps = sweep;
    out.eigenvalues.reserve(n);
    out.eigenvectors.reserve(n);
    for (std::size_t idx : order) {
        out.eigenvalues.push_back(a[idx * n + idx]);
        Vector col(n);
        for (std::size_t r = 0; r < n; ++r) col[r] = v[r * n + idx];
        canonicalize_sign(col);
        out.eigenvectors.push_back(std::move(col));
    }
    return out;
}

// ---------------------------------------------------------------------------

/// Lower-triangular Cholesky factor M = L L^T.
class Cholesky {
public:
    explicit Cholesky(const SymMatrix &m) : n_(m.order()), l_(n_ * n_, 0.0) {
        const double scale = std::max(1.0, m.frobenius_norm());
        for (std::size_t j = 0; j < n_; ++j) {
            double d = m(j, j);
            for (std::size_t k = 0; k < j; ++k) d -= l_[j * n_ + k] * l_[j * n_ + k];
            if (!(d > 1e-14 * scale)) {
                throw NotPositiveDefinite("Cholesky: non-positive pivot " + std::to_string(d) + " at row " +
                                          std::to_string(j));
            }
            const double ljj = std::sqrt(d);
            l_[j * n_ + j] = ljj;
            for (std::size_t i = j + 1; i < n_; ++i) {
                double s = m(i, j);
                for (std::size_t k = 0; k < j; ++k) s -= l_[i * n_ + k] * l_[j * n_ + k];
                l_[i * n_ + j] = s / ljj;
            }
        }
    }

    std::size_t order() const { return n_; }

    Vector solve(std::span<const double> b) const {
        if (b.size() != n_) throw PreconditionError("Cholesky::solve: dimension mismatch");
        Vector y(b.begin(), b.end());
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t k = 0; k < i; ++k) y[i] -= l_[i * n_ + k] * y[k];
            y[i] /= l_[i * n_ + i];
        }
        for (std::size_t i = n_; i-- > 0;) {
            for (std::size_t k = i + 1; k < n_; ++k) y[i] -= l_[k * n_ + i] * y[k];
            y[i] /= l_[i * n_ + i];
        }
        return y;
    }

private:
    std::size_t n_;
    std::vector<double> l_;
};

inline Vector spd_solve(const SymMatrix &m, std::span<const double> b) { return Cholesky(m).solve(b); }

// ---------------------------------------------------------------------------

struct PowerOptions {
    double rayleigh_tol = 1e-13;   // relative change of successive Rayleigh quotients
    double residual_tol = 1e-10;   // relative eigen-residual of the unit iterate
    std::size_t max_iterations = 50000;
};

struct PerronData {
    double value = 0.0;  // Perron value of lc^{-1}
    Vector vector;       // strictly positive, entries sum to 1
    std::size_t iterations = 0;
    double residual = 0.0;  // ||lc^{-1} x - value x|| / (value ||x||) at exit
};

/// Perron value and vector of lc^{-1} by power iteration from the all-ones
/// vector, applying the inverse through one Cholesky factorization.
inline PerronData perron_of_inverse(const SymMatrix &lc, const PowerOptions &opts = {}) {
    const std::size_t n = lc.order();
    if (n == 0) throw PreconditionError("perron_of_inverse: empty matrix");
    const Cholesky chol(lc);

    Vector x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double previous = 0.0;
    for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
        Vector y = chol.solve(x);
        const double rq = dot(x, y);
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) res += (y[i] - rq * x[i]) * (y[i] - rq * x[i]);
        res = std::sqrt(res) / std::abs(rq);
        const bool settled = it > 1 && std::abs(rq - previous) <= opts.rayleigh_tol * std::abs(rq);
        const double ny = norm2(y);
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
        previous = rq;
        if (settled && res <= opts.residual_tol) {
            PerronData out;
            // Rayleigh quotient of the final iterate.
            out.value = dot(x, chol.solve(x));
            out.iterations = it;
            out.residual = res;
            const double total = std::accumulate(x.begin(), x.end(), 0.0);
            out.vector = x;
            for (double &e : out.vector) e /= total;
            if (std::any_of(out.vector.begin(), out.vector.end(), [](double e) { return !(e > 0.0); })) {
                throw ConsistencyError("perron_of_inverse: Perron vector is not strictly positive; "
                                       "input is not a bottleneck submatrix");
            }
            return out;
        }
    }
    throw ConvergenceError("perron_of_inverse: no convergence after " + std::to_string(opts.max_iterations) +
                           " iterations");
}

}  // namespace blockfiedler

#endif  // BLOCKFIEDLER_LINALG_HPP
