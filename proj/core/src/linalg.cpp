#include "rankfd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rankfd/errors.hpp"

namespace rankfd::num {

namespace {

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

} // namespace

std::vector<double> symmetric_eigenvalues(const Matrix& m) {
    if (m.rows() != m.cols())
        throw domain_error("symmetric_eigenvalues: matrix is not square");
    const std::size_t n = m.rows();
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            asym = std::max(asym, std::abs(m(i, j) - m(j, i)));
    if (asym > 1e-10 * std::max(m.max_abs(), 1e-300))
        throw domain_error("symmetric_eigenvalues: matrix is not symmetric");

    Matrix a = m;
    // symmetrize exactly so rotations stay consistent
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = a(j, i) = v;
        }

    const double scale = std::max(a.max_abs(), 1e-300);
    for (int sweep = 0; sweep < 60; ++sweep) {
        if (off_diagonal_norm(a) <= 1e-15 * n * scale) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-18 * scale) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }

    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

Svd singular_value_decomposition(const Matrix& m) {
    const bool flip = m.rows() < m.cols();
    Matrix a = flip ? m.transposed() : m; // rows >= cols
    const std::size_t rows = a.rows(), cols = a.cols();

    Matrix v = Matrix::identity(cols);
    const double eps = std::numeric_limits<double>::epsilon();

    for (int sweep = 0; sweep < 60; ++sweep) {
        bool converged = true;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t k = 0; k < rows; ++k) {
                    alpha += a(k, p) * a(k, p);
                    beta += a(k, q) * a(k, q);
                    gamma += a(k, p) * a(k, q);
                }
                if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) || gamma == 0.0)
                    continue;
                converged = false;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t k = 0; k < rows; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < cols; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        if (converged) break;
    }

    std::vector<double> sigma(cols);
    Matrix u(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        double norm = 0.0;
        for (std::size_t k = 0; k < rows; ++k) norm += a(k, j) * a(k, j);
        norm = std::sqrt(norm);
        sigma[j] = norm;
        if (norm > 0.0)
            for (std::size_t k = 0; k < rows; ++k) u(k, j) = a(k, j) / norm;
    }

    // sort descending by singular value
    std::vector<std::size_t> order(cols);
    for (std::size_t j = 0; j < cols; ++j) order[j] = j;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });
    Svd out;
    out.sigma.resize(cols);
    out.u = Matrix(rows, cols);
    out.v = Matrix(cols, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        out.sigma[j] = sigma[order[j]];
        for (std::size_t k = 0; k < rows; ++k) out.u(k, j) = u(k, order[j]);
        for (std::size_t k = 0; k < cols; ++k) out.v(k, j) = v(k, order[j]);
    }

    if (flip) std::swap(out.u, out.v);
    return out;
}

double singular_value_cutoff(const Matrix& m, const std::vector<double>& sigma) {
    const double smax = sigma.empty() ? 0.0 : sigma.front();
    return static_cast<double>(std::max(m.rows(), m.cols())) *
           std::numeric_limits<double>::epsilon() * smax;
}

std::size_t matrix_rank(const Matrix& m) {
    const Svd dec = singular_value_decomposition(m);
    const double cut = singular_value_cutoff(m, dec.sigma);
    std::size_t r = 0;
    for (double s : dec.sigma)
        if (s > cut) ++r;
    return r;
}

} // namespace rankfd::num
