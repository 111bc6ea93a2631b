#include "jstab/complex_matrix.hpp"

#include <cmath>
#include <string>

#include "jstab/errors.hpp"
#include "jstab/rng.hpp"

namespace jstab {

namespace {

void require_shape(int rows, int cols) {
    if (rows < 1 || cols < 1) {
        throw InvalidArgumentError("ComplexMatrix: rows and cols must be positive, got " +
                                   std::to_string(rows) + "x" + std::to_string(cols));
    }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (!a.same_shape(b)) {
        throw InvalidArgumentError(std::string(op) + ": shape mismatch " +
                                   std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                   " vs " + std::to_string(b.rows()) + "x" +
                                   std::to_string(b.cols()));
    }
}

} // namespace

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    require_shape(rows, cols);
    entries_.assign(static_cast<std::size_t>(rows) * cols, Complex(0.0, 0.0));
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    require_shape(rows, cols);
    if (entries_.size() != static_cast<std::size_t>(rows) * cols) {
        throw InvalidArgumentError("ComplexMatrix: entry count " +
                                   std::to_string(entries_.size()) + " does not match shape " +
                                   std::to_string(rows) + "x" + std::to_string(cols));
    }
    validate();
}

void ComplexMatrix::validate() const {
    for (const Complex& z : entries_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw InvalidArgumentError("ComplexMatrix: non-finite entry");
        }
    }
}

ComplexMatrix ComplexMatrix::zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

ComplexMatrix ComplexMatrix::identity(int n) {
    require_shape(n, n);
    std::vector<Complex> e(static_cast<std::size_t>(n) * n, Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * n + i] = Complex(1.0, 0.0);
    return ComplexMatrix(n, n, std::move(e));
}

ComplexMatrix ComplexMatrix::unit(int rows, int cols, int i, int j) {
    require_shape(rows, cols);
    if (i < 0 || i >= rows || j < 0 || j >= cols) {
        throw InvalidArgumentError("ComplexMatrix::unit: index out of range");
    }
    std::vector<Complex> e(static_cast<std::size_t>(rows) * cols, Complex(0.0, 0.0));
    e[static_cast<std::size_t>(i) * cols + j] = Complex(1.0, 0.0);
    return ComplexMatrix(rows, cols, std::move(e));
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "operator+");
    std::vector<Complex> e(a.entries());
    for (std::size_t k = 0; k < e.size(); ++k) e[k] += b.entries()[k];
    return ComplexMatrix(a.rows(), a.cols(), std::move(e));
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "operator-");
    std::vector<Complex> e(a.entries());
    for (std::size_t k = 0; k < e.size(); ++k) e[k] -= b.entries()[k];
    return ComplexMatrix(a.rows(), a.cols(), std::move(e));
}

ComplexMatrix operator-(const ComplexMatrix& a) { return Complex(-1.0, 0.0) * a; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw InvalidArgumentError("operator*: inner dimensions disagree, " +
                                   std::to_string(a.cols()) + " vs " + std::to_string(b.rows()));
    }
    std::vector<Complex> e(static_cast<std::size_t>(a.rows()) * b.cols(), Complex(0.0, 0.0));
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) {
                e[static_cast<std::size_t>(i) * b.cols() + j] += aik * b(k, j);
            }
        }
    }
    return ComplexMatrix(a.rows(), b.cols(), std::move(e));
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
    std::vector<Complex> e(a.entries());
    for (Complex& z : e) z *= s;
    return ComplexMatrix(a.rows(), a.cols(), std::move(e));
}

ComplexMatrix operator*(double s, const ComplexMatrix& a) { return Complex(s, 0.0) * a; }

ComplexMatrix adjoint(const ComplexMatrix& x) {
    std::vector<Complex> e(static_cast<std::size_t>(x.cols()) * x.rows());
    for (int i = 0; i < x.rows(); ++i) {
        for (int j = 0; j < x.cols(); ++j) {
            e[static_cast<std::size_t>(j) * x.rows() + i] = std::conj(x(i, j));
        }
    }
    return ComplexMatrix(x.cols(), x.rows(), std::move(e));
}

ComplexMatrix transpose(const ComplexMatrix& x) {
    std::vector<Complex> e(static_cast<std::size_t>(x.cols()) * x.rows());
    for (int i = 0; i < x.rows(); ++i) {
        for (int j = 0; j < x.cols(); ++j) {
            e[static_cast<std::size_t>(j) * x.rows() + i] = x(i, j);
        }
    }
    return ComplexMatrix(x.cols(), x.rows(), std::move(e));
}

ComplexMatrix triple(const ComplexMatrix& x) { return x * adjoint(x) * x; }

Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "frobenius_inner");
    Complex acc(0.0, 0.0);
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        acc += std::conj(a.entries()[k]) * b.entries()[k];
    }
    return acc;
}

double frobenius_norm(const ComplexMatrix& x) {
    double acc = 0.0;
    for (const Complex& z : x.entries()) acc += std::norm(z);
    return std::sqrt(acc);
}

double max_abs_entry(const ComplexMatrix& x) {
    double m = 0.0;
    for (const Complex& z : x.entries()) m = std::max(m, std::abs(z));
    return m;
}

double op_norm(const ComplexMatrix& x) {
    constexpr int kMaxIterations = 10000;
    constexpr double kRelTol = 1e-14;

    const int n = x.cols();
    // Gram matrix G = x^* x, Hermitian positive semidefinite.
    std::vector<Complex> gram(static_cast<std::size_t>(n) * n, Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Complex acc(0.0, 0.0);
            for (int k = 0; k < x.rows(); ++k) acc += std::conj(x(k, i)) * x(k, j);
            gram[static_cast<std::size_t>(i) * n + j] = acc;
        }
    }
    double gmax = 0.0;
    for (const Complex& z : gram) gmax = std::max(gmax, std::abs(z));
    if (gmax == 0.0) return 0.0;

    // Fixed pseudo-random start vector; a deterministic but structureless
    // direction avoids accidental orthogonality to the top eigenspace.
    auto gen = rng_stream(0x6f706e6f726d5ull);
    std::vector<Complex> v(n);
    double vnorm = 0.0;
    for (Complex& z : v) {
        z = complex_normal(gen);
        vnorm += std::norm(z);
    }
    vnorm = std::sqrt(vnorm);
    for (Complex& z : v) z /= vnorm;

    std::vector<Complex> w(n);
    double rq_prev = -1.0;
    double rq = 0.0;
    int settled = 0;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        double wnorm = 0.0;
        for (int i = 0; i < n; ++i) {
            Complex acc(0.0, 0.0);
            for (int j = 0; j < n; ++j) acc += gram[static_cast<std::size_t>(i) * n + j] * v[j];
            w[i] = acc;
            wnorm += std::norm(acc);
        }
        wnorm = std::sqrt(wnorm);
        if (wnorm == 0.0) {
            // Start vector landed in the kernel; restart from a fresh direction.
            double nn = 0.0;
            for (Complex& z : v) {
                z = complex_normal(gen);
                nn += std::norm(z);
            }
            nn = std::sqrt(nn);
            for (Complex& z : v) z /= nn;
            rq_prev = -1.0;
            settled = 0;
            continue;
        }
        // Rayleigh quotient v^* G v for the unit vector v.
        double quo = 0.0;
        for (int i = 0; i < n; ++i) quo += (std::conj(v[i]) * w[i]).real();
        rq = quo;
        for (int i = 0; i < n; ++i) v[i] = w[i] / wnorm;
        if (rq_prev >= 0.0 && std::abs(rq - rq_prev) < kRelTol * rq) {
            if (++settled >= 2) break;
        } else {
            settled = 0;
        }
        rq_prev = rq;
    }
    return std::sqrt(std::max(rq, 0.0));
}

} // namespace jstab
