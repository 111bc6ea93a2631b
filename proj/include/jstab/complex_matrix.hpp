#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace jstab {

using Complex = std::complex<double>;

// Dense rectangular complex matrix. Values are immutable after construction
// and every entry is validated finite, so arithmetic never propagates NaNs
// silently. All operations return new values; instances are safe to share
// across threads.
class ComplexMatrix {
public:
    ComplexMatrix(int rows, int cols); // zero-filled
    ComplexMatrix(int rows, int cols, std::vector<Complex> entries);

    static ComplexMatrix zero(int rows, int cols);
    static ComplexMatrix identity(int n);
    // Matrix unit: 1 at (i, j), zero elsewhere.
    static ComplexMatrix unit(int rows, int cols, int i, int j);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Complex& operator()(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }
    const std::vector<Complex>& entries() const { return entries_; }
    bool same_shape(const ComplexMatrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    int rows_;
    int cols_;
    std::vector<Complex> entries_;
    void validate() const;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
ComplexMatrix operator*(double s, const ComplexMatrix& a);

// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& x);
// Plain transpose, no conjugation.
ComplexMatrix transpose(const ComplexMatrix& x);
// Jordan triple product x * x^* * x.
ComplexMatrix triple(const ComplexMatrix& x);

// Frobenius inner product, conjugate-linear in the first argument.
Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& x);
double max_abs_entry(const ComplexMatrix& x);

// Operator norm (largest singular value) via power iteration on x^* x with a
// fixed pseudo-random start vector. Deterministic: identical input bits give
// identical output bits.
double op_norm(const ComplexMatrix& x);

} // namespace jstab
