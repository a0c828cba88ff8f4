#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

// Dense complex linear algebra for operators up to 16x16: products, Kronecker
// products, partial trace, Hermitian eigendecomposition (cyclic Jacobi), thin
// SVD, PSD square root and polar decomposition of tall operators.
namespace dampcode {

using cx = std::complex<double>;

class CMatrix {
public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
    CMatrix(int rows, int cols, std::initializer_list<cx> entries);

    static CMatrix zero(int rows, int cols) { return CMatrix(rows, cols); }
    static CMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    cx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const cx& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    const std::vector<cx>& data() const { return a_; }
    std::vector<cx>& data() { return a_; }

    CMatrix operator*(const CMatrix& rhs) const;
    CMatrix operator+(const CMatrix& rhs) const;
    CMatrix operator-(const CMatrix& rhs) const;
    CMatrix operator*(cx scalar) const;
    CMatrix& operator+=(const CMatrix& rhs);

    CMatrix adjoint() const;
    cx trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool finite() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cx> a_;
};

inline CMatrix operator*(cx scalar, const CMatrix& m) { return m * scalar; }

double max_abs_diff(const CMatrix& a, const CMatrix& b);
bool is_hermitian(const CMatrix& m, double tolerance);
bool is_unitary(const CMatrix& m, double tolerance);

/// Standard Kronecker product; dimensions multiply.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Reduce an n-qubit density matrix to the qubits in `keep` (ascending order
/// preserved; qubit 0 is the leftmost tensor factor). An empty keep set traces
/// everything out and returns the 1x1 matrix holding tr(rho).
CMatrix partial_trace(const CMatrix& rho, int nqubits, const std::vector<int>& keep);

struct EigenResult {
    std::vector<double> values; // ascending
    CMatrix vectors;            // unitary, columns are eigenvectors
};

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix. Eigenvector
/// columns are phase-normalized so their largest-magnitude entry is real
/// positive.
EigenResult hermitian_eigen(const CMatrix& m);

struct SvdResult {
    CMatrix u;                 // m x n, orthonormal columns
    std::vector<double> sigma; // descending, length n
    CMatrix w;                 // n x n unitary; t = u diag(sigma) w†
};

/// Thin SVD of a tall matrix (rows >= cols) via Jacobi on t†t. Left vectors
/// for singular values below tol::rank are completed by Gram-Schmidt against
/// the resolved ones.
SvdResult svd_thin(const CMatrix& t);

struct PolarResult {
    CMatrix isometry; // v, same shape as t, v†v = I
    CMatrix positive; // p = sqrt(t†t), Hermitian PSD
};

/// Polar decomposition t = v p of a tall matrix.
PolarResult polar_decompose(const CMatrix& t);

/// Unique PSD square root of a Hermitian PSD matrix. Throws if the input is
/// not Hermitian or has an eigenvalue below tol::psd_eigen.
CMatrix matrix_sqrt_psd(const CMatrix& m);

/// Multiply by a global phase so the largest-magnitude entry is real positive.
CMatrix normalize_global_phase(const CMatrix& m);

/// Phase-align each column of `m` against the matching column of `reference`
/// and return the aligned copy (used for comparisons quotienting column
/// phases).
CMatrix align_column_phases(const CMatrix& m, const CMatrix& reference);

} // namespace dampcode
