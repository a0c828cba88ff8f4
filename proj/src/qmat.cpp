#include "dampcode/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "dampcode/tolerances.hpp"

namespace dampcode {

CMatrix::CMatrix(int rows, int cols, std::initializer_list<cx> entries)
    : rows_(rows), cols_(cols), a_(entries) {
    if (a_.size() != static_cast<size_t>(rows) * cols)
        throw std::invalid_argument("CMatrix: entry count does not match shape");
}

CMatrix CMatrix::identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::operator*(const CMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("CMatrix: dimension mismatch in product");
    CMatrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const cx aik = (*this)(i, k);
            if (aik == cx{}) continue;
            for (int j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
        }
    }
    return out;
}

CMatrix CMatrix::operator+(const CMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("CMatrix: shape mismatch in sum");
    CMatrix out(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + rhs.a_[i];
    return out;
}

CMatrix CMatrix::operator-(const CMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("CMatrix: shape mismatch in difference");
    CMatrix out(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - rhs.a_[i];
    return out;
}

CMatrix CMatrix::operator*(cx scalar) const {
    CMatrix out(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] * scalar;
    return out;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("CMatrix: shape mismatch in sum");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
    return *this;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

cx CMatrix::trace() const {
    cx t{};
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::frobenius_norm() const {
    double s = 0;
    for (const cx& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double CMatrix::max_abs() const {
    double m = 0;
    for (const cx& v : a_) m = std::max(m, std::abs(v));
    return m;
}

bool CMatrix::finite() const {
    for (const cx& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0;
    for (size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

bool is_hermitian(const CMatrix& m, double tolerance) {
    if (m.rows() != m.cols()) return false;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = r; c < m.cols(); ++c)
            if (std::abs(m(r, c) - std::conj(m(c, r))) > tolerance) return false;
    return true;
}

bool is_unitary(const CMatrix& m, double tolerance) {
    if (m.rows() != m.cols()) return false;
    return max_abs_diff(m.adjoint() * m, CMatrix::identity(m.cols())) <= tolerance;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int ar = 0; ar < a.rows(); ++ar)
        for (int ac = 0; ac < a.cols(); ++ac) {
            const cx v = a(ar, ac);
            if (v == cx{}) continue;
            for (int br = 0; br < b.rows(); ++br)
                for (int bc = 0; bc < b.cols(); ++bc)
                    out(ar * b.rows() + br, ac * b.cols() + bc) = v * b(br, bc);
        }
    return out;
}

CMatrix partial_trace(const CMatrix& rho, int nqubits, const std::vector<int>& keep) {
    const int dim = 1 << nqubits;
    if (rho.rows() != dim || rho.cols() != dim)
        throw std::invalid_argument("partial_trace: matrix does not match qubit count");
    std::vector<int> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 0 || sorted[i] >= nqubits) throw std::invalid_argument("partial_trace: qubit index out of range");
        if (i > 0 && sorted[i] == sorted[i - 1]) throw std::invalid_argument("partial_trace: duplicate qubit index");
    }
    std::vector<int> traced;
    for (int q = 0; q < nqubits; ++q)
        if (!std::binary_search(sorted.begin(), sorted.end(), q)) traced.push_back(q);

    const int nk = static_cast<int>(sorted.size());
    CMatrix out(1 << nk, 1 << nk);
    // qubit 0 is the leftmost factor: bit position of qubit q is nqubits-1-q
    auto bit_at = [&](int index, int q) { return (index >> (nqubits - 1 - q)) & 1; };
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            bool diagonal_on_traced = true;
            for (int q : traced)
                if (bit_at(r, q) != bit_at(c, q)) { diagonal_on_traced = false; break; }
            if (!diagonal_on_traced) continue;
            int rr = 0, cc = 0;
            for (int k = 0; k < nk; ++k) {
                rr |= bit_at(r, sorted[k]) << (nk - 1 - k);
                cc |= bit_at(c, sorted[k]) << (nk - 1 - k);
            }
            out(rr, cc) += rho(r, c);
        }
    }
    return out;
}

namespace {

// Phase-normalize a column vector in place: largest-magnitude entry (first of
// equals within a relative slack) made real positive.
void normalize_column_phase(CMatrix& m, int col) {
    int best = -1;
    double best_mag = 0;
    for (int r = 0; r < m.rows(); ++r) {
        double mag = std::abs(m(r, col));
        if (mag > best_mag * (1.0 + 1e-12)) { best_mag = mag; best = r; }
    }
    if (best < 0 || best_mag < 1e-300) return;
    cx phase = m(best, col) / best_mag;
    cx correction = std::conj(phase);
    for (int r = 0; r < m.rows(); ++r) m(r, col) *= correction;
}

} // namespace

EigenResult hermitian_eigen(const CMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eigen: matrix must be square");
    if (!is_hermitian(m, tol::hermitian * std::max(1.0, m.max_abs())))
        throw std::invalid_argument("hermitian_eigen: matrix is not Hermitian");
    const int n = m.rows();
    CMatrix a = m;
    CMatrix v = CMatrix::identity(n);
    const double scale = std::max(1.0, a.frobenius_norm());

    auto off_norm = [&]() {
        double s = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) s += std::norm(a(p, q));
        return std::sqrt(2.0 * s);
    };

    for (int sweep = 0; sweep < tol::jacobi_max_sweeps && off_norm() > tol::jacobi * scale; ++sweep) {
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= tol::jacobi * scale * 1e-2) continue;
                const cx phase = apq / mag; // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // R restricted to (p,q): [c, s; -s e^{-i phi}, c e^{-i phi}]
                const cx rpp = c, rpq = s;
                const cx rqp = -s * std::conj(phase), rqq = c * std::conj(phase);
                for (int r = 0; r < n; ++r) { // A <- A R, V <- V R
                    const cx arp = a(r, p), arq = a(r, q);
                    a(r, p) = arp * rpp + arq * rqp;
                    a(r, q) = arp * rpq + arq * rqq;
                    const cx vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = vrp * rpp + vrq * rqp;
                    v(r, q) = vrp * rpq + vrq * rqq;
                }
                for (int col = 0; col < n; ++col) { // A <- R† A
                    const cx apc = a(p, col), aqc = a(q, col);
                    a(p, col) = std::conj(rpp) * apc + std::conj(rqp) * aqc;
                    a(q, col) = std::conj(rpq) * apc + std::conj(rqq) * aqc;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigenResult out;
    out.values.resize(n);
    out.vectors = CMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (int r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
        normalize_column_phase(out.vectors, k);
    }
    return out;
}

SvdResult svd_thin(const CMatrix& t) {
    const int m = t.rows(), n = t.cols();
    if (m < n) throw std::invalid_argument("svd_thin: expected rows >= cols");
    EigenResult eig = hermitian_eigen(t.adjoint() * t);

    SvdResult out;
    out.sigma.resize(n);
    out.u = CMatrix(m, n);
    out.w = CMatrix(n, n);
    // descending singular values
    for (int k = 0; k < n; ++k) {
        const int src = n - 1 - k;
        out.sigma[k] = std::sqrt(std::max(0.0, eig.values[src]));
        for (int r = 0; r < n; ++r) out.w(r, k) = eig.vectors(r, src);
    }
    std::vector<int> pending;
    for (int k = 0; k < n; ++k) {
        if (out.sigma[k] < tol::rank) { pending.push_back(k); continue; }
        for (int r = 0; r < m; ++r) {
            cx s{};
            for (int c = 0; c < n; ++c) s += t(r, c) * out.w(c, k);
            out.u(r, k) = s / out.sigma[k];
        }
    }
    // complete null-direction columns by Gram-Schmidt over the standard basis
    for (int k : pending) {
        for (int cand = 0; cand < m; ++cand) {
            std::vector<cx> e(m, cx{});
            e[cand] = 1.0;
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                if (out.sigma[j] < tol::rank && j > k) continue; // not built yet
                cx overlap{};
                for (int r = 0; r < m; ++r) overlap += std::conj(out.u(r, j)) * e[r];
                for (int r = 0; r < m; ++r) e[r] -= overlap * out.u(r, j);
            }
            double nrm = 0;
            for (const cx& x : e) nrm += std::norm(x);
            nrm = std::sqrt(nrm);
            if (nrm > 0.5) {
                for (int r = 0; r < m; ++r) out.u(r, k) = e[r] / nrm;
                break;
            }
        }
    }
    return out;
}

PolarResult polar_decompose(const CMatrix& t) {
    if (!t.finite()) throw std::invalid_argument("polar_decompose: non-finite input");
    SvdResult svd = svd_thin(t);
    const int m = t.rows(), n = t.cols();
    PolarResult out;
    out.isometry = CMatrix(m, n);
    out.positive = CMatrix(n, n);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < n; ++c) {
            cx s{};
            for (int k = 0; k < n; ++k) s += svd.u(r, k) * std::conj(svd.w(c, k));
            out.isometry(r, c) = s;
        }
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            cx s{};
            for (int k = 0; k < n; ++k) s += svd.w(r, k) * svd.sigma[k] * std::conj(svd.w(c, k));
            out.positive(r, c) = s;
        }
    return out;
}

CMatrix matrix_sqrt_psd(const CMatrix& m) {
    if (!is_hermitian(m, tol::hermitian * std::max(1.0, m.max_abs())))
        throw std::invalid_argument("matrix_sqrt_psd: matrix is not Hermitian");
    EigenResult eig = hermitian_eigen(m);
    const int n = m.rows();
    for (double v : eig.values)
        if (v < tol::psd_eigen) throw std::invalid_argument("matrix_sqrt_psd: negative eigenvalue beyond tolerance");
    CMatrix out(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            cx s{};
            for (int k = 0; k < n; ++k)
                s += eig.vectors(r, k) * std::sqrt(std::max(0.0, eig.values[k])) * std::conj(eig.vectors(c, k));
            out(r, c) = s;
        }
    return out;
}

CMatrix normalize_global_phase(const CMatrix& m) {
    CMatrix out = m;
    int best_r = 0, best_c = 0;
    double best = -1;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (std::abs(m(r, c)) > best * (1.0 + 1e-12)) { best = std::abs(m(r, c)); best_r = r; best_c = c; }
    if (best < 1e-300) return out;
    cx correction = std::conj(m(best_r, best_c) / best);
    for (auto& v : out.data()) v *= correction;
    return out;
}

CMatrix align_column_phases(const CMatrix& m, const CMatrix& reference) {
    if (m.rows() != reference.rows() || m.cols() != reference.cols())
        throw std::invalid_argument("align_column_phases: shape mismatch");
    CMatrix out = m;
    for (int c = 0; c < m.cols(); ++c) {
        int best = 0;
        double best_mag = -1;
        for (int r = 0; r < m.rows(); ++r)
            if (std::abs(reference(r, c)) > best_mag) { best_mag = std::abs(reference(r, c)); best = r; }
        if (best_mag < 1e-300 || std::abs(m(best, c)) < 1e-300) continue;
        cx phase = (reference(best, c) / std::abs(reference(best, c))) /
                   (m(best, c) / std::abs(m(best, c)));
        for (int r = 0; r < m.rows(); ++r) out(r, c) *= phase;
    }
    return out;
}

} // namespace dampcode
