#include "dampcode/states.hpp"

#include <cmath>
#include <stdexcept>

#include "dampcode/tolerances.hpp"

namespace dampcode {

namespace {

int qubits_for_dim(size_t dim) {
    for (int n = 1; n <= 4; ++n)
        if (dim == (1u << n)) return n;
    throw std::invalid_argument("state dimension must be a power of two between 2 and 16");
}

} // namespace

PureState::PureState(std::vector<cx> amplitudes) : amps_(std::move(amplitudes)) {
    nqubits_ = qubits_for_dim(amps_.size());
    double n2 = 0;
    for (const cx& a : amps_) n2 += std::norm(a);
    if (std::abs(std::sqrt(n2) - 1.0) > tol::unit_norm)
        throw std::invalid_argument("PureState: amplitudes are not normalized");
}

CMatrix PureState::projector() const {
    const int d = dim();
    CMatrix out(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) out(r, c) = amps_[r] * std::conj(amps_[c]);
    return out;
}

CMatrix PureState::column() const {
    CMatrix out(dim(), 1);
    for (int r = 0; r < dim(); ++r) out(r, 0) = amps_[r];
    return out;
}

DensityMatrix::DensityMatrix(int nqubits, CMatrix m) : nqubits_(nqubits), m_(std::move(m)) {
    if (nqubits < 1 || nqubits > 4) throw std::invalid_argument("DensityMatrix: 1..4 qubits supported");
    const int d = 1 << nqubits;
    if (m_.rows() != d || m_.cols() != d) throw std::invalid_argument("DensityMatrix: shape mismatch");
    if (!m_.finite()) throw std::invalid_argument("DensityMatrix: non-finite entries");
    if (!is_hermitian(m_, tol::hermitian)) throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(m_.trace().real() - 1.0) > tol::trace_one || std::abs(m_.trace().imag()) > tol::trace_one)
        throw std::invalid_argument("DensityMatrix: trace is not 1");
    EigenResult eig = hermitian_eigen(m_);
    for (double v : eig.values)
        if (v < tol::psd_eigen) throw std::invalid_argument("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    return DensityMatrix(psi.nqubits(), psi.projector());
}

const CMatrix& pauli_x() {
    static const CMatrix m(2, 2, {0, 1, 1, 0});
    return m;
}

const CMatrix& pauli_y() {
    static const CMatrix m(2, 2, {0, cx(0, -1), cx(0, 1), 0});
    return m;
}

const CMatrix& pauli_z() {
    static const CMatrix m(2, 2, {1, 0, 0, -1});
    return m;
}

const CMatrix& hadamard() {
    static const CMatrix m = [] {
        const double s = 1.0 / std::sqrt(2.0);
        return CMatrix(2, 2, {s, s, s, -s});
    }();
    return m;
}

double fidelity(const PureState& psi, const CMatrix& rho) {
    const auto& a = psi.amplitudes();
    cx f{};
    for (int r = 0; r < rho.rows(); ++r)
        for (int c = 0; c < rho.cols(); ++c) f += std::conj(a[r]) * rho(r, c) * a[c];
    return f.real();
}

const std::array<PureState, 6>& six_test_states() {
    static const std::array<PureState, 6> states = [] {
        const double s = 1.0 / std::sqrt(2.0);
        return std::array<PureState, 6>{
            PureState(1, 0),
            PureState(0, 1),
            PureState(s, s),
            PureState(s, -s),
            PureState(s, cx(0, s)),
            PureState(s, cx(0, -s)),
        };
    }();
    return states;
}

const std::array<std::string, 6>& six_test_state_names() {
    static const std::array<std::string, 6> names = {"0", "1", "+", "-", "+i", "-i"};
    return names;
}

} // namespace dampcode
