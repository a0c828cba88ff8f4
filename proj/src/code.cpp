#include "dampcode/code.hpp"

#include <cmath>
#include <stdexcept>

#include "dampcode/tolerances.hpp"

namespace dampcode {

const CMatrix& encoding_isometry() {
    static const CMatrix e = [] {
        CMatrix m(4, 2);
        // columns |++> and |--> in the computational basis
        const double h = 0.5;
        m(0, 0) = h;  m(0, 1) = h;
        m(1, 0) = h;  m(1, 1) = -h;
        m(2, 0) = h;  m(2, 1) = -h;
        m(3, 0) = h;  m(3, 1) = h;
        return m;
    }();
    return e;
}

DensityMatrix encode(const PureState& psi) {
    if (psi.nqubits() != 1) throw std::invalid_argument("encode: single-qubit input required");
    const CMatrix v = encode_vector(psi);
    return DensityMatrix(2, v * v.adjoint());
}

CMatrix encode_vector(const PureState& psi) {
    if (psi.nqubits() != 1) throw std::invalid_argument("encode_vector: single-qubit input required");
    return encoding_isometry() * psi.column();
}

std::array<SyndromeBranch, 4> syndrome_branches(const CMatrix& rho2, DampingParam gamma) {
    if (rho2.rows() != 4 || rho2.cols() != 4)
        throw std::invalid_argument("syndrome_branches: two-qubit state required");
    const LabeledChannel pair = tensor(amplitude_damping(gamma), amplitude_damping(gamma));
    std::array<SyndromeBranch, 4> out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            BranchOutcome b = apply_branch(pair, rho2, {i, j});
            SyndromeBranch& s = out[2 * i + j];
            s.i = i;
            s.j = j;
            s.state = std::move(b.state);
            s.prob = b.prob;
            s.negligible = b.prob < tol::branch_prob;
        }
    return out;
}

CMatrix decode(const CMatrix& rho2) {
    if (rho2.rows() != 4 || rho2.cols() != 4)
        throw std::invalid_argument("decode: two-qubit state required");
    CMatrix out(2, 2);
    for (int b = 0; b < 2; ++b) {
        // K_b = I (x) <b| picks qubit A conditioned on B = b
        CMatrix sub(2, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) sub(r, c) = rho2(2 * r + b, 2 * c + b);
        sub = hadamard() * sub * hadamard().adjoint();
        if (b == 1) sub = pauli_z() * sub * pauli_z().adjoint();
        out += sub;
    }
    return out;
}

CMatrix decode_isometry(const CMatrix& rho2) {
    if (rho2.rows() != 4 || rho2.cols() != 4)
        throw std::invalid_argument("decode_isometry: two-qubit state required");
    const CMatrix& e = encoding_isometry();
    return e.adjoint() * rho2 * e;
}

} // namespace dampcode
