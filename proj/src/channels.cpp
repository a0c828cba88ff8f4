#include "dampcode/channels.hpp"

#include <cmath>
#include <stdexcept>

#include "dampcode/tolerances.hpp"

namespace dampcode {

double LabeledChannel::completeness_defect() const {
    const int d = 1 << nqubits;
    CMatrix sum(d, d);
    for (const auto& b : branches) sum += b.op.adjoint() * b.op;
    return max_abs_diff(sum, CMatrix::identity(d));
}

const KrausBranch& LabeledChannel::branch(const std::vector<int>& label) const {
    for (const auto& b : branches)
        if (b.label == label) return b;
    throw std::invalid_argument("LabeledChannel: unknown branch label");
}

DampingParam::DampingParam(double g) : gamma(g) {
    if (!(g >= 0.0 && g <= 1.0)) throw std::invalid_argument("DampingParam: gamma must be in [0, 1]");
}

LabeledChannel amplitude_damping(DampingParam gamma) {
    const double g = gamma.gamma;
    LabeledChannel ch;
    ch.nqubits = 1;
    ch.branches.push_back({{0}, CMatrix(2, 2, {1, 0, 0, std::sqrt(1.0 - g)})});
    ch.branches.push_back({{1}, CMatrix(2, 2, {0, std::sqrt(g), 0, 0})});
    return ch;
}

CMatrix apply(const LabeledChannel& channel, const CMatrix& rho) {
    const int d = 1 << channel.nqubits;
    if (rho.rows() != d || rho.cols() != d)
        throw std::invalid_argument("apply: state dimension does not match channel");
    CMatrix out(d, d);
    for (const auto& b : channel.branches) out += b.op * rho * b.op.adjoint();
    return out;
}

BranchOutcome apply_branch(const LabeledChannel& channel, const CMatrix& rho,
                           const std::vector<int>& label) {
    const KrausBranch& b = channel.branch(label);
    if (rho.rows() != b.op.cols())
        throw std::invalid_argument("apply_branch: state dimension does not match channel");
    CMatrix m = b.op * rho * b.op.adjoint();
    double p = m.trace().real();
    return {SubnormalizedState{channel.nqubits, std::move(m)}, p};
}

LabeledChannel tensor(const LabeledChannel& a, const LabeledChannel& b) {
    if (a.nqubits + b.nqubits > 4)
        throw std::invalid_argument("tensor: combined channel exceeds 4 qubits");
    LabeledChannel out;
    out.nqubits = a.nqubits + b.nqubits;
    for (const auto& ba : a.branches)
        for (const auto& bb : b.branches) {
            KrausBranch nb;
            nb.label = ba.label;
            nb.label.insert(nb.label.end(), bb.label.begin(), bb.label.end());
            nb.op = kron(ba.op, bb.op);
            out.branches.push_back(std::move(nb));
        }
    return out;
}

LabeledChannel phase_damping_from_t2(double duration, double t2) {
    if (duration < 0) throw std::invalid_argument("phase_damping_from_t2: negative duration");
    if (!(t2 > 0)) throw std::invalid_argument("phase_damping_from_t2: t2 must be positive");
    const double lambda = std::exp(-duration / t2);
    LabeledChannel ch;
    ch.nqubits = 1;
    ch.branches.push_back({{0}, CMatrix(2, 2, {1, 0, 0, lambda})});
    ch.branches.push_back({{1}, CMatrix(2, 2, {0, 0, 0, std::sqrt(1.0 - lambda * lambda)})});
    return ch;
}

LabeledChannel depolarizing(double p, int nqubits) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("depolarizing: p must be in [0, 1]");
    if (nqubits < 1 || nqubits > 2) throw std::invalid_argument("depolarizing: 1 or 2 qubits");
    const CMatrix paulis[4] = {CMatrix::identity(2), pauli_x(), pauli_y(), pauli_z()};
    LabeledChannel ch;
    ch.nqubits = nqubits;
    if (nqubits == 1) {
        ch.branches.push_back({{0}, std::sqrt(1.0 - 3.0 * p / 4.0) * paulis[0]});
        for (int k = 1; k < 4; ++k) ch.branches.push_back({{k}, std::sqrt(p / 4.0) * paulis[k]});
    } else {
        ch.branches.push_back({{0}, std::sqrt(1.0 - 15.0 * p / 16.0) * CMatrix::identity(4)});
        for (int k = 1; k < 16; ++k)
            ch.branches.push_back({{k}, std::sqrt(p / 16.0) * kron(paulis[k / 4], paulis[k % 4])});
    }
    return ch;
}

} // namespace dampcode
