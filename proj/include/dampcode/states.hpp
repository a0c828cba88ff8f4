#pragma once

#include <array>
#include <string>
#include <vector>

#include "dampcode/qmat.hpp"

namespace dampcode {

/// Normalized pure state on 1..4 qubits.
class PureState {
public:
    explicit PureState(std::vector<cx> amplitudes);
    PureState(cx a0, cx a1) : PureState(std::vector<cx>{a0, a1}) {}

    int nqubits() const { return nqubits_; }
    int dim() const { return static_cast<int>(amps_.size()); }
    const std::vector<cx>& amplitudes() const { return amps_; }

    /// |psi><psi| as a matrix.
    CMatrix projector() const;
    /// Column-vector view (dim x 1).
    CMatrix column() const;

private:
    int nqubits_;
    std::vector<cx> amps_;
};

/// Hermitian, PSD, unit-trace matrix over 1..4 qubits. Construction validates
/// the invariants; use SubnormalizedState for pre-normalization branch states.
class DensityMatrix {
public:
    DensityMatrix(int nqubits, CMatrix m);
    static DensityMatrix from_pure(const PureState& psi);

    int nqubits() const { return nqubits_; }
    const CMatrix& matrix() const { return m_; }

private:
    int nqubits_;
    CMatrix m_;
};

/// Hermitian PSD matrix with trace <= 1 (an unnormalized channel branch).
struct SubnormalizedState {
    int nqubits = 0;
    CMatrix m;
    double trace() const { return m.trace().real(); }
};

// Fixed single-qubit operators.
const CMatrix& pauli_x();
const CMatrix& pauli_y();
const CMatrix& pauli_z();
const CMatrix& hadamard();

/// <psi| rho |psi> for a pure reference state.
double fidelity(const PureState& psi, const CMatrix& rho);

/// The six tomography input states |0>, |1>, |+>, |->, |+i>, |-i>
/// (three mutually unbiased bases; a 2-design for fidelity averages).
const std::array<PureState, 6>& six_test_states();
const std::array<std::string, 6>& six_test_state_names();

} // namespace dampcode
