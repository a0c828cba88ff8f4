#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dampcode/channels.hpp"
#include "dampcode/qmat.hpp"

// Minimal gate IR and simulator used to rebuild the experiment circuits
// (encoder, ancilla-based detected damping, recovery) and cross-check the
// channel-level engine. Qubit 0 is the leftmost tensor factor.
namespace dampcode {

struct Gate {
    enum class Kind { H, X, Z, Ry, U, CNOT, CRy, MeasureZ };

    Kind kind = Kind::H;
    int q0 = 0;       // target (single-qubit) or control (two-qubit)
    int q1 = 0;       // target of two-qubit gates
    double theta = 0; // Ry / CRy angle in radians
    CMatrix u;        // arbitrary single-qubit unitary

    static Gate make(Kind kind, int q0, int q1 = 0, double theta = 0) {
        Gate g;
        g.kind = kind;
        g.q0 = q0;
        g.q1 = q1;
        g.theta = theta;
        return g;
    }
    static Gate h(int q) { return make(Kind::H, q); }
    static Gate x(int q) { return make(Kind::X, q); }
    static Gate z(int q) { return make(Kind::Z, q); }
    static Gate ry(double theta, int q) { return make(Kind::Ry, q, 0, theta); }
    static Gate unitary(CMatrix m, int q);
    static Gate cnot(int control, int target) { return make(Kind::CNOT, control, target); }
    static Gate cry(double theta, int control, int target) { return make(Kind::CRy, control, target, theta); }
    static Gate measure_z(int q) { return make(Kind::MeasureZ, q); }

    bool is_measurement() const { return kind == Kind::MeasureZ; }
};

struct Circuit {
    int width = 1;
    std::vector<Gate> gates;

    /// Checks index bounds and that measurements are terminal, one per qubit.
    void validate() const;
    std::vector<int> measured_qubits() const;
};

/// 2x2 matrix of a single-qubit rotation about Y.
CMatrix ry_matrix(double theta);

/// Dense unitary of a measurement-free circuit, gates applied in order.
CMatrix circuit_to_unitary(const Circuit& c);

/// Embed a (non-measurement) gate into the circuit's full Hilbert space.
CMatrix embed_gate(const Gate& g, int width);

/// Project the measured qubits of the evolved state onto the requested
/// outcomes, trace them out, and return the conditioned subnormalized state
/// with its probability. `outcomes` pairs (qubit, 0/1) and must cover only
/// measured qubits.
std::pair<SubnormalizedState, double>
simulate_with_ancilla_postselect(const Circuit& c, const CMatrix& input,
                                 const std::vector<std::pair<int, int>>& outcomes);

/// Data qubit 0, ancilla qubit 1: CRy(2 asin sqrt(gamma)) data->ancilla, then
/// CNOT ancilla->data. Conditioning on the ancilla outcome reproduces the
/// damping branches exactly.
Circuit detected_ad_circuit(DampingParam gamma);

/// CNOT(0->1) followed by H on both qubits: |psi>|0> -> alpha|++> + beta|-->.
Circuit encoder_circuit();

enum class DampingOperator { A0, A1 };

/// Half-wave-plate angle in degrees realizing the chosen damping operator on
/// the optical setup: sin^2(2 theta) = 1-gamma for A0, gamma for A1.
double waveplate_angle(DampingParam gamma, DampingOperator op);

/// Rotation angle theta with gamma = sin^2(theta/2) for the ancilla gadget.
double controlled_ry_angle(DampingParam gamma);

/// Text diagram, one line per qubit.
std::string to_diagram(const Circuit& c);

} // namespace dampcode
