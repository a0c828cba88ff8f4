#include "dampcode/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "dampcode/states.hpp"
#include "dampcode/tolerances.hpp"

namespace dampcode {

Gate Gate::unitary(CMatrix m, int q) {
    if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("Gate::unitary: 2x2 matrix required");
    if (!is_unitary(m, tol::unitary)) throw std::invalid_argument("Gate::unitary: matrix is not unitary");
    Gate g{Kind::U, q};
    g.u = std::move(m);
    return g;
}

void Circuit::validate() const {
    if (width < 1 || width > 4) throw std::invalid_argument("Circuit: width must be 1..4");
    std::vector<bool> measured(width, false);
    for (const Gate& g : gates) {
        const bool two_qubit = g.kind == Gate::Kind::CNOT || g.kind == Gate::Kind::CRy;
        if (g.q0 < 0 || g.q0 >= width || (two_qubit && (g.q1 < 0 || g.q1 >= width || g.q1 == g.q0)))
            throw std::invalid_argument("Circuit: qubit index out of range");
        if (g.is_measurement()) {
            if (measured[g.q0]) throw std::invalid_argument("Circuit: qubit measured twice");
            measured[g.q0] = true;
        } else {
            if (measured[g.q0] || (two_qubit && measured[g.q1]))
                throw std::invalid_argument("Circuit: gate after measurement");
        }
    }
}

std::vector<int> Circuit::measured_qubits() const {
    std::vector<int> out;
    for (const Gate& g : gates)
        if (g.is_measurement()) out.push_back(g.q0);
    return out;
}

CMatrix ry_matrix(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return CMatrix(2, 2, {c, -s, s, c});
}

CMatrix embed_gate(const Gate& g, int width) {
    const int dim = 1 << width;
    auto bit = [&](int index, int q) { return (index >> (width - 1 - q)) & 1; };

    if (g.kind == Gate::Kind::CNOT) {
        CMatrix m(dim, dim);
        for (int col = 0; col < dim; ++col) {
            int row = col;
            if (bit(col, g.q0)) row = col ^ (1 << (width - 1 - g.q1));
            m(row, col) = 1.0;
        }
        return m;
    }
    if (g.kind == Gate::Kind::CRy) {
        CMatrix m = CMatrix::identity(dim);
        const CMatrix r = ry_matrix(g.theta);
        const int tmask = 1 << (width - 1 - g.q1);
        for (int col = 0; col < dim; ++col) {
            if (!bit(col, g.q0) || (col & tmask)) continue;
            const int c0 = col, c1 = col | tmask;
            m(c0, c0) = r(0, 0);
            m(c0, c1) = r(0, 1);
            m(c1, c0) = r(1, 0);
            m(c1, c1) = r(1, 1);
        }
        return m;
    }

    CMatrix small;
    switch (g.kind) {
    case Gate::Kind::H: small = hadamard(); break;
    case Gate::Kind::X: small = pauli_x(); break;
    case Gate::Kind::Z: small = pauli_z(); break;
    case Gate::Kind::Ry: small = ry_matrix(g.theta); break;
    case Gate::Kind::U: small = g.u; break;
    default: throw std::invalid_argument("embed_gate: cannot embed a measurement");
    }
    CMatrix m = CMatrix::identity(1);
    for (int q = 0; q < width; ++q) m = kron(m, q == g.q0 ? small : CMatrix::identity(2));
    return m;
}

CMatrix circuit_to_unitary(const Circuit& c) {
    c.validate();
    const int dim = 1 << c.width;
    CMatrix u = CMatrix::identity(dim);
    for (const Gate& g : c.gates) {
        if (g.is_measurement())
            throw std::invalid_argument("circuit_to_unitary: circuit contains a measurement");
        u = embed_gate(g, c.width) * u;
    }
    return u;
}

std::pair<SubnormalizedState, double>
simulate_with_ancilla_postselect(const Circuit& c, const CMatrix& input,
                                 const std::vector<std::pair<int, int>>& outcomes) {
    c.validate();
    const int dim = 1 << c.width;
    if (input.rows() != dim || input.cols() != dim)
        throw std::invalid_argument("simulate: input does not match circuit width");

    std::vector<int> measured = c.measured_qubits();
    for (const auto& [q, o] : outcomes) {
        if (std::find(measured.begin(), measured.end(), q) == measured.end())
            throw std::invalid_argument("simulate: outcome given for unmeasured qubit");
        if (o != 0 && o != 1) throw std::invalid_argument("simulate: outcome must be 0 or 1");
    }

    CMatrix rho = input;
    for (const Gate& g : c.gates) {
        if (g.is_measurement()) continue;
        const CMatrix u = embed_gate(g, c.width);
        rho = u * rho * u.adjoint();
    }

    // projector onto the requested outcome string
    auto bit = [&](int index, int q) { return (index >> (c.width - 1 - q)) & 1; };
    std::vector<int> keep;
    for (int q = 0; q < c.width; ++q) {
        bool is_outcome = false;
        for (const auto& [oq, o] : outcomes)
            if (oq == q) is_outcome = true;
        if (!is_outcome) keep.push_back(q);
    }
    CMatrix projected(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int col = 0; col < dim; ++col) {
            bool match = true;
            for (const auto& [q, o] : outcomes)
                if (bit(r, q) != o || bit(col, q) != o) { match = false; break; }
            if (match) projected(r, col) = rho(r, col);
        }
    }
    const double prob = projected.trace().real();
    CMatrix reduced = partial_trace(projected, c.width, keep);
    const int nq = static_cast<int>(keep.size());
    return {SubnormalizedState{nq, std::move(reduced)}, prob};
}

Circuit detected_ad_circuit(DampingParam gamma) {
    Circuit c;
    c.width = 2;
    c.gates.push_back(Gate::cry(controlled_ry_angle(gamma), 0, 1));
    c.gates.push_back(Gate::cnot(1, 0));
    c.gates.push_back(Gate::measure_z(1));
    return c;
}

Circuit encoder_circuit() {
    Circuit c;
    c.width = 2;
    c.gates.push_back(Gate::cnot(0, 1));
    c.gates.push_back(Gate::h(0));
    c.gates.push_back(Gate::h(1));
    return c;
}

double waveplate_angle(DampingParam gamma, DampingOperator op) {
    const double target = op == DampingOperator::A0 ? 1.0 - gamma.gamma : gamma.gamma;
    const double theta = 0.5 * std::asin(std::sqrt(target));
    return theta * 180.0 / std::numbers::pi;
}

double controlled_ry_angle(DampingParam gamma) {
    return 2.0 * std::asin(std::sqrt(gamma.gamma));
}

std::string to_diagram(const Circuit& c) {
    c.validate();
    std::vector<std::string> lines(c.width);
    for (int q = 0; q < c.width; ++q) lines[q] = "q" + std::to_string(q) + ": -";
    auto pad_to = [&](size_t len) {
        for (auto& l : lines)
            while (l.size() < len) l.push_back('-');
    };
    for (const Gate& g : c.gates) {
        size_t start = 0;
        for (const auto& l : lines) start = std::max(start, l.size());
        pad_to(start);
        std::string tag;
        switch (g.kind) {
        case Gate::Kind::H: tag = "[H]"; break;
        case Gate::Kind::X: tag = "[X]"; break;
        case Gate::Kind::Z: tag = "[Z]"; break;
        case Gate::Kind::Ry: tag = "[Ry]"; break;
        case Gate::Kind::U: tag = "[U]"; break;
        case Gate::Kind::CNOT: tag = "[+]"; break;
        case Gate::Kind::CRy: tag = "[Ry]"; break;
        case Gate::Kind::MeasureZ: tag = "[M]"; break;
        }
        if (g.kind == Gate::Kind::CNOT || g.kind == Gate::Kind::CRy) {
            lines[g.q0] += "[*]";
            lines[g.q1] += tag;
        } else {
            lines[g.q0] += tag;
        }
        size_t len = 0;
        for (const auto& l : lines) len = std::max(len, l.size());
        pad_to(len);
        for (auto& l : lines) l.push_back('-');
    }
    std::ostringstream os;
    for (const auto& l : lines) os << l << "\n";
    return os.str();
}

} // namespace dampcode
