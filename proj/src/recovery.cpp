#include "dampcode/recovery.hpp"

#include <cmath>
#include <stdexcept>

#include "dampcode/tolerances.hpp"

namespace dampcode {

std::string scheme_name(SchemeKind kind) {
    switch (kind) {
    case SchemeKind::NoCorrection: return "none";
    case SchemeKind::StandardA: return "standard_a";
    case SchemeKind::StandardB: return "standard_b";
    case SchemeKind::Optimal: return "optimal";
    case SchemeKind::GenericPolar: return "generic_polar";
    }
    throw std::logic_error("scheme_name: unreachable");
}

SchemeKind scheme_from_name(const std::string& name) {
    if (name == "none") return SchemeKind::NoCorrection;
    if (name == "standard_a") return SchemeKind::StandardA;
    if (name == "standard_b") return SchemeKind::StandardB;
    if (name == "optimal") return SchemeKind::Optimal;
    if (name == "generic_polar") return SchemeKind::GenericPolar;
    throw std::invalid_argument("unknown scheme: " + name);
}

OptimalParams optimal_params(DampingParam gamma) {
    const double g = 1.0 - gamma.gamma;
    OptimalParams out;
    out.gamma = gamma.gamma;
    out.s = std::sqrt(2.0) / std::sqrt(1.0 + g * g);
    out.t = std::sqrt(2.0) * g / std::sqrt(1.0 + g * g);
    const double n = 1.0 / std::sqrt((1.0 + out.t) * (1.0 + out.t) + (1.0 - out.s) * (1.0 - out.s));
    out.u1 = n * CMatrix(2, 2, {-out.t - 1.0, out.s - 1.0, -out.s + 1.0, -out.t - 1.0});
    out.u2 = n * CMatrix(2, 2, {-out.s + 1.0, out.t + 1.0, -out.t - 1.0, -out.s + 1.0});
    return out;
}

SyndromeOps scheme_ops(SchemeKind kind, int i, int j, DampingParam gamma) {
    if (kind == SchemeKind::NoCorrection)
        throw std::invalid_argument("scheme_ops: the uncorrected baseline has no syndrome circuit");
    if ((i != 0 && i != 1) || (j != 0 && j != 1))
        throw std::invalid_argument("scheme_ops: syndrome bits must be 0 or 1");
    const CMatrix id = CMatrix::identity(2);
    const CMatrix& h = hadamard();
    SyndromeOps ops{id, id, id, id, id, false};

    if (i == 0 && j == 1) {
        ops.v3 = h * pauli_x();
    } else if (i == 1 && j == 0) {
        ops.v3 = h * pauli_x();
        ops.v4 = h;
        ops.p = pauli_x();
    } else if (i == 1 && j == 1) {
        // Both qubits decayed to |00>; rebuild the equally weighted
        // superposition. Variant A prepares it on qubit B, variant B on A.
        if (kind == SchemeKind::StandardB) {
            ops.v3 = h;
        } else {
            ops.v2 = h;
            ops.swap_port = true;
        }
    } else { // (0,0)
        if (kind == SchemeKind::Optimal || kind == SchemeKind::GenericPolar) {
            OptimalParams p = optimal_params(gamma);
            ops.v2 = h;
            ops.v3 = p.u1.adjoint() * h;
            ops.v4 = h * p.u2.adjoint() * pauli_x();
            ops.p = pauli_z();
        } else {
            ops.v3 = h;
            ops.v4 = h;
        }
    }
    return ops;
}

bool recovery_uses_cnot(SchemeKind kind, int i, int j) {
    (void)kind;
    // Branch support before the CNOT: (0,0) is entangled across both wires and
    // (1,0) has qubit B (the control) excited; for (0,1) and both (1,1)
    // variants the control wire is |0> and the CNOT is inert.
    return (i == 0 && j == 0) || (i == 1 && j == 0);
}

namespace {

CMatrix embed_on(const CMatrix& v, int qubit) {
    return qubit == 0 ? kron(v, CMatrix::identity(2)) : kron(CMatrix::identity(2), v);
}

const CMatrix& cnot_matrix(int control) {
    // control -> the other qubit; qubit 0 is the leftmost factor
    static const CMatrix c0 = CMatrix(4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
    static const CMatrix c1 = CMatrix(4, 4, {1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0});
    return control == 0 ? c0 : c1;
}

bool is_identity(const CMatrix& m) {
    return max_abs_diff(m, CMatrix::identity(m.rows())) < 1e-14;
}

CMatrix depolarize_qubit(const CMatrix& rho4, int qubit, double p) {
    if (p <= 0) return rho4;
    CMatrix reduced = partial_trace(rho4, 2, {1 - qubit});
    CMatrix mixed = qubit == 0 ? kron(CMatrix::identity(2) * cx(0.5), reduced)
                               : kron(reduced, CMatrix::identity(2) * cx(0.5));
    return rho4 * cx(1.0 - p) + mixed * cx(p);
}

CMatrix depolarize_all(const CMatrix& rho, double p) {
    if (p <= 0) return rho;
    const int d = rho.rows();
    return rho * cx(1.0 - p) + CMatrix::identity(d) * (rho.trace() * p / static_cast<double>(d));
}

CMatrix depolarize_single(const CMatrix& rho2, double p) {
    if (p <= 0) return rho2;
    return rho2 * cx(1.0 - p) + CMatrix::identity(2) * (rho2.trace() * p * 0.5);
}

} // namespace

CMatrix run_recovery_circuit(const CMatrix& rho2, const SyndromeOps& ops, const GateNoise* noise) {
    if (rho2.rows() != 4 || rho2.cols() != 4)
        throw std::invalid_argument("run_recovery_circuit: two-qubit state required");
    const double p1 = noise ? noise->single_qubit_depol : 0.0;
    const double p2 = noise ? noise->two_qubit_depol : 0.0;

    CMatrix rho = rho2;
    auto apply_single = [&](const CMatrix& v, int qubit) {
        if (is_identity(v)) return;
        const CMatrix m = embed_on(v, qubit);
        rho = m * rho * m.adjoint();
        rho = depolarize_qubit(rho, qubit, p1);
    };

    apply_single(ops.v1, 0);
    apply_single(ops.v2, 1);

    const int control = ops.swap_port ? 0 : 1;
    const CMatrix& cn = cnot_matrix(control);
    rho = cn * rho * cn.adjoint();
    rho = depolarize_all(rho, p2);

    apply_single(ops.v3, 0);
    apply_single(ops.v4, 1);

    const int measured = ops.swap_port ? 0 : 1;
    CMatrix out(2, 2);
    for (int b = 0; b < 2; ++b) {
        CMatrix sub(2, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                const int rr = measured == 1 ? 2 * r + b : 2 * b + r;
                const int cc = measured == 1 ? 2 * c + b : 2 * b + c;
                sub(r, c) = rho(rr, cc);
            }
        if (b == 1 && !is_identity(ops.p)) {
            sub = ops.p * sub * ops.p.adjoint();
            sub = depolarize_single(sub, p1);
        }
        out += sub;
    }
    return out;
}

DensityMatrix apply_recovery(const SyndromeBranch& branch, SchemeKind kind, DampingParam gamma) {
    if (kind == SchemeKind::NoCorrection)
        throw std::invalid_argument("apply_recovery: the uncorrected baseline has no recovery");
    if (branch.negligible || branch.prob <= 0)
        throw std::invalid_argument("apply_recovery: zero-probability branch");
    const CMatrix normalized = branch.state.m * cx(1.0 / branch.prob);

    if (kind == SchemeKind::GenericPolar) {
        RecoveryIsometrySet set = generic_polar_recovery(gamma);
        PolarRecoveryResult r = apply_polar_recovery(normalized, set.at(branch.i, branch.j));
        return DensityMatrix(1, r.rho1);
    }
    SyndromeOps ops = scheme_ops(kind, branch.i, branch.j, gamma);
    return DensityMatrix(1, run_recovery_circuit(normalized, ops));
}

const CMatrix& RecoveryIsometrySet::at(int i, int j) const {
    if (i == 0 && j == 0) return v00;
    if (i == 0 && j == 1) return v01;
    if (i == 1 && j == 0) return v10;
    if (i == 1 && j == 1) return v11;
    throw std::invalid_argument("RecoveryIsometrySet: syndrome bits must be 0 or 1");
}

RecoveryIsometrySet generic_polar_recovery(DampingParam gamma) {
    const LabeledChannel ad = amplitude_damping(gamma);
    const CMatrix& e = encoding_isometry();
    auto v_of = [&](int i, int j) {
        const CMatrix t = kron(ad.branches[i].op, ad.branches[j].op) * e;
        return polar_decompose(t).isometry;
    };
    RecoveryIsometrySet set;
    set.v00 = v_of(0, 0);
    set.v01 = v_of(0, 1);
    set.v10 = v_of(1, 0);
    set.v11 = v_of(1, 1);
    return set;
}

PolarRecoveryResult apply_polar_recovery(const CMatrix& rho2, const CMatrix& v) {
    if (rho2.rows() != 4 || rho2.cols() != 4 || v.rows() != 4 || v.cols() != 2)
        throw std::invalid_argument("apply_polar_recovery: shape mismatch");
    CMatrix mapped = v.adjoint() * rho2 * v;
    const double kept = mapped.trace().real();
    PolarRecoveryResult out;
    out.leaked = rho2.trace().real() - kept;
    if (kept <= tol::branch_prob)
        throw std::invalid_argument("apply_polar_recovery: branch state is orthogonal to the recovery range");
    out.rho1 = mapped * cx(1.0 / kept);
    return out;
}

CMatrix no_correction_channel(DampingParam gamma, const CMatrix& rho1) {
    if (rho1.rows() != 2 || rho1.cols() != 2)
        throw std::invalid_argument("no_correction_channel: single-qubit state required");
    return apply(amplitude_damping(gamma), rho1);
}

} // namespace dampcode
