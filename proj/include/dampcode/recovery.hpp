#pragma once

#include <string>

#include "dampcode/code.hpp"
#include "dampcode/qmat.hpp"

// The three recovery schemes for the two-qubit detected-damping code: the two
// standard corrections, the channel-adapted optimal recovery in closed form,
// and a generic synthesizer that derives the optimal recovery from the polar
// decomposition of the encoded branch operators.
namespace dampcode {

enum class SchemeKind { NoCorrection, StandardA, StandardB, Optimal, GenericPolar };

std::string scheme_name(SchemeKind kind);
SchemeKind scheme_from_name(const std::string& name);

/// Per-syndrome local gates of the general recovery circuit. The circuit runs
/// V1 on qubit A and V2 on qubit B, a CNOT from B to A, V3 on A and V4 on B,
/// then measures B and applies P to A on outcome 1; A carries the decoded
/// output. Rows flagged `swap_port` flip the CNOT direction and the
/// measured/output roles (the superposition for that row is prepared on B).
struct SyndromeOps {
    CMatrix v1, v2, v3, v4, p;
    bool swap_port = false;
};

struct OptimalParams {
    double gamma = 0;
    double s = 0, t = 0;
    CMatrix u1, u2;
};

/// s, t and the rotations U1, U2 of the channel-adapted recovery.
OptimalParams optimal_params(DampingParam gamma);

/// Gate assignments per correction type and syndrome. Throws for
/// SchemeKind::NoCorrection (it has no syndrome circuit).
SyndromeOps scheme_ops(SchemeKind kind, int i, int j, DampingParam gamma);

/// Whether the row's CNOT acts nontrivially on reachable branch states (used
/// for shot-survival defaults).
bool recovery_uses_cnot(SchemeKind kind, int i, int j);

/// Optional depolarizing insertions for the recovery circuit walk.
struct GateNoise {
    double single_qubit_depol = 0;
    double two_qubit_depol = 0;
};

/// Evaluate the recovery circuit on a normalized two-qubit state at the
/// density-matrix level (both measurement outcomes summed, conditional P
/// folded in). `noise` inserts depolarizing after each non-identity gate.
CMatrix run_recovery_circuit(const CMatrix& rho2, const SyndromeOps& ops,
                             const GateNoise* noise = nullptr);

/// Decoded single-qubit state of one syndrome branch under the chosen scheme.
/// Throws on negligible branches and for NoCorrection.
DensityMatrix apply_recovery(const SyndromeBranch& branch, SchemeKind kind, DampingParam gamma);

struct RecoveryIsometrySet {
    CMatrix v00, v01, v10, v11; // 4x2 isometries
    const CMatrix& at(int i, int j) const;
};

/// Polar decompositions v_ij of the encoded branch operators (A_i (x) A_j) E.
RecoveryIsometrySet generic_polar_recovery(DampingParam gamma);

struct PolarRecoveryResult {
    CMatrix rho1;  // renormalized v† rho v
    double leaked; // weight outside the isometry range, tr(rho (I - v v†))
};

/// R_ij(rho) = v† rho v, renormalized; the leaked weight is reported instead
/// of being refilled with an arbitrary completion state.
PolarRecoveryResult apply_polar_recovery(const CMatrix& rho2, const CMatrix& v);

/// Plain damping channel, no encoding, no conditioning.
CMatrix no_correction_channel(DampingParam gamma, const CMatrix& rho1);

} // namespace dampcode
