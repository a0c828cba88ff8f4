#pragma once

#include <vector>

#include "dampcode/qmat.hpp"
#include "dampcode/states.hpp"

// Quantum channels in Kraus form. Each Kraus operator carries a classical
// label so detected (heralded) channels expose which branch fired.
namespace dampcode {

struct KrausBranch {
    std::vector<int> label; // one entry per constituent qubit channel
    CMatrix op;
};

struct LabeledChannel {
    int nqubits = 1;
    std::vector<KrausBranch> branches;

    /// max |sum K†K - I|; zero for a trace-preserving channel.
    double completeness_defect() const;
    const KrausBranch& branch(const std::vector<int>& label) const;
};

/// Damping parameter gamma in [0, 1].
struct DampingParam {
    double gamma;
    explicit DampingParam(double g);
};

/// Single-qubit amplitude damping: branch 0 keeps the state (amplitude
/// reduced), branch 1 signals decay |1> -> |0>.
LabeledChannel amplitude_damping(DampingParam gamma);

/// rho' = sum_K K rho K†.
CMatrix apply(const LabeledChannel& channel, const CMatrix& rho);

struct BranchOutcome {
    SubnormalizedState state; // K rho K†, unnormalized
    double prob;              // tr(K rho K†)
};

/// Single-branch action; normalizing `state` by `prob` gives the conditional
/// post-channel state.
BranchOutcome apply_branch(const LabeledChannel& channel, const CMatrix& rho,
                           const std::vector<int>& label);

/// Kraus-wise tensor product; labels concatenate, so tensor(AD, AD) is the
/// four-branch detected channel with syndrome labels (i, j).
LabeledChannel tensor(const LabeledChannel& a, const LabeledChannel& b);

/// Single-qubit phase damping scaling off-diagonals by e^{-duration/t2}.
LabeledChannel phase_damping_from_t2(double duration, double t2);

/// Depolarizing channel: rho -> (1-p) rho + p I/2^n.
LabeledChannel depolarizing(double p, int nqubits);

} // namespace dampcode
