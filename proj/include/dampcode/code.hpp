#pragma once

#include <array>

#include "dampcode/channels.hpp"
#include "dampcode/qmat.hpp"
#include "dampcode/states.hpp"

// The two-qubit detected-damping code as channel-level maps: encoding isometry
// onto span{|++>, |-->}, syndrome branch enumeration, decoding.
namespace dampcode {

/// 4x2 isometry E with columns |++> and |-->.
const CMatrix& encoding_isometry();

/// E rho E† of a single-qubit pure state; pure, rank 1.
DensityMatrix encode(const PureState& psi);

/// E |psi> as a 4-component column.
CMatrix encode_vector(const PureState& psi);

struct SyndromeBranch {
    int i = 0, j = 0;         // damping flags on qubits A and B
    SubnormalizedState state; // unnormalized branch state
    double prob = 0;
    bool negligible = false;  // prob below tol::branch_prob; skipped downstream
};

/// The four branches of the product damping channel A_i (x) A_j acting on a
/// two-qubit state; probabilities sum to the input trace.
std::array<SyndromeBranch, 4> syndrome_branches(const CMatrix& rho2, DampingParam gamma);

/// Trace-preserving decode: measure qubit B in the computational basis, apply
/// H to qubit A, apply Z on the outcome-1 path, sum the outcomes. Acts as E†
/// on code-space states.
CMatrix decode(const CMatrix& rho2);

/// Isometry contraction E† rho E (subnormalized off the code space).
CMatrix decode_isometry(const CMatrix& rho2);

} // namespace dampcode
