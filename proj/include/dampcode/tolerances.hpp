#pragma once

// Central table of numerical tolerances. Every module pulls from here so a
// tolerance is never redefined locally.
namespace dampcode::tol {

inline constexpr double hermitian = 1e-10;      // max |a_ij - conj(a_ji)|
inline constexpr double psd_eigen = -1e-9;      // smallest admissible eigenvalue
inline constexpr double trace_one = 1e-10;      // |tr(rho) - 1|
inline constexpr double unit_norm = 1e-10;      // pure-state norm defect
inline constexpr double unitary = 1e-10;        // max |U†U - I|
inline constexpr double completeness = 1e-10;   // max |sum K†K - I|
inline constexpr double jacobi = 1e-13;         // off-diagonal convergence
inline constexpr int jacobi_max_sweeps = 100;
inline constexpr double rank = 1e-9;            // singular values below are zero
inline constexpr double polar_residual = 1e-10; // |v p - t|
inline constexpr double sqrt_residual = 1e-9;   // |r r - m|
inline constexpr double phase_match = 1e-10;    // phase-aligned comparisons
inline constexpr double branch_prob = 1e-12;    // branches below are skipped
inline constexpr double crossover_sign = 1e-12; // fidelity differences below are "equal"

} // namespace dampcode::tol
