#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dampcode/noise.hpp"

// Experiment driver: six-state fidelity averaging, gamma sweeps, crossover
// detection, and a seeded Monte Carlo shot sampler with post-selection and
// single-qubit tomography.
namespace dampcode {

/// Mean over the six test states of <psi| rho'(psi) |psi>. A null model runs
/// the ideal pipeline.
double channel_fidelity(SchemeKind scheme, DampingParam gamma, const NoiseModel* model = nullptr,
                        bool ideal_weights = false);

/// Single-input ideal pipeline (encode, damp, recover, recombine).
CMatrix ideal_pipeline_output(SchemeKind scheme, DampingParam gamma, const PureState& input);

struct SweepRecord {
    double gamma = 0;
    SchemeKind scheme = SchemeKind::NoCorrection;
    double fidelity = 0;
    double stderr_ = 0;
    long long shots = 0; // 0 = exact mode
    std::string noise_preset = "none";
};

struct SweepOptions {
    long long shots = 0; // per input state; 0 = exact
    uint64_t seed = 0;
    bool ideal_weights = false;
    int bootstrap_rounds = 200;
};

/// One record per (gamma, scheme), grid-major order. Cells run in parallel
/// (OpenMP) with per-cell derived RNG streams, so output is identical to the
/// serial reference for any thread count.
std::vector<SweepRecord> sweep(const std::vector<double>& gammas,
                               const std::vector<SchemeKind>& schemes, const NoiseModel* model,
                               const SweepOptions& options = {});

/// Serial reference implementation of `sweep` (kept for testing and the
/// benchmark).
std::vector<SweepRecord> sweep_serial(const std::vector<double>& gammas,
                                      const std::vector<SchemeKind>& schemes,
                                      const NoiseModel* model, const SweepOptions& options = {});

/// Smallest gamma where corrected-minus-uncorrected changes sign from
/// strictly negative to nonnegative, linearly interpolated between the
/// bracketing grid points. Differences within tol::crossover_sign count as
/// zero, so identical curves report no crossover.
std::optional<double> crossover(const std::vector<SweepRecord>& corrected,
                                const std::vector<SweepRecord>& uncorrected);

struct BasisCounts {
    long long plus = 0;
    long long minus = 0;
    long long total() const { return plus + minus; }
};

/// Outcome counts per measurement basis (X, Y, Z order).
struct TomographyCounts {
    std::array<BasisCounts, 3> basis{};
};

/// Linear-inversion reconstruction rho = (I + <X>X + <Y>Y + <Z>Z)/2 from the
/// empirical expectations, projected to the PSD unit-trace cone (eigenvalue
/// clipping plus renormalization). Throws if a basis has no counts.
CMatrix tomography_reconstruct(const TomographyCounts& counts);

/// Clip negative eigenvalues and renormalize the trace to 1.
CMatrix psd_project_qubit(const CMatrix& rho);

struct StateShotData {
    std::array<TomographyCounts, 4> per_syndrome{};
    std::array<long long, 4> accepted{};
    std::array<bool, 4> empty_required{}; // weight expected but no shots landed
    CMatrix rho;                          // recombined reconstruction
    double fidelity = 0;
};

struct ShotResult {
    double fidelity = 0; // mean over the six input states
    double stderr_ = 0;  // bootstrap over shots
    long long shots_per_state = 0;
    uint64_t seed = 0;
    std::array<StateShotData, 6> per_state{};
};

/// Sample `shots` shots per input state (bases cycled per shot, syndrome and
/// outcome drawn from the exact branch distributions), reconstruct each
/// syndrome state by linear inversion, recombine with empirical syndrome
/// weights (or the exact ones with ideal_weights), and bootstrap the standard
/// error. Same seed, same result.
ShotResult shot_experiment(SchemeKind scheme, DampingParam gamma, const NoiseModel* model,
                           long long shots, uint64_t seed, bool ideal_weights = false,
                           int bootstrap_rounds = 200);

/// Monte Carlo average fidelity over Haar-random pure inputs.
double haar_average_check(SchemeKind scheme, DampingParam gamma, long long samples, uint64_t seed,
                          const NoiseModel* model = nullptr);

// Table emission (CSV schema: gamma,scheme,fidelity,stderr,shots,noise_preset).
void write_records_csv(const std::vector<SweepRecord>& records, std::ostream& os);
std::string records_to_json(const std::vector<SweepRecord>& records);
std::vector<SweepRecord> records_from_json(const std::string& text);

} // namespace dampcode
