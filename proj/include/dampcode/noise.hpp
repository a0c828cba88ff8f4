#pragma once

#include <array>
#include <map>
#include <string>

#include "dampcode/recovery.hpp"

// Device-noise models perturbing the ideal pipeline: gate depolarization,
// T2 dephasing, readout confusion on the syndrome flags, and per-syndrome
// shot loss.
namespace dampcode {

struct NoiseModel {
    std::array<double, 2> single_gate_error{0, 0}; // per data qubit
    double two_gate_error = 0;                     // per two-qubit gate
    std::array<double, 2> readout_error{0, 0};     // per syndrome flag
    std::array<double, 2> t2_ns{1e18, 1e18};       // per data qubit
    std::map<std::string, double> gate_durations_ns{
        {"cnot", 348.0}, {"single", 100.0}, {"buffer", 20.0}};
    std::array<double, 4> shot_survival{1, 1, 1, 1}; // syndromes 00,01,10,11

    struct Enabled {
        bool depolarizing = true;
        bool dephasing = true;
        bool readout = true;
        bool shot_loss = true;
        bool interleaved_dephasing = false;
    } enabled;

    std::string preset_name = "custom";

    void validate() const;
    bool all_disabled() const;

    /// Total circuit time used by the lumped dephasing: serial gate-slot
    /// accounting (encoder CNOT + one single slot, four two-qubit slots for
    /// the two channel gadgets, two single slots + CNOT for recovery), each
    /// slot buffered before and after. A "pipeline_total" entry in
    /// gate_durations_ns overrides the accounting.
    double pipeline_duration_ns() const;

    std::string to_json() const;
    static NoiseModel from_json(const std::string& text);
    static NoiseModel load(const std::string& path); // preset name = file stem
};

struct DecoherenceEstimate {
    double duration;
    double t2;
    double p_sys; // 1/2 - 1/2 e^{-2 duration / t2}
};

/// Closed-form dephasing infidelity estimate for a |+>-type state.
DecoherenceEstimate decoherence_estimate(double duration, double t2);

/// Invert the estimate: the T2 for which the estimate equals p_sys.
double t2_for_target(double duration, double p_sys);

/// Independent per-flag bit-flip confusion applied to a syndrome
/// distribution; rows indexed 2i+j.
std::array<double, 4> readout_confuse(const std::array<double, 4>& probabilities,
                                      const std::array<double, 2>& eps);

struct ReweightResult {
    std::array<double, 4> measured; // proportional to p * survival, normalized
    std::array<double, 4> ideal;    // p normalized
};

/// Branch weights with and without per-syndrome shot loss, so fidelity can be
/// reconstructed under either weighting.
ReweightResult shot_loss_reweight(const std::array<double, 4>& probabilities,
                                  const std::array<double, 4>& survival);

struct PipelineBreakdown {
    CMatrix rho1;                              // recombined single-qubit output
    std::array<double, 4> weights_measured{};  // post-confusion, post-loss
    std::array<double, 4> weights_ideal{};     // post-confusion, pre-loss
    std::array<CMatrix, 4> syndrome_states{};  // decoded state per measured syndrome
    std::array<bool, 4> missing{};             // measured syndrome has ~zero weight
    double duration_ns = 0;
};

/// Full model pipeline: encode with per-gate depolarizing, channel-gadget
/// depolarizing on each data qubit, lumped (or interleaved) dephasing,
/// branch decomposition, noisy recovery per measured syndrome with readout
/// confusion folded in, shot-survival reweighting. A null model runs the
/// ideal pipeline. For the uncorrected baseline only the channel-gadget
/// depolarizing and dephasing apply (no encoding, no conditioning).
PipelineBreakdown pipeline_breakdown(SchemeKind scheme, DampingParam gamma,
                                     const NoiseModel* model, const PureState& input,
                                     bool ideal_weights);

/// Convenience wrapper returning the recombined state under measured weights.
DensityMatrix noisy_pipeline(SchemeKind scheme, DampingParam gamma, const NoiseModel& model,
                             const PureState& input);

} // namespace dampcode
