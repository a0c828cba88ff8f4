#include "dampcode/noise.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dampcode/tolerances.hpp"

namespace dampcode {

namespace {

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

} // namespace

void NoiseModel::validate() const {
    for (double v : single_gate_error)
        if (!in_unit(v)) throw std::invalid_argument("NoiseModel: single_gate_error out of [0,1]");
    if (!in_unit(two_gate_error)) throw std::invalid_argument("NoiseModel: two_gate_error out of [0,1]");
    for (double v : readout_error)
        if (!in_unit(v)) throw std::invalid_argument("NoiseModel: readout_error out of [0,1]");
    for (double v : t2_ns)
        if (!(v > 0)) throw std::invalid_argument("NoiseModel: t2_ns must be positive");
    for (const auto& [k, v] : gate_durations_ns)
        if (v < 0) throw std::invalid_argument("NoiseModel: negative gate duration");
    for (double v : shot_survival)
        if (!(v > 0.0 && v <= 1.0)) throw std::invalid_argument("NoiseModel: shot_survival out of (0,1]");
}

bool NoiseModel::all_disabled() const {
    return !enabled.depolarizing && !enabled.dephasing && !enabled.readout && !enabled.shot_loss;
}

double NoiseModel::pipeline_duration_ns() const {
    auto get = [&](const std::string& key, double fallback) {
        auto it = gate_durations_ns.find(key);
        return it == gate_durations_ns.end() ? fallback : it->second;
    };
    if (auto it = gate_durations_ns.find("pipeline_total"); it != gate_durations_ns.end())
        return it->second;
    const double buffer = get("buffer", 20.0);
    const double two = get("cnot", 348.0) + 2 * buffer;
    const double one = get("single", 100.0) + 2 * buffer;
    // encoder: CNOT + parallel-H slot; channel: (CRy + CNOT) per data qubit;
    // recovery: two single slots + CNOT
    return (two + one) + 4 * two + (2 * one + two);
}

std::string NoiseModel::to_json() const {
    nlohmann::ordered_json j;
    j["single_gate_error"] = single_gate_error;
    j["two_gate_error"] = std::array<double, 1>{two_gate_error};
    j["readout_error"] = readout_error;
    j["t2_ns"] = t2_ns;
    j["gate_durations_ns"] = gate_durations_ns;
    j["shot_survival"] = shot_survival;
    j["enabled"] = {{"depolarizing", enabled.depolarizing},
                    {"dephasing", enabled.dephasing},
                    {"readout", enabled.readout},
                    {"shot_loss", enabled.shot_loss},
                    {"interleaved_dephasing", enabled.interleaved_dephasing}};
    return j.dump(2);
}

NoiseModel NoiseModel::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    NoiseModel m;
    auto read_pair = [&](const char* key, std::array<double, 2>& out) {
        if (!j.contains(key)) return;
        if (j[key].is_number()) {
            out[0] = out[1] = j[key].get<double>();
        } else {
            auto v = j[key].get<std::vector<double>>();
            if (v.empty()) throw std::invalid_argument(std::string("NoiseModel: empty ") + key);
            out[0] = v[0];
            out[1] = v.size() > 1 ? v[1] : v[0];
        }
    };
    read_pair("single_gate_error", m.single_gate_error);
    read_pair("readout_error", m.readout_error);
    read_pair("t2_ns", m.t2_ns);
    if (j.contains("two_gate_error")) {
        if (j["two_gate_error"].is_number()) {
            m.two_gate_error = j["two_gate_error"].get<double>();
        } else {
            auto v = j["two_gate_error"].get<std::vector<double>>();
            if (v.empty()) throw std::invalid_argument("NoiseModel: empty two_gate_error");
            double sum = 0;
            for (double x : v) sum += x;
            m.two_gate_error = sum / static_cast<double>(v.size());
        }
    }
    if (j.contains("gate_durations_ns"))
        m.gate_durations_ns = j["gate_durations_ns"].get<std::map<std::string, double>>();
    if (j.contains("shot_survival")) {
        auto v = j["shot_survival"].get<std::vector<double>>();
        if (v.size() != 4) throw std::invalid_argument("NoiseModel: shot_survival needs 4 entries");
        std::copy(v.begin(), v.end(), m.shot_survival.begin());
    }
    if (j.contains("enabled")) {
        const auto& e = j["enabled"];
        auto flag = [&](const char* key, bool fallback) {
            return e.contains(key) ? e[key].get<bool>() : fallback;
        };
        m.enabled.depolarizing = flag("depolarizing", true);
        m.enabled.dephasing = flag("dephasing", true);
        m.enabled.readout = flag("readout", true);
        m.enabled.shot_loss = flag("shot_loss", true);
        m.enabled.interleaved_dephasing = flag("interleaved_dephasing", false);
    }
    m.validate();
    return m;
}

NoiseModel NoiseModel::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read noise preset: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    NoiseModel m = from_json(buf.str());
    m.preset_name = std::filesystem::path(path).stem().string();
    return m;
}

DecoherenceEstimate decoherence_estimate(double duration, double t2) {
    if (!(t2 > 0)) throw std::invalid_argument("decoherence_estimate: t2 must be positive");
    if (duration < 0) throw std::invalid_argument("decoherence_estimate: negative duration");
    return {duration, t2, 0.5 - 0.5 * std::exp(-2.0 * duration / t2)};
}

double t2_for_target(double duration, double p_sys) {
    if (!(duration > 0)) throw std::invalid_argument("t2_for_target: duration must be positive");
    if (!(p_sys > 0 && p_sys < 0.5))
        throw std::invalid_argument("t2_for_target: p_sys must be in (0, 1/2)");
    return -2.0 * duration / std::log(1.0 - 2.0 * p_sys);
}

std::array<double, 4> readout_confuse(const std::array<double, 4>& probabilities,
                                      const std::array<double, 2>& eps) {
    double sum = 0;
    for (double p : probabilities) {
        if (p < -1e-12) throw std::invalid_argument("readout_confuse: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("readout_confuse: distribution must sum to 1");
    for (double e : eps)
        if (!in_unit(e)) throw std::invalid_argument("readout_confuse: flip rate out of [0,1]");
    std::array<double, 4> out{};
    for (int ti = 0; ti < 2; ++ti)
        for (int tj = 0; tj < 2; ++tj)
            for (int si = 0; si < 2; ++si)
                for (int sj = 0; sj < 2; ++sj) {
                    const double pi = si == ti ? 1.0 - eps[0] : eps[0];
                    const double pj = sj == tj ? 1.0 - eps[1] : eps[1];
                    out[2 * si + sj] += pi * pj * probabilities[2 * ti + tj];
                }
    return out;
}

ReweightResult shot_loss_reweight(const std::array<double, 4>& probabilities,
                                  const std::array<double, 4>& survival) {
    double psum = 0, wsum = 0;
    for (int s = 0; s < 4; ++s) {
        if (!(survival[s] >= 0)) throw std::invalid_argument("shot_loss_reweight: negative survival");
        psum += probabilities[s];
        wsum += probabilities[s] * survival[s];
    }
    if (wsum <= 0) throw std::invalid_argument("shot_loss_reweight: all weight lost");
    if (psum <= 0) throw std::invalid_argument("shot_loss_reweight: empty distribution");
    ReweightResult out;
    for (int s = 0; s < 4; ++s) {
        out.ideal[s] = probabilities[s] / psum;
        out.measured[s] = probabilities[s] * survival[s] / wsum;
    }
    return out;
}

namespace {

CMatrix depolarize_qubit2(const CMatrix& rho4, int qubit, double p) {
    if (p <= 0) return rho4;
    CMatrix reduced = partial_trace(rho4, 2, {1 - qubit});
    CMatrix mixed = qubit == 0 ? kron(CMatrix::identity(2) * cx(0.5), reduced)
                               : kron(reduced, CMatrix::identity(2) * cx(0.5));
    return rho4 * cx(1.0 - p) + mixed * cx(p);
}

CMatrix dephase_qubit(const CMatrix& rho, int nqubits, int qubit, double lambda) {
    CMatrix out = rho;
    const int dim = 1 << nqubits;
    auto bit = [&](int index, int q) { return (index >> (nqubits - 1 - q)) & 1; };
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            if (bit(r, qubit) != bit(c, qubit)) out(r, c) *= lambda;
    return out;
}

} // namespace

PipelineBreakdown pipeline_breakdown(SchemeKind scheme, DampingParam gamma,
                                     const NoiseModel* model, const PureState& input,
                                     bool ideal_weights) {
    if (input.nqubits() != 1) throw std::invalid_argument("pipeline: single-qubit input required");
    if (model) model->validate();
    const bool depol_on = model && model->enabled.depolarizing;
    const bool deph_on = model && model->enabled.dephasing;
    const bool readout_on = model && model->enabled.readout;
    const bool loss_on = model && model->enabled.shot_loss;

    const double p1 = depol_on ? (model->single_gate_error[0] + model->single_gate_error[1]) / 2 : 0.0;
    const double p1_q[2] = {depol_on ? model->single_gate_error[0] : 0.0,
                            depol_on ? model->single_gate_error[1] : 0.0};
    const double p2 = depol_on ? model->two_gate_error : 0.0;
    const double p_gadget = 1.0 - (1.0 - p2) * (1.0 - p2); // CRy + CNOT per data qubit

    PipelineBreakdown out;
    out.duration_ns = model ? model->pipeline_duration_ns() : 0.0;

    if (scheme == SchemeKind::NoCorrection) {
        CMatrix rho = input.projector();
        if (depol_on) rho = rho * cx(1.0 - p_gadget) + CMatrix::identity(2) * cx(0.5 * p_gadget);
        if (deph_on) {
            const double lam = std::exp(-out.duration_ns / model->t2_ns[0]);
            rho(0, 1) *= lam;
            rho(1, 0) *= lam;
        }
        rho = no_correction_channel(gamma, rho);
        out.rho1 = rho;
        out.weights_measured = {1, 0, 0, 0};
        out.weights_ideal = {1, 0, 0, 0};
        out.syndrome_states[0] = rho;
        out.missing = {false, true, true, true};
        return out;
    }

    // encoder circuit: CNOT(A->B), then H on each qubit
    CMatrix rho = kron(input.projector(), CMatrix(2, 2, {1, 0, 0, 0}));
    static const CMatrix enc_cnot(4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
    rho = enc_cnot * rho * enc_cnot.adjoint();
    if (depol_on) rho = rho * cx(1.0 - p2) + CMatrix::identity(4) * cx(0.25 * p2);
    for (int q = 0; q < 2; ++q) {
        const CMatrix h = q == 0 ? kron(hadamard(), CMatrix::identity(2))
                                 : kron(CMatrix::identity(2), hadamard());
        rho = h * rho * h.adjoint();
        rho = depolarize_qubit2(rho, q, p1_q[q]);
    }
    if (depol_on)
        for (int q = 0; q < 2; ++q) rho = depolarize_qubit2(rho, q, p_gadget);

    // lumped dephasing covers the whole schedule before the branch split; the
    // interleaved flag defers the recovery-stage share to the branch states
    double recovery_share = 0.0;
    if (deph_on && model->enabled.interleaved_dephasing) {
        auto get = [&](const std::string& key, double fallback) {
            auto it = model->gate_durations_ns.find(key);
            return it == model->gate_durations_ns.end() ? fallback : it->second;
        };
        const double buffer = get("buffer", 20.0);
        const double two = get("cnot", 348.0) + 2 * buffer;
        const double one = get("single", 100.0) + 2 * buffer;
        recovery_share = (2 * one + two) / ((two + one) + 4 * two + (2 * one + two));
    }
    if (deph_on)
        for (int q = 0; q < 2; ++q)
            rho = dephase_qubit(rho, 2, q,
                                std::exp(-out.duration_ns * (1.0 - recovery_share) / model->t2_ns[q]));

    std::array<SyndromeBranch, 4> branches = syndrome_branches(rho, gamma);

    // readout confusion: the recovery selected by the measured syndrome acts
    // on the true branch state
    std::array<std::array<double, 4>, 4> confusion{}; // [measured][true]
    for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t) {
            const double ei = readout_on ? model->readout_error[0] : 0.0;
            const double ej = readout_on ? model->readout_error[1] : 0.0;
            const double pi = ((s >> 1) == (t >> 1)) ? 1.0 - ei : ei;
            const double pj = ((s & 1) == (t & 1)) ? 1.0 - ej : ej;
            confusion[s][t] = pi * pj;
        }

    GateNoise gate_noise{p1, p2};
    const GateNoise* noise_ptr = depol_on ? &gate_noise : nullptr;
    const bool polar_route = scheme == SchemeKind::GenericPolar;
    RecoveryIsometrySet polar_set;
    if (polar_route) polar_set = generic_polar_recovery(gamma);

    std::array<CMatrix, 4> accumulated;
    std::array<double, 4> weight{};
    for (int s = 0; s < 4; ++s) accumulated[s] = CMatrix(2, 2);
    for (int s = 0; s < 4; ++s) {
        const int si = s >> 1, sj = s & 1;
        const SyndromeOps ops = polar_route ? SyndromeOps{} : scheme_ops(scheme, si, sj, gamma);
        for (int t = 0; t < 4; ++t) {
            const SyndromeBranch& b = branches[t];
            const double w = confusion[s][t] * b.prob;
            if (w < tol::branch_prob) continue;
            CMatrix normalized = b.state.m * cx(1.0 / b.prob);
            if (recovery_share > 0)
                for (int q = 0; q < 2; ++q)
                    normalized = dephase_qubit(
                        normalized, 2, q,
                        std::exp(-out.duration_ns * recovery_share / model->t2_ns[q]));
            CMatrix recovered;
            if (polar_route) {
                recovered = apply_polar_recovery(normalized, polar_set.at(si, sj)).rho1;
            } else {
                recovered = run_recovery_circuit(normalized, ops, noise_ptr);
            }
            accumulated[s] += recovered * cx(w);
            weight[s] += w;
        }
    }

    std::array<double, 4> survival{1, 1, 1, 1};
    if (loss_on) survival = model->shot_survival;
    ReweightResult rw = shot_loss_reweight(weight, survival);
    out.weights_measured = rw.measured;
    out.weights_ideal = rw.ideal;

    const auto& weights = ideal_weights ? rw.ideal : rw.measured;
    out.rho1 = CMatrix(2, 2);
    for (int s = 0; s < 4; ++s) {
        out.missing[s] = weight[s] < tol::branch_prob;
        if (out.missing[s]) {
            out.syndrome_states[s] = CMatrix(2, 2);
            continue;
        }
        out.syndrome_states[s] = accumulated[s] * cx(1.0 / weight[s]);
        out.rho1 += out.syndrome_states[s] * cx(weights[s]);
    }
    // renormalize against the weight lost to missing syndromes
    const double tr = out.rho1.trace().real();
    if (tr > tol::branch_prob) out.rho1 = out.rho1 * cx(1.0 / tr);
    return out;
}

DensityMatrix noisy_pipeline(SchemeKind scheme, DampingParam gamma, const NoiseModel& model,
                             const PureState& input) {
    PipelineBreakdown b = pipeline_breakdown(scheme, gamma, &model, input, false);
    return DensityMatrix(1, b.rho1);
}

} // namespace dampcode
