#include "dampcode/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "dampcode/rng.hpp"
#include "dampcode/tolerances.hpp"

namespace dampcode {

namespace {

uint64_t gamma_key(double gamma) {
    uint64_t bits;
    static_assert(sizeof(bits) == sizeof(gamma));
    std::memcpy(&bits, &gamma, sizeof(bits));
    return bits;
}

struct RngAdapter {
    using result_type = uint64_t;
    Rng* rng;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return rng->next(); }
};

long long binomial_draw(Rng& rng, long long n, double p) {
    if (n <= 0 || p <= 0) return 0;
    if (p >= 1) return n;
    RngAdapter adapter{&rng};
    std::binomial_distribution<long long> dist(n, p);
    return dist(adapter);
}

} // namespace

CMatrix ideal_pipeline_output(SchemeKind scheme, DampingParam gamma, const PureState& input) {
    if (scheme == SchemeKind::NoCorrection)
        return no_correction_channel(gamma, input.projector());
    const DensityMatrix encoded = encode(input);
    const auto branches = syndrome_branches(encoded.matrix(), gamma);
    CMatrix out(2, 2);
    for (const SyndromeBranch& b : branches) {
        if (b.negligible) continue;
        out += apply_recovery(b, scheme, gamma).matrix() * cx(b.prob);
    }
    const double tr = out.trace().real();
    if (tr > tol::branch_prob) out = out * cx(1.0 / tr);
    return out;
}

double channel_fidelity(SchemeKind scheme, DampingParam gamma, const NoiseModel* model,
                        bool ideal_weights) {
    double total = 0;
    for (const PureState& psi : six_test_states()) {
        CMatrix rho = model
                          ? pipeline_breakdown(scheme, gamma, model, psi, ideal_weights).rho1
                          : ideal_pipeline_output(scheme, gamma, psi);
        total += fidelity(psi, rho);
    }
    return total / 6.0;
}

namespace {

SweepRecord run_cell(double gamma, SchemeKind scheme, const NoiseModel* model,
                     const SweepOptions& options) {
    SweepRecord rec;
    rec.gamma = gamma;
    rec.scheme = scheme;
    rec.shots = options.shots;
    rec.noise_preset = model ? model->preset_name : "none";
    if (options.shots <= 0) {
        rec.fidelity = channel_fidelity(scheme, DampingParam(gamma), model, options.ideal_weights);
        rec.stderr_ = 0;
        rec.shots = 0;
    } else {
        ShotResult r = shot_experiment(scheme, DampingParam(gamma), model, options.shots,
                                       options.seed, options.ideal_weights,
                                       options.bootstrap_rounds);
        rec.fidelity = r.fidelity;
        rec.stderr_ = r.stderr_;
    }
    return rec;
}

std::vector<SweepRecord> sweep_impl(const std::vector<double>& gammas,
                                    const std::vector<SchemeKind>& schemes,
                                    const NoiseModel* model, const SweepOptions& options,
                                    bool parallel) {
    if (gammas.empty()) throw std::invalid_argument("sweep: empty gamma grid");
    for (double g : gammas) DampingParam check(g);
    const long long cells = static_cast<long long>(gammas.size()) * schemes.size();
    std::vector<SweepRecord> records(cells);
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long idx = 0; idx < cells; ++idx) {
            const size_t gi = idx / schemes.size(), si = idx % schemes.size();
            records[idx] = run_cell(gammas[gi], schemes[si], model, options);
        }
    } else {
        for (long long idx = 0; idx < cells; ++idx) {
            const size_t gi = idx / schemes.size(), si = idx % schemes.size();
            records[idx] = run_cell(gammas[gi], schemes[si], model, options);
        }
    }
    return records;
}

} // namespace

std::vector<SweepRecord> sweep(const std::vector<double>& gammas,
                               const std::vector<SchemeKind>& schemes, const NoiseModel* model,
                               const SweepOptions& options) {
    return sweep_impl(gammas, schemes, model, options, true);
}

std::vector<SweepRecord> sweep_serial(const std::vector<double>& gammas,
                                      const std::vector<SchemeKind>& schemes,
                                      const NoiseModel* model, const SweepOptions& options) {
    return sweep_impl(gammas, schemes, model, options, false);
}

std::optional<double> crossover(const std::vector<SweepRecord>& corrected,
                                const std::vector<SweepRecord>& uncorrected) {
    if (corrected.size() != uncorrected.size() || corrected.size() < 2)
        throw std::invalid_argument("crossover: curves must share a grid with at least 2 points");
    for (size_t k = 0; k < corrected.size(); ++k)
        if (std::abs(corrected[k].gamma - uncorrected[k].gamma) > 1e-12)
            throw std::invalid_argument("crossover: mismatched gamma grids");
    auto clipped = [&](size_t k) {
        const double d = corrected[k].fidelity - uncorrected[k].fidelity;
        return std::abs(d) <= tol::crossover_sign ? 0.0 : d;
    };
    for (size_t k = 0; k + 1 < corrected.size(); ++k) {
        const double d0 = clipped(k), d1 = clipped(k + 1);
        if (d0 < 0 && d1 >= 0) {
            const double g0 = corrected[k].gamma, g1 = corrected[k + 1].gamma;
            return g0 + (g1 - g0) * (-d0) / (d1 - d0);
        }
    }
    return std::nullopt;
}

CMatrix psd_project_qubit(const CMatrix& rho) {
    if (rho.rows() != 2 || rho.cols() != 2)
        throw std::invalid_argument("psd_project_qubit: 2x2 matrix required");
    // symmetrize first so finite-sample asymmetries do not trip the solver
    CMatrix sym = (rho + rho.adjoint()) * cx(0.5);
    EigenResult eig = hermitian_eigen(sym);
    double clipped[2] = {std::max(0.0, eig.values[0]), std::max(0.0, eig.values[1])};
    double total = clipped[0] + clipped[1];
    if (total <= 0) return CMatrix::identity(2) * cx(0.5);
    CMatrix out(2, 2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            for (int k = 0; k < 2; ++k)
                out(r, c) += eig.vectors(r, k) * (clipped[k] / total) * std::conj(eig.vectors(c, k));
    return out;
}

namespace {

CMatrix reconstruct_from_expectations(double ex, double ey, double ez) {
    CMatrix rho = CMatrix::identity(2) * cx(0.5);
    rho += pauli_x() * cx(0.5 * ex);
    rho += pauli_y() * cx(0.5 * ey);
    rho += pauli_z() * cx(0.5 * ez);
    return psd_project_qubit(rho);
}

} // namespace

CMatrix tomography_reconstruct(const TomographyCounts& counts) {
    double e[3];
    for (int b = 0; b < 3; ++b) {
        const long long n = counts.basis[b].total();
        if (n <= 0) throw std::invalid_argument("tomography_reconstruct: empty basis");
        e[b] = static_cast<double>(counts.basis[b].plus - counts.basis[b].minus) / n;
    }
    return reconstruct_from_expectations(e[0], e[1], e[2]);
}

namespace {

struct CellDistributions {
    std::array<double, 4> syndrome{};              // sampling weights (measured)
    std::array<double, 4> ideal{};                 // exact weights for --ideal-weights
    std::array<std::array<double, 3>, 4> p_plus{}; // P(+1 | syndrome, basis)
    std::array<bool, 4> missing{};
};

CellDistributions cell_distributions(SchemeKind scheme, DampingParam gamma,
                                     const NoiseModel* model, const PureState& psi) {
    PipelineBreakdown b = pipeline_breakdown(scheme, gamma, model, psi, false);
    CellDistributions out;
    out.syndrome = b.weights_measured;
    out.ideal = b.weights_ideal;
    out.missing = b.missing;
    const CMatrix* paulis[3] = {&pauli_x(), &pauli_y(), &pauli_z()};
    for (int s = 0; s < 4; ++s) {
        if (b.missing[s]) continue;
        for (int w = 0; w < 3; ++w) {
            const double expectation = ((*paulis[w]) * b.syndrome_states[s]).trace().real();
            out.p_plus[s][w] = std::clamp(0.5 * (1.0 + expectation), 0.0, 1.0);
        }
    }
    return out;
}

double fidelity_from_counts(const StateShotData& data, const CellDistributions& dist,
                            const PureState& psi, bool ideal_weights, long long total_shots,
                            std::array<bool, 4>* empty_required) {
    std::array<double, 4> weights{};
    double wsum = 0;
    for (int s = 0; s < 4; ++s) {
        const double empirical = static_cast<double>(data.accepted[s]) / total_shots;
        double w = ideal_weights ? dist.ideal[s] : empirical;
        if (data.accepted[s] == 0) {
            if (empty_required && w > tol::branch_prob) (*empty_required)[s] = true;
            w = 0; // no shots to reconstruct from; weight drops and the rest renormalizes
        }
        weights[s] = w;
        wsum += w;
    }
    if (wsum <= 0) return 0;
    CMatrix rho(2, 2);
    for (int s = 0; s < 4; ++s) {
        if (weights[s] <= 0) continue;
        double e[3];
        for (int b = 0; b < 3; ++b) {
            const long long n = data.per_syndrome[s].basis[b].total();
            e[b] = n > 0 ? static_cast<double>(data.per_syndrome[s].basis[b].plus -
                                               data.per_syndrome[s].basis[b].minus) / n
                         : 0.0;
        }
        rho += reconstruct_from_expectations(e[0], e[1], e[2]) * cx(weights[s] / wsum);
    }
    return fidelity(psi, rho);
}

} // namespace

ShotResult shot_experiment(SchemeKind scheme, DampingParam gamma, const NoiseModel* model,
                           long long shots, uint64_t seed, bool ideal_weights,
                           int bootstrap_rounds) {
    if (shots < 1) throw std::invalid_argument("shot_experiment: shots must be >= 1");
    ShotResult result;
    result.shots_per_state = shots;
    result.seed = seed;

    const auto& states = six_test_states();
    std::array<CellDistributions, 6> dists;
    for (int k = 0; k < 6; ++k)
        dists[k] = cell_distributions(scheme, gamma, model, states[k]);

    const uint64_t gkey = gamma_key(gamma.gamma);
    const auto scheme_idx = static_cast<uint64_t>(scheme);

    for (int k = 0; k < 6; ++k) {
        Rng rng(derive_stream(seed, gkey, scheme_idx, static_cast<uint64_t>(k)));
        StateShotData& data = result.per_state[k];
        const CellDistributions& dist = dists[k];
        double cdf[4];
        double acc = 0;
        for (int s = 0; s < 4; ++s) {
            acc += dist.syndrome[s];
            cdf[s] = acc;
        }
        for (long long shot = 0; shot < shots; ++shot) {
            const int basis = static_cast<int>(shot % 3);
            const double u = rng.uniform() * acc;
            int s = 0;
            while (s < 3 && u >= cdf[s]) ++s;
            ++data.accepted[s];
            const bool plus = rng.uniform() < dist.p_plus[s][basis];
            if (plus)
                ++data.per_syndrome[s].basis[basis].plus;
            else
                ++data.per_syndrome[s].basis[basis].minus;
        }
        data.fidelity = fidelity_from_counts(data, dist, states[k], ideal_weights, shots,
                                             &data.empty_required);
        // recombined reconstruction for reporting
        std::array<double, 4> weights{};
        double wsum = 0;
        for (int s = 0; s < 4; ++s) {
            double w = ideal_weights ? dist.ideal[s] : static_cast<double>(data.accepted[s]) / shots;
            if (data.accepted[s] == 0) w = 0;
            weights[s] = w;
            wsum += w;
        }
        data.rho = CMatrix(2, 2);
        for (int s = 0; s < 4; ++s) {
            if (weights[s] <= 0) continue;
            TomographyCounts safe = data.per_syndrome[s];
            for (auto& b : safe.basis)
                if (b.total() == 0) b = {1, 1}; // expectation 0 placeholder
            data.rho += tomography_reconstruct(safe) * cx(weights[s] / wsum);
        }
        result.fidelity += data.fidelity / 6.0;
    }

    // stratified multinomial bootstrap per (state, basis)
    if (bootstrap_rounds > 0) {
        std::vector<double> replicate(bootstrap_rounds, 0.0);
        for (int k = 0; k < 6; ++k) {
            Rng rng(derive_stream(seed, gkey, scheme_idx, static_cast<uint64_t>(k) | 0x8000u));
            const StateShotData& data = result.per_state[k];
            const CellDistributions& dist = dists[k];
            std::array<long long, 3> basis_total{};
            for (int s = 0; s < 4; ++s)
                for (int b = 0; b < 3; ++b) basis_total[b] += data.per_syndrome[s].basis[b].total();
            for (int rep = 0; rep < bootstrap_rounds; ++rep) {
                StateShotData resampled;
                for (int b = 0; b < 3; ++b) {
                    long long remaining = basis_total[b];
                    double mass = 1.0;
                    for (int s = 0; s < 4 && remaining > 0; ++s) {
                        for (int outcome = 0; outcome < 2 && remaining > 0; ++outcome) {
                            const long long observed = outcome == 0
                                                           ? data.per_syndrome[s].basis[b].plus
                                                           : data.per_syndrome[s].basis[b].minus;
                            const double p = basis_total[b] > 0
                                                 ? static_cast<double>(observed) / basis_total[b]
                                                 : 0.0;
                            long long draw;
                            if (s == 3 && outcome == 1) {
                                draw = remaining;
                            } else {
                                const double cond = mass > 1e-300 ? std::min(1.0, p / mass) : 0.0;
                                draw = binomial_draw(rng, remaining, cond);
                            }
                            if (outcome == 0)
                                resampled.per_syndrome[s].basis[b].plus = draw;
                            else
                                resampled.per_syndrome[s].basis[b].minus = draw;
                            resampled.accepted[s] += draw;
                            remaining -= draw;
                            mass -= p;
                        }
                    }
                }
                replicate[rep] += fidelity_from_counts(resampled, dist, states[k], ideal_weights,
                                                       result.shots_per_state, nullptr) /
                                  6.0;
            }
        }
        double mean = 0;
        for (double f : replicate) mean += f;
        mean /= bootstrap_rounds;
        double var = 0;
        for (double f : replicate) var += (f - mean) * (f - mean);
        result.stderr_ = bootstrap_rounds > 1 ? std::sqrt(var / (bootstrap_rounds - 1)) : 0.0;
    }
    return result;
}

double haar_average_check(SchemeKind scheme, DampingParam gamma, long long samples, uint64_t seed,
                          const NoiseModel* model) {
    if (samples < 1) throw std::invalid_argument("haar_average_check: samples must be >= 1");
    Rng rng(derive_stream(seed, gamma_key(gamma.gamma), static_cast<uint64_t>(scheme), 0x44AA));
    double total = 0;
    for (long long n = 0; n < samples; ++n) {
        cx a, b;
        double norm = 0;
        do {
            a = cx(rng.gaussian(), rng.gaussian());
            b = cx(rng.gaussian(), rng.gaussian());
            norm = std::sqrt(std::norm(a) + std::norm(b));
        } while (norm < 1e-6);
        PureState psi(a / norm, b / norm);
        CMatrix rho = model ? pipeline_breakdown(scheme, gamma, model, psi, false).rho1
                            : ideal_pipeline_output(scheme, gamma, psi);
        total += fidelity(psi, rho);
    }
    return total / static_cast<double>(samples);
}

void write_records_csv(const std::vector<SweepRecord>& records, std::ostream& os) {
    os << "gamma,scheme,fidelity,stderr,shots,noise_preset\n";
    char line[256];
    for (const SweepRecord& r : records) {
        std::snprintf(line, sizeof(line), "%.10g,%s,%.12g,%.12g,%lld,%s\n", r.gamma,
                      scheme_name(r.scheme).c_str(), r.fidelity, r.stderr_, r.shots,
                      r.noise_preset.c_str());
        os << line;
    }
}

std::string records_to_json(const std::vector<SweepRecord>& records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const SweepRecord& r : records) {
        nlohmann::ordered_json row;
        row["gamma"] = r.gamma;
        row["scheme"] = scheme_name(r.scheme);
        row["fidelity"] = r.fidelity;
        row["stderr"] = r.stderr_;
        row["shots"] = r.shots;
        row["noise_preset"] = r.noise_preset;
        arr.push_back(row);
    }
    return arr.dump(2);
}

std::vector<SweepRecord> records_from_json(const std::string& text) {
    nlohmann::json arr = nlohmann::json::parse(text);
    std::vector<SweepRecord> out;
    for (const auto& row : arr) {
        SweepRecord r;
        r.gamma = row.at("gamma").get<double>();
        r.scheme = scheme_from_name(row.at("scheme").get<std::string>());
        r.fidelity = row.at("fidelity").get<double>();
        if (row.contains("stderr")) r.stderr_ = row["stderr"].get<double>();
        if (row.contains("shots")) r.shots = row["shots"].get<long long>();
        if (row.contains("noise_preset")) r.noise_preset = row["noise_preset"].get<std::string>();
        out.push_back(r);
    }
    return out;
}

} // namespace dampcode
