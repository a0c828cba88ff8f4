#include "dampcode/verification.hpp"

#include <cmath>
#include <sstream>

#include "dampcode/circuits.hpp"
#include "dampcode/experiment.hpp"
#include "dampcode/rng.hpp"
#include "dampcode/tolerances.hpp"

namespace dampcode {

namespace {

std::vector<double> grid21() {
    std::vector<double> g(21);
    for (int k = 0; k < 21; ++k) g[k] = k / 20.0;
    return g;
}

CMatrix random_density(Rng& rng, int dim) {
    CMatrix g(dim, dim);
    for (auto& v : g.data()) v = cx(rng.gaussian(), rng.gaussian());
    CMatrix rho = g * g.adjoint();
    return rho * cx(1.0 / rho.trace().real());
}

PropertyResult check(const std::string& name, double worst, double bound) {
    std::ostringstream os;
    os << "worst " << worst << " (bound " << bound << ")";
    return {name, worst <= bound, os.str()};
}

} // namespace

std::vector<PropertyResult> run_all_properties(const VerifyOptions& options) {
    std::vector<PropertyResult> results;
    Rng rng(0xDA3C0DEULL);
    const auto grid = grid21();

    { // qmat: kron associativity on random triples
        double worst = 0;
        for (int n = 0; n < 50; ++n) {
            CMatrix m[3];
            for (auto& x : m) {
                x = CMatrix(2, 2);
                for (auto& v : x.data()) v = cx(rng.gaussian(), rng.gaussian());
            }
            worst = std::max(worst, max_abs_diff(kron(kron(m[0], m[1]), m[2]),
                                                 kron(m[0], kron(m[1], m[2]))));
        }
        results.push_back(check("qmat.kron_associative", worst, 1e-12));
    }
    { // qmat: polar decomposition on random tall matrices
        double worst = 0;
        for (int n = 0; n < 50; ++n) {
            CMatrix t(4, 2);
            for (auto& v : t.data()) v = cx(rng.gaussian(), rng.gaussian());
            PolarResult p = polar_decompose(t);
            worst = std::max(worst, max_abs_diff(p.isometry.adjoint() * p.isometry,
                                                 CMatrix::identity(2)));
            worst = std::max(worst, max_abs_diff(p.isometry * p.positive, t));
        }
        results.push_back(check("qmat.polar_reconstruction", worst, tol::polar_residual * 10));
    }
    { // channels: completeness at random parameters
        double worst = 0;
        for (int n = 0; n < 50; ++n) {
            const double g = rng.uniform();
            worst = std::max(worst, amplitude_damping(DampingParam(g)).completeness_defect());
            worst = std::max(worst, depolarizing(rng.uniform(), 1).completeness_defect());
            worst = std::max(worst,
                             tensor(amplitude_damping(DampingParam(g)),
                                    amplitude_damping(DampingParam(g)))
                                 .completeness_defect());
        }
        results.push_back(check("channels.completeness", worst, tol::completeness));
    }
    { // channels: apply equals the branch sum
        double worst = 0;
        for (int n = 0; n < 20; ++n) {
            const LabeledChannel pair = tensor(amplitude_damping(DampingParam(rng.uniform())),
                                               amplitude_damping(DampingParam(rng.uniform())));
            CMatrix rho = random_density(rng, 4);
            CMatrix total(4, 4);
            for (const auto& b : pair.branches)
                total += apply_branch(pair, rho, b.label).state.m;
            worst = std::max(worst, max_abs_diff(total, apply(pair, rho)));
        }
        results.push_back(check("channels.apply_equals_branch_sum", worst, 1e-12));
    }
    { // circuits: detected gadget branches equal the Kraus operators
        double worst = 0;
        for (double g : grid) {
            const Circuit gadget = detected_ad_circuit(DampingParam(g));
            Circuit unitary_part = gadget;
            unitary_part.gates.pop_back(); // drop the measurement
            const CMatrix u = circuit_to_unitary(unitary_part);
            const LabeledChannel ad = amplitude_damping(DampingParam(g));
            for (int branch = 0; branch < 2; ++branch) {
                CMatrix k(2, 2);
                // data bit d, ancilla outcome `branch`; input ancilla |0>
                for (int r = 0; r < 2; ++r)
                    for (int c = 0; c < 2; ++c) k(r, c) = u(2 * r + branch, 2 * c);
                k = align_column_phases(k, ad.branches[branch].op);
                worst = std::max(worst, max_abs_diff(k, ad.branches[branch].op));
            }
        }
        results.push_back(check("circuits.gadget_matches_kraus", worst, 1e-9));
    }
    { // recovery: unitarity of every syndrome op across schemes and the grid
        double worst = 0;
        for (double g : grid)
            for (SchemeKind kind : {SchemeKind::StandardA, SchemeKind::StandardB, SchemeKind::Optimal})
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        SyndromeOps ops = scheme_ops(kind, i, j, DampingParam(g));
                        for (const CMatrix* m : {&ops.v1, &ops.v2, &ops.v3, &ops.v4, &ops.p})
                            worst = std::max(worst, max_abs_diff(m->adjoint() * (*m),
                                                                 CMatrix::identity(2)));
                    }
        results.push_back(check("recovery.syndrome_ops_unitary", worst, tol::unitary));
    }
    { // recovery: closed-form Optimal vs synthesized polar recovery
        double worst = 0;
        for (double g : grid) {
            const DampingParam gamma(g);
            RecoveryIsometrySet set = generic_polar_recovery(gamma);
            for (const PureState& psi : six_test_states()) {
                const auto branches = syndrome_branches(encode(psi).matrix(), gamma);
                for (const SyndromeBranch& b : branches) {
                    if (b.negligible) continue;
                    SyndromeOps ops = scheme_ops(SchemeKind::Optimal, b.i, b.j, gamma);
                    if (options.u1_perturbation != 0.0 && b.i == 0 && b.j == 0) {
                        OptimalParams p = optimal_params(gamma);
                        CMatrix u1 = p.u1;
                        u1(0, 0) += options.u1_perturbation;
                        ops.v3 = u1.adjoint() * hadamard();
                    }
                    const CMatrix normalized = b.state.m * cx(1.0 / b.prob);
                    const CMatrix via_circuit = run_recovery_circuit(normalized, ops);
                    const CMatrix via_polar =
                        apply_polar_recovery(normalized, set.at(b.i, b.j)).rho1;
                    worst = std::max(worst, max_abs_diff(via_circuit, via_polar));
                }
            }
        }
        results.push_back(check("recovery.optimal_matches_polar", worst, 1e-8));
    }
    { // recovery: StandardA and StandardB coincide at the density-matrix level
        double worst = 0;
        for (double g : grid)
            for (const PureState& psi : six_test_states()) {
                CMatrix a = ideal_pipeline_output(SchemeKind::StandardA, DampingParam(g), psi);
                CMatrix b = ideal_pipeline_output(SchemeKind::StandardB, DampingParam(g), psi);
                worst = std::max(worst, max_abs_diff(a, b));
            }
        results.push_back(check("recovery.standard_a_equals_b", worst, 1e-12));
    }
    { // experiment: ideal-gate ordering across the grid
        double worst = -1e9;
        for (double g : grid) {
            const DampingParam gamma(g);
            const double fo = channel_fidelity(SchemeKind::Optimal, gamma);
            const double fa = channel_fidelity(SchemeKind::StandardA, gamma);
            const double fn = channel_fidelity(SchemeKind::NoCorrection, gamma);
            worst = std::max(worst, std::max(fa - fo, fn - fo));
        }
        results.push_back(check("experiment.optimal_dominates", worst, 1e-9));
    }
    { // experiment: gamma=0 consistency for all schemes
        double worst = 0;
        for (SchemeKind kind : {SchemeKind::NoCorrection, SchemeKind::StandardA,
                                SchemeKind::StandardB, SchemeKind::Optimal,
                                SchemeKind::GenericPolar})
            worst = std::max(worst, 1.0 - channel_fidelity(kind, DampingParam(0.0)));
        results.push_back(check("experiment.gamma0_fidelity_one", worst, 1e-9));
    }
    { // noise: decoherence estimate endpoint and monotonicity
        const double endpoint = decoherence_estimate(61e6, 550e6).p_sys;
        double worst = std::abs(endpoint - 0.099);
        bool monotone = true;
        double prev = -1;
        for (int k = 0; k <= 20; ++k) {
            const double p = decoherence_estimate(k * 1e6, 550e6).p_sys;
            if (p < prev - 1e-15 || p >= 0.5) monotone = false;
            prev = p;
        }
        if (!monotone) worst = 1;
        results.push_back(check("noise.decoherence_estimate", worst, 1e-3));
    }
    { // noise: disabled model reproduces the ideal pipeline
        NoiseModel off;
        off.enabled = {false, false, false, false, false};
        double worst = 0;
        for (double g : {0.0, 0.3, 0.7, 1.0})
            for (SchemeKind kind : {SchemeKind::StandardA, SchemeKind::Optimal,
                                    SchemeKind::NoCorrection})
                for (const PureState& psi : six_test_states()) {
                    CMatrix noisy =
                        pipeline_breakdown(kind, DampingParam(g), &off, psi, false).rho1;
                    CMatrix ideal = ideal_pipeline_output(kind, DampingParam(g), psi);
                    worst = std::max(worst, max_abs_diff(noisy, ideal));
                }
        results.push_back(check("noise.disabled_equals_ideal", worst, 1e-12));
    }
    return results;
}

} // namespace dampcode
