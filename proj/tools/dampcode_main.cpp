#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dampcode/circuits.hpp"
#include "dampcode/experiment.hpp"
#include "dampcode/verification.hpp"

namespace {

using namespace dampcode;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;

struct CliError {
    int code;
    std::string message;
};

std::vector<double> parse_grid(const std::string& spec) {
    double start = 0, stop = 0;
    int points = 0;
    char extra = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d%c", &start, &stop, &points, &extra) != 3)
        throw CliError{kExitConfig, "bad --gammas spec '" + spec + "' (want start:stop:points)"};
    if (points < 1) throw CliError{kExitConfig, "--gammas needs at least 1 point"};
    if (start < 0 || stop > 1 || start > stop)
        throw CliError{kExitConfig, "--gammas must stay within [0, 1]"};
    std::vector<double> grid(points);
    for (int k = 0; k < points; ++k)
        grid[k] = points == 1 ? start : start + (stop - start) * k / (points - 1);
    return grid;
}

std::vector<SchemeKind> parse_schemes(const std::string& csv) {
    std::vector<SchemeKind> schemes;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        try {
            schemes.push_back(scheme_from_name(token));
        } catch (const std::invalid_argument& e) {
            throw CliError{kExitConfig, e.what()};
        }
    }
    if (schemes.empty()) throw CliError{kExitConfig, "--schemes is empty"};
    return schemes;
}

std::optional<NoiseModel> load_noise(const std::string& path) {
    if (path.empty() || path == "none") return std::nullopt;
    try {
        return NoiseModel::load(path);
    } catch (const std::runtime_error& e) {
        throw CliError{kExitIo, e.what()};
    } catch (const std::exception& e) { // invalid JSON or out-of-range values
        throw CliError{kExitConfig, std::string("bad noise preset: ") + e.what()};
    }
}

uint64_t seed_default() {
    if (const char* env = std::getenv("DAMPCODE_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

void emit(const std::vector<SweepRecord>& records, const std::string& out_path,
          const std::string& format) {
    std::string payload;
    if (format == "csv") {
        std::ostringstream os;
        write_records_csv(records, os);
        payload = os.str();
    } else if (format == "json") {
        payload = records_to_json(records) + "\n";
    } else {
        throw CliError{kExitConfig, "unknown --format '" + format + "'"};
    }
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw CliError{kExitIo, "cannot open output path: " + out_path};
    out << payload;
    if (!out.good()) throw CliError{kExitIo, "write failed: " + out_path};
}

int cmd_sweep(const std::string& gammas, const std::string& schemes_csv, const std::string& noise,
              long long shots, uint64_t seed, bool ideal_weights, const std::string& out,
              const std::string& format) {
    const auto grid = parse_grid(gammas);
    const auto schemes = parse_schemes(schemes_csv);
    const auto model = load_noise(noise);
    SweepOptions options;
    options.shots = shots;
    options.seed = seed;
    options.ideal_weights = ideal_weights;
    const auto records = sweep(grid, schemes, model ? &*model : nullptr, options);
    emit(records, out, format);
    return kExitOk;
}

int cmd_shots(double gamma, const std::string& scheme_name_arg, const std::string& noise,
              long long shots, uint64_t seed, bool ideal_weights, const std::string& out,
              const std::string& format) {
    SchemeKind scheme;
    try {
        scheme = scheme_from_name(scheme_name_arg);
    } catch (const std::invalid_argument& e) {
        throw CliError{kExitConfig, e.what()};
    }
    if (gamma < 0 || gamma > 1) throw CliError{kExitConfig, "--gamma must be in [0, 1]"};
    if (shots < 1) throw CliError{kExitConfig, "--shots must be >= 1"};
    const auto model = load_noise(noise);
    ShotResult r = shot_experiment(scheme, DampingParam(gamma), model ? &*model : nullptr, shots,
                                   seed, ideal_weights);

    std::printf("scheme=%s gamma=%.6g shots=%lld seed=%llu\n", scheme_name(scheme).c_str(), gamma,
                shots, static_cast<unsigned long long>(seed));
    std::printf("fidelity = %.6f +- %.6f (bootstrap)\n", r.fidelity, r.stderr_);
    const auto& names = six_test_state_names();
    for (int k = 0; k < 6; ++k) {
        const auto& st = r.per_state[k];
        std::printf("  state %-2s fidelity %.6f accepted", names[k].c_str(), st.fidelity);
        for (int s = 0; s < 4; ++s) std::printf(" %lld", st.accepted[s]);
        bool gap = false;
        for (bool e : st.empty_required) gap = gap || e;
        if (gap) std::printf("  [warning: expected syndrome saw zero shots]");
        std::printf("\n");
    }

    if (!out.empty()) {
        if (format == "csv") {
            std::vector<SweepRecord> records{{gamma, scheme, r.fidelity, r.stderr_, shots,
                                              model ? model->preset_name : "none"}};
            emit(records, out, format);
        } else {
            nlohmann::ordered_json j;
            j["gamma"] = gamma;
            j["scheme"] = scheme_name(scheme);
            j["shots"] = shots;
            j["seed"] = seed;
            j["ideal_weights"] = ideal_weights;
            j["noise_preset"] = model ? model->preset_name : "none";
            j["fidelity"] = r.fidelity;
            j["stderr"] = r.stderr_;
            j["states"] = nlohmann::ordered_json::array();
            static const char* basis_names[3] = {"x", "y", "z"};
            for (int k = 0; k < 6; ++k) {
                const auto& st = r.per_state[k];
                nlohmann::ordered_json sj;
                sj["state"] = six_test_state_names()[k];
                sj["fidelity"] = st.fidelity;
                sj["accepted"] = st.accepted;
                nlohmann::ordered_json counts = nlohmann::ordered_json::array();
                for (int s = 0; s < 4; ++s) {
                    nlohmann::ordered_json cj;
                    cj["syndrome"] = {s >> 1, s & 1};
                    for (int b = 0; b < 3; ++b)
                        cj[basis_names[b]] = {st.per_syndrome[s].basis[b].plus,
                                              st.per_syndrome[s].basis[b].minus};
                    counts.push_back(cj);
                }
                sj["counts"] = counts;
                j["states"].push_back(sj);
            }
            std::ofstream os(out, std::ios::binary);
            if (!os) throw CliError{kExitIo, "cannot open output path: " + out};
            os << j.dump(2) << "\n";
            if (!os.good()) throw CliError{kExitIo, "write failed: " + out};
        }
    }
    return kExitOk;
}

int cmd_crossover(const std::string& gammas, const std::string& schemes_csv,
                  const std::string& noise, long long shots, uint64_t seed,
                  const std::string& in_path) {
    std::vector<SweepRecord> records;
    if (!in_path.empty()) {
        std::ifstream in(in_path);
        if (!in) throw CliError{kExitIo, "cannot read records: " + in_path};
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            records = records_from_json(buf.str());
        } catch (const std::exception& e) {
            throw CliError{kExitConfig, std::string("bad records file: ") + e.what()};
        }
    } else {
        const auto grid = parse_grid(gammas);
        if (grid.size() < 2) throw CliError{kExitConfig, "crossover needs at least 2 grid points"};
        auto schemes = parse_schemes(schemes_csv);
        bool has_baseline = false;
        for (SchemeKind s : schemes) has_baseline |= s == SchemeKind::NoCorrection;
        if (!has_baseline) schemes.push_back(SchemeKind::NoCorrection);
        const auto model = load_noise(noise);
        SweepOptions options;
        options.shots = shots;
        options.seed = seed;
        records = sweep(grid, schemes, model ? &*model : nullptr, options);
    }

    std::vector<SweepRecord> baseline;
    for (const auto& r : records)
        if (r.scheme == SchemeKind::NoCorrection) baseline.push_back(r);
    if (baseline.size() < 2)
        throw CliError{kExitConfig, "crossover needs a 'none' baseline curve with >= 2 points"};

    for (SchemeKind kind : {SchemeKind::StandardA, SchemeKind::StandardB, SchemeKind::Optimal,
                            SchemeKind::GenericPolar}) {
        std::vector<SweepRecord> curve;
        for (const auto& r : records)
            if (r.scheme == kind) curve.push_back(r);
        if (curve.empty()) continue;
        std::optional<double> gc;
        try {
            gc = crossover(curve, baseline);
        } catch (const std::invalid_argument& e) {
            throw CliError{kExitConfig, e.what()};
        }
        if (gc)
            std::printf("%s gamma_c = %.6f\n", scheme_name(kind).c_str(), *gc);
        else
            std::printf("%s gamma_c = none\n", scheme_name(kind).c_str());
    }
    return kExitOk;
}

int cmd_angles(double gamma) {
    if (gamma < 0 || gamma > 1) throw CliError{kExitConfig, "--gamma must be in [0, 1]"};
    const DampingParam g(gamma);
    const double theta = controlled_ry_angle(g);
    std::printf("gamma = %.6g\n", gamma);
    std::printf("HWP angle for A0       : %9.4f deg  (sin^2 2theta = 1-gamma)\n",
                waveplate_angle(g, DampingOperator::A0));
    std::printf("HWP angle for A1       : %9.4f deg  (sin^2 2theta = gamma)\n",
                waveplate_angle(g, DampingOperator::A1));
    std::printf("controlled-Ry angle    : %9.6f rad = %9.4f deg  (gamma = sin^2(theta/2))\n",
                theta, theta * 180.0 / std::numbers::pi);
    return kExitOk;
}

int cmd_verify() {
    const auto results = run_all_properties();
    int failures = 0;
    for (const auto& r : results) {
        std::printf("[%s] %-36s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        failures += r.pass ? 0 : 1;
    }
    std::printf("%d/%zu properties passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures == 0 ? kExitOk : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-qubit detected-damping code simulator"};
    app.require_subcommand(1);

    std::string gammas = "0:1:21";
    std::string schemes = "optimal,standard_a,standard_b,none";
    std::string noise = "none";
    std::string out_path;
    std::string format = "csv";
    std::string in_path;
    std::string scheme_one = "optimal";
    long long shots = 0;
    uint64_t seed = seed_default();
    double gamma = 0;
    bool ideal_weights = false;

    auto* sweep_cmd = app.add_subcommand("sweep", "fidelity vs gamma table");
    sweep_cmd->add_option("--gammas", gammas, "grid start:stop:points (inclusive)");
    sweep_cmd->add_option("--schemes", schemes, "comma list: optimal,standard_a,standard_b,generic_polar,none");
    sweep_cmd->add_option("--noise", noise, "noise preset JSON path or 'none'");
    sweep_cmd->add_option("--shots", shots, "shots per input state (0 = exact)");
    sweep_cmd->add_option("--seed", seed, "master seed (env DAMPCODE_SEED fallback)");
    sweep_cmd->add_flag("--ideal-weights", ideal_weights, "recombine with exact syndrome weights");
    sweep_cmd->add_option("--out", out_path, "output file (stdout if omitted)");
    sweep_cmd->add_option("--format", format, "csv or json");

    auto* shots_cmd = app.add_subcommand("shots", "single sampled experiment with counts");
    shots_cmd->add_option("--gamma", gamma, "damping parameter")->required();
    shots_cmd->add_option("--scheme", scheme_one, "scheme name");
    shots_cmd->add_option("--noise", noise, "noise preset JSON path or 'none'");
    shots_cmd->add_option("--shots", shots, "shots per input state")->default_val(100000);
    shots_cmd->add_option("--seed", seed, "master seed (env DAMPCODE_SEED fallback)");
    shots_cmd->add_flag("--ideal-weights", ideal_weights, "recombine with exact syndrome weights");
    shots_cmd->add_option("--out", out_path, "write detailed JSON (or CSV row) here");
    shots_cmd->add_option("--format", format, "csv or json");

    auto* cross_cmd = app.add_subcommand("crossover", "corrected-vs-uncorrected threshold");
    cross_cmd->add_option("--gammas", gammas, "grid start:stop:points");
    cross_cmd->add_option("--schemes", schemes, "corrected schemes to test");
    cross_cmd->add_option("--noise", noise, "noise preset JSON path or 'none'");
    cross_cmd->add_option("--shots", shots, "shots per input state (0 = exact)");
    cross_cmd->add_option("--seed", seed, "master seed");
    cross_cmd->add_option("--in", in_path, "read sweep records from JSON instead of computing");

    auto* angles_cmd = app.add_subcommand("angles", "optical/gadget angle utility");
    angles_cmd->add_option("--gamma", gamma, "damping parameter")->required();

    app.add_subcommand("verify", "run the invariant battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (app.got_subcommand("sweep"))
            return cmd_sweep(gammas, schemes, noise, shots, seed, ideal_weights, out_path, format);
        if (app.got_subcommand("shots"))
            return cmd_shots(gamma, scheme_one, noise, shots, seed, ideal_weights, out_path, format);
        if (app.got_subcommand("crossover"))
            return cmd_crossover(gammas, schemes, noise, shots, seed, in_path);
        if (app.got_subcommand("angles")) return cmd_angles(gamma);
        if (app.got_subcommand("verify")) return cmd_verify();
    } catch (const CliError& e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return e.code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
    return kExitConfig;
}
