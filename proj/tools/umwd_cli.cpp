// SPDX-License-Identifier: Apache-2.0
// Command-line front end: scenario files in, reproducible CSV artifacts
// out. Talks to the library exclusively through the C API.

#include <chrono>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "umwd/umwd.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitBadInput = 2;

// Thrown for anything that is the user's input's fault; exits 2.
struct BadInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int log_level() {
    const char *env = std::getenv("UMWD_LOG");
    if (!env) return 0;
    if (std::strcmp(env, "debug") == 0) return 2;
    if (std::strcmp(env, "info") == 0) return 1;
    return 0;
}

// ------------------------------------------------------------------
// Small utilities

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

uint64_t fnv1a64(const void *data, size_t size, uint64_t h = 0xcbf29ce484222325ull) {
    const unsigned char *p = static_cast<const unsigned char *>(data);
    for (size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

uint64_t fnv1a64(const std::string &s) { return fnv1a64(s.data(), s.size()); }

std::string hash_tag(uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016" PRIx64, h);
    return buf;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadInput("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
    if (!out) throw std::runtime_error("short write: " + path);
}

std::string join_path(const std::string &dir, const std::string &name) {
    if (dir.empty() || dir == ".") return name;
    if (dir.back() == '/') return dir + name;
    return dir + "/" + name;
}

std::vector<double> parse_double_list(const std::string &text, const char *what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception &) {
            throw BadInput(std::string(what) + ": cannot parse '" + item + "' as a number");
        }
    }
    if (out.empty()) throw BadInput(std::string(what) + ": empty list");
    return out;
}

// RAII wrappers around the C handles.
struct ScenarioDeleter {
    void operator()(umwd_scenario *p) const { umwd_scenario_destroy(p); }
};
struct WaveformDeleter {
    void operator()(umwd_waveform *p) const { umwd_waveform_destroy(p); }
};
struct TraceDeleter {
    void operator()(umwd_trace *p) const { umwd_trace_destroy(p); }
};
using ScenarioPtr = std::unique_ptr<umwd_scenario, ScenarioDeleter>;
using WaveformPtr = std::unique_ptr<umwd_waveform, WaveformDeleter>;
using TracePtr = std::unique_ptr<umwd_trace, TraceDeleter>;

[[noreturn]] void fail_api(const char *call) {
    const char *msg = umwd_last_error();
    throw std::runtime_error(std::string(call) + ": " + (msg && *msg ? msg : "unknown error"));
}

void check_api(umwd_status st, const char *call) {
    if (st == UMWD_OK) return;
    const char *msg = umwd_last_error();
    const std::string text = std::string(call) + ": " + (msg && *msg ? msg : "unknown error");
    // Validation problems come back as these two codes; they are input errors.
    if (st == UMWD_ERR_INVALID_ARGUMENT || st == UMWD_ERR_DIMENSION_MISMATCH)
        throw BadInput(text);
    throw std::runtime_error(text);
}

// ------------------------------------------------------------------
// Scenario loading

struct ScenarioFile {
    ScenarioPtr handle;
    json canonical;          // parsed object (nlohmann keeps keys sorted)
    std::string hash;        // over the canonical dump
    double weight_g = 1.0;
    double weight_h = 1.0;
};

const json &require_key(const json &j, const char *key) {
    auto it = j.find(key);
    if (it == j.end()) throw BadInput(std::string("scenario: missing `") + key + "` key");
    return *it;
}

double as_number(const json &j, const char *key) {
    if (!j.is_number()) throw BadInput(std::string("scenario: `") + key + "` must be a number");
    return j.get<double>();
}

int32_t as_int(const json &j, const char *key) {
    if (!j.is_number_integer())
        throw BadInput(std::string("scenario: `") + key + "` must be an integer");
    return j.get<int32_t>();
}

ScenarioFile load_scenario(const std::string &path, const std::string &weights_override) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error &e) {
        throw BadInput("scenario: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw BadInput("scenario: top level must be a JSON object");

    ScenarioFile out;

    const int32_t m = as_int(require_key(doc, "m"), "m");
    const int32_t n = as_int(require_key(doc, "n"), "n");
    const double d_over_lambda =
        doc.contains("d_over_lambda") ? as_number(doc["d_over_lambda"], "d_over_lambda") : 0.5;
    const double grid_step =
        doc.contains("grid_step_deg") ? as_number(doc["grid_step_deg"], "grid_step_deg") : 0.1;

    const json &desired_j = require_key(doc, "desired_angles_deg");
    if (!desired_j.is_array() || desired_j.empty())
        throw BadInput("scenario: `desired_angles_deg` must be a non-empty array");
    std::vector<double> desired;
    for (const auto &v : desired_j) desired.push_back(as_number(v, "desired_angles_deg"));

    const double comm = as_number(require_key(doc, "comm_angle_deg"), "comm_angle_deg");

    const json &delays_j = require_key(doc, "delays");
    if (!delays_j.is_array() || delays_j.empty())
        throw BadInput("scenario: `delays` must be a non-empty array");
    std::vector<int32_t> delays;
    if (delays_j.size() == 2) {
        // Two entries form an inclusive [lo, hi] range.
        const int32_t lo = as_int(delays_j[0], "delays");
        const int32_t hi = as_int(delays_j[1], "delays");
        if (lo > hi) throw BadInput("scenario: `delays` range [lo, hi] requires lo <= hi");
        for (int32_t t = lo; t <= hi; ++t) delays.push_back(t);
    } else {
        for (const auto &v : delays_j) delays.push_back(as_int(v, "delays"));
    }

    const double halfwidth = doc.contains("mainlobe_halfwidth_deg")
                                 ? as_number(doc["mainlobe_halfwidth_deg"], "mainlobe_halfwidth_deg")
                                 : -1.0;

    out.weight_g = 1.0;
    out.weight_h = 1.0;
    if (doc.contains("weights")) {
        const json &w = doc["weights"];
        if (!w.is_object()) throw BadInput("scenario: `weights` must be an object with g, h");
        if (w.contains("g")) out.weight_g = as_number(w["g"], "weights.g");
        if (w.contains("h")) out.weight_h = as_number(w["h"], "weights.h");
    }
    if (!weights_override.empty()) {
        const std::vector<double> wv = parse_double_list(weights_override, "--weights");
        if (wv.size() != 2) throw BadInput("--weights: expected two values g,h");
        out.weight_g = wv[0];
        out.weight_h = wv[1];
    }

    umwd_scenario_params params{};
    params.m = m;
    params.n = n;
    params.d_over_lambda = d_over_lambda;
    params.grid_step_deg = grid_step;
    params.desired_angles_deg = desired.data();
    params.desired_count = desired.size();
    params.comm_angle_deg = comm;
    params.delays = delays.data();
    params.delay_count = delays.size();
    params.mainlobe_halfwidth_deg = halfwidth;
    params.weight_g = out.weight_g;
    params.weight_h = out.weight_h;

    umwd_scenario *sc = nullptr;
    check_api(umwd_scenario_create(&params, &sc), "scenario");
    out.handle.reset(sc);

    // Canonical form: parsed JSON re-serialized (sorted keys, normalized
    // whitespace) with the effective weights folded in, so formatting
    // differences and --weights overrides hash consistently.
    json canon = doc;
    canon["weights"] = json{{"g", out.weight_g}, {"h", out.weight_h}};
    out.canonical = canon;
    out.hash = hash_tag(fnv1a64(canon.dump()));
    return out;
}

// ------------------------------------------------------------------
// Waveform CSV format

std::string waveform_csv(const umwd_waveform *wf, const std::string &manifest_hash) {
    int32_t n = 0, m = 0;
    check_api(umwd_waveform_dims(wf, &n, &m), "umwd_waveform_dims");
    std::vector<double> buf(static_cast<size_t>(2) * n * m);
    check_api(umwd_waveform_data(wf, buf.data()), "umwd_waveform_data");

    std::string out;
    out += "# umwd-waveform n=" + std::to_string(n) + " m=" + std::to_string(m) + "\n";
    out += "# manifest=" + manifest_hash + "\n";
    for (int32_t k = 0; k < m; ++k) {
        if (k) out += ",";
        out += "re" + std::to_string(k) + ",im" + std::to_string(k);
    }
    out += "\n";
    for (int32_t t = 0; t < n; ++t) {
        for (int32_t k = 0; k < 2 * m; ++k) {
            if (k) out += ",";
            out += fmt17(buf[static_cast<size_t>(t) * 2 * m + k]);
        }
        out += "\n";
    }
    return out;
}

WaveformPtr read_waveform_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw BadInput("cannot open waveform file: " + path);
    std::string line;
    int32_t n = -1, m = -1;
    std::vector<double> values;
    bool header_row_skipped = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            int pn = 0, pm = 0;
            if (std::sscanf(line.c_str(), "# umwd-waveform n=%d m=%d", &pn, &pm) == 2) {
                n = pn;
                m = pm;
            }
            continue;
        }
        if (!header_row_skipped) { // column-name row
            header_row_skipped = true;
            continue;
        }
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                values.push_back(std::stod(item));
            } catch (const std::exception &) {
                throw BadInput("waveform file: cannot parse '" + item + "' as a number");
            }
        }
    }
    if (n <= 0 || m <= 0)
        throw BadInput("waveform file: missing `# umwd-waveform n=.. m=..` header");
    if (values.size() != static_cast<size_t>(2) * n * m)
        throw BadInput("waveform file: expected " + std::to_string(2 * n * m) + " values, found " +
                       std::to_string(values.size()));
    umwd_waveform *wf = nullptr;
    check_api(umwd_waveform_create(n, m, values.data(), &wf), "umwd_waveform_create");
    return WaveformPtr(wf);
}

// ------------------------------------------------------------------
// Manifest

struct Manifest {
    json core;          // deterministic fields; hashed
    std::string hash;   // hash_tag over core.dump()
};

Manifest make_manifest(const std::string &command, const ScenarioFile &sc, uint64_t seed,
                       const json &extra, const std::vector<std::string> &outputs) {
    Manifest mf;
    mf.core = json{{"tool", "umwd"},
                   {"version", umwd_version()},
                   {"command", command},
                   {"scenario_hash", sc.hash},
                   {"scenario", sc.canonical},
                   {"seed", seed},
                   {"outputs", outputs}};
    for (auto it = extra.begin(); it != extra.end(); ++it) mf.core[it.key()] = it.value();
    mf.hash = hash_tag(fnv1a64(mf.core.dump()));
    return mf;
}

void write_manifest(const Manifest &mf, const std::string &out_dir, double wall_s) {
    json full = mf.core;
    full["manifest_hash"] = mf.hash;
    full["wall_clock_s"] = wall_s; // informational; excluded from the hash
    write_file(join_path(out_dir, "manifest.json"), full.dump(2) + "\n");
}

json solver_json(const umwd_solve_options &o) {
    return json{{"epsilon0", o.epsilon0},
                {"epsilon_shrink", o.epsilon_shrink},
                {"epsilon_min", o.epsilon_min},
                {"sample_count", o.sample_count},
                {"armijo_c", o.armijo_c},
                {"backtrack_factor", o.backtrack_factor},
                {"alpha0", o.alpha0},
                {"direction_tol", o.direction_tol},
                {"max_iters", o.max_iters}};
}

// ------------------------------------------------------------------
// Shared solve-and-write path (design and the l2 baseline)

void progress_logger(const umwd_iterate_info *info, void *user) {
    const int level = *static_cast<int *>(user);
    if (level >= 2 || (level == 1 && info->iteration % 200 == 0))
        std::fprintf(stderr, "iter %lld f=%.6f |p|=%.3e step=%.3e eps=%.3e t=%.1fs\n",
                     static_cast<long long>(info->iteration), info->objective,
                     info->direction_norm, info->step, info->epsilon, info->wall_s);
}

int run_solve(const std::string &command, const ScenarioFile &sc, umwd_objective_kind kind,
              const umwd_solve_options &opts, const std::string &out_dir) {
    const std::vector<std::string> outputs{"waveform.csv", "trace.csv"};
    const Manifest mf =
        make_manifest(command, sc, opts.seed,
                      json{{"solver", solver_json(opts)},
                           {"objective_kind", kind == UMWD_CORR_ABS ? "abs" : "squared"}},
                      outputs);

    int level = log_level();
    umwd_waveform *raw_wf = nullptr;
    umwd_trace *raw_trace = nullptr;
    umwd_solve_summary summary{};
    const auto t0 = std::chrono::steady_clock::now();
    check_api(umwd_design(sc.handle.get(), &opts, kind, nullptr,
                          level > 0 ? progress_logger : nullptr, &level, &raw_wf, &summary,
                          &raw_trace),
              "umwd_design");
    WaveformPtr wf(raw_wf);
    TracePtr trace(raw_trace);
    const double wall_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    write_file(join_path(out_dir, "waveform.csv"), waveform_csv(wf.get(), mf.hash));

    std::string tr;
    tr += "# umwd-trace\n# manifest=" + mf.hash + "\n";
    tr += "iter,objective,direction_norm,step,epsilon\n";
    size_t count = 0;
    check_api(umwd_trace_size(trace.get(), &count), "umwd_trace_size");
    for (size_t i = 0; i < count; ++i) {
        umwd_iterate_info info{};
        check_api(umwd_trace_entry(trace.get(), i, &info), "umwd_trace_entry");
        tr += std::to_string(info.iteration) + "," + fmt17(info.objective) + "," +
              fmt17(info.direction_norm) + "," + fmt17(info.step) + "," + fmt17(info.epsilon) +
              "\n";
    }
    write_file(join_path(out_dir, "trace.csv"), tr);
    write_manifest(mf, out_dir, wall_s);

    const char *status = summary.status == UMWD_SOLVE_CONVERGED ? "converged"
                         : summary.status == UMWD_SOLVE_STALLED ? "stalled"
                                                                : "max-iters";
    std::printf("%s: status=%s iterations=%lld accepted=%lld f=%.6f\n", command.c_str(), status,
                static_cast<long long>(summary.iterations),
                static_cast<long long>(summary.accepted_steps), summary.final_objective);
    return kExitOk;
}

// ------------------------------------------------------------------
// Subcommand drivers

struct CommonArgs {
    std::string scenario_path;
    std::string out_dir = ".";
    uint64_t seed = 1;
    std::string weights_override;
};

int cmd_design(const CommonArgs &common, int max_iters_override) {
    ScenarioFile sc = load_scenario(common.scenario_path, common.weights_override);
    umwd_solve_options opts;
    umwd_solve_options_default(&opts);
    opts.seed = common.seed;
    if (max_iters_override > 0) opts.max_iters = max_iters_override;
    return run_solve("design", sc, UMWD_CORR_ABS, opts, common.out_dir);
}

int cmd_baseline(const CommonArgs &common, const std::string &kind, int max_iters_override) {
    ScenarioFile sc = load_scenario(common.scenario_path, common.weights_override);
    if (kind == "l2") {
        umwd_solve_options opts;
        umwd_solve_options_default(&opts);
        opts.seed = common.seed;
        if (max_iters_override > 0) opts.max_iters = max_iters_override;
        return run_solve("baseline-l2", sc, UMWD_CORR_SQUARED, opts, common.out_dir);
    }
    // kind == "random" (CLI11 restricts the choices)
    const Manifest mf =
        make_manifest("baseline-random", sc, common.seed, json::object(), {"waveform.csv"});
    umwd_waveform *raw = nullptr;
    check_api(umwd_waveform_random(sc.handle.get(), common.seed, &raw), "umwd_waveform_random");
    WaveformPtr wf(raw);
    write_file(join_path(common.out_dir, "waveform.csv"), waveform_csv(wf.get(), mf.hash));
    write_manifest(mf, common.out_dir, 0.0);
    std::printf("baseline: kind=random seed=%" PRIu64 "\n", common.seed);
    return kExitOk;
}

int cmd_eval(const CommonArgs &common, const std::string &waveform_path, bool do_beampattern,
             bool do_correlation, bool do_ber, bool include_endpoints, bool normalize,
             int64_t trials, const std::string &snr_list) {
    ScenarioFile sc = load_scenario(common.scenario_path, common.weights_override);
    WaveformPtr wf = read_waveform_csv(waveform_path);

    int32_t wn = 0, wm = 0, sn = 0, sm = 0;
    check_api(umwd_waveform_dims(wf.get(), &wn, &wm), "umwd_waveform_dims");
    check_api(umwd_scenario_dims(sc.handle.get(), &sn, &sm), "umwd_scenario_dims");
    if (wn != sn || wm != sm)
        throw BadInput("waveform dims " + std::to_string(wn) + "x" + std::to_string(wm) +
                       " do not match scenario " + std::to_string(sn) + "x" + std::to_string(sm));

    if (!do_beampattern && !do_correlation && !do_ber)
        throw BadInput("eval: pass at least one of --beampattern, --correlation, --ber");

    std::vector<double> snr = parse_double_list(snr_list, "--snr");

    std::vector<std::string> outputs;
    if (do_beampattern) outputs.push_back("beampattern.csv");
    if (do_correlation) outputs.push_back("correlation.csv");
    if (do_ber) outputs.push_back("ber.csv");

    json extra{{"waveform_file_hash", hash_tag(fnv1a64(read_file(waveform_path)))}};
    if (do_ber) {
        extra["trials"] = trials;
        extra["snr_db"] = snr;
    }
    extra["include_endpoints"] = include_endpoints;
    extra["normalize"] = normalize;
    const Manifest mf = make_manifest("eval", sc, common.seed, extra, outputs);

    const auto t0 = std::chrono::steady_clock::now();

    if (do_beampattern) {
        size_t count = 0;
        check_api(umwd_scenario_grid_size(sc.handle.get(), include_endpoints, &count),
                  "umwd_scenario_grid_size");
        std::vector<double> angles(count), power(count), power_db(count);
        check_api(umwd_beampattern_sweep(sc.handle.get(), wf.get(), include_endpoints, normalize,
                                         angles.data(), power.data(), power_db.data()),
                  "umwd_beampattern_sweep");
        std::string csv = "# umwd-beampattern include_endpoints=" +
                          std::to_string(include_endpoints ? 1 : 0) +
                          " normalize=" + std::to_string(normalize ? 1 : 0) + "\n";
        csv += "# manifest=" + mf.hash + "\n";
        csv += "angle_deg,power,power_db\n";
        for (size_t i = 0; i < count; ++i)
            csv += fmt17(angles[i]) + "," + fmt17(power[i]) + "," + fmt17(power_db[i]) + "\n";
        write_file(join_path(common.out_dir, "beampattern.csv"), csv);
    }

    if (do_correlation) {
        size_t count = 0;
        check_api(umwd_scenario_profile_size(sc.handle.get(), &count),
                  "umwd_scenario_profile_size");
        std::vector<int32_t> pi(count), pj(count), tau(count);
        std::vector<double> re(count), im(count), db(count);
        double peak = 0.0;
        check_api(umwd_correlation_profile(sc.handle.get(), wf.get(), pi.data(), pj.data(),
                                           tau.data(), re.data(), im.data(), db.data(), &peak),
                  "umwd_correlation_profile");
        std::string csv = "# umwd-correlation peak=" + fmt17(peak) + "\n";
        csv += "# manifest=" + mf.hash + "\n";
        csv += "i,j,tau,re,im,norm_db\n";
        for (size_t idx = 0; idx < count; ++idx)
            csv += std::to_string(pi[idx]) + "," + std::to_string(pj[idx]) + "," +
                   std::to_string(tau[idx]) + "," + fmt17(re[idx]) + "," + fmt17(im[idx]) + "," +
                   fmt17(db[idx]) + "\n";
        write_file(join_path(common.out_dir, "correlation.csv"), csv);
    }

    if (do_ber) {
        const size_t count = snr.size();
        std::vector<double> analytic(count), mc(count), lo(count), hi(count);
        std::vector<int64_t> errors(count);
        check_api(umwd_ber_monte_carlo(sc.handle.get(), wf.get(), snr.data(), count, trials,
                                       common.seed, analytic.data(), mc.data(), lo.data(),
                                       hi.data(), errors.data()),
                  "umwd_ber_monte_carlo");
        std::string csv = "# umwd-ber trials=" + std::to_string(trials) + "\n";
        csv += "# manifest=" + mf.hash + "\n";
        csv += "snr_db,analytic,mc,ci_lo,ci_hi,errors\n";
        for (size_t i = 0; i < count; ++i)
            csv += fmt17(snr[i]) + "," + fmt17(analytic[i]) + "," + fmt17(mc[i]) + "," +
                   fmt17(lo[i]) + "," + fmt17(hi[i]) + "," + std::to_string(errors[i]) + "\n";
        write_file(join_path(common.out_dir, "ber.csv"), csv);
    }

    const double wall_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(mf, common.out_dir, wall_s);
    std::printf("eval: wrote %zu file(s) to %s\n", outputs.size() + 1, common.out_dir.c_str());
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Constant-modulus waveform design and evaluation"};
    app.require_subcommand(1);

    CommonArgs common;
    int max_iters_override = -1;

    auto add_common = [&common](CLI::App *cmd) {
        cmd->add_option("--scenario", common.scenario_path, "Scenario JSON file")->required();
        cmd->add_option("--out", common.out_dir, "Output directory (default .)");
        cmd->add_option("--seed", common.seed, "Top-level seed (default 1)");
        cmd->add_option("--weights", common.weights_override,
                        "Override scenario weights as g,h (e.g. 1,0.05)");
    };

    CLI::App *design = app.add_subcommand("design", "Synthesize a waveform for a scenario");
    add_common(design);
    design->add_option("--max-iters", max_iters_override, "Solver iteration cap override");

    std::string baseline_kind = "random";
    CLI::App *baseline = app.add_subcommand("baseline", "Produce a comparison waveform");
    add_common(baseline);
    baseline->add_option("--kind", baseline_kind, "random | l2")
        ->check(CLI::IsMember({"random", "l2"}));
    baseline->add_option("--max-iters", max_iters_override, "Solver iteration cap (l2 kind)");

    std::string waveform_path;
    bool do_beampattern = false, do_correlation = false, do_ber = false;
    bool include_endpoints = false, normalize = false;
    int64_t trials = 100000;
    std::string snr_list = "-16,-15,-14,-13,-12,-11,-10,-9";
    CLI::App *eval = app.add_subcommand("eval", "Evaluate a waveform against a scenario");
    add_common(eval);
    eval->add_option("--waveform", waveform_path, "Waveform CSV file")->required();
    eval->add_flag("--beampattern", do_beampattern, "Write beampattern.csv");
    eval->add_flag("--correlation", do_correlation, "Write correlation.csv");
    eval->add_flag("--ber", do_ber, "Write ber.csv");
    eval->add_flag("--include-endpoints", include_endpoints, "Append -90/+90 to the sweep grid");
    eval->add_flag("--normalize", normalize, "Peak-normalize the beampattern dB series");
    eval->add_option("--trials", trials, "Monte Carlo trials per SNR point");
    eval->add_option("--snr", snr_list, "Comma-separated SNR points in dB");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (design->parsed()) return cmd_design(common, max_iters_override);
        if (baseline->parsed()) return cmd_baseline(common, baseline_kind, max_iters_override);
        return cmd_eval(common, waveform_path, do_beampattern, do_correlation, do_ber,
                        include_endpoints, normalize, trials, snr_list);
    } catch (const BadInput &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadInput;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitInternal;
    }
}
