// Copyright 2026 The GPA Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "gpa/errors.hpp"
#include "gpa/experiments.hpp"
#include "gpa/rng.hpp"

#ifndef GPA_VERSION_STRING
#define GPA_VERSION_STRING "0.0.0"
#endif

namespace gpa::experiments {

namespace {

using Json = nlohmann::ordered_json;

Json qfi_json(const qfi::QfiValue &v) {
    return Json{{"raw", v.raw},
                {"normalized", v.normalized},
                {"n_qubits", v.n_qubits},
                {"method", std::string(qfi::method_name(v.method))}};
}

Json episode_json(const agents::EpisodeResult &e) {
    return Json{{"policy_id", e.policy_id},
                {"label", e.label},
                {"final_qfi", qfi_json(e.final_qfi)},
                {"gate_count", e.gate_count},
                {"seed", e.seed},
                {"trace", e.trace}};
}

struct Output {
    CsvTable table;
    Json results;
};

std::string num(double v) { return format_number(v); }

Output run_qpe_eval(const ExperimentConfig &c) {
    const qpe::Policy policy = qpe::make_policy(
        0, c.policy, c.qsc().action_angles(),
        std::max(c.horizon, static_cast<int>(c.policy.size())));
    const qpe::ValueEstimate e =
        qpe::estimate_value(policy, c.t, c.shots, c.seed, c.bounds());
    Output out;
    out.table.header = {"outcome", "count"};
    const std::vector<std::uint64_t> dense = e.histogram.dense();
    for (std::size_t x = 0; x < dense.size(); ++x) {
        out.table.rows.push_back({std::to_string(x), std::to_string(dense[x])});
    }
    out.results = Json{{"policy", policy.label},
                       {"return", policy.return_value},
                       {"readout_x", e.readout_x},
                       {"value", e.value},
                       {"mean_value", e.mean_value},
                       {"return_estimate", e.return_estimate},
                       {"exact_value", qpe::exact_value(policy, c.t, c.bounds())}};
    return out;
}

Output run_mae_curve(const ExperimentConfig &c) {
    const qpe::Policy policy = qpe::make_policy(
        0, c.policy, c.qsc().action_angles(),
        std::max(c.horizon, static_cast<int>(c.policy.size())));
    const std::vector<std::uint64_t> seeds = c.seed_list();
    const std::vector<qpe::MaePoint> curve =
        qpe::mae_curve(policy, c.t, c.shots_grid, seeds, c.bounds());
    Output out;
    out.table.header = {"shots", "mae"};
    Json points = Json::array();
    for (const qpe::MaePoint &p : curve) {
        out.table.rows.push_back({std::to_string(p.shots), num(p.mae)});
        points.push_back(Json{{"shots", p.shots}, {"mae", p.mae}, {"errors", p.errors}});
    }
    out.results = Json{{"policy", policy.label},
                       {"exact_value", qpe::exact_value(policy, c.t, c.bounds())},
                       {"points", points}};
    return out;
}

std::vector<double> estimate_all(const std::vector<qpe::Policy> &policies,
                                 const ExperimentConfig &c) {
    std::vector<double> values;
    for (std::size_t i = 0; i < policies.size(); ++i) {
        values.push_back(qpe::estimate_value(policies[i], c.t, c.shots,
                                             derive_seed(c.seed, i), c.bounds())
                             .return_estimate);
    }
    return values;
}

Output run_qpi_search(const ExperimentConfig &c) {
    const std::vector<qpe::Policy> policies = qpe::enumerate_policies(c.policy_space());
    if (policies.size() < 2) {
        throw ConfigError(0, "policy_cap", "qpi-search needs at least two policies");
    }
    const std::vector<double> values = estimate_all(policies, c);
    const qpi::SearchSpace space =
        qpi::prepare_search_space(policies, c.t, c.bounds(), values);
    const double v_ref = c.v_ref.value_or(values[0]);
    const qpi::ThresholdOracle oracle = qpi::build_threshold_oracle(v_ref, c.t, c.bounds());
    const double p0 = qpi::good_probability(oracle, space.prepared);
    qpi::RotationPlan plan = qpi::fixed_plan(c.rotations);
    if (c.rotation_mode == agents::RotationMode::formula) {
        const double theta = p0 > 0.0 ? std::asin(std::sqrt(std::min(1.0, p0)))
                                      : qpi::kDefaultCapAngle;
        plan = qpi::make_plan(c.k, qpe::normalize_return(policies[0].return_value, c.bounds()),
                              qpe::normalize_return(v_ref, c.bounds()), theta);
    }
    const qpi::Improvement imp =
        qpi::improve_policy(space, v_ref, plan, derive_seed(c.seed, 0x20000U));
    Output out;
    out.table.header = {"rotation", "good_probability"};
    out.table.rows.push_back({"0", num(p0)});
    for (std::size_t r = 0; r < imp.good_trace.size(); ++r) {
        out.table.rows.push_back({std::to_string(r + 1), num(imp.good_trace[r])});
    }
    Json good = Json::array();
    for (std::size_t i = 0; i < policies.size(); ++i) {
        if (values[i] - v_ref > qpi::kThresholdTol) {
            good.push_back(i);
        }
    }
    out.results = Json{{"v_ref", v_ref},
                       {"rotations", plan.L},
                       {"initial_good_probability", p0},
                       {"measured_policy", imp.policy_id},
                       {"measured_label", policies[static_cast<std::size_t>(imp.policy_id)].label},
                       {"good_policies", good},
                       {"values", values}};
    return out;
}

Output run_gpa(const ExperimentConfig &c) {
    const std::vector<qpe::Policy> policies = qpe::enumerate_policies(c.policy_space());
    const agents::GpaRun run = agents::gpa_run(policies, c.gpa_options());
    Output out;
    out.table.header = {"policy_id", "gates", "value", "qfi", "selected"};
    const auto selected = static_cast<std::size_t>(run.result.policy_id);
    auto row = [&](std::size_t i) {
        return std::vector<std::string>{std::to_string(i),
                                        std::to_string(policies[i].gate_count),
                                        num(run.values[i]),
                                        num(policies[i].return_value),
                                        i == selected ? "1" : "0"};
    };
    for (std::size_t i = 0; i < policies.size(); ++i) {
        if (i != selected) {
            out.table.rows.push_back(row(i));
        }
    }
    out.table.rows.push_back(row(selected));
    Json rounds = Json::array();
    for (const agents::RoundLog &r : run.rounds) {
        rounds.push_back(Json{{"v_ref", r.v_ref},
                              {"good_probability", r.good_probability},
                              {"rotations", r.rotations},
                              {"measured", r.measured},
                              {"adopted", r.adopted}});
    }
    out.results = Json{{"selected", episode_json(run.result)},
                       {"policy_count", policies.size()},
                       {"rounds", rounds}};
    return out;
}

Output run_gpa_parallel(const ExperimentConfig &c) {
    const agents::ParallelResult r = agents::gpa_run_parallel_episodes(
        c.qsc(), c.rotations, c.sweep_shots, c.gpa_options());
    Output out;
    out.table.header = {"rotation", "rz_angle", "qfi_qsc1", "qfi_qsc2"};
    for (std::size_t i = 0; i < r.sweep.size(); ++i) {
        out.table.rows.push_back({std::to_string(i + 1), num(r.sweep[i].rz_angle),
                                  num(r.sweep[i].values[0].normalized),
                                  num(r.sweep[i].values[1].normalized)});
    }
    out.results = Json{{"winner", r.winner},
                       {"winner_label", r.episodes[static_cast<std::size_t>(r.winner)].label},
                       {"episodes", Json::array({episode_json(r.episodes[0]),
                                                 episode_json(r.episodes[1])})},
                       {"estimates", r.selection.values}};
    return out;
}

Output run_gaqa(const ExperimentConfig &c) {
    const agents::GaqaRun r = agents::gaqa_run(c.gaqa_options());
    Output out;
    out.table.header = {"rotation", "qfi_gaqa"};
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
        out.table.rows.push_back({std::to_string(i + 1), num(r.trace[i])});
    }
    Json episodes = Json::array();
    for (const agents::EpisodeResult &e : r.episodes) {
        episodes.push_back(episode_json(e));
    }
    out.results = Json{{"episodes", episodes}, {"histories", r.histories}};
    return out;
}

Output run_compare(const ExperimentConfig &c) {
    const std::vector<std::uint64_t> seeds = c.seed_list();
    const agents::CompareResult r = agents::compare_agents(
        c.qsc(), c.rotations, seeds, c.sweep_shots, c.gpa_options(), c.gaqa_options());
    Output out;
    out.table.header = {"rotation", "qfi_gpa", "qfi_gaqa"};
    for (std::size_t i = 0; i < r.gpa.size(); ++i) {
        out.table.rows.push_back({std::to_string(i + 1), num(r.gpa[i]), num(r.gaqa[i])});
    }
    out.results = Json{{"seeds", seeds},
                       {"final_gpa", r.gpa.back()},
                       {"final_gaqa", r.gaqa.back()},
                       {"gpa_runs", r.gpa_runs},
                       {"gaqa_runs", r.gaqa_runs}};
    return out;
}

Output run_qfi_sweep(const ExperimentConfig &c) {
    const std::vector<double> grid = qfi::rz_schedule(c.rotations);
    const std::vector<qfi::SweepPoint> sweep =
        qfi::qfi_sweep(c.qsc(), grid, c.sweep_shots, c.seed);
    Output out;
    out.table.header = {"rotation", "rz_angle", "qfi_qsc1", "qfi_qsc2"};
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        out.table.rows.push_back({std::to_string(i + 1), num(sweep[i].rz_angle),
                                  num(sweep[i].values[0].normalized),
                                  num(sweep[i].values[1].normalized)});
    }
    out.results = Json{{"final_qsc1", sweep.back().values[0].normalized},
                       {"final_qsc2", sweep.back().values[1].normalized}};
    return out;
}

Json config_json(const ExperimentConfig &config) {
    Json out = Json::object();
    const std::string text = serialize(config);
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t end = text.find('\n', pos);
        const std::string line = text.substr(pos, end - pos);
        const std::size_t eq = line.find(" = ");
        if (eq != std::string::npos) {
            out[line.substr(0, eq)] = line.substr(eq + 3);
        }
        pos = end == std::string::npos ? text.size() : end + 1;
    }
    return out;
}

std::string hex(const unsigned char *data, std::size_t n) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        out += kDigits[data[i] >> 4U];
        out += kDigits[data[i] & 0xFU];
    }
    return out;
}

} // namespace

std::string_view library_version() { return GPA_VERSION_STRING; }

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw InvariantError("SHA-256 digest failed");
    }
    return hex(digest, length);
}

void write_file_atomic(const std::string &path, std::string_view content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ArgumentError("cannot write " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            throw ArgumentError("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw ArgumentError("cannot rename onto " + path + ": " + ec.message());
    }
}

RunRecord run(const ExperimentConfig &config) {
    const auto start = std::chrono::steady_clock::now();
    validate(config);
    Output out;
    switch (config.kind) {
    case ExperimentKind::qpe_eval:
        out = run_qpe_eval(config);
        break;
    case ExperimentKind::mae_curve:
        out = run_mae_curve(config);
        break;
    case ExperimentKind::qpi_search:
        out = run_qpi_search(config);
        break;
    case ExperimentKind::gpa_run:
        out = run_gpa(config);
        break;
    case ExperimentKind::gpa_parallel:
        out = run_gpa_parallel(config);
        break;
    case ExperimentKind::gaqa_run:
        out = run_gaqa(config);
        break;
    case ExperimentKind::compare:
        out = run_compare(config);
        break;
    case ExperimentKind::qfi_sweep:
        out = run_qfi_sweep(config);
        break;
    }

    RunRecord record;
    record.config = config;
    record.generator = std::string(kRngAlgorithm);
    record.generator_version = kRngAlgorithmVersion;
    const std::string csv = out.table.to_string();
    record.files.push_back(OutputFile{config.csv, csv});
    if (!config.svg.empty()) {
        PlotStyle style;
        style.title = std::string(kind_name(config.kind));
        record.files.push_back(OutputFile{config.svg, emit_plot(csv, style)});
    }
    record.results_json = out.results.dump();
    const std::string text = serialize(config);
    std::string hashed = text;
    hashed += '\0';
    hashed += csv;
    hashed += '\0';
    hashed += record.results_json;
    record.content_hash = sha256_hex(hashed);
    record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

std::string RunRecord::to_json() const {
    Json files_json = Json::array();
    for (const OutputFile &f : files) {
        files_json.push_back(Json{{"name", f.name}, {"sha256", sha256_hex(f.content)}});
    }
    const Json doc{
        {"library", std::string(library_version())},
        {"generator", Json{{"name", generator}, {"version", generator_version}}},
        {"config", config_json(config)},
        {"results", Json::parse(results_json)},
        {"outputs", files_json},
        {"content_hash", content_hash},
    };
    return doc.dump(2) + "\n";
}

std::vector<std::string> write_outputs(const RunRecord &record,
                                       const std::string &out_dir) {
    namespace fs = std::filesystem;
    const fs::path dir(out_dir.empty() ? "." : out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw ArgumentError("cannot create output directory " + dir.string());
    }
    std::vector<std::string> paths;
    for (const OutputFile &f : record.files) {
        const fs::path p = dir / f.name;
        write_file_atomic(p.string(), f.content);
        paths.push_back(p.string());
    }
    const fs::path json = dir / (fs::path(record.config.csv).stem().string() + ".run.json");
    write_file_atomic(json.string(), record.to_json());
    paths.push_back(json.string());
    return paths;
}

} // namespace gpa::experiments
