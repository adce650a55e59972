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
/**
 * @file
 * Experiment harness: configuration files, CSV traces, SVG charts and run
 * records.
 *
 * Configuration format: one `key = value` per line, `#` starts a comment,
 * blank lines are ignored. `kind` is required; every other key has a default
 * that may depend on the kind. Angles accept plain numbers and the forms
 * `pi`, `pi/4`, `3*pi/4`.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gpa/agents.hpp"
#include "gpa/qfi.hpp"
#include "gpa/qpe.hpp"

namespace gpa::experiments {

enum class ExperimentKind {
    qpe_eval,
    mae_curve,
    qpi_search,
    gpa_run,
    gpa_parallel,
    gaqa_run,
    compare,
    qfi_sweep,
};

[[nodiscard]] std::string_view kind_name(ExperimentKind kind);
[[nodiscard]] std::optional<ExperimentKind> parse_kind(std::string_view text);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::gpa_run;

    // Sensor circuit.
    qfi::Variant variant = qfi::Variant::full;
    double rx_angle = 1.5707963267948966;
    double ry_angle = 1.5707963267948966;
    double rz_angle = 0.05;
    std::optional<double> squeeze_angle = 0.39269908169872414;
    std::vector<qfi::Action> preparation{qfi::Action::rx, qfi::Action::ry,
                                         qfi::Action::squeeze, qfi::Action::rx};
    bool rz_in_preparation = true;
    int interrogations = 16;
    double qsc1_angle = 1.5707963267948966;
    double qsc2_angle = 0.7853981633974483;

    // Policy space.
    std::vector<qfi::Action> alphabet{qfi::Action::rx, qfi::Action::ry,
                                      qfi::Action::rz, qfi::Action::squeeze,
                                      qfi::Action::cnot};
    int horizon = 4;
    int policy_cap = 64;
    /// Policy evaluated by qpe-eval and mae-curve.
    std::vector<qfi::Action> policy{qfi::Action::rx, qfi::Action::ry,
                                    qfi::Action::squeeze, qfi::Action::rx};

    // Evaluation and search.
    int t = 4;
    std::uint64_t shots = 4096;
    std::vector<std::uint64_t> shots_grid{1, 4, 16, 64, 256, 1024};
    std::uint64_t sweep_shots = 4096;
    int rotations = 40;
    agents::RotationMode rotation_mode = agents::RotationMode::formula;
    double k = 25.0;
    int max_rounds = 16;
    double g_lo = 0.0;
    double g_hi = 1.0;
    /// Threshold for qpi-search; absent means the estimate of policy 0.
    std::optional<double> v_ref;

    // Baseline agent.
    double gaqa_k = 25.0;
    double reward_weight = 1.0;
    double td_rate = 0.5;
    int max_actions = 10;
    int episodes = 2;

    // Seeds and outputs.
    std::uint64_t seed = 0;
    int seeds = 20;
    std::string csv;
    std::string svg;

    bool operator==(const ExperimentConfig &) const = default;

    /// Defaults for `kind`: variant, rotation budget, bounds and file names.
    [[nodiscard]] static ExperimentConfig defaults_for(ExperimentKind kind);

    [[nodiscard]] qfi::QscConfig qsc() const;
    [[nodiscard]] qpe::PolicySpaceConfig policy_space() const;
    [[nodiscard]] qpe::ReturnBounds bounds() const;
    [[nodiscard]] agents::GpaOptions gpa_options() const;
    [[nodiscard]] agents::GaqaOptions gaqa_options() const;
    [[nodiscard]] std::vector<std::uint64_t> seed_list() const;
};

/// Parses and validates a whole file. Throws ConfigError naming the line and
/// key of the first problem (unknown key, duplicate key, bad value, range).
[[nodiscard]] ExperimentConfig parse_config(std::string_view text);

/// Canonical text form; parse_config(serialize(c)) == c.
[[nodiscard]] std::string serialize(const ExperimentConfig &config);

/// Semantic checks shared by the parser and the runner. Throws ConfigError
/// with line 0.
void validate(const ExperimentConfig &config);

// --- CSV -------------------------------------------------------------------

/// "%.9g" with negative zero written as 0.
[[nodiscard]] std::string format_number(double value);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::string to_string() const;
};

/// Throws ArgumentError on an empty input, a missing header or ragged rows.
[[nodiscard]] CsvTable parse_csv(std::string_view text);

// --- SVG -------------------------------------------------------------------

struct PlotStyle {
    int width = 640;
    int height = 400;
    std::string title;
};

/// Line chart: the first column is x, every other column one polyline,
/// legend from two series up. Throws ArgumentError on malformed or empty
/// input.
[[nodiscard]] std::string emit_plot(std::string_view csv_text,
                                    const PlotStyle &style = {});

/// Reads `csv_path` and writes the chart atomically to `svg_path`; no file
/// is created on error.
void emit_plot_file(const std::string &csv_path, const std::string &svg_path,
                    const PlotStyle &style = {});

// --- runs ------------------------------------------------------------------

struct OutputFile {
    std::string name;
    std::string content;
};

struct RunRecord {
    ExperimentConfig config;
    std::string generator;
    int generator_version = 0;
    /// CSV first, then the SVG when requested.
    std::vector<OutputFile> files;
    /// JSON object with the traces and final results.
    std::string results_json;
    /// SHA-256 (hex) of the serialized config, the CSV and the results.
    std::string content_hash;
    /// Not part of the hash or the persisted record.
    double wall_seconds = 0.0;

    /// Persisted form (pretty JSON, no timing).
    [[nodiscard]] std::string to_json() const;
};

[[nodiscard]] RunRecord run(const ExperimentConfig &config);

/// Writes every output file plus `<csv stem>.run.json` into `out_dir`
/// (created when missing) by temp-file-and-rename. Returns the paths.
std::vector<std::string> write_outputs(const RunRecord &record,
                                       const std::string &out_dir);

void write_file_atomic(const std::string &path, std::string_view content);

[[nodiscard]] std::string sha256_hex(std::string_view data);

/// "<major>.<minor>.<patch>" of the library.
[[nodiscard]] std::string_view library_version();

} // namespace gpa::experiments
