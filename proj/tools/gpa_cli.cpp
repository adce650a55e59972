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

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gpa/errors.hpp"
#include "gpa/experiments.hpp"
#include "gpa/rng.hpp"

namespace {

namespace ex = gpa::experiments;

constexpr const char *kOutDirEnv = "GPA_OUT_DIR";

std::string read_text(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw gpa::ArgumentError("cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int cmd_run(const std::string &config_path, std::string out_dir,
            const std::optional<std::uint64_t> &seed_override) {
    ex::ExperimentConfig config = ex::parse_config(read_text(config_path));
    if (seed_override) {
        config.seed = *seed_override;
    }
    if (out_dir.empty()) {
        const char *env = std::getenv(kOutDirEnv);
        out_dir = env != nullptr ? env : ".";
    }
    const ex::RunRecord record = ex::run(config);
    for (const std::string &path : ex::write_outputs(record, out_dir)) {
        std::cout << path << '\n';
    }
    std::cout << "content_hash " << record.content_hash << '\n';
    return 0;
}

int cmd_plot(const std::string &csv_path, const std::string &svg_path,
             const std::string &title) {
    ex::PlotStyle style;
    style.title = title;
    ex::emit_plot_file(csv_path, svg_path, style);
    std::cout << svg_path << '\n';
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Grover policy agent experiments"};
    app.require_subcommand(0, 1);
    bool show_version = false;
    app.add_flag("--version", show_version, "Print library and RNG versions");

    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed_override;
    CLI::App *run = app.add_subcommand("run", "Run one experiment config");
    run->add_option("config", config_path, "Experiment config file")->required();
    run->add_option("--out-dir", out_dir,
                    std::string("Output directory (default: $") + kOutDirEnv + " or .)");
    run->add_option("--seed-override", seed_override, "Replace the config seed");

    std::string csv_path;
    std::string svg_path;
    std::string title;
    CLI::App *plot = app.add_subcommand("plot", "Render a trace CSV as an SVG line chart");
    plot->add_option("csv", csv_path, "Trace CSV")->required();
    plot->add_option("--out", svg_path, "SVG path")->required();
    plot->add_option("--title", title, "Chart title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(gpa::ExitCode::config_error);
    }

    if (show_version) {
        std::cout << "gpa " << ex::library_version() << '\n'
                  << "rng " << gpa::kRngAlgorithm << " v" << gpa::kRngAlgorithmVersion
                  << '\n';
        return 0;
    }

    try {
        if (*run) {
            return cmd_run(config_path, out_dir, seed_override);
        }
        if (*plot) {
            return cmd_plot(csv_path, svg_path, title);
        }
        std::cout << app.help();
        return 0;
    } catch (const gpa::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return static_cast<int>(gpa::ExitCode::config_error);
    } catch (const gpa::ArgumentError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(gpa::ExitCode::config_error);
    } catch (const gpa::CapacityError &e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return static_cast<int>(gpa::ExitCode::capacity_error);
    } catch (const gpa::InvariantError &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return static_cast<int>(gpa::ExitCode::internal_error);
    }
}
