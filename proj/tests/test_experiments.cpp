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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "gpa/errors.hpp"
#include "gpa/experiments.hpp"
#include "gpa/rng.hpp"
#include "support/generators.hpp"

namespace gpa::experiments {
namespace {

namespace fs = std::filesystem;
using testing::Gen;

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t count_of(const std::string &text, const std::string &needle) {
    std::size_t n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

ConfigError config_error_of(std::string_view text) {
    try {
        (void)parse_config(text);
    } catch (const ConfigError &e) {
        return e;
    }
    ADD_FAILURE() << "expected a ConfigError for:\n" << text;
    return ConfigError(0, "", "none");
}

class TempDir {
  public:
    TempDir() {
        path_ = fs::temp_directory_path() /
                ("gpa_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                 "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    [[nodiscard]] const fs::path &path() const { return path_; }

  private:
    fs::path path_;
};

// --- config ----------------------------------------------------------------

TEST(ParseConfig, MinimalFillsDefaults) {
    const ExperimentConfig c = parse_config("kind = gpa-run\n");
    EXPECT_EQ(c, ExperimentConfig::defaults_for(ExperimentKind::gpa_run));
    EXPECT_EQ(c.t, 4);
    EXPECT_EQ(c.shots, 4096U);
    EXPECT_EQ(c.csv, "gpa-run.csv");
    EXPECT_TRUE(c.svg.empty());
}

TEST(ParseConfig, EveryKindHasValidDefaults) {
    for (const char *k : {"qpe-eval", "mae-curve", "qpi-search", "gpa-run", "gpa-parallel",
                          "gaqa-run", "compare", "qfi-sweep"}) {
        const ExperimentConfig c = parse_config(std::string("kind = ") + k);
        EXPECT_EQ(kind_name(c.kind), k);
        EXPECT_NO_THROW(validate(c));
    }
}

TEST(ParseConfig, SimplifiedRzRange) {
    const ConfigError e = config_error_of("kind = qfi-sweep\nrz_angle = 0.2\n");
    EXPECT_EQ(e.line(), 2U);
    EXPECT_EQ(e.key(), "rz_angle");
    EXPECT_NE(std::string(e.what()).find("0 to 0.1"), std::string::npos);
}

TEST(ParseConfig, DuplicateKeyNamesSecondLine) {
    const ConfigError e = config_error_of("kind = gpa-run\n# note\nt = 3\n\nt = 5\n");
    EXPECT_EQ(e.line(), 5U);
    EXPECT_EQ(e.key(), "t");
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
}

TEST(ParseConfig, UnknownKey) {
    const ConfigError e = config_error_of("kind = gpa-run\ncolour = blue\n");
    EXPECT_EQ(e.line(), 2U);
    EXPECT_EQ(e.key(), "colour");
}

TEST(ParseConfig, TypeMismatch) {
    const ConfigError e = config_error_of("kind = gpa-run\nshots = many\n");
    EXPECT_EQ(e.line(), 2U);
    EXPECT_EQ(e.key(), "shots");
    EXPECT_EQ(config_error_of("kind = gpa-run\nt = 2.5").key(), "t");
    EXPECT_EQ(config_error_of("kind = gpa-run\nrz_in_preparation = maybe").key(),
              "rz_in_preparation");
}

TEST(ParseConfig, RangeViolation) {
    const ConfigError e = config_error_of("kind = qpe-eval\n\nt = 9\n");
    EXPECT_EQ(e.line(), 3U);
    EXPECT_EQ(e.key(), "t");
}

TEST(ParseConfig, MissingKindAndMalformedLine) {
    EXPECT_EQ(config_error_of("t = 3\n").key(), "kind");
    EXPECT_EQ(config_error_of("kind = gpa-run\njust words\n").line(), 2U);
    EXPECT_EQ(config_error_of("kind = teleport\n").key(), "kind");
}

TEST(ParseConfig, CommentsAndAngleForms) {
    const ExperimentConfig c = parse_config(
        "# header comment\n"
        "kind = qpe-eval   # trailing\n"
        "rx_angle = pi/4\n"
        "ry_angle = 3*pi/4\n"
        "squeeze_angle = pi/8\n");
    EXPECT_DOUBLE_EQ(c.rx_angle, std::numbers::pi / 4);
    EXPECT_DOUBLE_EQ(c.ry_angle, 3 * std::numbers::pi / 4);
    EXPECT_DOUBLE_EQ(*c.squeeze_angle, std::numbers::pi / 8);
}

TEST(ParseConfig, SqueezeNeededBySqueezeActions) {
    const ConfigError e =
        config_error_of("kind = gpa-run\nsqueeze_angle = none\nalphabet = rx,s\n");
    EXPECT_EQ(e.key(), "alphabet");
    EXPECT_EQ(config_error_of("kind = compare\nvariant = full\n").key(), "variant");
    EXPECT_EQ(config_error_of("kind = gpa-run\ncsv = ../x.csv\n").key(), "csv");
}

ExperimentConfig random_config(Gen &gen) {
    static const std::vector<ExperimentKind> kinds{
        ExperimentKind::qpe_eval,   ExperimentKind::mae_curve, ExperimentKind::qpi_search,
        ExperimentKind::gpa_run,    ExperimentKind::gpa_parallel, ExperimentKind::gaqa_run,
        ExperimentKind::compare,    ExperimentKind::qfi_sweep};
    ExperimentConfig c = ExperimentConfig::defaults_for(gen.pick(kinds));
    const bool simplified = c.variant == qfi::Variant::simplified;
    c.rx_angle = gen.uniform(-7, 7);
    c.ry_angle = gen.uniform(-7, 7);
    c.rz_angle = simplified ? gen.uniform(0.0, 0.1) : gen.uniform(-3, 3);
    if (!simplified) {
        c.squeeze_angle = gen.uniform(-2, 2);
    }
    const std::vector<qfi::Action> pool =
        simplified ? std::vector<qfi::Action>{qfi::Action::rx, qfi::Action::ry,
                                              qfi::Action::rz, qfi::Action::cnot}
                   : std::vector<qfi::Action>{qfi::Action::rx, qfi::Action::ry,
                                              qfi::Action::rz, qfi::Action::squeeze,
                                              qfi::Action::cnot};
    auto actions = [&](int max) {
        std::vector<qfi::Action> out;
        for (int i = gen.integer(1, max); i > 0; --i) {
            out.push_back(gen.pick(pool));
        }
        return out;
    };
    c.preparation = actions(5);
    c.rz_in_preparation = gen.coin();
    c.interrogations = gen.integer(1, 1024);
    c.qsc1_angle = gen.uniform(0, 3);
    c.qsc2_angle = gen.uniform(0, 3);
    c.alphabet = actions(5);
    c.horizon = gen.integer(1, 8);
    c.policy_cap = gen.integer(1, 64);
    c.policy = actions(8);
    c.t = gen.integer(1, 6);
    c.shots = static_cast<std::uint64_t>(gen.integer(1, 1000000));
    c.shots_grid.clear();
    std::uint64_t s = 0;
    for (int i = gen.integer(1, 6); i > 0; --i) {
        s += static_cast<std::uint64_t>(gen.integer(1, 5000));
        c.shots_grid.push_back(s);
    }
    c.sweep_shots = static_cast<std::uint64_t>(gen.integer(0, 100000));
    c.rotations = gen.integer(1, 1000);
    c.rotation_mode = gen.coin() ? agents::RotationMode::fixed : agents::RotationMode::formula;
    c.k = gen.uniform(0, 100);
    c.max_rounds = gen.integer(1, 1000);
    c.g_lo = gen.uniform(-5, 5);
    c.g_hi = c.g_lo + gen.uniform(0.01, 10);
    if (gen.coin()) {
        c.v_ref = gen.uniform(c.g_lo, c.g_hi);
    } else {
        c.v_ref.reset();
    }
    c.gaqa_k = gen.uniform(0, 100);
    c.reward_weight = gen.uniform(0, 3);
    c.td_rate = gen.uniform(0, 1);
    c.max_actions = gen.integer(1, 10);
    c.episodes = gen.integer(1, 10);
    c.seed = gen.bits();
    c.seeds = gen.integer(1, 1000);
    c.csv = "out_" + std::to_string(gen.integer(0, 999)) + ".csv";
    c.svg = gen.coin() ? "" : "fig_" + std::to_string(gen.integer(0, 999)) + ".svg";
    return c;
}

TEST(ConfigProperty, SerializeRoundTrip) {
    Gen gen(7001);
    for (int i = 0; i < 100; ++i) {
        const ExperimentConfig c = random_config(gen);
        ASSERT_NO_THROW(validate(c)) << serialize(c);
        const std::string text = serialize(c);
        const ExperimentConfig back = parse_config(text);
        ASSERT_EQ(back, c) << text;
        ASSERT_EQ(serialize(back), text);
    }
}

// --- CSV -------------------------------------------------------------------

TEST(Csv, NineSignificantDigits) {
    EXPECT_EQ(format_number(0.5), "0.5");
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333");
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(123456789012.0), "1.23456789e+11");
}

TEST(Csv, RoundHalfEven) {
    // Exact binary ties at the tenth significant digit.
    EXPECT_EQ(format_number(1000000005.0), "1e+09");
    EXPECT_EQ(format_number(1000000015.0), "1.00000002e+09");
    EXPECT_EQ(format_number(1000000025.0), "1.00000002e+09");
}

TEST(Csv, ParseRoundTrip) {
    CsvTable t;
    t.header = {"rotation", "qfi_gpa", "qfi_gaqa"};
    t.rows = {{"1", "0", "0"}, {"2", "0.25", "0.125"}};
    const std::string text = t.to_string();
    EXPECT_EQ(text, "rotation,qfi_gpa,qfi_gaqa\n1,0,0\n2,0.25,0.125\n");
    const CsvTable back = parse_csv(text);
    EXPECT_EQ(back.header, t.header);
    EXPECT_EQ(back.rows, t.rows);
}

TEST(Csv, Malformed) {
    EXPECT_THROW((void)parse_csv(""), ArgumentError);
    EXPECT_THROW((void)parse_csv("a,b\n1\n"), ArgumentError);
}

// --- SVG -------------------------------------------------------------------

TEST(Plot, TwoColumnsSinglePolyline) {
    const std::string svg = emit_plot("shots,mae\n1,0.5\n4,0.25\n16,0.1\n");
    EXPECT_EQ(count_of(svg, "<polyline"), 1U);
    EXPECT_EQ(count_of(svg, "legend"), 0U);
    EXPECT_NE(svg.find(">shots<"), std::string::npos);
    EXPECT_NE(svg.find(">mae<"), std::string::npos);
    EXPECT_EQ(svg.rfind("</svg>"), svg.size() - 7);
}

TEST(Plot, ThreeColumnsTwoPolylinesAndLegend) {
    const std::string svg =
        emit_plot("rotation,qfi_gpa,qfi_gaqa\n1,0,0\n2,0.3,0.1\n3,0.5,0.2\n");
    EXPECT_EQ(count_of(svg, "<polyline"), 2U);
    EXPECT_NE(svg.find("legend"), std::string::npos);
    EXPECT_NE(svg.find(">qfi_gpa<"), std::string::npos);
    EXPECT_NE(svg.find(">qfi_gaqa<"), std::string::npos);
}

TEST(Plot, EmptyTraceWritesNothing) {
    TempDir dir;
    const fs::path csv = dir.path() / "empty.csv";
    const fs::path svg = dir.path() / "empty.svg";
    std::ofstream(csv) << "rotation,qfi\n";
    EXPECT_THROW((void)emit_plot("rotation,qfi\n"), ArgumentError);
    EXPECT_THROW(emit_plot_file(csv.string(), svg.string()), ArgumentError);
    EXPECT_FALSE(fs::exists(svg));
}

TEST(Plot, NonNumericCell) {
    EXPECT_THROW((void)emit_plot("x,y\n1,abc\n"), ArgumentError);
    EXPECT_THROW((void)emit_plot("x\n1\n"), ArgumentError);
}

TEST(Plot, Deterministic) {
    const std::string csv = "rotation,rz_angle,qfi_qsc1,qfi_qsc2\n1,0,0,0\n2,0.05,0.2,0.1\n";
    PlotStyle style;
    style.title = "sweep";
    EXPECT_EQ(emit_plot(csv, style), emit_plot(csv, style));
}

// --- runs ------------------------------------------------------------------

TEST(Run, GpaRunFinalRowIsNoon) {
    ExperimentConfig c = ExperimentConfig::defaults_for(ExperimentKind::gpa_run);
    c.alphabet = qfi::parse_actions("rx,ry,s");
    const RunRecord r = run(c);
    const CsvTable t = parse_csv(r.files.front().content);
    EXPECT_EQ(t.header, (std::vector<std::string>{"policy_id", "gates", "value", "qfi",
                                                  "selected"}));
    EXPECT_EQ(t.rows.back()[4], "1");
    EXPECT_NEAR(std::stod(t.rows.back()[3]), 1.0, 1e-6);
}

TEST(Run, CompareFinalRowDominates) {
    ExperimentConfig c = ExperimentConfig::defaults_for(ExperimentKind::compare);
    c.seeds = 5;
    const RunRecord r = run(c);
    const CsvTable t = parse_csv(r.files.front().content);
    EXPECT_EQ(t.header, (std::vector<std::string>{"rotation", "qfi_gpa", "qfi_gaqa"}));
    EXPECT_EQ(t.rows.size(), 40U);
    EXPECT_GE(std::stod(t.rows.back()[1]), std::stod(t.rows.back()[2]));
}

TEST(Run, SchemasAreStable) {
    const std::vector<std::pair<ExperimentKind, std::string>> expected{
        {ExperimentKind::qpe_eval, "outcome,count"},
        {ExperimentKind::mae_curve, "shots,mae"},
        {ExperimentKind::qpi_search, "rotation,good_probability"},
        {ExperimentKind::gpa_run, "policy_id,gates,value,qfi,selected"},
        {ExperimentKind::gpa_parallel, "rotation,rz_angle,qfi_qsc1,qfi_qsc2"},
        {ExperimentKind::gaqa_run, "rotation,qfi_gaqa"},
        {ExperimentKind::compare, "rotation,qfi_gpa,qfi_gaqa"},
        {ExperimentKind::qfi_sweep, "rotation,rz_angle,qfi_qsc1,qfi_qsc2"},
    };
    for (const auto &[kind, header] : expected) {
        ExperimentConfig c = ExperimentConfig::defaults_for(kind);
        c.seeds = 3;
        c.svg = "plot.svg";
        const RunRecord r = run(c);
        ASSERT_EQ(r.files.size(), 2U);
        const std::string &csv = r.files[0].content;
        EXPECT_EQ(csv.substr(0, csv.find('\n')), header) << kind_name(kind);
        EXPECT_GT(parse_csv(csv).rows.size(), 0U);
        EXPECT_EQ(r.files[1].name, "plot.svg");
        EXPECT_EQ(r.generator, std::string(gpa::kRngAlgorithm));
    }
}

TEST(Run, ByteIdenticalRepeat) {
    for (ExperimentKind kind : {ExperimentKind::mae_curve, ExperimentKind::gpa_parallel,
                                ExperimentKind::gaqa_run}) {
        ExperimentConfig c = ExperimentConfig::defaults_for(kind);
        c.svg = "a.svg";
        c.seed = 42;
        const RunRecord a = run(c);
        const RunRecord b = run(c);
        ASSERT_EQ(a.files.size(), b.files.size());
        for (std::size_t i = 0; i < a.files.size(); ++i) {
            EXPECT_EQ(a.files[i].content, b.files[i].content);
        }
        EXPECT_EQ(a.content_hash, b.content_hash);
        EXPECT_EQ(a.to_json(), b.to_json());
    }
}

TEST(Run, HashCoversConfig) {
    ExperimentConfig c = ExperimentConfig::defaults_for(ExperimentKind::qpe_eval);
    const std::string h1 = run(c).content_hash;
    c.seed = 1;
    EXPECT_NE(run(c).content_hash, h1);
}

TEST(Run, WriteOutputs) {
    TempDir dir;
    ExperimentConfig c = ExperimentConfig::defaults_for(ExperimentKind::qfi_sweep);
    c.svg = "sweep.svg";
    const RunRecord r = run(c);
    const fs::path out = dir.path() / "nested" / "run";
    const std::vector<std::string> paths = write_outputs(r, out.string());
    ASSERT_EQ(paths.size(), 3U);
    EXPECT_EQ(slurp(out / "qfi-sweep.csv"), r.files[0].content);
    EXPECT_EQ(slurp(out / "sweep.svg"), r.files[1].content);
    const std::string json = slurp(out / "qfi-sweep.run.json");
    EXPECT_NE(json.find(r.content_hash), std::string::npos);
    EXPECT_EQ(json.find("wall"), std::string::npos);
    for (const auto &entry : fs::directory_iterator(out)) {
        EXPECT_NE(entry.path().extension(), ".tmp");
    }
}

TEST(Run, QpiSearchNeedsTwoPolicies) {
    ExperimentConfig c = ExperimentConfig::defaults_for(ExperimentKind::qpi_search);
    c.policy_cap = 1;
    EXPECT_THROW((void)run(c), ConfigError);
}

TEST(Hash, KnownVector) {
    EXPECT_EQ(sha256_hex("abc"),
              "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

} // namespace
} // namespace gpa::experiments
