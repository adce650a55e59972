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

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>

#include "gpa/errors.hpp"
#include "gpa/experiments.hpp"

namespace gpa::experiments {

namespace {

constexpr std::array<std::pair<ExperimentKind, std::string_view>, 8> kKinds{{
    {ExperimentKind::qpe_eval, "qpe-eval"},
    {ExperimentKind::mae_curve, "mae-curve"},
    {ExperimentKind::qpi_search, "qpi-search"},
    {ExperimentKind::gpa_run, "gpa-run"},
    {ExperimentKind::gpa_parallel, "gpa-parallel"},
    {ExperimentKind::gaqa_run, "gaqa-run"},
    {ExperimentKind::compare, "compare"},
    {ExperimentKind::qfi_sweep, "qfi-sweep"},
}};

// Serialization order; also the closed set of accepted keys.
constexpr std::array<std::string_view, 35> kKeys{
    "kind",        "variant",        "rx_angle",      "ry_angle",
    "rz_angle",    "squeeze_angle",  "preparation",   "rz_in_preparation",
    "interrogations", "qsc1_angle",  "qsc2_angle",    "alphabet",
    "horizon",     "policy_cap",     "policy",        "t",
    "shots",       "shots_grid",     "sweep_shots",   "rotations",
    "rotation_mode", "k",            "max_rounds",    "g_lo",
    "g_hi",        "v_ref",          "gaqa_k",        "reward_weight",
    "td_rate",     "max_actions",    "episodes",      "seed",
    "seeds",       "csv",            "svg",
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::string format_exact(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value == 0.0 ? 0.0 : value);
    return buf;
}

std::optional<double> parse_plain_double(std::string_view s) {
    s = trim(s);
    if (s.empty()) {
        return std::nullopt;
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

/// Number, or [coef*]pi[/den].
std::optional<double> parse_real(std::string_view s) {
    s = trim(s);
    const std::size_t at = s.find("pi");
    if (at == std::string_view::npos) {
        return parse_plain_double(s);
    }
    double coef = 1.0;
    std::string_view head = trim(s.substr(0, at));
    if (head == "-") {
        coef = -1.0;
    } else if (!head.empty()) {
        if (head.back() != '*') {
            return std::nullopt;
        }
        head.remove_suffix(1);
        const auto c = parse_plain_double(head);
        if (!c) {
            return std::nullopt;
        }
        coef = *c;
    }
    double den = 1.0;
    std::string_view tail = trim(s.substr(at + 2));
    if (!tail.empty()) {
        if (tail.front() != '/') {
            return std::nullopt;
        }
        const auto d = parse_plain_double(tail.substr(1));
        if (!d || *d == 0.0) {
            return std::nullopt;
        }
        den = *d;
    }
    return coef * std::numbers::pi / den;
}

template <typename Int> std::optional<Int> parse_integer(std::string_view s) {
    s = trim(s);
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

struct Entry {
    std::string value;
    std::size_t line = 0;
};

using Lines = std::map<std::string, std::size_t, std::less<>>;

std::size_t line_of(const Lines &lines, std::string_view key) {
    const auto it = lines.find(key);
    return it == lines.end() ? 0 : it->second;
}

[[noreturn]] void fail(const Lines &lines, std::string_view key,
                       const std::string &message) {
    throw ConfigError(line_of(lines, key), std::string(key), message);
}

bool needs_simplified(ExperimentKind kind) {
    return kind == ExperimentKind::gpa_parallel || kind == ExperimentKind::compare ||
           kind == ExperimentKind::qfi_sweep;
}

bool uses_squeeze(const std::vector<qfi::Action> &actions) {
    return std::find(actions.begin(), actions.end(), qfi::Action::squeeze) !=
           actions.end();
}

void check_config(const ExperimentConfig &c, const Lines &lines) {
    auto require = [&](bool ok, std::string_view key, const std::string &msg) {
        if (!ok) {
            fail(lines, key, msg);
        }
    };
    for (auto [key, v] : {std::pair{"rx_angle", c.rx_angle},
                          std::pair{"ry_angle", c.ry_angle},
                          std::pair{"rz_angle", c.rz_angle},
                          std::pair{"qsc1_angle", c.qsc1_angle},
                          std::pair{"qsc2_angle", c.qsc2_angle}}) {
        require(std::isfinite(v), key, "must be finite");
    }
    if (c.variant == qfi::Variant::simplified) {
        require(c.rz_angle >= 0.0 && c.rz_angle <= qfi::kSimplifiedRzMax, "rz_angle",
                "must be in the range 0 to 0.1 for the simplified variant");
        require(!c.squeeze_angle, "squeeze_angle",
                "the simplified variant has no squeezing gate (use none)");
    } else {
        require(!c.preparation.empty(), "preparation", "must list at least one action");
    }
    if (needs_simplified(c.kind)) {
        require(c.variant == qfi::Variant::simplified, "variant",
                std::string(kind_name(c.kind)) + " needs the simplified variant");
    }
    if (!c.squeeze_angle) {
        require(!uses_squeeze(c.alphabet), "alphabet",
                "uses s but squeeze_angle is none");
        require(!uses_squeeze(c.policy), "policy", "uses s but squeeze_angle is none");
    } else {
        require(std::isfinite(*c.squeeze_angle), "squeeze_angle", "must be finite");
    }
    require(c.interrogations >= 1 && c.interrogations <= 1024, "interrogations",
            "must be in the range 1 to 1024");
    require(!c.alphabet.empty(), "alphabet", "must list at least one action");
    require(c.horizon >= 1 && c.horizon <= 8, "horizon", "must be in the range 1 to 8");
    require(c.policy_cap >= 1 && c.policy_cap <= 64, "policy_cap",
            "must be in the range 1 to 64");
    require(!c.policy.empty() && static_cast<int>(c.policy.size()) <= 8, "policy",
            "must list 1 to 8 actions");
    require(c.t >= 1 && c.t <= qpe::kMaxCountingQubits, "t", "must be in the range 1 to 6");
    require(c.shots >= 1 && c.shots <= 100000000, "shots",
            "must be in the range 1 to 100000000");
    require(!c.shots_grid.empty(), "shots_grid", "must not be empty");
    for (std::size_t i = 0; i < c.shots_grid.size(); ++i) {
        require(c.shots_grid[i] >= 1 && c.shots_grid[i] <= 100000000 &&
                    (i == 0 || c.shots_grid[i] > c.shots_grid[i - 1]),
                "shots_grid", "must be positive and strictly increasing");
    }
    require(c.sweep_shots <= 100000000, "sweep_shots",
            "must be in the range 0 to 100000000");
    require(c.rotations >= 1 && c.rotations <= 1000, "rotations",
            "must be in the range 1 to 1000");
    require(std::isfinite(c.k) && c.k >= 0.0, "k", "must be non-negative");
    require(c.max_rounds >= 1 && c.max_rounds <= 1000, "max_rounds",
            "must be in the range 1 to 1000");
    require(std::isfinite(c.g_lo), "g_lo", "must be finite");
    require(std::isfinite(c.g_hi) && c.g_hi > c.g_lo, "g_hi", "must exceed g_lo");
    if (c.v_ref) {
        require(*c.v_ref >= c.g_lo && *c.v_ref <= c.g_hi, "v_ref",
                "must lie between g_lo and g_hi");
    }
    require(std::isfinite(c.gaqa_k) && c.gaqa_k >= 0.0, "gaqa_k", "must be non-negative");
    require(std::isfinite(c.reward_weight) && c.reward_weight >= 0.0, "reward_weight",
            "must be non-negative");
    require(std::isfinite(c.td_rate) && c.td_rate >= 0.0 && c.td_rate <= 1.0, "td_rate",
            "must be in the range 0 to 1");
    require(c.max_actions >= 1 && c.max_actions <= agents::kMaxGaqaActions,
            "max_actions", "must be in the range 1 to 10");
    require(c.episodes >= 1 && c.episodes <= 10, "episodes",
            "must be in the range 1 to 10");
    require(c.seeds >= 1 && c.seeds <= 1000, "seeds", "must be in the range 1 to 1000");
    auto plain_name = [](const std::string &s) {
        return s.find('/') == std::string::npos && s != "." && s != "..";
    };
    require(!c.csv.empty() && plain_name(c.csv), "csv",
            "must be a plain file name");
    require(plain_name(c.svg), "svg", "must be a plain file name");
}

} // namespace

std::string_view kind_name(ExperimentKind kind) {
    for (const auto &[k, n] : kKinds) {
        if (k == kind) {
            return n;
        }
    }
    return "?";
}

std::optional<ExperimentKind> parse_kind(std::string_view text) {
    for (const auto &[k, n] : kKinds) {
        if (n == text) {
            return k;
        }
    }
    return std::nullopt;
}

ExperimentConfig ExperimentConfig::defaults_for(ExperimentKind kind) {
    ExperimentConfig c;
    c.kind = kind;
    c.csv = std::string(kind_name(kind)) + ".csv";
    switch (kind) {
    case ExperimentKind::gpa_parallel:
    case ExperimentKind::gaqa_run:
    case ExperimentKind::compare:
    case ExperimentKind::qfi_sweep:
        c.variant = qfi::Variant::simplified;
        c.squeeze_angle.reset();
        c.alphabet = {qfi::Action::rx, qfi::Action::ry, qfi::Action::rz,
                      qfi::Action::cnot};
        c.policy = {qfi::Action::rx, qfi::Action::ry};
        c.rotations = 40;
        break;
    case ExperimentKind::qpi_search:
        c.rotations = 50;
        c.rotation_mode = agents::RotationMode::fixed;
        break;
    case ExperimentKind::gpa_run:
        c.rotations = 50;
        break;
    case ExperimentKind::mae_curve:
        // Puts the NOON value off the t = 4 readout grid.
        c.g_hi = 1.25;
        break;
    case ExperimentKind::qpe_eval:
        break;
    }
    return c;
}

qfi::QscConfig ExperimentConfig::qsc() const {
    qfi::QscConfig q;
    q.variant = variant;
    q.rx_angle = rx_angle;
    q.ry_angle = ry_angle;
    q.rz_angle = rz_angle;
    q.squeeze_angle = squeeze_angle;
    q.preparation = preparation;
    q.rz_in_preparation = rz_in_preparation;
    q.interrogations = interrogations;
    q.episodes[0].angle = qsc1_angle;
    q.episodes[1].angle = qsc2_angle;
    return q;
}

qpe::PolicySpaceConfig ExperimentConfig::policy_space() const {
    qpe::PolicySpaceConfig p;
    p.alphabet = alphabet;
    p.horizon = horizon;
    p.cap = static_cast<std::size_t>(policy_cap);
    p.angles = qsc().action_angles();
    return p;
}

qpe::ReturnBounds ExperimentConfig::bounds() const { return {g_lo, g_hi}; }

agents::GpaOptions ExperimentConfig::gpa_options() const {
    agents::GpaOptions o;
    o.t = t;
    o.shots = shots;
    o.k = k;
    o.mode = rotation_mode;
    o.rotations = rotations;
    o.max_rounds = max_rounds;
    o.bounds = bounds();
    o.seed = seed;
    return o;
}

agents::GaqaOptions ExperimentConfig::gaqa_options() const {
    agents::GaqaOptions o;
    o.actions = agents::default_gaqa_actions(rx_angle, ry_angle, rz_angle);
    o.max_actions = max_actions;
    o.episodes = episodes;
    o.k = gaqa_k;
    o.reward_weight = reward_weight;
    o.td_rate = td_rate;
    o.rotations = rotations;
    o.interrogations = interrogations;
    o.seed = seed;
    return o;
}

std::vector<std::uint64_t> ExperimentConfig::seed_list() const {
    std::vector<std::uint64_t> out;
    for (int i = 0; i < seeds; ++i) {
        out.push_back(seed + static_cast<std::uint64_t>(i));
    }
    return out;
}

void validate(const ExperimentConfig &config) { check_config(config, Lines{}); }

ExperimentConfig parse_config(std::string_view text) {
    std::map<std::string, Entry, std::less<>> entries;
    std::vector<std::string> order;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            if (end == text.size()) {
                break;
            }
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(line_no, "", "expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
            throw ConfigError(line_no, key, "unknown key");
        }
        if (const auto it = entries.find(key); it != entries.end()) {
            throw ConfigError(line_no, key,
                              "duplicate key (first set on line " +
                                  std::to_string(it->second.line) + ")");
        }
        entries.emplace(key, Entry{value, line_no});
        order.push_back(key);
        if (end == text.size()) {
            break;
        }
    }

    const auto kind_it = entries.find("kind");
    if (kind_it == entries.end()) {
        throw ConfigError(0, "kind", "missing required key");
    }
    const auto kind = parse_kind(kind_it->second.value);
    if (!kind) {
        throw ConfigError(kind_it->second.line, "kind",
                          "unknown experiment kind '" + kind_it->second.value + "'");
    }
    ExperimentConfig c = ExperimentConfig::defaults_for(*kind);

    Lines lines;
    for (const auto &[key, e] : entries) {
        lines.emplace(key, e.line);
    }
    for (const std::string &key : order) {
        const Entry &e = entries.at(key);
        const std::string &v = e.value;
        auto bad = [&](const std::string &what) -> ConfigError {
            return ConfigError(e.line, key, "expected " + what + ", got '" + v + "'");
        };
        auto real = [&] {
            const auto r = parse_real(v);
            if (!r) {
                throw bad("a number");
            }
            return *r;
        };
        auto integer = [&] {
            const auto r = parse_integer<int>(v);
            if (!r) {
                throw bad("an integer");
            }
            return *r;
        };
        auto count = [&] {
            const auto r = parse_integer<std::uint64_t>(v);
            if (!r) {
                throw bad("a non-negative integer");
            }
            return *r;
        };
        auto actions = [&] {
            try {
                return qfi::parse_actions(v);
            } catch (const ArgumentError &err) {
                throw ConfigError(e.line, key, err.what());
            }
        };

        if (key == "kind") {
            continue;
        }
        if (key == "variant") {
            const auto var = qfi::parse_variant(v);
            if (!var) {
                throw bad("full or simplified");
            }
            c.variant = *var;
            if (*var == qfi::Variant::simplified && !entries.contains("squeeze_angle")) {
                c.squeeze_angle.reset();
            }
            if (*var == qfi::Variant::full && !entries.contains("squeeze_angle") &&
                !c.squeeze_angle) {
                c.squeeze_angle = std::numbers::pi / 8.0;
            }
        } else if (key == "rx_angle") {
            c.rx_angle = real();
        } else if (key == "ry_angle") {
            c.ry_angle = real();
        } else if (key == "rz_angle") {
            c.rz_angle = real();
        } else if (key == "squeeze_angle") {
            if (v == "none") {
                c.squeeze_angle.reset();
            } else {
                c.squeeze_angle = real();
            }
        } else if (key == "preparation") {
            c.preparation = actions();
        } else if (key == "rz_in_preparation") {
            if (v != "true" && v != "false") {
                throw bad("true or false");
            }
            c.rz_in_preparation = v == "true";
        } else if (key == "interrogations") {
            c.interrogations = integer();
        } else if (key == "qsc1_angle") {
            c.qsc1_angle = real();
        } else if (key == "qsc2_angle") {
            c.qsc2_angle = real();
        } else if (key == "alphabet") {
            c.alphabet = actions();
        } else if (key == "horizon") {
            c.horizon = integer();
        } else if (key == "policy_cap") {
            c.policy_cap = integer();
        } else if (key == "policy") {
            c.policy = actions();
        } else if (key == "t") {
            c.t = integer();
        } else if (key == "shots") {
            c.shots = count();
        } else if (key == "shots_grid") {
            c.shots_grid.clear();
            std::string_view rest = v;
            while (true) {
                const std::size_t comma = rest.find(',');
                const auto n = parse_integer<std::uint64_t>(rest.substr(0, comma));
                if (!n) {
                    throw bad("a comma-separated list of shot counts");
                }
                c.shots_grid.push_back(*n);
                if (comma == std::string_view::npos) {
                    break;
                }
                rest.remove_prefix(comma + 1);
            }
        } else if (key == "sweep_shots") {
            c.sweep_shots = count();
        } else if (key == "rotations") {
            c.rotations = integer();
        } else if (key == "rotation_mode") {
            if (v == "formula") {
                c.rotation_mode = agents::RotationMode::formula;
            } else if (v == "fixed") {
                c.rotation_mode = agents::RotationMode::fixed;
            } else {
                throw bad("formula or fixed");
            }
        } else if (key == "k") {
            c.k = real();
        } else if (key == "max_rounds") {
            c.max_rounds = integer();
        } else if (key == "g_lo") {
            c.g_lo = real();
        } else if (key == "g_hi") {
            c.g_hi = real();
        } else if (key == "v_ref") {
            if (v == "auto") {
                c.v_ref.reset();
            } else {
                c.v_ref = real();
            }
        } else if (key == "gaqa_k") {
            c.gaqa_k = real();
        } else if (key == "reward_weight") {
            c.reward_weight = real();
        } else if (key == "td_rate") {
            c.td_rate = real();
        } else if (key == "max_actions") {
            c.max_actions = integer();
        } else if (key == "episodes") {
            c.episodes = integer();
        } else if (key == "seed") {
            c.seed = count();
        } else if (key == "seeds") {
            c.seeds = integer();
        } else if (key == "csv") {
            c.csv = v;
        } else if (key == "svg") {
            c.svg = v;
        }
    }
    check_config(c, lines);
    return c;
}

std::string serialize(const ExperimentConfig &c) {
    std::string out;
    auto put = [&](std::string_view key, const std::string &value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    auto list = [](const std::vector<qfi::Action> &a) { return qfi::join_actions(a); };
    put("kind", std::string(kind_name(c.kind)));
    put("variant", std::string(qfi::variant_name(c.variant)));
    put("rx_angle", format_exact(c.rx_angle));
    put("ry_angle", format_exact(c.ry_angle));
    put("rz_angle", format_exact(c.rz_angle));
    put("squeeze_angle", c.squeeze_angle ? format_exact(*c.squeeze_angle) : "none");
    put("preparation", list(c.preparation));
    put("rz_in_preparation", c.rz_in_preparation ? "true" : "false");
    put("interrogations", std::to_string(c.interrogations));
    put("qsc1_angle", format_exact(c.qsc1_angle));
    put("qsc2_angle", format_exact(c.qsc2_angle));
    put("alphabet", list(c.alphabet));
    put("horizon", std::to_string(c.horizon));
    put("policy_cap", std::to_string(c.policy_cap));
    put("policy", list(c.policy));
    put("t", std::to_string(c.t));
    put("shots", std::to_string(c.shots));
    std::string grid;
    for (std::size_t i = 0; i < c.shots_grid.size(); ++i) {
        grid += (i > 0 ? "," : "") + std::to_string(c.shots_grid[i]);
    }
    put("shots_grid", grid);
    put("sweep_shots", std::to_string(c.sweep_shots));
    put("rotations", std::to_string(c.rotations));
    put("rotation_mode",
        c.rotation_mode == agents::RotationMode::fixed ? "fixed" : "formula");
    put("k", format_exact(c.k));
    put("max_rounds", std::to_string(c.max_rounds));
    put("g_lo", format_exact(c.g_lo));
    put("g_hi", format_exact(c.g_hi));
    put("v_ref", c.v_ref ? format_exact(*c.v_ref) : "auto");
    put("gaqa_k", format_exact(c.gaqa_k));
    put("reward_weight", format_exact(c.reward_weight));
    put("td_rate", format_exact(c.td_rate));
    put("max_actions", std::to_string(c.max_actions));
    put("episodes", std::to_string(c.episodes));
    put("seed", std::to_string(c.seed));
    put("seeds", std::to_string(c.seeds));
    put("csv", c.csv);
    put("svg", c.svg);
    return out;
}

} // namespace gpa::experiments
