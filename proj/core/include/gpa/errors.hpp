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
 * Error types shared by every module. The command-line tool maps them onto
 * process exit codes (see `ExitCode`).
 */
#pragma once

#include <stdexcept>
#include <string>

namespace gpa {

/// Invalid argument or precondition violation supplied by the caller.
class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Request exceeds the desk-scale limits (qubit counts, register widths).
class CapacityError : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// An internal consistency check failed. Indicates a bug, not bad input.
class InvariantError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Experiment configuration could not be parsed or validated.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::size_t line, std::string key, const std::string &message)
        : std::runtime_error(format(line, key, message)), line_(line),
          key_(std::move(key)) {}

    /// 1-based line of the offending entry, 0 when not tied to a line.
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] const std::string &key() const noexcept { return key_; }

  private:
    static std::string format(std::size_t line, const std::string &key,
                              const std::string &message) {
        std::string out;
        if (line > 0) {
            out += "line " + std::to_string(line) + ": ";
        }
        if (!key.empty()) {
            out += "'" + key + "': ";
        }
        return out + message;
    }

    std::size_t line_;
    std::string key_;
};

enum class ExitCode : int {
    success = 0,
    config_error = 1,
    capacity_error = 2,
    internal_error = 3,
};

} // namespace gpa
