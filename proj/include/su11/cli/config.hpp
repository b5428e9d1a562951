// Copyright 2026 The su11-parity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Run configuration: a JSON document plus dotted-path overrides, validated
// strictly so that every unknown or malformed field is reported by path.

#include <cmath>
#include <cstddef>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "su11/fock/space.hpp"
#include "su11/input_state.hpp"
#include "su11/params.hpp"
#include "su11/sweep.hpp"

namespace su11::cli {

using json = nlohmann::json;

/// Invalid configuration; `key()` is the dotted path of the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& problem)
        : std::runtime_error(key.empty() ? problem : key + ": " + problem), key_(std::move(key)) {}

    [[nodiscard]] const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

enum class OutputFormat { csv, json };

struct Tolerances {
    double oracle_tol = 1e-6;
    double convergence_tol = 1e-8;
    double fd_step = default_fd_step;
};

struct RunConfig {
    InputState state = TwoModeVacuum{};
    GainConfig gain{0.0};
    PhaseGrid grid{0.0, 2.0 * std::numbers::pi, 361};
    std::optional<std::size_t> n_max;  ///< unset: auto
    std::size_t dimension_cap = default_dimension_cap;
    Tolerances tolerances;
    std::string output_path;  ///< empty or "-": standard output
    OutputFormat format = OutputFormat::csv;
};

namespace detail {

inline std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

inline void reject_unknown(const json& obj, const std::string& path,
                           std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (std::string_view a : allowed) {
            known = known || key == a;
        }
        if (!known) {
            throw ConfigError(join(path, key), "unknown key");
        }
    }
}

inline const json& require_object(const json& parent, const std::string& key, const std::string& path) {
    const json& v = parent.at(key);
    if (!v.is_object()) {
        throw ConfigError(path, "expected an object");
    }
    return v;
}

inline double get_number(const json& obj, const std::string& key, const std::string& path,
                         std::optional<double> fallback = std::nullopt) {
    const std::string p = join(path, key);
    if (!obj.contains(key)) {
        if (fallback) {
            return *fallback;
        }
        throw ConfigError(p, "missing required field");
    }
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError(p, "expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw ConfigError(p, "must be finite");
    }
    return x;
}

inline std::size_t get_count(const json& obj, const std::string& key, const std::string& path,
                             std::optional<std::size_t> fallback = std::nullopt) {
    const std::string p = join(path, key);
    if (!obj.contains(key)) {
        if (fallback) {
            return *fallback;
        }
        throw ConfigError(p, "missing required field");
    }
    const json& v = obj.at(key);
    if (v.is_number_unsigned()) {
        return v.get<std::size_t>();
    }
    if (v.is_number_integer()) {
        throw ConfigError(p, "must be non-negative");
    }
    throw ConfigError(p, "expected a non-negative integer");
}

/// A complex amplitude: a number or a [re, im] pair.
inline complex get_complex(const json& obj, const std::string& key, const std::string& path,
                           std::optional<complex> fallback = std::nullopt) {
    const std::string p = join(path, key);
    if (!obj.contains(key)) {
        if (fallback) {
            return *fallback;
        }
        throw ConfigError(p, "missing required field");
    }
    const json& v = obj.at(key);
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        const complex z{v[0].get<double>(), v[1].get<double>()};
        if (std::isfinite(z.real()) && std::isfinite(z.imag())) {
            return z;
        }
        throw ConfigError(p, "must be finite");
    }
    throw ConfigError(p, "expected a number or a [re, im] pair");
}

inline double get_non_negative(const json& obj, const std::string& key, const std::string& path,
                               std::optional<double> fallback = std::nullopt) {
    const double x = get_number(obj, key, path, fallback);
    if (x < 0.0) {
        throw ConfigError(join(path, key), "must be non-negative");
    }
    return x;
}

inline InputState parse_state(const json& s) {
    const std::string path = "state";
    if (!s.contains("family")) {
        throw ConfigError("state.family", "missing required field");
    }
    if (!s.at("family").is_string()) {
        throw ConfigError("state.family", "expected a string");
    }
    const std::string family = s.at("family").get<std::string>();
    if (family == "vacuum") {
        reject_unknown(s, path, {"family"});
        return TwoModeVacuum{};
    }
    if (family == "coherent") {
        reject_unknown(s, path, {"family", "alpha", "beta"});
        return TwoModeCoherent(get_complex(s, "alpha", path, complex{}),
                               get_complex(s, "beta", path, complex{}));
    }
    if (family == "coherent_svs") {
        reject_unknown(s, path, {"family", "alpha", "r", "theta_s"});
        return CoherentSqueezed(get_complex(s, "alpha", path), get_non_negative(s, "r", path),
                                get_number(s, "theta_s", path, 0.0));
    }
    if (family == "thermal_svs") {
        reject_unknown(s, path, {"family", "nbar", "r", "theta_s"});
        return ThermalSqueezed(get_non_negative(s, "nbar", path), get_non_negative(s, "r", path),
                               get_number(s, "theta_s", path, 0.0));
    }
    if (family == "fock") {
        reject_unknown(s, path, {"family", "n"});
        return VacuumFock(get_count(s, "n", path));
    }
    throw ConfigError("state.family",
                      "unknown family '" + family + "' (vacuum, coherent, coherent_svs, thermal_svs, fock)");
}

}  // namespace detail

/// Validates a configuration document.
inline RunConfig parse_config(const json& doc) {
    using namespace detail;
    if (!doc.is_object()) {
        throw ConfigError("", "configuration must be a JSON object");
    }
    reject_unknown(doc, "", {"state", "gain", "grid", "cutoff", "tolerances", "output"});
    RunConfig cfg;

    if (!doc.contains("state")) {
        throw ConfigError("state", "missing required section");
    }
    cfg.state = parse_state(require_object(doc, "state", "state"));

    if (!doc.contains("gain")) {
        throw ConfigError("gain", "missing required section");
    }
    {
        const json& g = require_object(doc, "gain", "gain");
        reject_unknown(g, "gain", {"g", "theta"});
        cfg.gain = GainConfig(get_non_negative(g, "g", "gain"), get_number(g, "theta", "gain", 0.0));
    }

    if (doc.contains("grid")) {
        const json& g = require_object(doc, "grid", "grid");
        reject_unknown(g, "grid", {"start", "stop", "points"});
        const double start = get_number(g, "start", "grid", cfg.grid.start());
        const double stop = get_number(g, "stop", "grid", cfg.grid.stop());
        const std::size_t points = get_count(g, "points", "grid", cfg.grid.points());
        if (points < 2) {
            throw ConfigError("grid.points", "must be at least 2");
        }
        if (!(start < stop)) {
            throw ConfigError("grid.stop", "must exceed grid.start");
        }
        cfg.grid = PhaseGrid(start, stop, points);
    }

    if (doc.contains("cutoff")) {
        const json& c = require_object(doc, "cutoff", "cutoff");
        reject_unknown(c, "cutoff", {"n_max", "dimension_cap"});
        if (c.contains("n_max") && !(c.at("n_max").is_string() && c.at("n_max") == "auto")) {
            if (!c.at("n_max").is_number_unsigned()) {
                throw ConfigError("cutoff.n_max", "expected a positive integer or \"auto\"");
            }
            cfg.n_max = get_count(c, "n_max", "cutoff");
            if (*cfg.n_max < 1) {
                throw ConfigError("cutoff.n_max", "must be at least 1");
            }
        }
        cfg.dimension_cap = get_count(c, "dimension_cap", "cutoff", default_dimension_cap);
    }

    if (doc.contains("tolerances")) {
        const json& t = require_object(doc, "tolerances", "tolerances");
        reject_unknown(t, "tolerances", {"oracle_tol", "convergence_tol", "fd_step"});
        cfg.tolerances.oracle_tol = get_non_negative(t, "oracle_tol", "tolerances", cfg.tolerances.oracle_tol);
        cfg.tolerances.convergence_tol =
            get_non_negative(t, "convergence_tol", "tolerances", cfg.tolerances.convergence_tol);
        cfg.tolerances.fd_step = get_number(t, "fd_step", "tolerances", cfg.tolerances.fd_step);
        if (!(cfg.tolerances.fd_step > 0.0)) {
            throw ConfigError("tolerances.fd_step", "must be positive");
        }
    }

    if (doc.contains("output")) {
        const json& o = require_object(doc, "output", "output");
        reject_unknown(o, "output", {"path", "format"});
        if (o.contains("path")) {
            if (!o.at("path").is_string()) {
                throw ConfigError("output.path", "expected a string");
            }
            cfg.output_path = o.at("path").get<std::string>();
        }
        if (o.contains("format")) {
            const json& f = o.at("format");
            if (f == "csv") {
                cfg.format = OutputFormat::csv;
            } else if (f == "json") {
                cfg.format = OutputFormat::json;
            } else {
                throw ConfigError("output.format", "expected \"csv\" or \"json\"");
            }
        }
    }
    return cfg;
}

/// Applies one `key=value` override. The value is read as JSON when it
/// parses, otherwise as a plain string; intermediate objects are created.
inline void apply_override(json& doc, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError("", "override '" + std::string(assignment) + "' is not of the form key=value");
    }
    const std::string key(assignment.substr(0, eq));
    const std::string text(assignment.substr(eq + 1));
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) {
        value = text;
    }

    json* node = &doc;
    std::string walked;
    std::size_t begin = 0;
    for (;;) {
        const std::size_t dot = key.find('.', begin);
        const std::string part = key.substr(begin, dot == std::string::npos ? std::string::npos : dot - begin);
        if (part.empty()) {
            throw ConfigError(key, "empty path component");
        }
        walked = detail::join(walked, part);
        if (!node->is_object()) {
            throw ConfigError(walked, "cannot descend into a non-object");
        }
        if (dot == std::string::npos) {
            (*node)[part] = std::move(value);
            return;
        }
        node = &(*node)[part];
        if (node->is_null()) {
            *node = json::object();
        }
        begin = dot + 1;
    }
}

/// Reads the configuration file (if any), applies overrides, and validates.
inline RunConfig load_config(const std::optional<std::string>& path,
                             const std::vector<std::string>& overrides) {
    json doc = json::object();
    if (path) {
        std::ifstream in(*path);
        if (!in) {
            throw ConfigError("", "cannot open configuration file '" + *path + "'");
        }
        std::stringstream buf;
        buf << in.rdbuf();
        doc = json::parse(buf.str(), nullptr, false);
        if (doc.is_discarded()) {
            throw ConfigError("", "configuration file '" + *path + "' is not valid JSON");
        }
    }
    for (const std::string& o : overrides) {
        apply_override(doc, o);
    }
    return parse_config(doc);
}

}  // namespace su11::cli
