#pragma once

// Configuration ingestion: flat dotted-key text (human-writable) or JSON.
// Units follow the published parameter table at this boundary only
// (dB, dBm, dBi, meters); everything downstream is linear.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ehfdr/channel.hpp"
#include "ehfdr/montecarlo.hpp"
#include "ehfdr/optimize.hpp"
#include "ehfdr/relay_control.hpp"

namespace ehfdr::cfg {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Grid syntax: "start..stop:step", a comma list, or a single value.
inline std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    const auto dots = text.find("..");
    try {
        if (dots != std::string::npos) {
            const auto colon = text.find(':', dots + 2);
            const double start = std::stod(text.substr(0, dots));
            const double stop = std::stod(
                colon == std::string::npos ? text.substr(dots + 2)
                                           : text.substr(dots + 2, colon - dots - 2));
            const double step =
                colon == std::string::npos ? 0.0 : std::stod(text.substr(colon + 1));
            if (colon == std::string::npos) {
                grid = {start, stop};
            } else {
                if (!(step > 0.0) || stop < start)
                    throw ConfigError("grid range needs stop >= start and step > 0: " + text);
                const long count = std::lround((stop - start) / step);
                for (long i = 0; i <= count; ++i) grid.push_back(start + i * step);
                if (grid.empty() || grid.back() < stop - step * 0.5)
                    grid.push_back(stop);
            }
        } else if (text.find(',') != std::string::npos) {
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ',')) grid.push_back(std::stod(item));
        } else {
            grid = {std::stod(text)};
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse grid '" + text + "'");
    }
    if (grid.empty()) throw ConfigError("empty grid '" + text + "'");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] < grid[i - 1])
            throw ConfigError("grid must be monotone non-decreasing: " + text);
    return grid;
}

namespace detail {

inline const std::map<std::string, std::string>& default_entries() {
    static const std::map<std::string, std::string> defaults = {
        {"system.carrier_hz", "915e6"},
        {"system.bandwidth_hz", "200e3"},
        {"system.rate_bps_hz", "2"},
        {"system.pathloss_ref_db", "-30"},
        {"system.d1_m", "10"},
        {"system.d2_m", "10"},
        {"system.d3_m", "20"},
        {"system.pathloss_exponent", "3"},
        {"system.lambda1", "1"},
        {"system.lambda2", "1"},
        {"system.lambda3", "1"},
        {"system.noise_relay_dbm", "-95"},
        {"system.noise_dest_dbm", "-95"},
        {"system.ant_gain_src_dbi", "18"},
        {"system.ant_gain_relay_dbi", "8"},
        {"system.rician_k_db", "6"},
        {"system.eta", "0.8"},
        {"system.sigma02", "0.1"},
        {"system.gamma_th_db", ""},  // empty: derived from the rate
        {"system.block_time_s", "1"},
        {"run.scheme", "sinr"},
        {"run.mode", "dl"},
        {"run.ps_dbm", "30"},
        {"run.n_blocks", "100000"},
        {"run.seed", "1"},
        {"run.kappa", "0"},
        {"run.gamma_hat_db", "12"},
        {"run.gamma_hat_schedule_db", ""},  // "a..b" mapped across the sweep grid
        {"run.alpha", ""},                  // empty: bisected
        {"run.threads", "0"},
        {"run.fading_averaged", "0"},
        {"channel.g0", "0.342"},
        {"channel.g1", "1.898"},
        {"channel.g2", "0.986"},
        {"channel.g3", "0"},
        {"sweep.axis", "ps"},
        {"sweep.grid", ""},  // empty: per-command default
        {"output.csv", ""},
        {"output.manifest", ""},
    };
    return defaults;
}

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace detail

/// Flat key->value configuration with defaults from the parameter table.
/// Unknown keys are rejected at ingestion.
class ScenarioConfig {
public:
    ScenarioConfig() : entries_(detail::default_entries()) {}

    void set(const std::string& key, const std::string& value) {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            throw ConfigError("unknown configuration key '" + key + "'");
        it->second = value;
    }

    const std::string& raw(const std::string& key) const {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            throw ConfigError("unknown configuration key '" + key + "'");
        return it->second;
    }

    double number(const std::string& key) const {
        const std::string& v = raw(key);
        try {
            std::size_t used = 0;
            const double x = std::stod(v, &used);
            while (used < v.size() && std::isspace(static_cast<unsigned char>(v[used])))
                ++used;
            if (used != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (const std::exception&) {
            throw ConfigError("key '" + key + "' is not a number: '" + v + "'");
        }
    }

    long integer(const std::string& key) const {
        const double x = number(key);
        if (x != std::floor(x))
            throw ConfigError("key '" + key + "' must be an integer");
        return static_cast<long>(x);
    }

    bool empty_value(const std::string& key) const { return raw(key).empty(); }

    /// Parse the flat `section.key = value` format ('#' comments) or, when the
    /// first non-space character is '{', JSON (optionally wrapped in a run
    /// manifest whose resolved configuration sits under "config").
    /// Keys present in the input override the current entries.
    void apply_string(const std::string& text,
                      const std::string& origin = "<string>") {
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '{') {
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(text);
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError(origin + ": JSON parse error: " + e.what());
            }
            if (j.contains("config")) j = j.at("config");
            for (const auto& [key, value] : j.items()) {
                if (value.is_string())
                    set(key, value.get<std::string>());
                else
                    set(key, value.dump());
            }
            return;
        }
        std::stringstream ss(text);
        std::string line;
        int lineno = 0;
        while (std::getline(ss, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const std::string t = detail::trim(line);
            if (t.empty()) continue;
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
            const std::string key = detail::trim(t.substr(0, eq));
            const std::string value = detail::trim(t.substr(eq + 1));
            try {
                set(key, value);
            } catch (const ConfigError& e) {
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": " +
                                  e.what());
            }
        }
    }

    void apply_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file '" + path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        apply_string(buf.str(), path);
    }

    static ScenarioConfig from_file(const std::string& path) {
        ScenarioConfig cfg;
        cfg.apply_file(path);
        return cfg;
    }

    static ScenarioConfig from_string(const std::string& text,
                                      const std::string& origin = "<string>") {
        ScenarioConfig cfg;
        cfg.apply_string(text, origin);
        return cfg;
    }

    /// Linear-unit physical parameters.
    SystemParams system_params() const {
        SystemParams p;
        p.eta = number("system.eta");
        p.pathloss_ref = db_to_linear(number("system.pathloss_ref_db"));
        p.ant_gain_src = db_to_linear(number("system.ant_gain_src_dbi"));
        p.ant_gain_relay = db_to_linear(number("system.ant_gain_relay_dbi"));
        p.m = number("system.pathloss_exponent");
        p.d1 = number("system.d1_m");
        p.d2 = number("system.d2_m");
        p.d3 = number("system.d3_m");
        p.lambda1 = number("system.lambda1");
        p.lambda2 = number("system.lambda2");
        p.lambda3 = number("system.lambda3");
        p.sigma_r2 = dbm_to_watts(number("system.noise_relay_dbm"));
        p.sigma_d2 = dbm_to_watts(number("system.noise_dest_dbm"));
        p.sigma_02 = number("system.sigma02");
        p.rician_k = db_to_linear(number("system.rician_k_db"));
        p.bandwidth_hz = number("system.bandwidth_hz");
        p.rate_bps_hz = number("system.rate_bps_hz");
        p.gamma_th = empty_value("system.gamma_th_db")
                         ? gamma_th_from_rate(p.rate_bps_hz)
                         : db_to_linear(number("system.gamma_th_db"));
        p.block_time = number("system.block_time_s");
        p.validate();
        return p;
    }

    relay::Scheme scheme() const {
        const std::string& s = raw("run.scheme");
        if (s == "maximum" || s == "max") return relay::Scheme::Maximum;
        if (s == "sinr") return relay::Scheme::Sinr;
        if (s == "target") return relay::Scheme::Target;
        throw ConfigError("run.scheme must be maximum|sinr|target, got '" + s + "'");
    }

    mc::Mode mode() const {
        const std::string& s = raw("run.mode");
        if (s == "instantaneous" || s == "inst") return mc::Mode::Instantaneous;
        if (s == "dl" || s == "delay-limited") return mc::Mode::DelayLimited;
        if (s == "dt" || s == "delay-tolerant") return mc::Mode::DelayTolerant;
        throw ConfigError("run.mode must be instantaneous|dl|dt, got '" + s + "'");
    }

    opt::SweepAxis sweep_axis() const {
        const std::string& s = raw("sweep.axis");
        if (s == "ps") return opt::SweepAxis::Ps;
        if (s == "sigma02") return opt::SweepAxis::Sigma02;
        if (s == "gamma_hat") return opt::SweepAxis::GammaHat;
        if (s == "placement") return opt::SweepAxis::PlacementRatio;
        if (s == "kappa") return opt::SweepAxis::Kappa;
        throw ConfigError("sweep.axis must be ps|sigma02|gamma_hat|placement|kappa");
    }

    std::vector<double> sweep_grid(const std::string& fallback) const {
        const std::string& g = raw("sweep.grid");
        return parse_grid(g.empty() ? fallback : g);
    }

    ChannelSample fixed_channel() const {
        ChannelSample ch;
        ch.h0 = std::sqrt(number("channel.g0"));
        ch.h1 = std::sqrt(number("channel.g1"));
        ch.h2 = std::sqrt(number("channel.g2"));
        ch.h3 = std::sqrt(number("channel.g3"));
        ch.cache_magnitudes();
        return ch;
    }

    /// Target e-SINR for grid point i of n: either the fixed value or the
    /// linear-in-dB schedule end points mapped across the sweep.
    double gamma_hat_for_point(std::size_t i, std::size_t n) const {
        if (!empty_value("run.gamma_hat_schedule_db")) {
            const auto ends = parse_grid(raw("run.gamma_hat_schedule_db"));
            const double lo = ends.front(), hi = ends.back();
            const double f = n > 1 ? static_cast<double>(i) / (n - 1.0) : 0.0;
            return db_to_linear(lo + f * (hi - lo));
        }
        return db_to_linear(number("run.gamma_hat_db"));
    }

    const std::map<std::string, std::string>& entries() const { return entries_; }

    nlohmann::json to_json() const {
        nlohmann::json j = nlohmann::json::object();
        for (const auto& [k, v] : entries_) j[k] = v;
        return j;
    }

private:
    std::map<std::string, std::string> entries_;
};

}  // namespace ehfdr::cfg
