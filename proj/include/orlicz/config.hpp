#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/measure.hpp"
#include "orlicz/nfunction.hpp"
#include "orlicz/triple.hpp"

namespace orlicz {

// Line-oriented "key = value" configuration with [section] headers, full-line
// # comments, and a canonical serialized form (sections and keys sorted).

class Config {
public:
    static Config parse(const std::string& text) {
        Config cfg;
        std::istringstream in(text);
        std::string line, section = "campaign";
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string t = trim(line);
            if (t.empty() || t[0] == '#' || t[0] == ';')
                continue;
            if (t.front() == '[') {
                if (t.back() != ']')
                    throw ConfigError("config line " + std::to_string(lineno) +
                                      ": unterminated section header");
                section = trim(t.substr(1, t.size() - 2));
                if (section.empty())
                    throw ConfigError("config line " + std::to_string(lineno) + ": empty section");
                continue;
            }
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
            const std::string key = trim(t.substr(0, eq));
            const std::string val = trim(t.substr(eq + 1));
            if (key.empty())
                throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
            cfg.data_[section][key] = val;
        }
        return cfg;
    }

    std::string serialize() const {
        std::ostringstream out;
        bool first = true;
        for (const auto& [sec, kv] : data_) {
            if (!first)
                out << "\n";
            first = false;
            out << "[" << sec << "]\n";
            for (const auto& [k, v] : kv)
                out << k << " = " << v << "\n";
        }
        return out.str();
    }

    bool has(const std::string& key, const std::string& section = "campaign") const {
        auto s = data_.find(section);
        return s != data_.end() && s->second.count(key) > 0;
    }

    std::string get(const std::string& key, const std::string& fallback = "",
                    const std::string& section = "campaign") const {
        auto s = data_.find(section);
        if (s == data_.end())
            return fallback;
        auto it = s->second.find(key);
        return it == s->second.end() ? fallback : it->second;
    }

    double get_double(const std::string& key, double fallback,
                      const std::string& section = "campaign") const {
        if (!has(key, section))
            return fallback;
        return to_double(get(key, "", section), key);
    }

    std::int64_t get_int(const std::string& key, std::int64_t fallback,
                         const std::string& section = "campaign") const {
        if (!has(key, section))
            return fallback;
        const std::string v = get(key, "", section);
        try {
            std::size_t pos = 0;
            const std::int64_t r = std::stoll(v, &pos);
            if (pos != v.size())
                throw std::invalid_argument(v);
            return r;
        } catch (const std::exception&) {
            throw ConfigError("config: key '" + key + "' is not an integer: " + v);
        }
    }

    bool get_bool(const std::string& key, bool fallback,
                  const std::string& section = "campaign") const {
        if (!has(key, section))
            return fallback;
        const std::string v = get(key, "", section);
        if (v == "true" || v == "1" || v == "yes" || v == "on")
            return true;
        if (v == "false" || v == "0" || v == "no" || v == "off")
            return false;
        throw ConfigError("config: key '" + key + "' is not a boolean: " + v);
    }

    std::vector<double> get_list(const std::string& key, std::vector<double> fallback,
                                 const std::string& section = "campaign") const {
        if (!has(key, section))
            return fallback;
        std::vector<double> out;
        for (const std::string& tok : split(get(key, "", section), ','))
            out.push_back(to_double(trim(tok), key));
        return out;
    }

    void set(const std::string& key, const std::string& value,
             const std::string& section = "campaign") {
        data_[section][key] = value;
    }

    const std::map<std::string, std::map<std::string, std::string>>& sections() const {
        return data_;
    }

    static std::string trim(const std::string& s) {
        std::size_t a = 0, b = s.size();
        while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
            ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
            --b;
        return s.substr(a, b - a);
    }

    static std::vector<std::string> split(const std::string& s, char sep) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : s) {
            if (c == sep) {
                out.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        out.push_back(cur);
        return out;
    }

    static double to_double(const std::string& v, const std::string& key) {
        if (v == "inf" || v == "+inf")
            return kInf;
        if (v == "-inf")
            return -kInf;
        try {
            std::size_t pos = 0;
            const double r = std::stod(v, &pos);
            if (pos != v.size())
                throw std::invalid_argument(v);
            return r;
        } catch (const std::exception&) {
            throw ConfigError("config: key '" + key + "' is not a number: " + v);
        }
    }

private:
    std::map<std::string, std::map<std::string, std::string>> data_;
};

// ---------------------------------------------------------------------------
// Family spec strings: name(arg, key=value, ...)
// ---------------------------------------------------------------------------

namespace detail {

struct SpecCall {
    std::string name;
    std::vector<double> positional;
    std::map<std::string, std::vector<double>> named; // values after '=' may be comma lists
};

inline SpecCall parse_spec_call(const std::string& spec) {
    SpecCall call;
    const std::string s = Config::trim(spec);
    const auto open = s.find('(');
    if (open == std::string::npos) {
        call.name = s;
        return call;
    }
    if (s.back() != ')')
        throw ConfigError("spec '" + spec + "': missing closing parenthesis");
    call.name = Config::trim(s.substr(0, open));
    const std::string args = s.substr(open + 1, s.size() - open - 2);
    if (Config::trim(args).empty())
        return call;

    std::string pending_key;
    for (const std::string& raw : Config::split(args, ',')) {
        const std::string tok = Config::trim(raw);
        const auto eq = tok.find('=');
        if (eq != std::string::npos) {
            pending_key = Config::trim(tok.substr(0, eq));
            call.named[pending_key].push_back(
                Config::to_double(Config::trim(tok.substr(eq + 1)), pending_key));
        } else if (!pending_key.empty()) {
            // continuation of a comma-separated named list, e.g. interval=0,1
            call.named[pending_key].push_back(Config::to_double(tok, pending_key));
        } else {
            call.positional.push_back(Config::to_double(tok, call.name));
        }
    }
    return call;
}

inline double spec_arg(const SpecCall& c, const std::string& key, std::size_t pos_index,
                       double fallback = std::nan(""), bool required = true) {
    auto it = c.named.find(key);
    if (it != c.named.end())
        return it->second.front();
    if (pos_index < c.positional.size())
        return c.positional[pos_index];
    if (required && std::isnan(fallback))
        throw ConfigError("spec '" + c.name + "': missing argument '" + key + "'");
    return fallback;
}

} // namespace detail

// Registry: power(p), hpower(p), powerlog(p,alpha), exp.
inline NFunction parse_nfunction(const std::string& spec) {
    const auto c = detail::parse_spec_call(spec);
    if (c.name == "power")
        return make_power(detail::spec_arg(c, "p", 0));
    if (c.name == "hpower")
        return make_hpower(detail::spec_arg(c, "p", 0));
    if (c.name == "powerlog")
        return make_powerlog(detail::spec_arg(c, "p", 0), detail::spec_arg(c, "alpha", 1));
    if (c.name == "exp")
        return make_exp_family();
    throw ConfigError("unknown N-function family: " + spec);
}

// Registry: lebesgue(interval=a,b), power(alpha=..), powerexp(alpha=..,beta=..),
// distance(a=..,interval=lo,hi).
inline WeightedMeasure parse_measure(const std::string& spec) {
    const auto c = detail::parse_spec_call(spec);
    if (c.name == "lebesgue") {
        auto it = c.named.find("interval");
        if (it != c.named.end() && it->second.size() == 2)
            return WeightedMeasure::lebesgue(it->second[0], it->second[1]);
        if (c.positional.size() == 2)
            return WeightedMeasure::lebesgue(c.positional[0], c.positional[1]);
        throw ConfigError("lebesgue: need interval=lo,hi");
    }
    if (c.name == "power")
        return WeightedMeasure::power(detail::spec_arg(c, "alpha", 0));
    if (c.name == "powerexp")
        return WeightedMeasure::power_exponential(detail::spec_arg(c, "alpha", 0),
                                                  detail::spec_arg(c, "beta", 1));
    if (c.name == "distance") {
        const double a = detail::spec_arg(c, "a", 0);
        auto it = c.named.find("interval");
        if (it == c.named.end() || it->second.size() != 2)
            throw ConfigError("distance: need interval=lo,hi");
        return WeightedMeasure::distance(a, it->second[0], it->second[1]);
    }
    throw ConfigError("unknown measure family: " + spec);
}

// Triple spec: identity | mf(f=<nfunction>[,c=<num>]) | power(q=..[,r=..]).
// mf without c fits the smallest validated constant.
inline YoungTriple parse_triple(const std::string& spec, const NFunction& m, std::uint64_t seed,
                                int samples = 100000) {
    const std::string trimmed = Config::trim(spec);
    const auto open_paren = trimmed.find('(');
    const std::string name =
        Config::trim(open_paren == std::string::npos ? trimmed : trimmed.substr(0, open_paren));
    if (name == "identity")
        return identity_triple(m);
    if (name == "mf") {
        if (open_paren == std::string::npos || trimmed.back() != ')')
            throw ConfigError("mf triple: expected mf(f=<family>[;c=<num>])");
        const std::string args = trimmed.substr(open_paren + 1, trimmed.size() - open_paren - 2);
        std::string fspec;
        double cval = -1.0;
        for (const std::string& raw : Config::split(args, ';')) {
            const std::string tok = Config::trim(raw);
            if (tok.rfind("f=", 0) == 0)
                fspec = tok.substr(2);
            else if (tok.rfind("c=", 0) == 0 && tok != "c=fit")
                cval = Config::to_double(tok.substr(2), "c");
        }
        if (fspec.empty())
            throw ConfigError("mf triple: need f=<family>; e.g. mf(f=hpower(2))");
        const NFunction f = parse_nfunction(fspec);
        if (cval > 0.0)
            return build_mf_triple(m, f, cval);
        return build_mf_triple_fitted(m, f, seed, samples);
    }
    if (name == "power") {
        // requires M = lambda^p
        const auto mp = detail::parse_spec_call(m.label);
        if (mp.name != "power")
            throw ConfigError("power triple: M must be a power family, got " + m.label);
        const double p = mp.positional.empty() ? detail::spec_arg(mp, "p", 0) : mp.positional[0];
        const auto c = detail::parse_spec_call(trimmed);
        const double q = detail::spec_arg(c, "q", 0);
        return power_triple(p, q);
    }
    throw ConfigError("unknown triple spec: " + spec);
}

} // namespace orlicz
