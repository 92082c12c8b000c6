#include "qarctic/shell.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qarctic {

using nlohmann::json;

ConfigError::ConfigError(std::vector<std::string> errs)
    : std::invalid_argument([&] {
          std::string m = "invalid configuration:";
          for (const auto& e : errs) m += "\n  " + e;
          return m;
      }()),
      errors(std::move(errs)) {}

namespace {

struct Reader {
    std::vector<std::string> errors;

    void unknown_keys(const json& obj, const std::string& where, std::set<std::string> known) {
        for (auto it = obj.begin(); it != obj.end(); ++it)
            if (!known.count(it.key())) errors.push_back(where + it.key() + ": unknown field");
    }

    std::optional<double> number(const json& v, const std::string& field) {
        if (!v.is_number()) {
            errors.push_back(field + ": expected a number");
            return std::nullopt;
        }
        double d = v.get<double>();
        if (!std::isfinite(d)) {
            errors.push_back(field + ": must be finite");
            return std::nullopt;
        }
        return d;
    }

    std::optional<long> integer(const json& v, const std::string& field) {
        if (!v.is_number_integer()) {
            errors.push_back(field + ": expected an integer");
            return std::nullopt;
        }
        return v.get<long>();
    }

    std::vector<double> numbers(const json& v, const std::string& field) {
        std::vector<double> out;
        if (!v.is_array()) {
            errors.push_back(field + ": expected an array of numbers");
            return out;
        }
        for (size_t i = 0; i < v.size(); ++i)
            if (auto d = number(v[i], field + "[" + std::to_string(i) + "]")) out.push_back(*d);
        return out;
    }

    std::optional<FiniteModel> finite(const json& j) {
        if (!j.is_object()) {
            errors.push_back("finite: expected an object");
            return std::nullopt;
        }
        unknown_keys(j, "finite.", {"a", "q"});
        FiniteModel m;
        bool ok = true;
        std::vector<long> a;
        if (!j.contains("a") || !j["a"].is_array()) {
            errors.push_back("finite.a: expected an array of integers");
            ok = false;
        } else {
            for (size_t i = 0; i < j["a"].size(); ++i) {
                auto v = integer(j["a"][i], "finite.a[" + std::to_string(i) + "]");
                if (v) a.push_back(*v);
                else ok = false;
            }
            if (ok) {
                auto errs = validate_sequence(a);
                for (const auto& e : errs) errors.push_back("finite.a: " + e);
                ok = errs.empty();
            }
        }
        if (!j.contains("q")) {
            errors.push_back("finite.q: missing (give \"num/den\" or {\"qq\": value, \"n\": value})");
            ok = false;
        } else if (j["q"].is_string()) {
            m.q_text = j["q"].get<std::string>();
            try {
                Rational q = parse_rational(m.q_text);
                if (q <= 0 || q == 1) {
                    errors.push_back("finite.q: must be positive and different from 1");
                    ok = false;
                } else {
                    m.q_exact = q;
                    m.q = q.get_d();
                }
            } catch (const std::invalid_argument&) {
                errors.push_back("finite.q: not a rational number \"" + m.q_text + "\"");
                ok = false;
            }
        } else if (j["q"].is_object()) {
            const json& o = j["q"];
            unknown_keys(o, "finite.q.", {"qq", "n"});
            std::optional<double> qq;
            std::optional<long> n;
            if (o.contains("qq")) qq = number(o["qq"], "finite.q.qq");
            else errors.push_back("finite.q.qq: missing");
            if (o.contains("n")) n = integer(o["n"], "finite.q.n");
            else errors.push_back("finite.q.n: missing");
            if (qq && (*qq <= 0 || *qq == 1)) {
                errors.push_back("finite.q.qq: must be positive and different from 1");
                qq.reset();
            }
            if (n && *n < 1) {
                errors.push_back("finite.q.n: must be at least 1");
                n.reset();
            }
            if (qq && n) {
                m.q = std::pow(*qq, 1.0 / *n);
                std::ostringstream os;
                os << format_double(*qq) << "^(1/" << *n << ")";
                m.q_text = os.str();
            } else {
                ok = false;
            }
        } else {
            errors.push_back("finite.q: expected \"num/den\" or {\"qq\": value, \"n\": value}");
            ok = false;
        }
        if (!ok) return std::nullopt;
        m.seq = StartSequence(a);
        return m;
    }

    std::optional<ScaledModel> scaled(const json& j) {
        if (!j.is_object()) {
            errors.push_back("scaled: expected an object");
            return std::nullopt;
        }
        unknown_keys(j, "scaled.", {"segments", "jumps", "qq"});
        ScaledModel m;
        bool ok = true;
        if (!j.contains("segments") || !j["segments"].is_array()) {
            errors.push_back("scaled.segments: expected an array of {\"gamma\", \"p\"} objects");
            ok = false;
        } else {
            for (size_t i = 0; i < j["segments"].size(); ++i) {
                const json& s = j["segments"][i];
                std::string f = "scaled.segments[" + std::to_string(i) + "]";
                if (!s.is_object()) {
                    errors.push_back(f + ": expected an object");
                    ok = false;
                    continue;
                }
                unknown_keys(s, f + ".", {"gamma", "p"});
                auto g = s.contains("gamma") ? number(s["gamma"], f + ".gamma") : std::nullopt;
                auto p = s.contains("p") ? number(s["p"], f + ".p") : std::nullopt;
                if (!s.contains("gamma")) errors.push_back(f + ".gamma: missing");
                if (!s.contains("p")) errors.push_back(f + ".p: missing");
                if (g && p) m.segments.push_back({*g, *p});
                else ok = false;
            }
        }
        if (j.contains("jumps")) {
            if (!j["jumps"].is_array()) {
                errors.push_back("scaled.jumps: expected an array of {\"u\", \"delta\"} objects");
                ok = false;
            } else {
                for (size_t i = 0; i < j["jumps"].size(); ++i) {
                    const json& s = j["jumps"][i];
                    std::string f = "scaled.jumps[" + std::to_string(i) + "]";
                    if (!s.is_object()) {
                        errors.push_back(f + ": expected an object");
                        ok = false;
                        continue;
                    }
                    unknown_keys(s, f + ".", {"u", "delta"});
                    auto u = s.contains("u") ? number(s["u"], f + ".u") : std::nullopt;
                    auto dl = s.contains("delta") ? number(s["delta"], f + ".delta") : std::nullopt;
                    if (!s.contains("u")) errors.push_back(f + ".u: missing");
                    if (!s.contains("delta")) errors.push_back(f + ".delta: missing");
                    if (u && dl) m.jumps.push_back({*u, *dl});
                    else ok = false;
                }
            }
        }
        if (ok) {
            auto errs = validate_density(m.segments, m.jumps);
            for (const auto& e : errs) errors.push_back("scaled: " + e);
            ok = errs.empty();
        }
        if (!j.contains("qq")) {
            errors.push_back("scaled.qq: missing");
            ok = false;
        } else if (auto qq = number(j["qq"], "scaled.qq")) {
            if (*qq <= 0 || *qq == 1) {
                errors.push_back("scaled.qq: must be positive and different from 1");
                ok = false;
            }
            m.qq = *qq;
        } else {
            ok = false;
        }
        if (!ok) return std::nullopt;
        return m;
    }

    TaskParams task(const json& j) {
        TaskParams t;
        if (!j.is_object()) {
            errors.push_back("task: expected an object");
            return t;
        }
        unknown_keys(j, "task.", {"sweeps", "burn_in", "seed", "init", "samples", "efolds", "exit_r", "tangent_t", "geodesic_t"});
        if (j.contains("sweeps"))
            if (auto v = integer(j["sweeps"], "task.sweeps")) {
                if (*v < 1) errors.push_back("task.sweeps: must be at least 1");
                t.sweeps = *v;
            }
        if (j.contains("burn_in"))
            if (auto v = integer(j["burn_in"], "task.burn_in")) {
                if (*v < 0) errors.push_back("task.burn_in: must be nonnegative");
                else if (*v >= t.sweeps) errors.push_back("task.burn_in: must be smaller than task.sweeps");
                t.burn_in = *v;
            }
        if (j.contains("seed")) {
            if (!j["seed"].is_number_unsigned()) errors.push_back("task.seed: expected a nonnegative integer");
            else t.seed = j["seed"].get<std::uint64_t>();
        }
        if (j.contains("init")) {
            std::string s = j["init"].is_string() ? j["init"].get<std::string>() : "";
            if (s == "max_area") t.init = InitMode::max_area;
            else if (s == "min_area") t.init = InitMode::min_area;
            else errors.push_back("task.init: expected \"max_area\" or \"min_area\"");
        }
        if (j.contains("samples"))
            if (auto v = integer(j["samples"], "task.samples")) {
                if (*v < 2) errors.push_back("task.samples: must be at least 2");
                t.samples = static_cast<int>(*v);
            }
        if (j.contains("efolds"))
            if (auto v = number(j["efolds"], "task.efolds")) {
                if (*v <= 0) errors.push_back("task.efolds: must be positive");
                t.efolds = *v;
            }
        if (j.contains("exit_r"))
            if (auto v = integer(j["exit_r"], "task.exit_r")) {
                if (*v < 1) errors.push_back("task.exit_r: must be at least 1");
                t.exit_r = *v;
            }
        if (j.contains("tangent_t")) t.tangent_t = numbers(j["tangent_t"], "task.tangent_t");
        if (j.contains("geodesic_t")) t.geodesic_t = numbers(j["geodesic_t"], "task.geodesic_t");
        return t;
    }
};

}  // namespace

ModelConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        size_t line = 1, col = 1;
        for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError({"parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                           e.what()});
    }
    Reader r;
    ModelConfig cfg;
    if (!j.is_object()) throw ConfigError({"top level: expected an object"});
    r.unknown_keys(j, "", {"finite", "scaled", "task"});
    if (j.contains("finite") == j.contains("scaled"))
        r.errors.push_back("exactly one of \"finite\" and \"scaled\" must be present");
    if (j.contains("finite")) cfg.finite = r.finite(j["finite"]);
    if (j.contains("scaled")) cfg.scaled = r.scaled(j["scaled"]);
    if (j.contains("task")) cfg.task = r.task(j["task"]);
    if (!r.errors.empty()) throw ConfigError(r.errors);
    return cfg;
}

ModelConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot read config file " + path});
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace qarctic
