// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#include "scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace nhzm::cli {

// Generated from tools/schema/scenario.schema.json.
extern const char* const kScenarioSchema;

std::string_view scenario_schema_text() { return kScenarioSchema; }

const json& scenario_schema() {
    static const json schema = json::parse(kScenarioSchema);
    return schema;
}

ScenarioError::ScenarioError(std::string source, std::vector<Violation> violations)
    : std::runtime_error(violations.empty() ? "invalid scenario" : violations.front().message),
      source_(std::move(source)),
      violations_(std::move(violations)) {}

std::string ScenarioError::report() const {
    std::ostringstream os;
    for (const Violation& v : violations_) {
        os << source_ << ':' << v.line << ':' << v.column << ": " << v.message;
        if (!v.pointer.empty()) os << " (at " << v.pointer << ')';
        os << '\n';
    }
    return os.str();
}

namespace {

std::string escape_token(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '~') {
            out += "~0";
        } else if (c == '/') {
            out += "~1";
        } else {
            out += c;
        }
    }
    return out;
}

std::string child(const std::string& pointer, const std::string& key) {
    return pointer + "/" + escape_token(key);
}

std::string unescape_token(const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '~' && i + 1 < s.size()) {
            out += s[i + 1] == '1' ? '/' : '~';
            ++i;
        } else {
            out += s[i];
        }
    }
    return out;
}

const json& deref(const json& schema, const json& root) {
    const json* s = &schema;
    for (int depth = 0; depth < 16 && s->is_object() && s->contains("$ref"); ++depth) {
        const std::string ref = s->at("$ref").get<std::string>();
        if (ref.rfind("#/", 0) != 0) throw std::logic_error("unsupported $ref " + ref);
        s = &root.at(json::json_pointer(ref.substr(1)));
    }
    return *s;
}

bool is_integral(const json& v) {
    if (v.is_number_integer()) return true;
    if (!v.is_number_float()) return false;
    const double d = v.get<double>();
    return std::isfinite(d) && std::floor(d) == d;
}

bool type_matches(const json& v, const std::string& type) {
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "number") return v.is_number();
    if (type == "integer") return is_integral(v);
    if (type == "boolean") return v.is_boolean();
    if (type == "null") return v.is_null();
    return false;
}

std::string describe(const json& v) {
    if (v.is_object()) return "an object";
    if (v.is_array()) return "an array";
    if (v.is_string()) return "the string " + v.dump();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_null()) return "null";
    return "the number " + v.dump();
}

void check(const json& inst, const json& schema_in, const std::string& ptr, const json& root,
           std::vector<Violation>& out) {
    const json& schema = deref(schema_in, root);
    auto fail = [&](const std::string& at, std::string msg) {
        out.push_back({at, 0, 0, std::move(msg)});
    };

    if (schema.contains("type")) {
        const json& t = schema.at("type");
        std::vector<std::string> types;
        if (t.is_string()) {
            types.push_back(t.get<std::string>());
        } else {
            for (const json& x : t) types.push_back(x.get<std::string>());
        }
        const bool ok = std::any_of(types.begin(), types.end(),
                                    [&](const std::string& ty) { return type_matches(inst, ty); });
        if (!ok) {
            std::string want;
            for (std::size_t i = 0; i < types.size(); ++i) want += (i ? " or " : "") + types[i];
            fail(ptr, "expected " + want + ", got " + describe(inst));
            return;
        }
    }
    if (schema.contains("const") && inst != schema.at("const")) {
        fail(ptr, "expected " + schema.at("const").dump() + ", got " + describe(inst));
    }
    if (schema.contains("enum")) {
        const json& e = schema.at("enum");
        if (std::find(e.begin(), e.end(), inst) == e.end()) {
            fail(ptr, describe(inst) + " is not one of " + e.dump());
        }
    }
    if (inst.is_number()) {
        const double v = inst.get<double>();
        if (schema.contains("minimum") && v < schema.at("minimum").get<double>()) {
            fail(ptr, "value " + inst.dump() + " is below the minimum " + schema.at("minimum").dump());
        }
        if (schema.contains("maximum") && v > schema.at("maximum").get<double>()) {
            fail(ptr, "value " + inst.dump() + " exceeds the maximum " + schema.at("maximum").dump());
        }
        if (schema.contains("exclusiveMinimum") &&
            !(v > schema.at("exclusiveMinimum").get<double>())) {
            fail(ptr, "value " + inst.dump() + " must be greater than " +
                          schema.at("exclusiveMinimum").dump());
        }
    }
    if (inst.is_object()) {
        if (schema.contains("required")) {
            for (const json& k : schema.at("required")) {
                if (!inst.contains(k.get<std::string>())) {
                    fail(ptr, "missing required key \"" + k.get<std::string>() + "\"");
                }
            }
        }
        const json* props = schema.contains("properties") ? &schema.at("properties") : nullptr;
        for (auto it = inst.begin(); it != inst.end(); ++it) {
            const std::string at = child(ptr, it.key());
            if (props != nullptr && props->contains(it.key())) {
                check(it.value(), props->at(it.key()), at, root, out);
            } else if (schema.value("additionalProperties", true) == false) {
                fail(at, "unknown key \"" + it.key() + "\"");
            }
        }
    }
    if (inst.is_array()) {
        if (schema.contains("minItems") && inst.size() < schema.at("minItems").get<std::size_t>()) {
            fail(ptr, "needs at least " + schema.at("minItems").dump() + " items");
        }
        if (schema.contains("maxItems") && inst.size() > schema.at("maxItems").get<std::size_t>()) {
            fail(ptr, "allows at most " + schema.at("maxItems").dump() + " items");
        }
        if (schema.contains("items")) {
            for (std::size_t i = 0; i < inst.size(); ++i) {
                check(inst[i], schema.at("items"), child(ptr, std::to_string(i)), root, out);
            }
        }
    }
    if (schema.contains("allOf")) {
        for (const json& sub : schema.at("allOf")) check(inst, sub, ptr, root, out);
    }
    if (schema.contains("if")) {
        std::vector<Violation> probe;
        check(inst, schema.at("if"), ptr, root, probe);
        if (probe.empty() && schema.contains("then")) check(inst, schema.at("then"), ptr, root, out);
        if (!probe.empty() && schema.contains("else")) check(inst, schema.at("else"), ptr, root, out);
    }
}

void apply_defaults(json& inst, const json& schema_in, const json& root) {
    const json& schema = deref(schema_in, root);
    if (!inst.is_object() || !schema.contains("properties")) return;
    for (const auto& [key, sub] : schema.at("properties").items()) {
        if (!inst.contains(key)) {
            const json& target = deref(sub, root);
            if (sub.contains("default")) {
                inst[key] = sub.at("default");
            } else if (target.contains("default")) {
                inst[key] = target.at("default");
            }
        }
        if (inst.contains(key) && inst[key].is_object()) apply_defaults(inst[key], sub, root);
    }
}

GainSign parse_sign(const json& v) { return v.get<std::string>() == "loss" ? GainSign::Loss : GainSign::Gain; }

}  // namespace

std::vector<Violation> validate(const json& instance, const json& schema) {
    std::vector<Violation> out;
    check(instance, schema, "", schema, out);
    return out;
}

void locate(std::string_view text, const std::string& pointer, std::size_t& line,
            std::size_t& column) {
    std::size_t pos = text.find('{');
    if (pos == std::string_view::npos) pos = 0;
    std::size_t start = 1;
    while (start <= pointer.size() && !pointer.empty()) {
        const std::size_t slash = pointer.find('/', start);
        const std::string token =
            unescape_token(pointer.substr(start, slash == std::string::npos ? std::string::npos
                                                                              : slash - start));
        // Array indices and keys that cannot be found keep the enclosing position.
        const std::string quoted = "\"" + token + "\"";
        for (std::size_t at = text.find(quoted, pos); at != std::string_view::npos;
             at = text.find(quoted, at + 1)) {
            std::size_t after = at + quoted.size();
            while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) ++after;
            if (after < text.size() && text[after] == ':') {
                pos = at;
                break;
            }
        }
        if (slash == std::string::npos) break;
        start = slash + 1;
    }
    line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
    const std::size_t nl = text.rfind('\n', pos == 0 ? 0 : pos - 1);
    column = (nl == std::string_view::npos || pos == 0) ? pos + 1 : pos - nl;
}

CoupledChainParams Scenario::lattice() const {
    const json& l = resolved.at("lattice");
    CoupledChainParams p;
    p.n_system = l.at("n_system").get<std::size_t>();
    p.system_t_a = l.at("system_t_a").get<double>();
    p.system_t_b = l.at("system_t_b").get<double>();
    p.system_gamma = l.at("system_gamma").get<double>();
    p.system_first_sign = parse_sign(l.at("system_first_sign"));
    p.n_reservoir = l.at("n_reservoir").get<std::size_t>();
    p.reservoir_t_a = l.at("reservoir_t_a").get<double>();
    p.reservoir_t_b = l.at("reservoir_t_b").get<double>();
    p.gamma = l.at("gamma").get<double>();
    p.reservoir_first_sign = parse_sign(l.at("reservoir_first_sign"));
    p.t_prime = l.at("t_prime").get<double>();
    p.onsite = l.at("onsite").get<double>();
    p.reservoir_onsite = l.at("reservoir_onsite").get<double>();
    return p;
}

Scenario parse_scenario(std::string_view text, std::string source) {
    Scenario sc;
    sc.source = std::move(source);
    try {
        sc.raw = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t byte = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const std::size_t line =
            1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
        const std::size_t nl = byte == 0 ? std::string_view::npos : text.rfind('\n', byte - 1);
        const std::size_t col = nl == std::string_view::npos ? byte + 1 : byte - nl;
        std::string msg = e.what();
        if (const auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
        throw ScenarioError(sc.source, {{"", line, col, "malformed JSON: " + msg}});
    }

    std::vector<Violation> v = validate(sc.raw, scenario_schema());

    // Checks the schema cannot express.
    if (v.empty()) {
        const json& o = sc.raw.value("options", json::object());
        if (o.contains("mode") && o.at("mode").is_string() && o.at("mode") != "baseline") {
            v.push_back({"/options/mode", 0, 0, "mode must be \"baseline\" or a mode index"});
        }
        if (o.contains("gamma") && o.at("gamma").is_object()) {
            const json& g = o.at("gamma");
            if (g.value("start", 0.0) == g.value("stop", 0.0)) {
                v.push_back({"/options/gamma", 0, 0, "gamma grid start and stop coincide"});
            }
        }
        const json& l = sc.raw.value("lattice", json::object());
        if (l.value("n_reservoir", 10) < 6 && sc.raw.at("task") != "bands") {
            v.push_back({"/lattice/n_reservoir", 0, 0,
                         "reservoir needs at least 6 sites for the tail analysis"});
        }
    }
    if (!v.empty()) {
        for (Violation& x : v) locate(text, x.pointer, x.line, x.column);
        throw ScenarioError(sc.source, std::move(v));
    }

    json r = sc.raw;
    const json& schema = scenario_schema();
    apply_defaults(r, schema, schema);
    if (!r.contains("name")) {
        r["name"] = std::filesystem::path(sc.source).stem().string();
    }
    if (!r.contains("lattice")) r["lattice"] = json::object();
    if (!r.contains("options")) r["options"] = json::object();
    apply_defaults(r["lattice"], schema.at("/definitions/lattice"_json_pointer), schema);
    static const std::map<std::string, std::string> opts_def = {
        {"spectrum", "spectrum_options"},         {"sweep", "sweep_options"},
        {"mode-profile", "mode_profile_options"}, {"bands", "bands_options"},
        {"ensemble", "ensemble_options"},         {"perturbation", "perturbation_options"}};
    const std::string task = r.at("task").get<std::string>();
    apply_defaults(r["options"], schema.at("definitions").at(opts_def.at(task)), schema);
    if (r["options"].contains("classify") || task == "spectrum" || task == "sweep" ||
        task == "mode-profile") {
        if (!r["options"].contains("classify")) r["options"]["classify"] = json::object();
        apply_defaults(r["options"]["classify"], schema.at("/definitions/classify"_json_pointer),
                       schema);
    }
    json& lat = r["lattice"];
    if (!lat.contains("reservoir_onsite")) lat["reservoir_onsite"] = lat.at("onsite");
    if (task == "perturbation" && !r["options"].contains("gammas")) {
        r["options"]["gammas"] = json::array({lat.at("gamma")});
    }

    sc.resolved = std::move(r);
    sc.name = sc.resolved.at("name").get<std::string>();
    sc.task = task;
    sc.seed = sc.resolved.at("seed").get<std::uint64_t>();
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError(path.string(), {{"", 0, 0, "cannot read scenario file"}});
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path.string());
}

}  // namespace nhzm::cli
