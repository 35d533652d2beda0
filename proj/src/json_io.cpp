#include "cac/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cac {

namespace {

void fail(const std::string& what) { throw std::runtime_error("json: " + what); }

int64_t as_int(const ordered_json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number_integer()) fail(std::string(field) + " must be an integer");
    return j[field].get<int64_t>();
}

std::vector<int64_t> as_int_vector(const ordered_json& j) {
    std::vector<int64_t> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number_integer()) fail("expected an integer array");
        out.push_back(v.get<int64_t>());
    }
    return out;
}

ordered_json params_to_json(const std::vector<std::pair<std::string, int64_t>>& params) {
    ordered_json arr = ordered_json::array();
    for (const auto& [name, value] : params) arr.push_back(ordered_json::array({name, value}));
    return arr;
}

std::vector<std::pair<std::string, int64_t>> params_from_json(const ordered_json& j) {
    std::vector<std::pair<std::string, int64_t>> out;
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() || !entry[1].is_number_integer())
            fail("params entries must be [name, integer] pairs");
        out.emplace_back(entry[0].get<std::string>(), entry[1].get<int64_t>());
    }
    return out;
}

}  // namespace

std::string canonical_dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json code_to_json(const Code& code) {
    Code canon = code;
    canon.sort_canonical();

    ordered_json j;
    j["length"] = canon.length;
    ordered_json words = ordered_json::array();
    for (const auto& cw : canon.codewords) words.push_back(cw.elements);
    j["codewords"] = std::move(words);

    ordered_json weights = ordered_json::object();
    for (const auto& [w, count] : canon.weight_multiset()) weights[std::to_string(w)] = count;
    j["weights"] = std::move(weights);

    ordered_json gens = ordered_json::object();
    for (size_t i = 0; i < canon.codewords.size(); ++i)
        if (canon.codewords[i].generator) gens[std::to_string(i)] = *canon.codewords[i].generator;
    if (!gens.empty()) j["equi_generators"] = std::move(gens);

    ordered_json prov;
    prov["kind"] = canon.provenance.kind;
    prov["name"] = canon.provenance.name;
    prov["params"] = params_to_json(canon.provenance.params);
    if (!canon.provenance.generator_pairs.empty()) {
        ordered_json pairs = ordered_json::array();
        for (const auto& [a, b] : canon.provenance.generator_pairs)
            pairs.push_back(ordered_json::array({a, b}));
        prov["generator_pairs"] = std::move(pairs);
    }
    j["provenance"] = std::move(prov);
    return j;
}

Code code_from_json(const ordered_json& j) {
    if (!j.is_object()) fail("code document must be an object");
    Code code;
    code.length = as_int(j, "length");
    if (code.length < 1) fail("length must be positive");
    if (!j.contains("codewords") || !j["codewords"].is_array()) fail("codewords must be an array");
    for (const auto& elems : j["codewords"]) {
        if (!elems.is_array()) fail("each codeword must be an array");
        code.codewords.push_back(Codeword::from_elements(code.length, as_int_vector(elems)));
    }

    if (j.contains("equi_generators")) {
        for (const auto& [key, value] : j["equi_generators"].items()) {
            size_t idx = 0;
            try {
                idx = static_cast<size_t>(std::stoll(key));
            } catch (const std::exception&) {
                fail("equi_generators keys must be codeword positions");
            }
            if (idx >= code.codewords.size()) fail("equi_generators index out of range");
            if (!value.is_number_integer()) fail("equi_generators values must be integers");
            const int64_t g = value.get<int64_t>();
            Codeword expected = Codeword::equi(code.length, g, code.codewords[idx].weight());
            if (expected.elements != code.codewords[idx].elements)
                fail("equi_generators entry does not regenerate codeword " + key);
            code.codewords[idx].generator = g;
        }
    }

    if (j.contains("weights")) {
        auto actual = code.weight_multiset();
        if (j["weights"].size() != actual.size()) fail("weights table does not match codewords");
        for (const auto& [key, value] : j["weights"].items()) {
            int64_t w = 0;
            try {
                w = std::stoll(key);
            } catch (const std::exception&) {
                fail("weights keys must be integers");
            }
            auto it = actual.find(w);
            if (it == actual.end() || !value.is_number_integer() || it->second != value.get<int64_t>())
                fail("weights table does not match codewords");
        }
    }

    if (j.contains("provenance")) {
        const auto& prov = j["provenance"];
        if (prov.contains("kind")) code.provenance.kind = prov["kind"].get<std::string>();
        if (prov.contains("name")) code.provenance.name = prov["name"].get<std::string>();
        if (prov.contains("params")) code.provenance.params = params_from_json(prov["params"]);
        if (prov.contains("generator_pairs"))
            for (const auto& entry : prov["generator_pairs"]) {
                if (!entry.is_array() || entry.size() != 2) fail("generator_pairs entries must be pairs");
                code.provenance.generator_pairs.emplace_back(entry[0].get<int64_t>(), entry[1].get<int64_t>());
            }
    }
    return code;
}

ordered_json certificate_to_json(const Certificate& cert) {
    ordered_json j;
    j["claim"] = cert.claim;
    j["L"] = cert.length;
    ordered_json weights;
    weights["w"] = cert.w;
    if (cert.w_star) weights["w_star"] = *cert.w_star;
    if (cert.n_star) weights["n_star"] = *cert.n_star;
    j["weights"] = std::move(weights);
    j["value"] = cert.value;

    ordered_json just;
    just["kind"] = cert.justification.kind;
    if (!cert.justification.tag.empty()) just["tag"] = cert.justification.tag;
    just["params"] = params_to_json(cert.justification.params);
    if (cert.justification.kind == "oracle") {
        just["budget"] = cert.justification.budget;
        just["nodes"] = cert.justification.nodes;
        just["complete"] = cert.justification.complete;
    }
    j["justification"] = std::move(just);

    if (cert.witness) j["witness"] = code_to_json(*cert.witness);
    j["checked_preconditions"] = cert.checked_preconditions;
    return j;
}

Certificate certificate_from_json(const ordered_json& j) {
    if (!j.is_object()) fail("certificate document must be an object");
    Certificate cert;
    cert.claim = j.at("claim").get<std::string>();
    cert.length = as_int(j, "L");
    cert.value = as_int(j, "value");
    const auto& weights = j.at("weights");
    cert.w = as_int(weights, "w");
    if (weights.contains("w_star")) cert.w_star = weights["w_star"].get<int64_t>();
    if (weights.contains("n_star")) cert.n_star = weights["n_star"].get<int64_t>();

    const auto& just = j.at("justification");
    cert.justification.kind = just.at("kind").get<std::string>();
    if (just.contains("tag")) cert.justification.tag = just["tag"].get<std::string>();
    if (just.contains("params")) cert.justification.params = params_from_json(just["params"]);
    if (just.contains("budget")) cert.justification.budget = just["budget"].get<int64_t>();
    if (just.contains("nodes")) cert.justification.nodes = just["nodes"].get<int64_t>();
    if (just.contains("complete")) cert.justification.complete = just["complete"].get<bool>();

    if (j.contains("witness")) cert.witness = code_from_json(j["witness"]);
    if (j.contains("checked_preconditions"))
        for (const auto& line : j["checked_preconditions"]) cert.checked_preconditions.push_back(line.get<std::string>());
    return cert;
}

ordered_json report_to_json(const GuaranteeReport& report, const std::string& code_ref) {
    ordered_json j;
    j["code_ref"] = code_ref;
    j["mode"] = report.mode;
    j["max_active"] = report.max_active;
    j["base_weight"] = report.base_weight;
    if (report.mode == "sampled") j["seed"] = report.seed;
    j["configurations_checked"] = report.configurations_checked;
    j["ok"] = report.ok;

    ordered_json violations = ordered_json::array();
    for (const auto& v : report.violations) {
        ordered_json entry;
        entry["active"] = v.active;
        entry["offsets"] = v.offsets;
        entry["user"] = v.user;
        entry["successes"] = v.successes;
        entry["required"] = v.required;
        violations.push_back(std::move(entry));
    }
    j["violations"] = std::move(violations);

    ordered_json per_weight = ordered_json::object();
    for (const auto& cls : report.per_weight) {
        ordered_json entry;
        entry["users"] = cls.users;
        entry["min_adjacent_gap"] = cls.min_adjacent_gap;
        entry["required_successes"] = cls.required_successes;
        entry["min_successes"] = cls.min_successes_observed;
        entry["worst_delay_observed"] = cls.worst_delay_observed;
        entry["worst_delay_bound"] = cls.worst_delay_bound;
        per_weight[std::to_string(cls.weight)] = std::move(entry);
    }
    j["per_weight"] = std::move(per_weight);
    return j;
}

ordered_json sdr_report_to_json(const SdrConditionReport& report) {
    ordered_json j;
    j["p"] = report.p;
    j["w"] = report.w;
    j["d"] = report.d;
    j["ok"] = report.ok;
    ordered_json sets = ordered_json::array();
    for (const auto& s : report.sets) {
        ordered_json entry;
        entry["index"] = s.index;
        entry["values"] = s.values;
        entry["labels"] = s.labels;
        entry["sdr"] = s.sdr;
        sets.push_back(std::move(entry));
    }
    j["sets"] = std::move(sets);
    return j;
}

ordered_json wp_report_to_json(const WpConditionReport& report) {
    ordered_json j;
    j["p"] = report.p;
    j["w"] = report.w;
    j["ok"] = report.ok;
    ordered_json factors = ordered_json::array();
    for (const auto& f : report.factors) {
        ordered_json entry;
        entry["i"] = f.i;
        entry["lhs"] = f.lhs;
        entry["rhs"] = f.rhs;
        factors.push_back(std::move(entry));
    }
    j["factors"] = std::move(factors);
    return j;
}

ordered_json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return ordered_json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("cannot parse " + path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const ordered_json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << canonical_dump(j);
    if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace cac
