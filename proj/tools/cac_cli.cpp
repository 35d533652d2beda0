#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cac/channel.hpp"
#include "cac/constructions.hpp"
#include "cac/core.hpp"
#include "cac/errors.hpp"
#include "cac/json_io.hpp"
#include "cac/optimality.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

void emit(const cac::ordered_json& j, const std::string& out) {
    if (out.empty() || out == "-")
        std::cout << cac::canonical_dump(j);
    else
        cac::write_json_file(out, j);
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// ---- construct ----------------------------------------------------------

struct ConstructParams {
    std::string name;
    int64_t p = 0;
    int r = 1;
    int64_t w = 0;
    int64_t d = 1;
    int64_t w_star = 0;  // fiber weight for the mixed rebuilds
    int64_t m = -1;      // generator-set size; -1 = maximize
    std::string base;    // code file for mixed-w1pr
};

cac::BaseCode searched_base(int64_t p, int64_t w, int64_t m) {
    if (m >= 0) return cac::search_base(p, w, m);
    return cac::search_base(p, w);
}

cac::Code run_construct(const ConstructParams& cp) {
    if (cp.name == "direct") return cac::construct_direct({cp.p, cp.r, cp.w, cp.d});
    if (cp.name == "pr") return cac::extend_to_pr(searched_base(cp.p, cp.w, cp.m), cp.r);
    if (cp.name == "wpr") return cac::construct_wpr(searched_base(cp.p, cp.w, cp.m), cp.r);
    if (cp.name == "2w1pr") return cac::construct_2w1pr(searched_base(cp.p, cp.w, cp.m), cp.r);
    if (cp.name == "2w1p-small") return cac::construct_2w1p_small(cp.p, cp.w);
    if (cp.name == "mixed-w1pr") {
        if (cp.base.empty()) throw cac::precondition_error("construct mixed-w1pr: --base required");
        cac::Code base = cac::code_from_json(cac::load_json_file(cp.base));
        return cac::mixed_w1pr(cp.p, cp.r, cp.w, base);
    }
    if (cp.name == "mixed-wpr" || cp.name == "mixed-2w1pr") {
        if (cp.w_star <= cp.w)
            throw cac::precondition_error("construct " + cp.name + ": --w-star must exceed --w");
        int64_t m = cp.m;
        if (m < 0 && (cp.p - 1) % (2 * cp.w_star - 2) == 0) m = (cp.p - 1) / (2 * cp.w_star - 2);
        cac::BaseCode base = searched_base(cp.p, cp.w_star, m);
        return cp.name == "mixed-wpr" ? cac::mixed_wpr(base, cp.r, cp.w)
                                      : cac::mixed_2w1pr(base, cp.r, cp.w);
    }
    throw cac::precondition_error("construct: unknown construction '" + cp.name + "'");
}

// ---- catalog -------------------------------------------------------------

struct CatalogItem {
    std::string name;
    std::string kind;  // "certify" | "search-k" | "construct"
    cac::CertifyRequest req;
    int64_t L = 0, w = 0, w_star = 0, n = -1, budget = 1'000'000'000;
    bool equi = false;
    ConstructParams cp;
};

std::vector<std::string> item_command(const CatalogItem& item) {
    std::vector<std::string> cmd;
    auto push = [&](const std::string& s) { cmd.push_back(s); };
    if (item.kind == "certify") {
        push("certify");
        push("--theorem"), push(item.req.theorem);
        push("--p"), push(std::to_string(item.req.p));
        if (item.req.r != 1) push("--r"), push(std::to_string(item.req.r));
        push("--w"), push(std::to_string(item.req.w));
        if (item.req.d != 1) push("--d"), push(std::to_string(item.req.d));
        if (item.req.w_star != 0) push("--w-star"), push(std::to_string(item.req.w_star));
        if (item.req.n != 0) push("--n"), push(std::to_string(item.req.n));
    } else if (item.kind == "search-k") {
        push("search-k");
        push("--L"), push(std::to_string(item.L));
        push("--w"), push(std::to_string(item.w));
        if (item.equi) push("--equi");
        if (item.w_star != 0) {
            push("--w-star"), push(std::to_string(item.w_star));
            push("--n"), push(std::to_string(item.n));
        }
        if (item.budget != 1'000'000'000) push("--budget"), push(std::to_string(item.budget));
    } else {
        push("construct");
        push(item.cp.name);
        push("--p"), push(std::to_string(item.cp.p));
        if (item.cp.r != 1) push("--r"), push(std::to_string(item.cp.r));
        push("--w"), push(std::to_string(item.cp.w));
        if (item.cp.d != 1) push("--d"), push(std::to_string(item.cp.d));
        if (item.cp.w_star != 0) push("--w-star"), push(std::to_string(item.cp.w_star));
        if (item.cp.m >= 0) push("--m"), push(std::to_string(item.cp.m));
        if (!item.cp.base.empty()) push("--base"), push(item.cp.base);
    }
    return cmd;
}

std::vector<CatalogItem> builtin_catalog() {
    std::vector<CatalogItem> items;
    auto add_certify = [&](std::string name, std::string theorem, int64_t p, int r, int64_t w,
                           int64_t d = 1, int64_t w_star = 0, int64_t n = 0) {
        CatalogItem it;
        it.name = std::move(name);
        it.kind = "certify";
        it.req = {std::move(theorem), p, r, w, d, w_star, n};
        items.push_back(std::move(it));
    };
    auto add_search = [&](std::string name, int64_t L, int64_t w, bool equi = false,
                          int64_t w_star = 0, int64_t n = -1) {
        CatalogItem it;
        it.name = std::move(name);
        it.kind = "search-k";
        it.L = L, it.w = w, it.equi = equi, it.w_star = w_star, it.n = n;
        items.push_back(std::move(it));
    };
    add_certify("direct-111-7", "main_w-1dpr", 37, 1, 7, 2);
    add_certify("direct-4107-7", "main_w-1dpr", 37, 2, 7, 2);
    add_certify("prime-37-4", "main_pr", 37, 1, 4);
    add_certify("prime-power-75-3", "main_wpr", 5, 2, 3);
    add_certify("five-65-3", "main_2w-1pr", 13, 1, 3);
    add_certify("small-35-4", "main_2w-1p", 5, 1, 4);
    add_certify("mixed-69-4", "mixed_w-1pr", 23, 1, 4, 1, 4, 1);
    add_certify("mixed-14-2", "mixed_wpr", 7, 1, 2, 1, 4);
    add_certify("mixed-21-2", "mixed_2w-1pr", 7, 1, 2, 1, 4);
    add_search("oracle-21-4", 21, 4);
    add_search("oracle-9-2", 9, 2);
    add_search("oracle-equi-37-4", 37, 4, true);
    add_search("oracle-mixed-35-3", 35, 3, false, 4, 1);
    return items;
}

std::vector<CatalogItem> manifest_catalog(const std::string& path) {
    const cac::ordered_json doc = cac::load_json_file(path);
    if (!doc.is_array()) throw std::runtime_error("manifest must be a JSON array");
    std::vector<CatalogItem> items;
    for (const auto& e : doc) {
        CatalogItem it;
        it.name = e.at("name").get<std::string>();
        it.kind = e.at("kind").get<std::string>();
        auto get = [&](const char* k, int64_t dflt) -> int64_t {
            return e.contains(k) ? e[k].get<int64_t>() : dflt;
        };
        if (it.kind == "certify") {
            it.req.theorem = e.at("theorem").get<std::string>();
            it.req.p = get("p", 0);
            it.req.r = static_cast<int>(get("r", 1));
            it.req.w = get("w", 0);
            it.req.d = get("d", 1);
            it.req.w_star = get("w_star", 0);
            it.req.n = get("n", 0);
        } else if (it.kind == "search-k") {
            it.L = get("L", 0);
            it.w = get("w", 0);
            it.equi = e.contains("equi") && e["equi"].get<bool>();
            it.w_star = get("w_star", 0);
            it.n = get("n", -1);
            it.budget = get("budget", 1'000'000'000);
        } else if (it.kind == "construct") {
            it.cp.name = e.at("construction").get<std::string>();
            it.cp.p = get("p", 0);
            it.cp.r = static_cast<int>(get("r", 1));
            it.cp.w = get("w", 0);
            it.cp.d = get("d", 1);
            it.cp.w_star = get("w_star", 0);
            it.cp.m = get("m", -1);
            if (e.contains("base")) it.cp.base = e["base"].get<std::string>();
        } else {
            throw std::runtime_error("manifest: unknown kind '" + it.kind + "'");
        }
        items.push_back(std::move(it));
    }
    return items;
}

std::string weights_label(const cac::Code& code) {
    std::string label;
    for (const auto& [w, count] : code.weight_multiset()) {
        if (!label.empty()) label += ' ';
        label += std::to_string(w) + "^" + std::to_string(count);
    }
    return label;
}

int run_catalog(const std::string& out_dir, const std::string& manifest) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const auto items = manifest.empty() ? builtin_catalog() : manifest_catalog(manifest);
    const std::string stamp = utc_timestamp();

    std::ofstream csv(fs::path(out_dir) / "summary.csv");
    if (!csv) throw std::runtime_error("cannot open " + out_dir + "/summary.csv");
    csv << "name,length,weights,size,claim,justification\n";

    for (const auto& item : items) {
        cac::ordered_json entry;
        entry["name"] = item.name;
        entry["command"] = item_command(item);
        entry["toolchain"] = {{"name", "cac"}, {"version", kVersion}};
        entry["timestamp"] = stamp;

        cac::ordered_json params = cac::ordered_json::object();
        for (size_t i = 1; i + 1 < entry["command"].size(); ++i) {
            std::string key = entry["command"][i].get<std::string>();
            if (key.rfind("--", 0) != 0) continue;
            const auto& next = entry["command"][i + 1].get_ref<const std::string&>();
            if (next.rfind("--", 0) == 0) {
                params[key.substr(2)] = true;
            } else {
                params[key.substr(2)] = next;
                ++i;
            }
        }
        if (item.kind == "search-k" && item.equi) params["equi"] = true;
        if (item.kind == "construct") params["construction"] = item.cp.name;
        entry["parameters"] = std::move(params);

        std::string claim, justification;
        cac::Code code;
        if (item.kind == "construct") {
            code = run_construct(item.cp);
            claim = "constructed";
            justification = "construction:" + code.provenance.name;
        } else {
            cac::Certificate cert;
            if (item.kind == "certify") {
                cert = cac::certify(item.req);
            } else {
                cac::OracleOptions opts{item.budget};
                cert = item.w_star != 0 ? cac::k_mixed_oracle(item.L, item.w, item.w_star, item.n, opts)
                       : item.equi      ? cac::k_equi_oracle(item.L, item.w, opts)
                                        : cac::k_exact_oracle(item.L, item.w, opts);
            }
            code = *cert.witness;
            claim = cert.claim;
            justification = cert.justification.kind;
            if (!cert.justification.tag.empty()) justification += ":" + cert.justification.tag;
            entry["certificate"] = cac::certificate_to_json(cert);
        }
        entry["code"] = cac::code_to_json(code);

        cac::write_json_file((fs::path(out_dir) / (item.name + ".json")).string(), entry);
        csv << item.name << ',' << code.length << ',' << weights_label(code) << ','
            << code.size() << ',' << claim << ',' << justification << '\n';
    }
    csv.close();
    std::cerr << "catalog: wrote " << items.size() << " entries to " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conflict-avoiding code toolkit"};
    app.set_version_flag("--version", std::string("cac ") + kVersion);
    app.set_config("--config");
    app.require_subcommand(1);
    int rc = 0;

    // construct
    ConstructParams cp;
    std::string out;
    auto* construct = app.add_subcommand("construct", "build a code and write it as JSON");
    construct->add_option("name", cp.name, "construction name")
        ->required()
        ->check(CLI::IsMember({"direct", "pr", "wpr", "2w1pr", "2w1p-small", "mixed-w1pr",
                               "mixed-wpr", "mixed-2w1pr"}));
    construct->add_option("--p", cp.p, "prime")->required();
    construct->add_option("--r", cp.r, "prime-power exponent")->capture_default_str();
    construct->add_option("--w", cp.w, "codeword weight")->required();
    construct->add_option("--d", cp.d, "difference-class divisor")->capture_default_str();
    construct->add_option("--w-star", cp.w_star, "heavier fiber weight (mixed rebuilds)");
    construct->add_option("--m", cp.m, "generator-set size (omit to maximize)");
    construct->add_option("--base", cp.base, "base code JSON (mixed-w1pr)");
    construct->add_option("--out", out, "output path (default stdout)");
    construct->callback([&] {
        cac::Code code = run_construct(cp);
        emit(cac::code_to_json(code), out);
    });

    // verify
    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "check the pairwise difference-disjointness of a code file");
    verify->add_option("file", verify_path, "code JSON")->required();
    verify->add_option("--out", out, "verdict path (default stdout)");
    verify->callback([&] {
        cac::Code code = cac::code_from_json(cac::load_json_file(verify_path));
        cac::Verdict verdict = cac::verify_cac(code);
        cac::ordered_json j;
        j["ok"] = verdict.ok;
        if (verdict.conflict) {
            j["conflict"] = {{"i", static_cast<int64_t>(verdict.conflict->i)},
                             {"j", static_cast<int64_t>(verdict.conflict->j)},
                             {"difference", verdict.conflict->difference}};
        }
        emit(j, out);
        if (!verdict.ok) rc = 1;
    });

    // certify
    cac::CertifyRequest req;
    auto* certify = app.add_subcommand("certify", "check a theorem's hypotheses and emit its certificate");
    certify->add_option("--theorem", req.theorem, "theorem tag")->required();
    certify->add_option("--p", req.p, "prime")->required();
    certify->add_option("--r", req.r, "prime-power exponent")->capture_default_str();
    certify->add_option("--w", req.w, "codeword weight")->required();
    certify->add_option("--d", req.d, "difference-class divisor")->capture_default_str();
    certify->add_option("--w-star", req.w_star, "second weight (mixed theorems)");
    certify->add_option("--n", req.n, "equi-difference base codewords kept (mixed_w-1pr)");
    certify->add_option("--out", out, "certificate path (default stdout)");
    certify->callback([&] { emit(cac::certificate_to_json(cac::certify(req)), out); });

    // search-k
    int64_t sk_L = 0, sk_w = 0, sk_ws = 0, sk_n = -1;
    bool sk_equi = false;
    cac::OracleOptions sk_opts;
    auto* search = app.add_subcommand("search-k", "exhaustive packing search for K(L, w)");
    search->add_option("--L", sk_L, "modulus")->required();
    search->add_option("--w", sk_w, "codeword weight")->required();
    auto* ws_opt = search->add_option("--w-star", sk_ws, "second weight (mixed)");
    auto* n_opt = search->add_option("--n", sk_n, "required number of weight-w* codewords");
    ws_opt->needs(n_opt), n_opt->needs(ws_opt);
    search->add_flag("--equi", sk_equi, "restrict to equi-difference codewords");
    search->add_option("--budget", sk_opts.node_budget, "search node budget")->capture_default_str();
    search->add_option("--out", out, "certificate path (default stdout)");
    search->callback([&] {
        cac::Certificate cert = sk_ws != 0 ? cac::k_mixed_oracle(sk_L, sk_w, sk_ws, sk_n, sk_opts)
                                : sk_equi  ? cac::k_equi_oracle(sk_L, sk_w, sk_opts)
                                           : cac::k_exact_oracle(sk_L, sk_w, sk_opts);
        emit(cac::certificate_to_json(cert), out);
        if (cert.claim == "K_lower") {
            std::cerr << "search-k: budget exhausted; value " << cert.value
                      << " is a lower bound only\n";
            rc = 3;
        }
    });

    // conditions
    int64_t cd_p = 0, cd_w = 0, cd_d = 1;
    auto* conditions = app.add_subcommand("conditions", "evaluate the residue-class hypotheses for (p, w, d)");
    conditions->add_option("--p", cd_p, "prime")->required();
    conditions->add_option("--w", cd_w, "codeword weight")->required();
    conditions->add_option("--d", cd_d, "difference-class divisor")->capture_default_str();
    conditions->add_option("--out", out, "report path (default stdout)");
    conditions->callback([&] {
        cac::ordered_json j;
        j["sdr"] = cac::sdr_report_to_json(cac::check_sdr_conditions(cd_p, cd_w, cd_d));
        try {
            j["wp"] = cac::wp_report_to_json(cac::check_wp_condition(cd_p, cd_w));
        } catch (const cac::precondition_error&) {
            // (p, w) outside that predicate's domain; the SDR half stands alone.
        }
        emit(j, out);
    });

    // simulate
    std::string sim_code;
    int64_t sim_active = 0, sim_base = 0;
    bool sim_exhaustive = false, sim_priority = false;
    cac::ChannelOptions sim_opts;
    sim_opts.exhaustive = false;
    auto* simulate = app.add_subcommand("simulate", "sweep channel configurations and report guarantees");
    simulate->add_option("--code", sim_code, "code JSON")->required();
    simulate->add_option("--max-active", sim_active, "largest active-user count (default: max weight)");
    simulate->add_flag("--exhaustive", sim_exhaustive, "walk every active set and offset tuple");
    simulate->add_option("--samples", sim_opts.samples, "sampled configurations")->capture_default_str();
    simulate->add_option("--seed", sim_opts.seed, "sampling seed")->capture_default_str();
    simulate->add_flag("--priority", sim_priority, "score weight classes against the priority guarantee");
    simulate->add_option("--base-weight", sim_base, "base weight for --priority");
    simulate->add_option("--out", out, "report path (default stdout)");
    simulate->callback([&] {
        cac::Code code = cac::code_from_json(cac::load_json_file(sim_code));
        sim_opts.exhaustive = sim_exhaustive;
        cac::GuaranteeReport report;
        if (sim_priority) {
            if (sim_base <= 0) throw cac::precondition_error("simulate: --priority needs --base-weight");
            report = cac::priority_report(code, sim_base, sim_opts);
        } else {
            int64_t limit = sim_active;
            if (limit <= 0)
                for (const auto& cw : code.codewords) limit = std::max(limit, cw.weight());
            report = cac::verify_guarantee(code, limit, sim_opts);
        }
        emit(cac::report_to_json(report, sim_code), out);
        if (!report.ok) rc = 1;
    });

    // catalog
    std::string cat_out, cat_manifest;
    auto* catalog = app.add_subcommand("catalog", "build a reproducible catalog of codes and certificates");
    catalog->add_option("--out", cat_out, "output directory")->required();
    catalog->add_option("--manifest", cat_manifest, "entry list JSON (default: built-in list)");
    catalog->callback([&] { rc = run_catalog(cat_out, cat_manifest); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const cac::precondition_error& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 2;
    } catch (const cac::budget_error& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
