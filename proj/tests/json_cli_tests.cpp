#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cac/channel.hpp"
#include "cac/constructions.hpp"
#include "cac/core.hpp"
#include "cac/json_io.hpp"
#include "cac/optimality.hpp"

using namespace cac;
namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* env = std::getenv("CAC_CLI");
    REQUIRE_MESSAGE(env != nullptr, "CAC_CLI must point at the cac binary");
    return env;
}

fs::path workdir() {
    fs::path dir = fs::temp_directory_path() / "cac_cli_tests";
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("code serialization round-trips byte for byte") {
    for (const Code& code : {construct_direct({37, 1, 7, 2}),
                             construct_2w1p_small(5, 4)}) {
        std::string first = canonical_dump(code_to_json(code));
        Code reparsed = code_from_json(ordered_json::parse(first));
        CHECK(canonical_dump(code_to_json(reparsed)) == first);
        CHECK(reparsed.length == code.length);
        CHECK(reparsed.size() == code.size());
        CHECK(verify_cac(reparsed).ok);
    }

    // mixed weights and partially equi-difference codewords
    Code base;
    base.length = 23;
    base.codewords = {Codeword::equi(23, 1, 7)};
    Code mixed = mixed_w1pr(23, 1, 4, base);
    std::string first = canonical_dump(code_to_json(mixed));
    Code reparsed = code_from_json(ordered_json::parse(first));
    CHECK(canonical_dump(code_to_json(reparsed)) == first);
    CHECK(reparsed.weight_multiset() == mixed.weight_multiset());
}

TEST_CASE("code deserialization rejects inconsistent files") {
    ordered_json j = code_to_json(construct_direct({7, 1, 4, 1}));
    ordered_json bad = j;
    bad["equi_generators"]["0"] = 5;  // does not regenerate the elements
    CHECK_THROWS_AS(code_from_json(bad), std::runtime_error);

    bad = j;
    bad["weights"] = {{"4", 2}};  // three weight-4 codewords exist
    CHECK_THROWS_AS(code_from_json(bad), std::runtime_error);

    bad = j;
    bad["codewords"][0] = {0, 1, 2, 50};  // element outside Z_21
    CHECK_THROWS_AS(code_from_json(bad), std::runtime_error);
}

TEST_CASE("certificate serialization round-trips byte for byte") {
    for (const Certificate& cert :
         {k_exact_oracle(21, 4), k_mixed_oracle(14, 2, 4, 1),
          certify({"main_2w-1p", 5, 1, 4}), certify({"main_w-1dpr", 37, 1, 7, 2})}) {
        std::string first = canonical_dump(certificate_to_json(cert));
        Certificate reparsed = certificate_from_json(ordered_json::parse(first));
        CHECK(canonical_dump(certificate_to_json(reparsed)) == first);
        CHECK(reparsed.claim == cert.claim);
        CHECK(reparsed.value == cert.value);
        CHECK(reparsed.justification.kind == cert.justification.kind);
        REQUIRE(reparsed.witness.has_value());
        CHECK(verify_cac(*reparsed.witness).ok);
    }
}

TEST_CASE("guarantee reports serialize with stable fields") {
    Code code = construct_direct({7, 1, 4, 1});
    GuaranteeReport report = verify_guarantee(code, 3);
    ordered_json j = report_to_json(report, "codes/example.json");
    CHECK(j["code_ref"] == "codes/example.json");
    CHECK(j["mode"] == "exhaustive");
    CHECK(j["ok"] == true);
    CHECK(j.contains("seed") == false);  // seed only meaningful when sampling
    CHECK(j["per_weight"].contains("4"));
    CHECK(canonical_dump(j) == canonical_dump(ordered_json::parse(canonical_dump(j))));

    ChannelOptions opts;
    opts.exhaustive = false;
    opts.samples = 100;
    opts.seed = 9;
    ordered_json sampled = report_to_json(verify_guarantee(code, 3, opts), "x");
    CHECK(sampled["mode"] == "sampled");
    CHECK(sampled["seed"] == 9);
}

TEST_CASE("cli: construct writes the canonical code file") {
    fs::path dir = workdir();
    fs::path out = dir / "direct.json";
    REQUIRE(run_cli("construct direct --p 37 --w 7 --d 2 --out " + out.string()) == 0);
    CHECK(slurp(out) == canonical_dump(code_to_json(construct_direct({37, 1, 7, 2}))));

    // broken hypotheses surface as the precondition exit code
    CHECK(run_cli("construct direct --p 13 --w 4 --out " + (dir / "no.json").string()) == 2);
    CHECK(run_cli("construct bogus --p 5 --w 3") != 0);
}

TEST_CASE("cli: verify distinguishes valid and conflicting codes") {
    fs::path dir = workdir();
    fs::path good = dir / "good.json";
    REQUIRE(run_cli("construct 2w1p-small --p 5 --w 4 --out " + good.string()) == 0);
    CHECK(run_cli("verify " + good.string()) == 0);

    Code bad;
    bad.length = 12;
    bad.codewords = {Codeword::from_elements(12, {0, 1, 2}),
                     Codeword::from_elements(12, {0, 3, 4})};
    fs::path badf = dir / "bad.json";
    write_json_file(badf.string(), code_to_json(bad));
    CHECK(run_cli("verify " + badf.string()) == 1);

    CHECK(run_cli("verify " + (dir / "missing.json").string()) == 1);
}

TEST_CASE("cli: certify emits theorem certificates") {
    fs::path dir = workdir();
    fs::path out = dir / "cert.json";
    REQUIRE(run_cli("certify --theorem main_pr --p 37 --w 4 --out " + out.string()) == 0);
    ordered_json j = load_json_file(out.string());
    CHECK(j["claim"] == "K_exact");
    CHECK(j["value"] == 6);
    CHECK(j["justification"]["kind"] == "theorem");
    CHECK(j["justification"]["tag"] == "main_pr");

    CHECK(run_cli("certify --theorem main_pr --p 11 --w 4") == 2);
    CHECK(run_cli("certify --theorem main_nope --p 11 --w 4") == 2);
}

TEST_CASE("cli: search-k reports exact values and budget exhaustion") {
    fs::path dir = workdir();
    fs::path out = dir / "k.json";
    REQUIRE(run_cli("search-k --L 21 --w 4 --out " + out.string()) == 0);
    ordered_json j = load_json_file(out.string());
    CHECK(j["claim"] == "K_exact");
    CHECK(j["value"] == 3);
    CHECK(j["justification"]["complete"] == true);

    fs::path low = dir / "low.json";
    CHECK(run_cli("search-k --L 111 --w 2 --w-star 4 --n 6 --budget 1000000 --out " +
                  low.string()) == 3);
    ordered_json demoted = load_json_file(low.string());
    CHECK(demoted["claim"] == "K_lower");
    CHECK(demoted["justification"]["complete"] == false);

    CHECK(run_cli("search-k --L 21 --w 4 --n 1") != 0);  // --n needs --w-star
}

TEST_CASE("cli: conditions reports both hypothesis families") {
    fs::path dir = workdir();
    fs::path out = dir / "cond.json";
    REQUIRE(run_cli("conditions --p 13 --w 4 --out " + out.string()) == 0);
    ordered_json j = load_json_file(out.string());
    CHECK(j["sdr"]["ok"] == false);
    CHECK(j["wp"]["ok"] == false);

    REQUIRE(run_cli("conditions --p 11 --w 4 --out " + out.string()) == 0);
    j = load_json_file(out.string());
    CHECK(j["sdr"]["ok"] == false);
    CHECK(j["wp"]["ok"] == true);

    REQUIRE(run_cli("conditions --p 37 --w 7 --d 2 --out " + out.string()) == 0);
    j = load_json_file(out.string());
    CHECK(j["sdr"]["ok"] == true);
}

TEST_CASE("cli: simulate maps guarantee breaches to the exit code") {
    fs::path dir = workdir();
    fs::path good = dir / "sim_good.json";
    REQUIRE(run_cli("construct direct --p 7 --w 4 --out " + good.string()) == 0);
    fs::path rep = dir / "sim_report.json";
    REQUIRE(run_cli("simulate --code " + good.string() +
                    " --exhaustive --max-active 3 --out " + rep.string()) == 0);
    ordered_json j = load_json_file(rep.string());
    CHECK(j["ok"] == true);
    CHECK(j["mode"] == "exhaustive");
    CHECK(j["violations"].empty());

    Code bad;
    bad.length = 21;
    bad.codewords = {Codeword::from_elements(21, {0, 1, 2, 3}),
                     Codeword::from_elements(21, {0, 1, 5, 11})};
    fs::path badf = dir / "sim_bad.json";
    write_json_file(badf.string(), code_to_json(bad));
    CHECK(run_cli("simulate --code " + badf.string() +
                  " --exhaustive --max-active 2 --out " + rep.string()) == 1);
    j = load_json_file(rep.string());
    CHECK(j["ok"] == false);
    CHECK_FALSE(j["violations"].empty());

    CHECK(run_cli("simulate --code " + good.string() + " --priority") == 2);
}

TEST_CASE("cli: catalog entries are complete and reproducible") {
    fs::path dir = workdir() / "catalog";
    fs::remove_all(dir);
    REQUIRE(run_cli("catalog --out " + dir.string()) == 0);

    std::string csv = slurp(dir / "summary.csv");
    int lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == 14);  // header plus thirteen entries
    CHECK(csv.rfind("name,length,weights,size,claim,justification", 0) == 0);

    int entries = 0;
    for (const auto& file : fs::directory_iterator(dir)) {
        if (file.path().extension() != ".json") continue;
        ++entries;
        ordered_json entry = load_json_file(file.path().string());
        CHECK(entry["toolchain"]["name"] == "cac");
        CHECK(entry.contains("command"));
        CHECK(entry.contains("timestamp"));
        Code code = code_from_json(entry["code"]);
        CHECK(verify_cac(code).ok);
        if (entry.contains("certificate")) {
            CHECK(entry["certificate"]["value"].get<int64_t>() ==
                  static_cast<int64_t>(code.size()));
        }
    }
    CHECK(entries == 13);

    // rerunning a recorded command reproduces the stored certificate
    ordered_json entry = load_json_file((dir / "prime-37-4.json").string());
    std::string cmd;
    for (const auto& arg : entry["command"]) cmd += std::string(arg) + " ";
    fs::path redo = workdir() / "redo.json";
    REQUIRE(run_cli(cmd + "--out " + redo.string()) == 0);
    CHECK(slurp(redo) == canonical_dump(entry["certificate"]));
}
