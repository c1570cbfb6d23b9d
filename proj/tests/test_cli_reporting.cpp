#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "qsm/disk_store.hpp"
#include "qsm/moments.hpp"
#include "qsm/report.hpp"
#include "qsm/serialize.hpp"
#include "reproduce.hpp"
#include "test_support.hpp"

using namespace qsm;
using namespace qsm::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("qsm_test_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary | std::ios::trunc) << text; }

struct Run {
    int code;
    std::string out;
};

// Runs the CLI with stderr discarded.
Run cli(const std::string& args) {
    const std::string cmd = std::string(QSM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    const int status = ::pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("exact values serialize as strings and round-trip") {
    CHECK(to_json(Q("-179/60")) == Json("-179/60"));
    CHECK(to_json(Q("4")) == Json("4"));
    CHECK(rational_from_json(Json("3/6")) == Q("1/2"));
    CHECK_THROWS(rational_from_json(Json(3)));

    const UniPoly p = poly({{"1/3", 6}, {"1/6", 5}, {"1/2", 4}});
    CHECK(poly_from_json(to_json(p)) == p);
    CHECK(to_json(p).size() == 7);

    MomentEngine engine;
    const auto seq = engine.moment_sequence(VariantId(Family::SwapV5), 2, MomentKind::central, 12);
    const auto back = moment_sequence_from_json(Json::parse(to_json(seq).dump()));
    CHECK(back.values == seq.values);
    CHECK(back.variant == seq.variant);
    CHECK(back.kind == MomentKind::central);
}

TEST_CASE("closed forms and operators round-trip through JSON") {
    ClosedForm f;
    f.terms[BasisMonomial{1, {{1, 1}}}] = Q("2");
    f.terms[BasisMonomial{0, {{2, 2}}}] = Q("-1/3");
    f.terms[BasisMonomial{-1, {}}] = Q("5");
    f.validity_from = 3;
    CHECK(closed_form_from_json(Json::parse(to_json(f).dump())) == f);

    RecurrenceOperator op{2, {UniPoly(Q("1")), UniPoly(std::vector<Rational>{Q("0"), Q("-2")}), UniPoly(Q("1"))}};
    const Json j = to_json(op);
    CHECK(operator_from_json(j) == op);
    CHECK(j.at("display").get<std::string>() == op.display());
}

TEST_CASE("CSV keeps an exact column and flags decimals as lossy") {
    MomentEngine engine;
    const auto seq = engine.moment_sequence(VariantId(Family::CompThreePivot), 1, MomentKind::mean, 20);
    const std::string csv = to_csv(seq);
    CHECK(csv.rfind(std::string(kCsvLossyNote), 0) == 0);
    CHECK(values_from_csv(csv) == seq.values);
    // JSON and CSV of the same result agree exactly
    CHECK(values_from_csv(csv) == moment_sequence_from_json(to_json(seq)).values);
    CHECK(csv.find("20,1697926310039/25461686250,66.6855405163513") != std::string::npos);

    const UniPoly p = poly({{"2/15", 10}, {"1/15", 9}, {"1/5", 8}, {"4/15", 7}, {"1/3", 6}});
    CHECK(poly_from_csv(to_csv(p)) == p);
    CHECK_THROWS(poly_from_csv("power,exact,decimal\n1,1,1\n"));
    CHECK_THROWS(values_from_csv("n,exact\n1,1\n"));
}

TEST_CASE("FNV-1a reference vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
    CHECK(hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("disk store layout, reuse and verification") {
    TempDir dir("store");
    const VariantId v4(Family::SwapV4), lin(Family::CompKPivotLinear, 3);
    {
        DiskStore store(dir.path);
        PgfEngine engine(&store);
        engine.pgf(v4, 6);
        engine.pgf(lin, 4);
        CHECK(store.events().empty());
    }
    CHECK(fs::exists(dir.path / "swapv4" / "n0.json"));
    CHECK(fs::exists(dir.path / "swapv4" / "n6.json"));
    CHECK(fs::exists(dir.path / "compkpivotlinear_k3" / "n4.json"));
    const Json entry = Json::parse(slurp(dir.path / "swapv4" / "n6.json"));
    CHECK(entry.at("format_version") == kCacheFormatVersion);
    CHECK(entry.at("pgf").is_array());

    DiskStore store(dir.path);
    CHECK(store.load(v4, 6) == pgf(v4, 6));
    CHECK(!store.load(v4, 7).has_value());
    CHECK(store.scan().empty());

    // a well-formed edit that breaks the hash
    Json edited = entry;
    edited["pgf"][1] = "1/7";
    spit(dir.path / "swapv4" / "n6.json", edited.dump());
    // a stale format version with a consistent hash
    Json old = Json::parse(slurp(dir.path / "swapv4" / "n5.json"));
    old["format_version"] = 0;
    spit(dir.path / "swapv4" / "n5.json", old.dump());
    spit(dir.path / "swapv4" / "n4.json", "{ not json");
    // an entry filed under the wrong key
    fs::copy_file(dir.path / "swapv4" / "n3.json", dir.path / "swapv4" / "n2.json", fs::copy_options::overwrite_existing);

    const auto scanned = store.scan();
    std::set<std::string> reasons;
    for (const auto& e : scanned) reasons.insert(e.path.filename().string() + ": " + e.reason);
    CHECK(reasons == std::set<std::string>{"n2.json: key mismatch", "n4.json: malformed json",
                                           "n5.json: format version mismatch", "n6.json: hash mismatch"});

    PgfEngine engine(&store);
    CHECK(engine.pgf(v4, 2) == pgf(v4, 2));
    CHECK(engine.pgf(v4, 6) == pgf(v4, 6));
    CHECK(store.events().size() == 2);
    // recomputed entries were written back
    CHECK(DiskStore(dir.path).load(v4, 6) == pgf(v4, 6));
}

TEST_CASE("cache directory resolution") {
    ::unsetenv(kCacheDirEnv);
    CHECK(resolve_cache_dir("", "fallback") == fs::path("fallback"));
    ::setenv(kCacheDirEnv, "/tmp/from_env", 1);
    CHECK(resolve_cache_dir("", "fallback") == fs::path("/tmp/from_env"));
    CHECK(resolve_cache_dir("/explicit", "fallback") == fs::path("/explicit"));
    ::unsetenv(kCacheDirEnv);
}

TEST_CASE("check catalog: unique names, every section populated") {
    std::set<std::string> names, sections;
    for (const auto& c : check_catalog()) {
        CHECK(names.insert(c.name).second);
        sections.insert(c.section);
    }
    CHECK(sections == std::set<std::string>{"section2", "section3", "section4", "section5", "cross"});
    CHECK(check_catalog().back().name == "cache_integrity");
    CHECK_THROWS_AS(reproduce("section9", {}), std::invalid_argument);
}

TEST_CASE("reproduce: scoped bundle lists every check once and is idempotent") {
    TempDir dir("scope");
    ReproduceOptions options;
    options.cache_dir = dir.path;
    const ReportBundle first = reproduce("section2", options);
    REQUIRE(first.checks.size() == check_catalog().size());
    for (const auto& c : first.checks) {
        CAPTURE(c.name);
        CHECK((c.section == "section2") == (c.status != CheckStatus::skipped));
        CHECK(c.status != CheckStatus::fail);
    }
    CHECK(first.passed());
    const Json payload = first.payload();
    CHECK(payload.at("checks").size() == check_catalog().size());
    CHECK(payload.at("status") == "pass");

    const ReportBundle second = reproduce("section2", options);
    CHECK(second.payload().dump() == payload.dump());
    CHECK(second.to_json().at("metadata").at("version") == kToolVersion);
}

TEST_CASE("reproduce all: tampered cache fails, then heals") {
    TempDir dir("tamper");
    ReproduceOptions options;
    options.cache_dir = dir.path;
    const ReportBundle clean = reproduce("all", options);
    for (const auto& c : clean.checks) {
        CAPTURE(c.name);
        CAPTURE(c.detail);
        CHECK(c.status == CheckStatus::pass);
    }

    const fs::path victim = dir.path / "compdual" / "n5.json";
    REQUIRE(fs::exists(victim));
    Json entry = Json::parse(slurp(victim));
    entry["pgf"][6] = "1/2";
    spit(victim, entry.dump());

    const ReportBundle tampered = reproduce("all", options);
    const CheckResult* bad = tampered.first_failure();
    REQUIRE(bad != nullptr);
    CHECK(bad->name == "cache_integrity");
    CHECK(bad->detail.find("cache integrity error") != std::string::npos);
    CHECK(bad->actual.dump().find("compdual/n5.json") != std::string::npos);
    // the golden checks themselves never saw the bad entry
    CHECK(tampered.payload().at("counts").at("fail") == 1);

    const ReportBundle healed = reproduce("all", options);
    CHECK(healed.passed());
    CHECK(healed.payload().dump() == clean.payload().dump());
}

TEST_CASE("CLI: exit codes and outputs") {
    TempDir dir("cli");
    const std::string cache = "--cache-dir " + dir.path.string() + " ";

    const Run p = cli(cache + "pgf --variant compdual --n 3");
    REQUIRE(p.code == 0);
    CHECK(poly_from_json(Json::parse(p.out).at("pgf")) == poly({{"2/3", 3}, {"1/3", 2}}));
    CHECK(fs::exists(dir.path / "compdual" / "n3.json"));

    const Run csv = cli(cache + "--format csv moments --variant swapv4 --order 1 --upto 20");
    REQUIRE(csv.code == 0);
    const Run js = cli(cache + "moments --variant swapv4 --order 1 --upto 20");
    REQUIRE(js.code == 0);
    CHECK(values_from_csv(csv.out) == moment_sequence_from_json(Json::parse(js.out)).values);

    const Run fit = cli(cache + "--format text fit --variant swapv1 --order 1");
    CHECK(fit.code == 0);
    CHECK(fit.out.find("n*H1(n) + H1(n) - 2*n") != std::string::npos);

    const Run rec = cli(cache + "findrec --variant comp1pivot --upto 30 --maxc 4");
    CHECK(rec.code == 0);
    CHECK(Json::parse(rec.out).at("order").get<int>() >= 1);

    const Run sim = cli("simulate --variant swapv3 --n 12 --trials 500 --seed 9");
    CHECK(sim.code == 0);
    CHECK(Json::parse(sim.out).at("stats").at("trials") == 500);
    CHECK(cli("simulate --variant swapv3 --n 12 --trials 500 --seed 9").out == sim.out);

    CHECK(cli(cache + "oracle --variant swapv5 --n 5").code == 0);
    CHECK(cli("--no-cache oracle --variant compkpivotbinary --pivots 3 --n 5").code == 0);

    // a fit that cannot succeed is a failed computation, not a usage error
    CHECK(cli(cache + "fit --variant swapv5 --order 1 --upto 30").code == 1);

    CHECK(cli("pgf --variant nosuch --n 3").code == 2);
    CHECK(cli("pgf --variant swapv1").code == 2);
    CHECK(cli("pgf --variant swapv1 --n 3 --bogus").code == 2);
    CHECK(cli("--format xml pgf --variant swapv1 --n 3").code == 2);
    CHECK(cli("pgf --variant compkpivotbinary --pivots 3 --n 3").code == 2);
    CHECK(cli("oracle --variant swapv1 --n 9").code == 2);
    CHECK(cli("reproduce --scope section7").code == 2);
    CHECK(cli("").code == 2);
    CHECK(cli("--help").code == 0);

    const Run rep = cli(cache + "reproduce --scope section5 --quiet");
    REQUIRE(rep.code == 0);
    const Json bundle = Json::parse(rep.out);
    CHECK(bundle.at("payload").at("checks").at("in_place_scaled_profile_n100").at("status") == "pass");
    CHECK(bundle.at("payload").at("checks").at("in_place_scaled_profile_n100").at("actual").size() == 8);
}
