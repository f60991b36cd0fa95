#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "diamond/cli.hpp"
#include "diamond/report_io.hpp"

using namespace diamond;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("analyze prints the report") {
    const Run r = run({"analyze", "--g01", "15", "--g02", "3", "--g13", "3", "--g23", "15"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("1.3333333333333333") != std::string::npos);

    const Run j = run({"analyze", "--g01", "15", "--g02", "15", "--g13", "3", "--g23", "3", "--json"});
    CHECK(j.code == exit_ok);
    const nlohmann::json parsed = nlohmann::json::parse(j.out);
    const RateReport rep = report_from_json(parsed);
    CHECK(rep.region.index == 7);
    CHECK(rep.achievable.rate == doctest::Approx(1.1679416092939621696).epsilon(1e-14));

    const Run db = run({"analyze", "--g01", "11.760912590556812", "--g02", "4.7712125471966244", "--g13",
                        "4.7712125471966244", "--g23", "11.760912590556812", "--db", "--json"});
    CHECK(db.code == exit_ok);
    CHECK(nlohmann::json::parse(db.out).at("upper").at("value").get<double>() ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("analyze rejects bad input") {
    CHECK(run({"analyze", "--g01", "-1", "--g02", "3", "--g13", "3", "--g23", "3"}).code == exit_usage);
    CHECK(run({"analyze", "--g01", "1", "--g02", "3", "--g13", "3"}).code == exit_usage);
    CHECK(run({"analyze", "--g01", "x", "--g02", "3", "--g13", "3", "--g23", "3"}).code == exit_usage);
    CHECK(run({"analyze", "--bogus"}).code == exit_usage);
    CHECK(run({}).code == exit_usage);
    CHECK(run({"--help"}).code == exit_ok);
}

TEST_CASE("sweep writes identical files") {
    const auto dir = std::filesystem::temp_directory_path() / "diamond_cli_test";
    std::filesystem::create_directories(dir);
    const auto a = dir / "a.csv", b = dir / "b.csv";
    CHECK(run({"sweep", "--count", "500", "--seed", "9", "--out", a.string()}).code == exit_ok);
    CHECK(run({"sweep", "--count", "500", "--seed", "9", "--out", b.string(), "--workers", "3"}).code == exit_ok);
    const std::string ta = slurp(a);
    CHECK(ta == slurp(b));
    CHECK(ta.rfind(csv_header() + "\n", 0) == 0);
    std::size_t lines = 0;
    for (char ch : ta) lines += ch == '\n';
    CHECK(lines == 501);

    CHECK(run({"sweep", "--count", "0", "--out", a.string()}).code == exit_usage);
    CHECK(run({"sweep", "--count", "5", "--out", (dir / "missing" / "x.csv").string()}).code == exit_usage);
    const Run js = run({"sweep", "--count", "50", "--out", a.string(), "--json"});
    CHECK(js.code == exit_ok);
    CHECK(nlohmann::json::parse(js.out).at("count") == 50);
    std::filesystem::remove_all(dir);
}

TEST_CASE("verify exit codes") {
    CHECK(run({"verify", "--count", "300"}).code == exit_ok);
    const Run bad = run({"verify", "--count", "300", "--canary-flip-delta"});
    CHECK(bad.code == exit_violation);
    const Run js = run({"verify", "--count", "100", "--json"});
    CHECK(js.code == exit_ok);
    CHECK(nlohmann::json::parse(js.out).is_object());
}

TEST_CASE("gdof command") {
    const Run r = run({"gdof", "--a01", "1.5", "--a02", "1", "--a13", "2", "--a23", "2", "--json"});
    CHECK(r.code == exit_ok);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j.dump().find("1.3333333333333333") != std::string::npos);
    CHECK(run({"gdof", "--a01", "-1", "--a02", "1", "--a13", "2", "--a23", "2"}).code == exit_usage);
    CHECK(run({"gdof", "--a01", "1", "--a02", "1", "--a13", "1", "--a23", "1"}).code == exit_ok);
}
