#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

// end-to-end checks driving the installed binary
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(TEST_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const fs::path& scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "chfif_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string path_of(const char* name) { return (scratch() / name).string(); }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << text;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// rows of a CSV artifact, comment and header lines dropped
std::vector<std::vector<double>> csv_rows(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        for (auto& ch : line)
            if (ch == ',') ch = ' ';
        std::istringstream fields(line);
        std::vector<double> row;
        double v = 0.0;
        while (fields >> v) row.push_back(v);
        if (!row.empty()) rows.push_back(row);
    }
    return rows;
}

const std::string& basis_path() {
    static const std::string path = [] {
        const std::string p = path_of("basis.json");
        REQUIRE(run("build-basis --preset reference --output " + p).exit_code == 0);
        return p;
    }();
    return path;
}

const std::string& wavelets_path() {
    static const std::string path = [] {
        const std::string p = path_of("wav.json");
        REQUIRE(run("wavelets solve --basis " + basis_path() + " --output " + p).exit_code == 0);
        return p;
    }();
    return path;
}

}  // namespace

TEST_CASE("build-basis emits a reloadable artifact with metadata") {
    const Json j = Json::parse(slurp(basis_path()));
    CHECK(j.contains("gs_coeffs"));
    CHECK(j.at("metadata").contains("version"));
    CHECK(j.at("metadata").at("config_hash").get<std::string>().size() == 16);
    CHECK(j.at("alpha").at(1).get<double>() == doctest::Approx(std::sqrt(7.0) - 3.0));

    const std::string again = path_of("basis2.json");
    REQUIRE(run("build-basis --preset reference --output " + again).exit_code == 0);
    CHECK(slurp(basis_path()) == slurp(again));
}

TEST_CASE("gram reports the identity for an orthonormal basis") {
    const RunResult r = run("gram --basis " + basis_path());
    REQUIRE(r.exit_code == 0);
    const Json j = Json::parse(r.out);
    REQUIRE(j.at("labels").size() == 3);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            const double want = i == k ? 1.0 : 0.0;
            CHECK(std::abs(j.at("gram").at(i).at(k).get<double>() - want) < 1e-10);
        }
}

TEST_CASE("verify-basis passes every gate at the reference point") {
    const RunResult r = run("verify-basis --basis " + basis_path());
    REQUIRE(r.exit_code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j.at("pass").get<bool>());
    for (const Json& g : j.at("gates")) CHECK(g.at("pass").get<bool>());
    CHECK(j.at("mra").at("dimension").get<int>() == 4);
}

TEST_CASE("sample renders the classical hat at depth 3") {
    const std::string hat = path_of("hat.json");
    write_file(hat,
               R"({"knots":[0.0,0.5,1.0],"alpha":[0,0],"beta":[0,0],"gamma":[0,0],)"
               R"("y":[0.0,1.0,0.0],"z":[0.0,0.0,0.0]})");
    const RunResult r = run("sample --system " + hat + " --depth 3");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.rfind("# version=", 0) == 0);
    CHECK(r.out.find("x,f1,f2") != std::string::npos);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 9);
    for (std::size_t i = 0; i < 9; ++i) {
        const double x = static_cast<double>(i) / 8.0;
        CHECK(rows[i][0] == x);
        CHECK(rows[i][1] == (x <= 0.5 ? 2.0 * x : 2.0 - 2.0 * x));
        CHECK(rows[i][2] == 0.0);
    }
}

TEST_CASE("wavelets solve converges and is bitwise deterministic") {
    const Json j = Json::parse(slurp(wavelets_path()));
    CHECK(j.at("converged").get<bool>());
    CHECK(j.at("residual").get<double>() < 1e-9);
    REQUIRE(j.at("A").size() == 3);
    REQUIRE(j.at("A").at(0).size() == 7);

    const std::string again = path_of("wav2.json");
    REQUIRE(run("wavelets solve --basis " + basis_path() + " --output " + again).exit_code == 0);
    CHECK(slurp(wavelets_path()) == slurp(again));
}

TEST_CASE("the sampled psi curves carry the solution values at quarter knots") {
    const RunResult r = run("wavelets solve --basis " + basis_path() + " --format csv");
    REQUIRE(r.exit_code == 0);
    const Json wav = Json::parse(slurp(wavelets_path()));
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() >= 129);
    for (int i = 0; i < 3; ++i)
        for (int l = 0; l < 7; ++l) {
            const double x = (l + 1) / 4.0;
            bool found = false;
            for (const auto& row : rows) {
                if (std::abs(row[0] - x) > 1e-12) continue;
                found = true;
                const double a = wav.at("A").at(i).at(l).get<double>();
                CHECK(std::abs(row[static_cast<std::size_t>(i) + 1] - a) < 1e-8);
            }
            CHECK(found);
        }
}

TEST_CASE("wavelets verify separates solved tables from tampered ones") {
    const RunResult good =
        run("wavelets verify --solution " + wavelets_path() + " --basis " + basis_path());
    REQUIRE(good.exit_code == 0);
    CHECK(Json::parse(good.out).at("max_residual").get<double>() < 1e-9);

    Json bad = Json::parse(slurp(wavelets_path()));
    bad["A"][0][2] = bad["A"][0][2].get<double>() + 0.5;
    const std::string bad_path = path_of("wav_bad.json");
    write_file(bad_path, bad.dump());
    const RunResult r = run("wavelets verify --solution " + bad_path + " --basis " + basis_path());
    CHECK(r.exit_code == 1);
    CHECK(Json::parse(r.out).at("max_residual").get<double>() > 5e-3);
}

TEST_CASE("transform decompose and reconstruct form a working pipeline") {
    std::ostringstream sig;
    sig << "x,value\n";
    const int per_unit = 512;
    for (int i = 0; i <= 2 * per_unit; ++i) {
        const double x = static_cast<double>(i) / per_unit;
        sig << x << "," << std::sin(2.0 * M_PI * x) * std::exp(-x) << "\n";
    }
    const std::string sig_path = path_of("sig.csv");
    write_file(sig_path, sig.str());

    const std::string coeffs = path_of("coeffs.json");
    REQUIRE(run("transform decompose --input " + sig_path + " --basis " + basis_path() +
                " --wavelets " + wavelets_path() + " --levels 2 --depth 10 --output " + coeffs)
                .exit_code == 0);
    const Json c = Json::parse(slurp(coeffs));
    CHECK(c.at("coarse").at("level").get<int>() == 2);
    REQUIRE(c.at("details").size() == 2);
    CHECK(c.at("details").at(0).at("level").get<int>() == 1);
    CHECK(c.at("details").at(1).at("level").get<int>() == 2);

    const RunResult rj = run("transform reconstruct --input " + coeffs + " --basis " +
                             basis_path() + " --wavelets " + wavelets_path() + " --format json");
    REQUIRE(rj.exit_code == 0);
    CHECK(Json::parse(rj.out).at("level").get<int>() == 0);

    const RunResult rc = run("transform reconstruct --input " + coeffs + " --basis " +
                             basis_path() + " --wavelets " + wavelets_path() + " --samples 33");
    REQUIRE(rc.exit_code == 0);
    CHECK(rc.out.find("x,value") != std::string::npos);
    CHECK(csv_rows(rc.out).size() == 33);
}

TEST_CASE("report passes end to end at the reference preset") {
    const RunResult r = run("report --preset reference");
    REQUIRE(r.exit_code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j.at("pass").get<bool>());
    bool saw_rho = false, saw_wavelets = false;
    for (const Json& g : j.at("gates")) {
        CHECK(g.at("pass").get<bool>());
        saw_rho = saw_rho || g.at("name") == "rho";
        saw_wavelets = saw_wavelets || g.at("name") == "wavelet_residuals";
    }
    CHECK(saw_rho);
    CHECK(saw_wavelets);
}

TEST_CASE("bad input exits with code 2 and machine-readable detail") {
    const RunResult missing = run("gram --basis " + path_of("nope.json"));
    CHECK(missing.exit_code == 2);
    CHECK(Json::parse(missing.out).at("error").at("kind") == "bad-input");

    CHECK(run("build-basis --preset unknown").exit_code == 2);
    CHECK(run("definitely-not-a-command").exit_code == 2);
    CHECK(run("build-basis").exit_code == 2);  // no parameter source
}
