#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "rkb/errors.hpp"
#include "rkb/io.hpp"

using namespace rkb;
namespace fs = std::filesystem;

namespace {

const char* kBase =
    "[params]\n"
    "energy_E = 2.5\n"
    "offset_h = 2\n"
    "mass_mu = 2\n"
    "stiffness_om = 1\n";

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("rkb_cli_" + name);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

int run_bin(const fs::path& dir, const std::string& config_text, const std::string& extra = "") {
    const char* bin = std::getenv("RKB_BIN");
    REQUIRE(bin != nullptr);
    std::ofstream(dir / "run.ini") << config_text;
    const std::string cmd = std::string(bin) + " --config " + (dir / "run.ini").string() + " --out " +
                            (dir / "out").string() + " " + extra + " > " + (dir / "log.txt").string() + " 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

}  // namespace

TEST_CASE("config parsing") {
    const RunConfig c = parse_config(std::string(kBase) +
                                     "[profile]\nepsilon = 0.01\nfourier_cos = 0, 0, 1\n"
                                     "[command]\ncommand = section\nseeds = 4\niterations = 10\ntol = 1e-8\n");
    CHECK(c.params.action_bound_Ic == doctest::Approx(std::sqrt(2.0)));
    CHECK(c.profile.fourier_cos.size() == 3);
    CHECK(c.profile.epsilon == 0.01);
    CHECK(c.command == Command::section);
    CHECK(c.seeds == 4);
    CHECK(c.iterations == 10);
    CHECK(c.tol == 1e-8);
}

TEST_CASE("config errors carry line or field diagnostics") {
    try {
        parse_config("[params]\nenergy_E = 2.5\nthis line is broken\n");
        FAIL("no throw");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    try {
        parse_config(std::string(kBase) + "[command]\nbogus = 1\n");
        FAIL("no throw");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("[command] bogus") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("[params]\nenergy_E = x\noffset_h=1\nmass_mu=1\nstiffness_om=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[params]\nenergy_E = 2.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(std::string(kBase) + "[command]\ncommand = fly\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(std::string(kBase) + "[command]\ntol = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(std::string(kBase) + "[command]\niterations = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[params]\nenergy_E=1\noffset_h=1\nmass_mu=1\nstiffness_om=3\n"), ConfigError);
}

TEST_CASE("empty command prints usage with a non-success status") {
    const auto d = scratch("empty");
    CHECK(run_bin(d, kBase) == 2);
    CHECK(slurp(d / "log.txt").find("usage") != std::string::npos);
}

TEST_CASE("shift-profile row at I = 1") {
    const auto d = scratch("shift");
    REQUIRE(run_bin(d, std::string(kBase) + "[command]\ncommand = shift-profile\n") == 0);
    const std::string csv = slurp(d / "out" / "shift_profile.csv");
    CHECK(csv.rfind("I,f,g,theta_bar,", 0) == 0);
    CHECK(csv.find("\n1,1.32581766367,-3.14159265359,-1.81577498992,") != std::string::npos);
    CHECK(fs::exists(d / "out" / "shift_profile.svg"));
}

TEST_CASE("section output is deterministic across runs and worker counts") {
    const std::string cfg = std::string(kBase) +
                            "[profile]\nepsilon = 0.02\nfourier_cos = 0, 0, 1\n"
                            "[command]\ncommand = section\nseeds = 6\niterations = 20\n";
    const auto a = scratch("sec_a"), b = scratch("sec_b");
    REQUIRE(run_bin(a, cfg, "--workers 1") == 0);
    REQUIRE(run_bin(b, cfg, "--workers 3") == 0);
    const std::string ca = slurp(a / "out" / "section.csv");
    CHECK(ca.rfind("seed_id,k,xi,action_I,status\n", 0) == 0);
    CHECK(ca == slurp(b / "out" / "section.csv"));
    const std::string svg = slurp(a / "out" / "section.svg");
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("<circle") == std::string::npos);
}

TEST_CASE("other commands run") {
    const char* cmds[] = {"params-report", "orbit", "twist", "oracle-check"};
    for (const char* c : cmds) {
        const auto d = scratch(c);
        CHECK(run_bin(d, std::string(kBase) + "[command]\ncommand = " + c + "\niterations = 5\n") == 0);
    }
    const auto d = scratch("periodic");
    CHECK(run_bin(d, std::string(kBase) + "[command]\ncommand = periodic\nm = -1\nn = 4\n") == 0);
    CHECK(slurp(d / "out" / "periodic.csv").find("circular") != std::string::npos);
    const auto e = scratch("caustics");
    CHECK(run_bin(e, std::string(kBase) + "[command]\ncommand = caustics\nactions = 1\n") == 0);
    CHECK(slurp(e / "log.txt").find("\"R_E\"") != std::string::npos);
}

TEST_CASE("module errors propagate with a failure status") {
    const auto d = scratch("range");
    CHECK(run_bin(d, std::string(kBase) + "[command]\ncommand = periodic\nm = -1\nn = 3\n") == 1);
    CHECK(slurp(d / "log.txt").find("outside the attainable") != std::string::npos);
    const auto e = scratch("badcfg");
    CHECK(run_bin(e, "[params]\nenergy_E = oops\n") == 3);
}
