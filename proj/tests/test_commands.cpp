#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "homq/commands.hpp"
#include "test_util.hpp"

using namespace homq;
using namespace homq::test;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("homq_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream(path) << text;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

std::vector<double> split_numbers(const std::string& line) {
    std::vector<double> out;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) out.push_back(std::stod(cell));
    return out;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(HOMQ_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kSectionEight =
    "generator = 3 0 0; 0 2 0; 0 0 1\n"
    "gain = -5.5055 -15.8387 -16.3807\n"
    "norm_power = 4\n"
    "nu = 0.7\n"
    "delta_angle = 0.15707963267948966\n"
    "x0 = 1 1 1\n"
    "step = 1e-3\n"
    "t_end = 0.5\n";

}  // namespace

TEST_CASE("simulate writes the trajectory CSV") {
    TempDir tmp;
    const RunConfig cfg = parse_config(kSectionEight);
    REQUIRE(cmd_simulate(cfg, tmp.file("traj.csv")) == kExitOk);
    const auto lines = read_lines(tmp.file("traj.csv"));
    REQUIRE(lines.size() == 1 + 501);
    CHECK(lines[0] == "t,x1,x2,x3,q1,q2,q3,u1,hnorm");
    const auto first = split_numbers(lines[1]);
    REQUIRE(first.size() == 9);
    CHECK(first[0] == 0.0);
    CHECK(first[1] == 1.0);
    const auto last = split_numbers(lines.back());
    CHECK(last[0] == doctest::Approx(0.5));

    // Deterministic output.
    REQUIRE(cmd_simulate(cfg, tmp.file("again.csv")) == kExitOk);
    CHECK(read_lines(tmp.file("again.csv")) == lines);

    // 17 significant digits round-trip exactly.
    const Trajectory t = simulate(config_plant(cfg), config_feedback(cfg),
                                  QuantizerSetup{config_dilation(cfg), config_quantizer(cfg)}, cfg.x0, cfg.step,
                                  cfg.t_end);
    const auto row = split_numbers(lines[250]);
    CHECK(row[1] == t.states[249](0));
    CHECK(row[8] == t.hom_norms[249]);
}

TEST_CASE("simulate: zero initial state and I/O failure") {
    TempDir tmp;
    RunConfig cfg = parse_config(kSectionEight);
    cfg.x0 = Vector::Zero(3);
    REQUIRE(cmd_simulate(cfg, tmp.file("zero.csv")) == kExitOk);
    const auto lines = read_lines(tmp.file("zero.csv"));
    for (size_t k = 1; k < lines.size(); ++k) {
        const auto v = split_numbers(lines[k]);
        for (size_t j = 1; j < v.size(); ++j) CHECK(v[j] == 0.0);
    }
    CHECK(code_of([&] { cmd_simulate(cfg, "/nonexistent/dir/out.csv"); }) == ErrorCode::IoError);
}

TEST_CASE("simulate: blow-up writes a partial trajectory") {
    TempDir tmp;
    const RunConfig cfg = parse_config(
        "plant = linear\ngenerator = 1\ndrift = 1\ninput = 1\ndegree = 0\ngain = 1\n"
        "nu = 0.5\ndelta_angle = 1\nx0 = 1\nstep = 1\nt_end = 2000\nquantized = false\n");
    CHECK(cmd_simulate(cfg, tmp.file("boom.csv")) == kExitBlowUp);
    const auto lines = read_lines(tmp.file("boom.csv"));
    CHECK(lines.size() > 2);
    CHECK(lines.size() < 2002);
}

TEST_CASE("seed enumeration") {
    SUBCASE("standard dilation, three levels and four directions") {
        const Dilation d = make_dilation(Matrix::Identity(2, 2));
        const QuantizerParams p(0.5, kPi / 2, 2);
        const auto seeds = enumerate_seeds(d, p, -1, 1);
        REQUIRE(seeds.size() == 12);
        std::set<long> directions;
        for (const Seed& s : seeds) {
            const double expected = std::pow(0.5, static_cast<double>(s.level)) * 4.0 / 3.0;
            CHECK(s.hnorm == doctest::Approx(expected).epsilon(1e-12));
            CHECK(s.coords.norm() == doctest::Approx(expected).epsilon(1e-12));
            directions.insert(s.angle_index);
        }
        CHECK(directions.size() == 4);
        CHECK(seeds.front().hnorm == doctest::Approx(8.0 / 3.0));
        CHECK(seeds.back().hnorm == doctest::Approx(2.0 / 3.0));
    }
    SUBCASE("non-diagonal generator keeps seeds on the grid") {
        const Dilation d = make_dilation(mat2(1.5, 0.6, 0.0, 1.0));
        const QuantizerParams p(0.7, kPi / 20, 2);
        const auto seeds = enumerate_seeds(d, p, -2, 2);
        CHECK(seeds.size() == 5 * 40);
        for (const Seed& s : seeds) {
            CHECK(std::abs(s.hnorm - std::pow(0.7, static_cast<double>(s.level)) * p.xi0()) <= 1e-9);
            CHECK((hom_quantize(d, p, s.coords) - s.coords).norm() <= 1e-9 * s.coords.norm());
        }
    }
    SUBCASE("three dimensions collapse the poles") {
        const Dilation d = make_dilation(diag321());
        const QuantizerParams p(0.7, kPi / 2, 3);
        // theta1 in {0, pi/2, pi}: the poles give one seed each, the equator four.
        CHECK(enumerate_seeds(d, p, 0, 0).size() == 6);
    }
    SUBCASE("errors") {
        const QuantizerParams p4(0.7, 0.5, 4);
        CHECK(code_of([&] { enumerate_seeds(make_dilation(Matrix::Identity(4, 4)), p4, 0, 1); }) ==
              ErrorCode::UnsupportedDimension);
        const QuantizerParams p2(0.7, 0.5, 2);
        CHECK(code_of([&] { enumerate_seeds(make_dilation(Matrix::Identity(2, 2)), p2, 2, 1); }) ==
              ErrorCode::InvalidArgument);
    }
}

TEST_CASE("seeds CSV") {
    TempDir tmp;
    const RunConfig cfg = parse_config("generator = 1 0; 0 1\ngain = 0 0\nnu = 0.5\ndelta_angle = 1.5707963267948966\nx0 = 1 0\n");
    REQUIRE(cmd_seeds(cfg, -1, 1, tmp.file("seeds.csv")) == kExitOk);
    const auto lines = read_lines(tmp.file("seeds.csv"));
    REQUIRE(lines.size() == 13);
    CHECK(lines[0] == "level,angle_index,s1,s2,hnorm");
    CHECK(split_numbers(lines[1])[0] == -1);
}

TEST_CASE("level range parsing") {
    CHECK(parse_level_range("-1..1") == std::pair<long, long>{-1, 1});
    CHECK(parse_level_range("3..7") == std::pair<long, long>{3, 7});
    CHECK(code_of([] { parse_level_range("1-2"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_level_range("a..2"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_level_range("1.."); }) == ErrorCode::ParseError);
}

TEST_CASE("check command") {
    std::ostringstream out;
    CHECK(cmd_check("dilation", {}, out) == kExitOk);
    std::istringstream lines(out.str());
    int count = 0;
    std::string previous;
    for (std::string line; std::getline(lines, line); ++count) {
        CHECK(line.rfind("PASS dilation.", 0) == 0);
        const std::string name = line.substr(5, line.find(' ', 5) - 5);
        CHECK(name > previous);
        previous = name;
    }
    CHECK(count >= 4);

    CHECK(code_of([] {
              std::ostringstream sink;
              cmd_check("nonsense", {}, sink);
          }) == ErrorCode::UnknownSuite);

    // A corrupted quantizer fixture (nu > 1) must surface as failures.
    CheckOptions corrupted;
    corrupted.nu = 1.3;
    std::ostringstream bad;
    CHECK(cmd_check("all", corrupted, bad) != kExitOk);
    CHECK(bad.str().find("FAIL quantizer.") != std::string::npos);
}

TEST_CASE("command-line exit codes") {
    TempDir tmp;
    write_file(tmp.file("run.cfg"), kSectionEight);
    write_file(tmp.file("bad.cfg"), "nu = 1.2\n");
    write_file(tmp.file("seeds.cfg"), "generator = 1.5 0.6; 0 1\ngain = 0 0\nnu = 0.7\ndelta_angle = 0.15707963267948966\nx0 = 1 0\n");
    write_file(tmp.file("four.cfg"),
               "generator = 1 0 0 0; 0 1 0 0; 0 0 1 0; 0 0 0 1\ngain = 0 0 0 0\nnu = 0.7\ndelta_angle = 0.5\nx0 = 1 0 0 0\n");

    CHECK(run_cli("simulate --config " + tmp.file("run.cfg") + " --out " + tmp.file("t.csv")) == 0);
    CHECK(run_cli("simulate --config " + tmp.file("run.cfg") + " --out /nonexistent/dir/t.csv") == 3);
    CHECK(run_cli("simulate --config " + tmp.file("missing.cfg") + " --out " + tmp.file("t.csv")) == 3);
    CHECK(run_cli("simulate --config " + tmp.file("bad.cfg") + " --out " + tmp.file("t.csv")) == 4);
    CHECK(run_cli("seeds --config " + tmp.file("seeds.cfg") + " --levels -3..3 --out " + tmp.file("s.csv")) == 0);
    CHECK(read_lines(tmp.file("s.csv")).size() == 1 + 7 * 40);
    CHECK(run_cli("seeds --config " + tmp.file("four.cfg") + " --levels 0..1 --out " + tmp.file("s.csv")) == 4);
    CHECK(run_cli("seeds --config " + tmp.file("seeds.cfg") + " --levels 0-1 --out " + tmp.file("s.csv")) == 4);
    CHECK(run_cli("check --suite dilation") == 0);
    CHECK(run_cli("check --suite nonsense") == 4);
    CHECK(run_cli("check --suite quantizer --nu 1.5") == 1);
    CHECK(run_cli("frobnicate") == 4);
    CHECK(run_cli("") == 4);
}
