#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

// run the tool with stderr folded into stdout
RunResult run(const std::string& args) {
    const std::string cmd = std::string(GHOM_CLI_PATH) + " " + args + " 2>&1";
    RunResult r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

int count_lines(const std::string& s, bool data_only) {
    std::istringstream is(s);
    std::string line;
    int n = 0;
    while (std::getline(is, line))
        if (!data_only || (!line.empty() && line[0] != '#')) ++n;
    return n;
}

}  // namespace

TEST_CASE("qfim at the operating point") {
    const RunResult r = run("qfim --tau 0,0 --theta2 pi/2");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "# command = qfim"));
    CHECK(contains(r.out, "# theta = 1.57079632679"));
    CHECK(contains(r.out, "\n1,"));              // H11 = 1 to print precision
    CHECK(contains(r.out, "100.444444444"));     // H22 = 904/9
    CHECK(contains(r.out, "det = 100.444444444"));
    CHECK(contains(r.out, "inverse_diag_bounds"));
}

TEST_CASE("angle spellings are canonicalized") {
    const RunResult a = run("qfim --tau 0.5,-0.25 --theta2 pi/2");
    const RunResult b = run("qfim --tau 0.5,-0.25 --theta2 1.5707963267948966");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("scan output shape and determinism") {
    const std::string args =
        "scan --quantity det --range1 -1:1:5 --range2 -1:1:5 --nodes 40 --theta2 pi/2";
    const RunResult r1 = run(args);
    CHECK(r1.code == 0);
    CHECK(contains(r1.out, "tau1,tau2,det"));
    CHECK(count_lines(r1.out, true) == 26);  // header row + 25 samples
    // lexicographic order, origin printed exactly
    CHECK(contains(r1.out, "\n-1,-1,"));
    CHECK(contains(r1.out, "\n-1,-0.5,"));
    CHECK(contains(r1.out, "\n0,0,"));

    const RunResult r2 = run(args);
    CHECK(r1.out == r2.out);
    const RunResult r4 = run(args + " --threads 4");
    // thread count shows up in the echo but must not change the data
    auto strip_threads = [](std::string s) {
        const auto pos = s.find("# threads");
        const auto end = s.find('\n', pos);
        s.erase(pos, end - pos + 1);
        return s;
    };
    CHECK(strip_threads(r1.out) == strip_threads(r4.out));
}

TEST_CASE("scan writes CSV and plot files") {
    const char* csv = "/tmp/ghom_test_scan.csv";
    std::remove(csv);
    std::remove("/tmp/ghom_test_scan.csv.pgm");
    const RunResult r = run("scan --quantity coincidence --range1 -1:1:9 --range2 -1:1:9 "
                            "--nodes 40 --out /tmp/ghom_test_scan.csv --plot");
    CHECK(r.code == 0);
    const std::string body = slurp(csv);
    CHECK(contains(body, "tau1,tau2,coincidence"));
    CHECK(count_lines(body, true) == 82);
    const std::string pgm = slurp("/tmp/ghom_test_scan.csv.pgm");
    CHECK(contains(pgm.substr(0, 3), "P5"));
}

TEST_CASE("config file merging and precedence") {
    {
        std::ofstream f("/tmp/ghom_test.cfg");
        f << "# comment line\n";
        f << "nodes = 40\n";
        f << "tau = 0.5,-0.25\n";
        f << "theta2 = pi/2   # trailing comment\n";
    }
    const RunResult file_only = run("qfim --config /tmp/ghom_test.cfg");
    CHECK(file_only.code == 0);
    CHECK(contains(file_only.out, "# nodes = 40"));
    CHECK(contains(file_only.out, "# tau = 0.5,-0.25"));
    // explicit flag beats the file
    const RunResult overridden = run("qfim --config /tmp/ghom_test.cfg --nodes 24");
    CHECK(overridden.code == 0);
    CHECK(contains(overridden.out, "# nodes = 24"));

    const RunResult missing = run("qfim --config /tmp/no_such_file.cfg");
    CHECK(missing.code == 2);
    {
        std::ofstream f("/tmp/ghom_bad.cfg");
        f << "wibble = 3\n";
    }
    const RunResult unknown = run("qfim --config /tmp/ghom_bad.cfg");
    CHECK(unknown.code == 2);
    CHECK(contains(unknown.out, "wibble"));
}

TEST_CASE("config errors exit with 2") {
    CHECK(run("scan --quantity wavefunction").code == 2);
    CHECK(run("scan --range1 3:-3:11").code == 2);
    CHECK(run("scan --vary tau1,tau1").code == 2);
    CHECK(run("scan --vary tau1,tau5").code == 2);
    CHECK(run("qfim --tau 1,2,3 --k 2").code == 2);
    CHECK(run("qfim --k 3 --theta2 pi/2").code == 2);
    CHECK(run("qfim --tau 0,0 --theta 0.1,0.2").code == 2);
    CHECK(run("qfim --omega1 0").code == 2);
    CHECK(run("qfim --tau 0,0 --theta2 bogus").code == 2);
    CHECK(run("ezc --grid 0.5:3:11").code == 2);
    CHECK(run("ezc --k 3 --ezc-phases").code == 2);  // no solution exists
    CHECK(run("nonsense").code == 2);
}

TEST_CASE("intertwined baseline cannot be inverted") {
    const RunResult r = run("qfim --tau 0.5,-0.5 --theta2 pi/2 --no-controls");
    CHECK(r.code == 3);
    CHECK(contains(r.out, "singular = true"));
    CHECK(contains(r.out, "null_direction"));
    CHECK(contains(r.out, "intertwined"));
}

TEST_CASE("baseline analysis") {
    const RunResult r = run("baseline --tau 0.3,0.7");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "# controls = off"));
    CHECK(contains(r.out, "rank = 1"));
    CHECK(contains(r.out, "tau_sum_qfi = 1\n"));
    CHECK(contains(r.out, "informative_direction = 0.707106781187,0.707106781187"));
    CHECK(contains(r.out, "null_direction"));
}

TEST_CASE("ezc verification exit codes") {
    const RunResult pass = run("ezc --tau 0,0 --theta2 pi/2 --grid -2:2:9 --nodes 40");
    CHECK(pass.code == 0);
    CHECK(contains(pass.out, "PASS"));
    const RunResult fail = run("ezc --tau 0,0 --theta2 pi/4 --grid -2:2:9 --nodes 40");
    CHECK(fail.code == 4);
    CHECK(contains(fail.out, "FAIL"));
    // tabulated phases requested explicitly
    const RunResult k4 = run("ezc --k 4 --ezc-phases --grid -1:1:5 --nodes 40");
    CHECK(k4.code == 0);
}

TEST_CASE("weak commutativity probe") {
    const RunResult r = run("weakcomm --samples 25 --nodes 40 --seed 7");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "samples = 25"));
    CHECK(contains(r.out, "compatible = yes"));
    const RunResult r2 = run("weakcomm --samples 25 --nodes 40 --seed 7");
    CHECK(r.out == r2.out);
}

TEST_CASE("closed-form comparison") {
    const RunResult r = run("oracle-diff --range1 -1:1:5 --range2 -1:1:5 --nodes 40");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "h11_num,h11_closed"));
    CHECK(contains(r.out, "# max_deviation_h11"));
    CHECK(contains(r.out, "# max_deviation_h12"));
    // the reference only exists at the exclusive-zero phase
    CHECK(run("oracle-diff --theta2 pi/3").code == 2);
    CHECK(run("oracle-diff --k 3").code == 2);
}
