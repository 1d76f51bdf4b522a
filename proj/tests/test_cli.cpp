#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

#ifndef PCF_FIXTURES_DIR
#define PCF_FIXTURES_DIR "fixtures"
#endif
#ifndef PCF_CLI_PATH
#define PCF_CLI_PATH "pcfactor"
#endif

const std::string kFixtures = PCF_FIXTURES_DIR;
const std::string kCli = PCF_CLI_PATH;

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run(const std::string& args) {
    const std::string path = "/tmp/pcf-cli-test-out.txt";
    const int status = std::system((kCli + " " + args + " > " + path + " 2>&1").c_str());
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return {WEXITSTATUS(status), buf.str()};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("exit codes distinguish yes, no and errors") {
    CHECK(run("find " + kFixtures + "/fig1.ecg").code == 0);
    CHECK(run("find " + kFixtures + "/star.ecg").code == 3);
    CHECK(run("find /no/such/file.ecg").code == 2);
    CHECK(run("find").code == 2);
    CHECK(run("wat").code == 2);

    write_file("/tmp/pcf-cli-bad.ecg", "colours 2\nvertex a\nedge a b oops\n");
    const auto bad = run("find /tmp/pcf-cli-bad.ecg");
    CHECK(bad.code == 2);
    CHECK(bad.out.find("line 3") != std::string::npos);
}

TEST_CASE("check validates and reports") {
    CHECK(run("check " + kFixtures + "/fig1.ecg").code == 0);
    write_file("/tmp/pcf-cli-loop.ecg", "colours 1\nvertex a f=0\nedge a a 1\n");
    const auto res = run("check /tmp/pcf-cli-loop.ecg");
    CHECK(res.code == 3);
    CHECK(res.out.find("loop at a") != std::string::npos);
}

TEST_CASE("find emits verifiable certificates") {
    const auto yes = run("find " + kFixtures + "/fig1.ecg --verify");
    CHECK(yes.code == 0);
    CHECK(yes.out.find("verdict yes") == 0);
    CHECK(yes.out.find("certificate verified") != std::string::npos);

    const auto no = run("find " + kFixtures + "/star.ecg --verify");
    CHECK(no.code == 3);
    CHECK(no.out.find("verdict no") == 0);
    CHECK(no.out.find("certificate verified") != std::string::npos);

    // the JSON certificate replays through `certify`
    const auto js = run("find " + kFixtures + "/star.ecg --json");
    CHECK(js.code == 3);
    write_file("/tmp/pcf-cli-star-cert.json", js.out);
    const auto replay = run("certify " + kFixtures + "/star.ecg /tmp/pcf-cli-star-cert.json");
    CHECK(replay.code == 0);
    CHECK(replay.out.find("certificate ok") != std::string::npos);

    // a tampered certificate is rejected
    auto tampered = js.out;
    const auto pos = tampered.find("\"x_size\": 0");
    if (pos != std::string::npos) {
        tampered.replace(pos, 11, "\"x_size\": 9");
        write_file("/tmp/pcf-cli-star-bad.json", tampered);
        CHECK(run("certify " + kFixtures + "/star.ecg /tmp/pcf-cli-star-bad.json").code == 3);
    }

    const auto pos_json = run("find " + kFixtures + "/fig1.ecg --json");
    CHECK(pos_json.code == 0);
    write_file("/tmp/pcf-cli-fig1-cert.json", pos_json.out);
    CHECK(run("certify " + kFixtures + "/fig1.ecg /tmp/pcf-cli-fig1-cert.json").code == 0);
}

TEST_CASE("gadget output is deterministic and infeasibility is reported") {
    const auto a = run("gadget " + kFixtures + "/fig1.ecg");
    const auto b = run("gadget " + kFixtures + "/fig1.ecg");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("colours 1") == 0);

    const auto dot = run("gadget " + kFixtures + "/fig1.ecg --format dot");
    CHECK(dot.code == 0);
    CHECK(dot.out.find("graph gadget") == 0);

    write_file("/tmp/pcf-cli-k2.ecg", "colours 1\nvertex a f=1\nvertex b f=1\nedge a b 1\n");
    const auto plain = run("gadget /tmp/pcf-cli-k2.ecg --plain");
    CHECK(plain.code == 0);
    CHECK(plain.out.find("vertex a.s.b f=1") != std::string::npos);

    write_file("/tmp/pcf-cli-inf.ecg", "colours 1\nvertex a f=2\nvertex b f=1\nedge a b 1\n");
    const auto inf = run("gadget /tmp/pcf-cli-inf.ecg");
    CHECK(inf.code == 3);
    CHECK(inf.out.find("infeasible") != std::string::npos);
}

TEST_CASE("solvers and reductions run end to end") {
    CHECK(run("reduce " + kFixtures + "/k43.hg --target rc --r 2 -o /tmp/pcf-cli-k43rc.ecg")
              .code == 0);
    const auto no = run("solve /tmp/pcf-cli-k43rc.ecg --mode rc --r 2");
    CHECK(no.code == 3);
    CHECK(no.out.find("verdict no") == 0);

    CHECK(run("reduce " + kFixtures + "/positive9.hg --target rc --r 2 -o /tmp/pcf-cli-p9.ecg")
              .code == 0);
    const auto yes = run("solve /tmp/pcf-cli-p9.ecg --mode rc --r 2");
    CHECK(yes.code == 0);
    CHECK(yes.out.find("verdict yes") == 0);

    const auto pc = run("solve " + kFixtures + "/star.ecg --mode pc");
    CHECK(pc.code == 3);

    const auto d2c = run("solve " + kFixtures + "/petersen-canonical.ecg --mode d2c --r 3");
    CHECK(d2c.code == 0);
}

TEST_CASE("kneser output matches the stored fixture") {
    const auto res = run("kneser --canonical 3");
    CHECK(res.code == 0);
    std::ifstream fx(kFixtures + "/petersen-canonical.ecg", std::ios::binary);
    std::ostringstream want;
    want << fx.rdbuf();
    CHECK(res.out == want.str());

    CHECK(run("kneser --n 5 --k 2").code == 0);
    CHECK(run("kneser").code == 2);
}

TEST_CASE("tutte sweep and the printed variant") {
    const auto yes = run("tutte " + kFixtures + "/fig1.ecg");
    CHECK(yes.code == 0);
    CHECK(yes.out.find("verdict yes") != std::string::npos);

    const auto no = run("tutte " + kFixtures + "/star.ecg");
    CHECK(no.code == 3);
    CHECK(no.out.find("verdict no") != std::string::npos);

    // the in-circulation variant of the deficiency sum disagrees with the
    // gadget condition as a universally quantified statement
    const auto printed = run("tutte " + kFixtures + "/fig1.ecg --variant printed");
    CHECK(printed.code == 4);
    CHECK(printed.out.find("verdict divergence") != std::string::npos);
}

TEST_CASE("equiv runs clean on a small sweep") {
    const auto res = run("equiv --n 3 --k 2 --fmax 2");
    CHECK(res.code == 0);
    CHECK(res.out.find("(a) matching vs palette divergences: 0") != std::string::npos);

    CHECK(run("equiv --n 3 --k 2").code == 2);   // --fmax is required
    const auto sampled = run("equiv --n 5 --k 3 --fmax 2 --sample 25 --json");
    CHECK(sampled.code == 0);
    CHECK(sampled.out.find("\"instances\": 25") != std::string::npos);
}
