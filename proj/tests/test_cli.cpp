#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int rc = -1;
    std::string out;  // stdout and stderr interleaved
};

CmdResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SWARMSIM_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CmdResult r;
    char buf[512];
    while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
    const int status = pclose(pipe);
    r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "swarmsim_cli" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

fs::path write_street_config(const fs::path& dir, long ticks,
                             long cluster_every = 0) {
    const fs::path p = dir / "street.ini";
    std::ofstream f(p);
    f << "[arena]\nwidth = 4\nheight = 2\ncomm_radius = 0.5\n"
         "dist_noise = 0\nrot_noise = 0\nseed = 9\n"
         "[robots]\ncount = 6\nplacement = chain\nspacing = 0.3\n"
         "[landmarks]\nlandmark = 0.95 1\nlandmark = 2.75 1\n"
         "[protocol]\nname = street\n"
         "[run]\nticks = "
      << ticks << "\ncluster_every = " << cluster_every << "\n";
    return p;
}

}  // namespace

TEST_CASE("frame encode and decode round-trip on the command line") {
    CHECK(run_cli("frame encode 0 0 0 0").out == "00000000\n");
    CHECK(run_cli("frame encode 5 3 9 170").out == "00a192aa\n");
    CHECK(run_cli("frame encode 1023 63 63 255").out == "7ffffeff\n");
    const CmdResult dec = run_cli("frame decode 00a192aa");
    CHECK(dec.rc == 0);
    CHECK(dec.out == "pkg_id=5 sender=3 receiver=9 payload=170\n");
}

TEST_CASE("frame error classes map to distinct exit codes") {
    CHECK(run_cli("frame decode 00a190aa").rc == 4);  // header bit flipped
    CHECK(run_cli("frame decode 00a192ab").rc == 0);  // payload is unguarded
    CHECK(run_cli("frame decode 123").rc == 4);       // length
    CHECK(run_cli("frame decode 80a192aa").rc == 4);  // pad bit set
    CHECK(run_cli("frame decode zz000000").rc == 2);  // not hex
    CHECK(run_cli("frame decode").rc == 2);
    CHECK(run_cli("frame encode 1024 0 0 0").rc == 2);
    CHECK(run_cli("frame encode 1 0 0").rc == 2);
    CHECK(run_cli("frame encode a b c d").rc == 2);
    CHECK(run_cli("frame transcode 1 2 3 4").rc == 2);
}

TEST_CASE("usage errors exit with code 2 and help with 0") {
    CHECK(run_cli("").rc == 2);
    CHECK(run_cli("bogus").rc == 2);
    const CmdResult help = run_cli("--help");
    CHECK(help.rc == 0);
    CHECK(help.out.find("frame") != std::string::npos);
    CHECK(help.out.find("sweep") != std::string::npos);
}

TEST_CASE("a missing or malformed config exits with code 2") {
    const fs::path dir = fresh_dir("badcfg");
    CHECK(run_cli("run --config /nonexistent.ini --out " +
                  (dir / "o").string())
              .rc == 2);
    const fs::path bad = dir / "bad.ini";
    std::ofstream(bad) << "[arena]\nwidht = 2\n";
    const CmdResult r =
        run_cli("run --config " + bad.string() + " --out " +
                (dir / "o").string());
    CHECK(r.rc == 2);
    CHECK(r.out.find("config error") != std::string::npos);
}

TEST_CASE("a full run writes its outputs and reports metrics") {
    const fs::path dir = fresh_dir("run");
    const fs::path cfg = write_street_config(dir, 120, 10);
    const fs::path out = dir / "out";
    const CmdResult r =
        run_cli("run --config " + cfg.string() + " --out " + out.string());
    CHECK(r.rc == 0);
    CHECK(r.out.find("completed = 1") != std::string::npos);
    CHECK(r.out.find("street_length = 6") != std::string::npos);
    CHECK(fs::exists(out / "resolved_config"));
    CHECK(fs::exists(out / "events.csv"));
    CHECK(fs::exists(out / "metrics.csv"));
    CHECK(fs::exists(out / "clusters.csv"));
    CHECK(slurp(out / "metrics.csv").find("completed,1") != std::string::npos);
    CHECK(slurp(out / "clusters.csv")
              .find("tick,component_index,size,label") != std::string::npos);

    const CmdResult q = run_cli("run --quiet --config " + cfg.string() +
                                " --out " + (dir / "out_q").string());
    CHECK(q.rc == 0);
    CHECK(q.out.empty());
}

TEST_CASE("repeat runs are byte-identical and the config is a fixed point") {
    const fs::path dir = fresh_dir("repeat");
    const fs::path cfg = write_street_config(dir, 120, 10);
    const fs::path a = dir / "a", b = dir / "b", c = dir / "c";
    REQUIRE(run_cli("run --quiet --config " + cfg.string() + " --out " +
                    a.string())
                .rc == 0);
    REQUIRE(run_cli("run --quiet --config " + cfg.string() + " --out " +
                    b.string())
                .rc == 0);
    for (const char* name :
         {"resolved_config", "events.csv", "metrics.csv", "clusters.csv"})
        CHECK(slurp(a / name) == slurp(b / name));

    // feeding the resolved config back reproduces the run exactly
    REQUIRE(run_cli("run --quiet --config " +
                    (a / "resolved_config").string() + " --out " + c.string())
                .rc == 0);
    for (const char* name :
         {"resolved_config", "events.csv", "metrics.csv", "clusters.csv"})
        CHECK(slurp(a / name) == slurp(c / name));
}

TEST_CASE("the seed option overrides the config") {
    const fs::path dir = fresh_dir("seed");
    const fs::path cfg = write_street_config(dir, 120);
    const fs::path out = dir / "o";
    REQUIRE(run_cli("run --quiet --seed 11 --config " + cfg.string() +
                    " --out " + out.string())
                .rc == 0);
    CHECK(slurp(out / "resolved_config").find("seed = 11") !=
          std::string::npos);
}

TEST_CASE("an unfinished protocol exits with code 3") {
    const fs::path dir = fresh_dir("short");
    const fs::path cfg = write_street_config(dir, 3);
    const CmdResult r = run_cli("run --config " + cfg.string() + " --out " +
                                (dir / "o").string());
    CHECK(r.rc == 3);
    CHECK(r.out.find("did not complete") != std::string::npos);
    CHECK(slurp(dir / "o" / "metrics.csv").find("completed,0") !=
          std::string::npos);
}

TEST_CASE("sweeps write one merged table deterministically") {
    const fs::path dir = fresh_dir("sweep");
    const fs::path cfg = write_street_config(dir, 120);
    const fs::path a = dir / "a", b = dir / "b";
    const CmdResult r = run_cli("sweep --config " + cfg.string() + " --out " +
                                a.string() + " --sweep-n 6 --sweep-seeds 1,2");
    CHECK(r.rc == 0);
    CHECK(r.out.find("2 cells, 0 failed") != std::string::npos);
    const std::string csv = slurp(a / "results.csv");
    CHECK(csv.rfind("scenario,n,seed,metric,value\n", 0) == 0);
    CHECK(csv.find("street,6,1,completed,1") != std::string::npos);
    CHECK(csv.find("street,6,2,street_length,6") != std::string::npos);

    REQUIRE(run_cli("sweep --quiet --config " + cfg.string() + " --out " +
                    b.string() + " --sweep-n 6 --sweep-seeds 1,2")
                .rc == 0);
    CHECK(slurp(b / "results.csv") == csv);
}

TEST_CASE("sweep ranges expand and degenerate sweeps are flagged") {
    const fs::path dir = fresh_dir("sweepedge");
    const fs::path cfg = write_street_config(dir, 120);
    const CmdResult r =
        run_cli("sweep --config " + cfg.string() + " --out " +
                (dir / "r").string() + " --sweep-n 5..7 --sweep-seeds 1");
    CHECK(r.rc == 0);
    CHECK(r.out.find("3 cells") != std::string::npos);

    // every cell failing (the chain cannot fit) is reported as exit 3
    const CmdResult fail =
        run_cli("sweep --config " + cfg.string() + " --out " +
                (dir / "f").string() + " --sweep-n 20 --sweep-seeds 1");
    CHECK(fail.rc == 3);
    CHECK(fail.out.find("every sweep cell failed") != std::string::npos);
    CHECK(slurp(dir / "f" / "results.csv").find("incomplete_run") !=
          std::string::npos);

    CHECK(run_cli("sweep --config " + cfg.string() + " --out " +
                  (dir / "e").string() + " --sweep-n , --sweep-seeds 1")
              .rc == 2);
    CHECK(run_cli("sweep --config " + cfg.string() + " --out " +
                  (dir / "e2").string() + " --sweep-n 7..3 --sweep-seeds 1")
              .rc == 2);
}
