#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ballspace/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               fs::path("ballspace-test-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content) const {
        fs::path p = path / name;
        std::ofstream out(p);
        out << content;
        return p.string();
    }
};

struct Run {
    int exit_code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = ballspace::dispatch(args, out, err);
    return Run{code, out.str(), err.str()};
}

const char* kI1 = "ballspace v1\nground 1 2 3\nball 1 2\nball 2 3\n";
const char* kI2 = "ballspace v1\nground 1 2 3\nball 1\nball 1 2\nball 1 2 3\n";

} // namespace

TEST_CASE("classify prints the table and exits 0") {
    TempDir dir;
    Run r = run({"classify", dir.file("i1.doc", kI1)});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("S5 (intersection is a ball)") != std::string::npos);
    CHECK(r.out.find("S*: no") != std::string::npos);

    Run w = run({"classify", "--witness", dir.file("i1b.doc", kI1)});
    CHECK(w.exit_code == 0);
    CHECK(w.out.find("witness S2c") != std::string::npos);
    CHECK(w.out.find("no-ball-inside") != std::string::npos);

    Run j = run({"classify", "--json", dir.file("i1c.doc", kI1)});
    CHECK(j.exit_code == 0);
    CHECK(j.out.find("\"S2c\": false") != std::string::npos);

    Run x = run({"classify", "--exhaustive", dir.file("i1d.doc", kI1)});
    CHECK(x.exit_code == 0);
}

TEST_CASE("input errors exit 2") {
    TempDir dir;
    Run r = run({"classify", dir.file("bad.doc", "ballspace v1\nground 1 2\nball 9\n")});
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);
    Run missing = run({"classify", (dir.path / "nope.doc").string()});
    CHECK(missing.exit_code == 2);
}

TEST_CASE("construct emits documents") {
    TempDir dir;
    std::string i1 = dir.file("i1.doc", kI1);
    Run closed = run({"construct", "--op", "close-int", i1});
    CHECK(closed.exit_code == 0);
    CHECK(closed.out == "ballspace v1\nground 1 2 3\nball 2\nball 1 2\nball 2 3\n");

    Run topo = run({"construct", "--op", "topology", i1});
    CHECK(topo.exit_code == 0);
    CHECK(topo.out.find("topology v1") == 0);
    CHECK(topo.out.find("closed\n") != std::string::npos);

    std::string i2 = dir.file("i2.doc", kI2);
    Run sub = run({"construct", "--op", "subspace", "--region", "2 3", i2});
    CHECK(sub.exit_code == 0);
    CHECK(sub.out == "ballspace v1\nground 2 3\nball 2\nball 2 3\n");

    Run scl = run({"construct", "--op", "scl", "--set", "2", i2});
    CHECK(scl.exit_code == 0);
    CHECK(scl.out == "1 2\n");

    Run uni = run({"construct", "--op", "union", i1, i2});
    CHECK(uni.exit_code == 0);
    CHECK(uni.out.find("ball 1\n") != std::string::npos);
}

TEST_CASE("product reproduces the counterexample family") {
    TempDir dir;
    std::string y = dir.file("y.doc", "ballspace v1\nground 1 2\nball 1\n");
    Run r = run({"product", "--mode", "pr", y, y});
    CHECK(r.exit_code == 0);
    CHECK(r.out == "ballspace v1\nground 1|1 1|2 2|1 2|2\nball 1|1 1|2\nball 1|1 2|1\n"
                   "ball 1|1 1|2 2|1 2|2\n");
}

TEST_CASE("instance builds ball spaces from data files") {
    TempDir dir;
    std::string metric = dir.file("m.doc", "metric v1\npoints 0 1\nd 0 1 1\nradii 1/2\n");
    Run m = run({"instance", "--kind", "metric", metric});
    CHECK(m.exit_code == 0);
    CHECK(m.out == "ballspace v1\nground 0 1\nball 0\nball 1\n");

    std::string um = dir.file("u.doc",
                              "ultrametric v1\npoints a b c\nvalues 0 1 2\n"
                              "u a b 1\nu a c 2\nu b c 2\n");
    Run u = run({"instance", "--kind", "ultrametric", "--variant", "precise", um});
    CHECK(u.exit_code == 0);
    CHECK(u.out.find("ball a b\n") != std::string::npos);

    std::string poset = dir.file("p.doc", "poset v1\nelements p q r\nle p q\nle p r\n");
    Run p = run({"instance", "--kind", "poset", "--variant", "segments", poset});
    CHECK(p.exit_code == 0);
    CHECK(p.out.find("ball p q\n") != std::string::npos);

    std::string ck = dir.file("ck.doc", "ck v1\npoints 0 1\nd 0 1 1\nphi 0 0\nphi 1 2\n");
    Run c = run({"instance", "--kind", "ck", ck});
    CHECK(c.exit_code == 0);
    CHECK(c.out == "ballspace v1\nground 0 1\nball 0\nball 0 1\n");
    Run ca = run({"instance", "--kind", "ck", "--assignment", ck});
    CHECK(ca.exit_code == 0);
    CHECK(ca.out == "bx 0: 0\nbx 1: 0 1\n");

    std::string ot = dir.file("ot.doc",
                              "ot v1\npoints 0 1\nd 0 1 1\nphi 0 1 2\nphi 1 0 -2\nx0 1\n");
    Run o = run({"instance", "--kind", "ot", ot});
    CHECK(o.exit_code == 0);
    CHECK(o.out == "ballspace v1\nground 0 1\nball 0\nball 0 1\n");

    std::string bad = dir.file("bad.doc",
                               "metric v1\npoints a b c\nd a b 1/2\nd a c 2\nd b c 1/2\n");
    Run invalid = run({"instance", "--kind", "metric", bad});
    CHECK(invalid.exit_code == 2);
    CHECK(invalid.err.find("triangle") != std::string::npos);
}

TEST_CASE("fixpoint verifies theorems with the documented exit codes") {
    TempDir dir;
    std::string i2 = dir.file("i2.doc", kI2);
    Run good = run({"fixpoint", "--map", "1:1,2:1,3:2", "--theorem", "basic1b", i2});
    CHECK(good.exit_code == 0);
    CHECK(good.out.find("hypotheses: hold") != std::string::npos);
    CHECK(good.out.find("unique fixed point: 1") != std::string::npos);

    // identity map: f-closed balls are not all f-contracting, hypotheses fail
    Run hyp = run({"fixpoint", "--map", "1:1,2:2,3:3", "--theorem", "basic1b", i2});
    CHECK(hyp.exit_code == 1);
    CHECK(hyp.out.find("hypotheses: fail") != std::string::npos);

    Run descent = run({"fixpoint", "--map", "1:1,2:1,3:2", "--descend", "--start", "1 2 3", i2});
    CHECK(descent.exit_code == 0);
    CHECK(descent.out.find("fixed point: 1") != std::string::npos);

    Run kt = run({"fixpoint", "--map", "1:1,2:1,3:2", "--kt-suite", i2});
    CHECK(kt.exit_code == 0);
    CHECK(kt.out.find("hypothesis (balls): holds") != std::string::npos);
    CHECK(kt.out.find("induced families equal: yes") != std::string::npos);

    Run bx = run({"fixpoint", "--map", "1:1,2:1,3:2", "--check-bx", "--bx", "1:1;2:1 2;3:1 2 3",
                  i2});
    CHECK(bx.exit_code == 0);
    CHECK(bx.out.find("C2s: yes") != std::string::npos);

    std::string ck = dir.file("ck.doc", "ck v1\npoints 0 1\nd 0 1 1\nphi 0 0\nphi 1 2\n");
    Run caristi =
        run({"fixpoint", "--kind", "ck", "--map", "0:0,1:0", "--theorem", "caristikirk", ck});
    CHECK(caristi.exit_code == 0);
    CHECK(caristi.out.find("fixed point: 0") != std::string::npos);

    std::string poset = dir.file("p.doc", "poset v1\nelements p q r\nle p q\nle p r\n");
    Run wbw = run({"fixpoint", "--kind", "poset", "--map", "p:q,q:q,r:r", "--theorem", "wbw",
                   poset});
    CHECK(wbw.exit_code == 0);
}

TEST_CASE("mine summarizes enumeration runs") {
    Run impl = run({"mine", "--n", "3", "--mode", "implications"});
    CHECK(impl.exit_code == 0);
    CHECK(impl.out.find("127 spaces, 0 violations") == 0);

    Run eq = run({"mine", "--n", "3", "--mode", "equivalence"});
    CHECK(eq.exit_code == 0);
    CHECK(eq.out.find("127 spaces, 0 violations") == 0);
    CHECK(eq.out.find("tree-like") != std::string::npos);

    Run witness =
        run({"mine", "--n", "3", "--mode", "witness", "--propA", "S1c", "--propB", "S2c"});
    CHECK(witness.exit_code == 1);
    CHECK(witness.out.find("S1c holds, S2c fails") != std::string::npos);
    CHECK(witness.out.find("ballspace v1") != std::string::npos);

    Run exhausted =
        run({"mine", "--n", "3", "--mode", "witness", "--propA", "S4c", "--propB", "S5c"});
    CHECK(exhausted.exit_code == 0);
    CHECK(exhausted.out.find("exhausted") != std::string::npos);

    Run agree = run({"mine", "--n", "3", "--mode", "agreement", "--samples", "0"});
    CHECK(agree.exit_code == 0);
    CHECK(agree.out.find("127 spaces checked, 0 mismatches") == 0);

    Run canonical = run({"mine", "--n", "4", "--mode", "implications", "--canonical", "--jobs",
                         "4"});
    CHECK(canonical.exit_code == 0);
    CHECK(canonical.out.find("32767 spaces, 0 violations") == 0);
}

TEST_CASE("help and bad arguments") {
    Run help = run({"--help"});
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("classify") != std::string::npos);
    Run bad = run({"mine", "--n", "3", "--mode", "bogus"});
    CHECK(bad.exit_code == 2);
    Run none = run({});
    CHECK(none.exit_code == 2);
}
