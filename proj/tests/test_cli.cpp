#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <set>
#include <string>

using json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args)
{
    std::string cmd = std::string("SOURCE_DATE_EPOCH=0 ") + CUTSEQ_CLI_PATH + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
    int st = pclose(p);
    return {WEXITSTATUS(st), out};
}

json run_json(const std::string& args)
{
    Run r = run(args);
    REQUIRE(r.code == 0);
    return json::parse(r.out);
}

}

TEST_CASE("derive")
{
    json j = run_json("derive --word CACCCDBDCDC");
    CHECK(j["derived"] == "ACBCD");
    CHECK(j["schema"] == "cutseq.derive/1");
    CHECK(j["manifest"]["command"] == "derive");
    CHECK(j["manifest"]["flags"]["word"] == "CACCCDBDCDC");
}

TEST_CASE("families")
{
    json j = run_json("families --prefix 0,1,6 --seeds periodic");
    std::set<std::string> got(j["words"].begin(), j["words"].end());
    CHECK(got == std::set<std::string>{"per:ADADBCBD", "per:ADADBCBCCBCCBCBD", "per:ADBCBCCBCCBCBD", "per:ADBCBCCBCBD"});
}

TEST_CASE("trace")
{
    json j = run_json("trace --n 4 --theta 1.5707963 --crossings 5");
    CHECK(j["word"] == "AAAAA");
    json e = run_json("trace --theta pi/2 --crossings 3");
    CHECK(e["exact"] == true);
    CHECK(e["word"] == "AAA");
}

TEST_CASE("replaying a manifest reproduces the output")
{
    Run a = run("--seed 5 trace --theta 0.7 --crossings 50 --random-start");
    Run b = run("--seed 5 trace --theta 0.7 --crossings 50 --random-start");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("exit codes")
{
    CHECK(run("nonsense").code == 1);
    CHECK(run("derive").code == 1);
    CHECK(run("derive --word AEX").code == 1);
    CHECK(run("diagrams --word per:AD").code == 0);
    CHECK(run("trace --start 0,0 --cot 1+sqrt2 --crossings 3").code == 2);
    CHECK(run("recognize --word per:AD").code == 1);
}

TEST_CASE("other commands")
{
    CHECK(run_json("diagrams --word per:AD")["admissible"] == json({0, 1, 4, 5}));
    CHECK(run_json("generate --k 3 --i 0 --word CDBAABDBD")["generated"] == "CBDBCCBCCBDADBCCBDADBCCBCCBDBCCBCCBD");
    CHECK(run_json("seeds --k 6")["seeds"].size() == 4);
    json r = run_json("recognize --word AADBDAAAADBDBCBDBDAAAADBDAAAADBDAAAADBDBCBDBDAAADBDBDAAADB --depth 3");
    CHECK(r["diagrams"] == json({4, 7, 2}));
    json x = run_json("expand-direction --cot 2+sqrt2 --depth 60");
    CHECK(x["terminating"] == true);
    json c = run_json("complexity --theta 0.9 --crossings 20000 --max-length 8 --random-start");
    CHECK(c["matches"] == true);
    json en = run_json("enumerate --theta 0.9 --length 5");
    CHECK(en["count"] == 16);
    json co = run_json("check-coherence --word per:CCCBDBCCBDBCCBDBCBDADB --i 0 --j 1");
    CHECK(co["verdicts"][0]["reason"] == "C1");
    Run svg = run("plot --theta 0.7 --crossings 10");
    CHECK(svg.code == 0);
    CHECK(svg.out.find("<svg") != std::string::npos);
}
