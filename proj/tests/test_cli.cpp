#include <sstream>

#include "cli.hpp"
#include "doctest.h"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = metab::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("reduce") {
    auto r = run({"reduce", "-d", "2", "a2 a1"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "{\"schema\":1,\"d\":2,\"q\":[1,1],\"n\":[{\"i\":1,\"j\":2,\"poly\":{\"rank\":2,\"terms\":[{\"exp\":[0,0],"
          "\"coef\":-1}]}}]}\n");
    r = run({"--format", "text", "reduce", "-d", "2", "a2 a1"});
    CHECK(r.out == "(s1*s2, -x[1,2])\n");
    r = run({"reduce", "-d", "2", "[a1,a2]", "--format", "text"});
    CHECK(r.out == "(1, x[1,2])\n");
}

TEST_CASE("eq and comm") {
    auto r = run({"eq", "-d", "2", "a1 a1^-1", "e", "--format", "text"});
    CHECK(r.code == 0);
    CHECK(r.out == "true\n");
    r = run({"eq", "-d", "2", "a1 a2", "a2 a1", "--format", "text"});
    CHECK(r.code == 1);
    CHECK(r.out == "false\n");
    r = run({"eq", "-d", "2", "a1 a2", "a2 a1 [a1,a2]"});
    CHECK(r.out == "{\"schema\":1,\"equal\":true}\n");
    r = run({"comm", "-d", "2", "a1", "a2^2", "--format", "text"});
    CHECK(r.out == "x[1,2]^(1 + s2)\n");
}

TEST_CASE("divrem") {
    auto r = run({"divrem", "-d", "2", "--vars", "1,2", "s1^2*s2", "1 - s1^2", "1 + s2", "--format", "text"});
    CHECK(r.code == 0);
    CHECK(r.out == "quotient 1: -s2\nquotient 2: 1\nremainder: -1\n");
    r = run({"divrem", "-d", "1", "--vars", "1", "s1^3", "1 + s1 + s1^2", "--format", "text"});
    CHECK(r.out == "quotient 1: -1 + s1\nremainder: 1\n");
    CHECK(run({"divrem", "-d", "1", "--vars", "1", "s1", "2 + s1"}).code == 3);
    CHECK(run({"divrem", "-d", "1", "--vars", "1,1", "s1", "1 + s1"}).code == 3);
}

TEST_CASE("residue") {
    auto r = run({"residue", "-d", "2", "--split-c", "1", "--n", "1", "--index-t", "1", "x[1,2]^(s2)", "--format",
                  "text"});
    CHECK(r.code == 0);
    CHECK(r.out == "-x[1,2]\nin_O: false\nin_M: false\n");
    r = run({"residue", "-d", "3", "-c", "1", "-n", "1", "x[1,3]", "--explain", "--format", "text"});
    CHECK(r.out.find("x[1,3] window (inf, 2, 1) generators 1 - s2^2; 1 + s3\n") != std::string::npos);
    r = run({"residue", "-d", "2", "-c", "1", "-n", "1", "--explain", "x[1,2]^(1 - s2^2)"});
    CHECK(r.out.find("\"in_O\":true") != std::string::npos);
    CHECK(r.out.find("\"window\":[null,1]") != std::string::npos);
    CHECK(r.out.find("\"m\":1") != std::string::npos);
}

TEST_CASE("folner stats") {
    auto r = run({"folner", "stats", "-d", "2", "-c", "1", "-n", "1", "--g", "a2", "--side", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"ratio\":{\"num\":3,\"den\":4}") != std::string::npos);
    CHECK(r.out.find("\"params\":{\"d\":2,\"c\":1,\"n\":1,\"t\":1,\"m\":1,\"side\":3}") != std::string::npos);
    r = run({"folner", "stats", "-d", "2", "-c", "1", "-n", "4", "--g", "a2", "--format", "text"});
    CHECK(r.out.find("adaptedness: 57/64 (0.890625)\n") != std::string::npos);
    r = run({"folner", "stats", "-d", "2", "-c", "1", "-n", "1", "--side", "9", "--format", "text"});
    CHECK(r.out.find("folner bound a1: 1/2 (0.500000)\n") != std::string::npos);
}

TEST_CASE("verify") {
    auto a = run({"verify", "--suite", "division", "--trials", "200", "--seed", "7"});
    auto b = run({"verify", "--suite", "division", "--trials", "200", "--seed", "7"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"seed\":7") != std::string::npos);
    CHECK(a.out.find("\"failures\":0") != std::string::npos);
    auto t = run({"verify", "--suite", "retraction", "--trials", "20", "--seed", "3", "--format", "text"});
    CHECK(t.out.rfind("seed 3 trials 20\n", 0) == 0);
    CHECK(run({"verify", "--suite", "nope"}).code == 3);
}

TEST_CASE("exit codes") {
    auto r = run({"reduce", "-d", "2", "a3"});
    CHECK(r.code == 2);
    CHECK(r.err.find("position 1") != std::string::npos);
    CHECK(run({"reduce", "-d", "2", "a1 ]"}).code == 2);
    CHECK(run({"reduce", "a1"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"residue", "-d", "2", "-c", "3", "-n", "1", "x[1,2]"}).code == 3);
    CHECK(run({"folner", "stats", "-d", "2", "-c", "1", "-n", "0"}).code == 3);
    CHECK(run({"reduce", "-d", "2", "--format", "xml", "a1"}).code == 2);
}
