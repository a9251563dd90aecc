#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifndef BASSMONOID_BIN
#define BASSMONOID_BIN "bassmonoid"
#endif

namespace {

struct run_result {
    int exit_code = -1;
    std::string out;
};

run_result run(std::string const & args)
{
    std::string cmd = std::string(BASSMONOID_BIN) + " " + args + " 2>/dev/null";
    FILE * pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    run_result r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    int const status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

} // namespace

TEST_CASE("cli: local report carries the expected counts") {
    auto r = run("local --poly x^2-243 --prime 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"S\": \"2\"") != std::string::npos);
    CHECK(r.out.find("\"f\": \"4\"") != std::string::npos);
    CHECK(r.out.find("\"class_monoid_size\": \"3\"") != std::string::npos);
    CHECK(r.out.find("\"lambda\": \"13\"") != std::string::npos);
}

TEST_CASE("cli: reports are byte-identical across runs") {
    auto a = run("local --poly x^2-243 --prime 3 --verify");
    auto b = run("local --poly x^2-243 --prime 3 --verify");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    auto c = run("global --poly x^2+64");
    auto d = run("global --poly x^2+64");
    CHECK(c.exit_code == 0);
    CHECK(c.out == d.out);
}

TEST_CASE("cli: exit codes") {
    CHECK(run("local --poly not-a-poly --prime 3").exit_code == 2);
    CHECK(run("local --poly x^2-5x --prime 5").exit_code == 2); /* reducible over Z */
    CHECK(run("local --poly x^2-5x --prime 5 --allow-reducible-local").exit_code == 0);
    CHECK(run("local --poly x^2+3 --prime 4").exit_code == 2); /* 4 is not prime */
    /* not Bass: Z_p + p*O_E shape via a polynomial: x^3 - 81 over Q_3 */
    CHECK(run("local --poly x^3-81 --prime 3").exit_code == 3);
    CHECK(run("global --poly x^2-5x").exit_code == 2);
}

TEST_CASE("cli: global report") {
    auto r = run("global --poly x^2+64");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"count_nontrivial_classes\": \"4\"") != std::string::npos);
    auto r2 = run("global --poly x^2+25 --verify");
    CHECK(r2.exit_code == 0);
    CHECK(r2.out.find("\"count_nontrivial_classes\": \"2\"") != std::string::npos);
    CHECK(r2.out.find("\"matches\": true") != std::string::npos);
}

TEST_CASE("cli: verify subcommand") {
    /* empty corpus passes */
    CHECK(run("verify - < /dev/null").exit_code == 0);
    /* a tiny corpus with a non-Bass entry still passes (skip semantics) */
    {
        FILE * f = fopen("cli_corpus_tmp.txt", "w");
        REQUIRE(f);
        fputs("x^2-243 @ 3\nx^3-81 @ 3\nx^2+64\n", f);
        fclose(f);
        auto r = run("verify cli_corpus_tmp.txt");
        CHECK(r.exit_code == 0);
        CHECK(r.out.find("\"failures\": 0") != std::string::npos);
        std::remove("cli_corpus_tmp.txt");
    }
}
