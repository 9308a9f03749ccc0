#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include <json.hpp>

#include "idealfunc/cli.hpp"

namespace {

struct Result
{
    int         code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = idealfunc::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::set<std::string> keys(const nlohmann::json& j)
{
    std::set<std::string> out;
    for (auto it = j.begin(); it != j.end(); ++it) out.insert(it.key());
    return out;
}

} // namespace

TEST_CASE("sum")
{
    auto r = run({"sum", "--field", "q", "--fn", "qfree", "--order", "2", "--x", "100"});
    CHECK(r.code == 0);
    CHECK(r.out == "61\n");
    auto slow = run({"sum", "--field", "q:-1", "--fn", "qfree", "--order", "2", "--x", "10"});
    auto fast = run({"sum", "--field", "q:-1", "--fn", "qfree", "--order", "2", "--x", "10", "--fast"});
    CHECK(slow.code == 0);
    CHECK(slow.out == fast.out);
    CHECK(run({"sum", "--field", "q", "--fn", "mobius", "--order", "1", "--x", "10"}).out == "-1\n");
    auto j = nlohmann::json::parse(
        run({"sum", "--field", "q", "--fn", "liouville", "--order", "2", "--x", "10", "--format", "json"}).out);
    CHECK(j["value"] == "0");
    CHECK(j["field"] == "q");
}

TEST_CASE("usage errors exit 1 with a message")
{
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"sum", "--field", "q:12", "--fn", "qfree", "--order", "2", "--x", "10"},
             {"sum", "--field", "q", "--fn", "mobius", "--order", "2", "--x", "10", "--fast"},
             {"sum", "--field", "q", "--fn", "qfree", "--order", "1", "--x", "10"},
             {"sum", "--field", "q", "--fn", "euler", "--order", "2", "--x", "10"},
             {"sum", "--field", "q", "--fn", "qfree", "--order", "2", "--x", "10", "--bogus"},
             {"sum", "--field", "q", "--fn", "qfree", "--order", "2"},
             {"nosuch"},
             {},
             {"verify", "--suite", "nosuch", "--field", "q"},
             {"zeta", "--field", "q", "--s", "1"},
             {"zeta", "--field", "q", "--s", "two"},
             {"report", "--theorem", "4", "--field", "q", "--order", "2", "--grid", "10:100:3"},
             {"report", "--theorem", "1", "--field", "q", "--order", "2", "--grid", "10:100"},
             {"report", "--theorem", "1", "--field", "q", "--order", "2", "--grid", "100:10:3"},
             {"eval", "--field", "q:-1", "--fn", "mobius", "--order", "2", "--ideal", "3"},
             {"eval", "--field", "q:-1", "--fn", "mobius", "--order", "2", "--ideal", "5:2"},
             {"enumerate", "--field", "q", "--x", "10", "--format", "xml"},
             {"field", "--field", "table:/no/such/file"},
         }) {
        auto r = run(args);
        CHECK_MESSAGE(r.code == 1, "args: " << (args.empty() ? "" : args[0]));
        CHECK_FALSE(r.err.empty());
        CHECK(r.out.empty());
    }
}

TEST_CASE("help exits 0")
{
    auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("enumerate") != std::string::npos);
    CHECK(run({"sum", "--help"}).code == 0);
}

TEST_CASE("enumerate")
{
    auto r = run({"enumerate", "--field", "q:-1", "--x", "10"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("norm,factorization\n1,1\n2,2^1[1,0]\n", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 10);
    auto j = nlohmann::json::parse(run({"enumerate", "--field", "q", "--x", "6", "--format", "json"}).out);
    CHECK(j.size() == 6);
    CHECK(j[5]["factorization"] == "2^1[1,0]*3^1[1,0]");
}

TEST_CASE("eval")
{
    CHECK(run({"eval", "--field", "q", "--fn", "jordan", "--order", "2", "--ideal", "6"}).out == "24\n");
    CHECK(run({"eval", "--field", "q", "--fn", "mobius", "--order", "2", "--ideal", "4"}).out == "-1\n");
    CHECK(run({"eval", "--field", "q", "--fn", "liouville", "--order", "1", "--ideal", "12"}).out == "-1\n");
    // norm 25 in Q(i): index 0 is P*P', index 1 is P^2, index 2 is P'^2
    CHECK(run({"eval", "--field", "q:-1", "--fn", "qfree", "--order", "2", "--ideal", "25:1"}).out == "0\n");
    CHECK(run({"eval", "--field", "q:-1", "--fn", "qfree", "--order", "2", "--ideal", "25:0"}).out == "1\n");
}

TEST_CASE("analytic commands emit value, tail_bound, method")
{
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"zeta", "--field", "q", "--s", "2"},
             {"zeta", "--field", "q:-1", "--s", "2", "--tol", "1e-6"},
             {"zeta", "--field", "q:5", "--s", "3", "--method", "series"},
             {"constant", "--field", "q", "--order", "2"},
             {"constant", "--field", "q:-1", "--order", "3"},
         }) {
        auto r = run(args);
        REQUIRE(r.code == 0);
        auto j = nlohmann::json::parse(r.out);
        CHECK(keys(j) == std::set<std::string>{"value", "tail_bound", "method"});
        CHECK(j["tail_bound"].get<double>() >= 0);
    }
    auto j = nlohmann::json::parse(run({"zeta", "--field", "q", "--s", "2"}).out);
    CHECK(j["value"].get<double>() == doctest::Approx(1.6449340668482264).epsilon(1e-12));
    CHECK(run({"zeta", "--field", "q", "--s", "2", "--format", "plain"}).out.find('.') != std::string::npos);
}

TEST_CASE("report")
{
    auto r = run({"report", "--theorem", "3", "--field", "q", "--order", "2", "--grid", "10:1000:3"});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "field,fn,k,x,raw,main,remainder,normalizer,normalized");
    std::getline(lines, line);
    std::getline(lines, line);
    CHECK(line.rfind("q,Q,2,100,61,", 0) == 0);
    auto r2 = run({"report", "--theorem", "2", "--field", "q:-1", "--order", "1", "--grid", "1000:1000000:4"});
    CHECK(std::count(r2.out.begin(), r2.out.end(), '\n') == 1 + 2 * 4);
}

TEST_CASE("verify")
{
    auto r = run({"verify", "--suite", "identities", "--field", "q:-1", "--xmax", "400", "--kmax", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS abs_mu_k_as_mu1_sum tested=") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
    auto c = run({"verify", "--suite", "counting", "--field", "q:5", "--xmax", "2000", "--format", "json"});
    CHECK(c.code == 0);
    auto j = nlohmann::json::parse(c.out);
    CHECK(j["passed"] == true);
    CHECK(j["checks"].size() >= 5);
}

TEST_CASE("field")
{
    auto j = nlohmann::json::parse(run({"field", "--field", "q:-5", "--primes", "10", "--format", "json"}).out);
    CHECK(j["discriminant"] == -20);
    CHECK(j["degree"] == 2);
    CHECK(j["primes"].size() == 6);  // norms 2, 3, 3, 5, 7, 7
    auto tab = run({"field", "--field", std::string("table:") + TEST_DATA_DIR + "/pure_cubic.txt"});
    CHECK(tab.code == 0);
    CHECK(tab.out.find("degree 3") != std::string::npos);
}

TEST_CASE("table designations run through every counting command")
{
    const std::string t = std::string("table:") + TEST_DATA_DIR + "/pure_cubic.txt";
    auto a = run({"sum", "--field", t, "--fn", "qfree", "--order", "2", "--x", "10000"});
    auto b = run({"sum", "--field", t, "--fn", "qfree", "--order", "2", "--x", "10000", "--fast"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(run({"report", "--theorem", "3", "--field", t, "--order", "2", "--grid", "100:10000:3"}).code == 0);
    CHECK(run({"sum", "--field", t, "--fn", "qfree", "--order", "2", "--x", "1e6"}).code == 1);
}

TEST_CASE("output does not depend on the worker count")
{
    const std::vector<std::vector<std::string>> commands = {
        {"sum", "--field", "q:2", "--fn", "liouville", "--order", "1", "--x", "300000"},
        {"report", "--theorem", "1", "--field", "q:-1", "--order", "2", "--grid", "1000:300000:5"},
        {"zeta", "--field", "q:-5", "--s", "1.5", "--method", "series"},
    };
    std::vector<std::string> reference;
    setenv("IDEALFUNC_THREADS", "1", 1);
    for (const auto& c : commands) reference.push_back(run(c).out);
    setenv("IDEALFUNC_THREADS", "4", 1);
    for (size_t i = 0; i < commands.size(); ++i) CHECK(run(commands[i]).out == reference[i]);
    unsetenv("IDEALFUNC_THREADS");
}
