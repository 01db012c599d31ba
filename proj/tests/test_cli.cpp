#include <array>
#include <cstdio>
#include <memory>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
	int status = -1;
	std::string out;
};

Run qsc(const std::string& args)
{
	const std::string cmd = std::string(QSC_BINARY) + " " + args + " 2>/dev/null";
	Run r;
	FILE* p = popen(cmd.c_str(), "r");
	REQUIRE(p != nullptr);
	std::array<char, 4096> buf{};
	std::size_t got = 0;
	while ((got = fread(buf.data(), 1, buf.size(), p)) > 0)
		r.out.append(buf.data(), got);
	const int st = pclose(p);
	r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
	return r;
}

nlohmann::json qsc_json(const std::string& args, int expect = 0)
{
	const Run r = qsc("--json " + args);
	CHECK(r.status == expect);
	return nlohmann::json::parse(r.out);
}

nlohmann::json without_meta(nlohmann::json j)
{
	j.erase("meta");
	return j;
}

} // namespace

TEST_CASE("three-voter majority paradox")
{
	const auto j = qsc_json("condorcet paradox --f maj --n 3 --mode exhaustive");
	CHECK(j["command"] == "condorcet paradox");
	CHECK(j["results"]["fraction"] == "1/18");
	CHECK(j["results"]["p_paradox"].get<double>() == doctest::Approx(1.0 / 18.0));
	CHECK(j["passed"] == true);
	CHECK(j["inputs"]["seed"] == 1);
	CHECK(j["meta"].contains("runtime_ms"));
}

TEST_CASE("Borda manipulation record")
{
	const auto j = qsc_json("manip check --rule borda --k 4 --n 2 --profile abcd,cadb");
	CHECK(j["results"]["winner"] == "a");
	const auto& m = j["results"]["manipulation"];
	CHECK(m["voter"] == 2);
	CHECK(m["misreport"] == "cdba");
	CHECK(m["manipulated_outcome"] == "c");
	CHECK(j["verdicts"]["record_valid"] == true);
}

TEST_CASE("exit codes")
{
	CHECK(qsc("").status == 1);
	CHECK(qsc("condorcet paradox --mode bogus").status == 1);
	CHECK(qsc("analyze --f nosuch:n=3").status == 1);
	CHECK(qsc("dynamics run --graph complete:n=5").status == 1);
	// three-voter estimate is far from the limit constant
	CHECK(qsc("gaussian guilbaud --n 3 --samples 20000").status == 2);
	CHECK(qsc("gaussian guilbaud").status == 0);
}

TEST_CASE("output is independent of the thread count")
{
	for (const char* args : {"manip census --rule borda --k 4 --n 3 --mode mc --samples 30000",
		     "condorcet paradox --f maj --n 31 --mode mc --samples 50000", "aggregate tree-ising --r 3 --samples 30000",
		     "dynamics retention --runs 200"}) {
		const auto a = qsc_json(std::string("--threads 1 ") + args);
		const auto b = qsc_json(std::string("--threads 2 ") + args);
		CHECK(without_meta(a) == without_meta(b));
		const auto c = qsc_json(std::string("--seed 9 --threads 1 ") + args);
		CHECK(c["inputs"]["seed"] == 9);
	}
}

TEST_CASE("CSV and text renderings")
{
	const Run csv = qsc("--csv dynamics run --graph torus:side=6 --p 0.5");
	CHECK(csv.status == 0);
	CHECK(csv.out.rfind("t,L_t,J_t,hamming_to_final\n", 0) == 0);
	const Run text = qsc("gaussian guilbaud");
	CHECK(text.out.find("constant: 0.0877398") != std::string::npos);
}

TEST_CASE("config manifest selects a subcommand")
{
	const std::string path = std::string(QSC_TEST_TMP) + "/paradox.toml";
	FILE* f = std::fopen(path.c_str(), "w");
	REQUIRE(f != nullptr);
	std::fputs("[condorcet.paradox]\nf = \"maj\"\nn = 5\nmode = \"exhaustive\"\n", f);
	std::fclose(f);
	const auto j = qsc_json("--config " + path);
	CHECK(j["results"]["fraction"] == "5/72");
}
