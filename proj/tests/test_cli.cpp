// Runs the installed tool as a subprocess and checks exit codes and output.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
	int code = -1;
	std::string out;
};

Run run(const std::string &args, bool with_stderr = false)
{
	std::string cmd = std::string("'") + PALOMA_CLI_PATH + "' " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
	Run r;
	FILE *pipe = popen(cmd.c_str(), "r");
	REQUIRE(pipe);
	std::array<char, 4096> buf;
	std::size_t n;
	while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
		r.out.append(buf.data(), n);
	int status = pclose(pipe);
	r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
	return r;
}

std::string model(const char *name) { return std::string("'") + PALOMA_MODELS_DIR + "/" + name + "'"; }

std::string temp_file(const std::string &name, const std::string &text)
{
	fs::path p = fs::temp_directory_path() / ("paloma_test_cli_" + name);
	std::ofstream(p, std::ios::binary) << text;
	return "'" + p.string() + "'";
}

} // namespace

TEST_CASE("check accepts the example models")
{
	for (const char *name : {"scenario.paloma", "transmitter_receiver.paloma", "syntactic.paloma"}) {
		auto r = run("check " + model(name));
		CHECK(r.code == 0);
	}
}

TEST_CASE("check reports syntax errors with a position")
{
	auto r = run("check " + temp_file("semicolon.paloma", "location a = (0, 0)\nX(a) := (t, 1).X(a);\n"), true);
	CHECK(r.code == 2);
	CHECK(r.out.find(":2:1: error:") != std::string::npos);
}

TEST_CASE("check rejects dangling constants and missing files")
{
	auto r = run("check " + temp_file("dangling.paloma", "location a = (0, 0);\nX(a) := (t, 1).Y(a);\n"), true);
	CHECK(r.code == 2);
	CHECK(r.out.find("Y(a)") != std::string::npos);
	CHECK(run("check /nonexistent/model.paloma").code == 2);
}

TEST_CASE("ctmc of the scenario")
{
	auto r = run("ctmc " + model("scenario.paloma") + " --system Scenario1 --bound 100");
	CHECK(r.code == 0);
	CHECK(r.out.rfind("# states\n0\tTransmitter(l0) || Receiver(l1)\n", 0) == 0);
	std::size_t transitions = r.out.find("# transitions\n");
	REQUIRE(transitions != std::string::npos);
	std::size_t lines = 0;
	for (std::size_t i = transitions; i < r.out.size(); ++i)
		lines += r.out[i] == '\n';
	CHECK(lines == 9);

	auto dot = run("ctmc " + model("scenario.paloma") + " --system Scenario1 --format dot");
	CHECK(dot.code == 0);
	CHECK(dot.out.rfind("digraph ctmc {", 0) == 0);
}

TEST_CASE("ctmc of the blocked transmitter")
{
	auto r = run("ctmc " + model("transmitter_receiver.paloma") + " --system Transmitter");
	CHECK(r.code == 0);
	CHECK(r.out == "# states\n0\tTransmitter(l0)\n# transitions\n");
}

TEST_CASE("ctmc bound")
{
	CHECK(run("ctmc " + model("scenario.paloma") + " --system Scenario1 --bound 2").code == 3);
	CHECK(run("ctmc " + model("scenario.paloma") + " --system Nope").code == 2);
}

TEST_CASE("default bound comes from the environment")
{
	std::string env = "PALOMA_BOUND=2 ";
	std::string cmd = env + "'" + PALOMA_CLI_PATH + "' ctmc " + model("scenario.paloma") + " --system Scenario1 >/dev/null 2>&1";
	int status = std::system(cmd.c_str());
	CHECK(WEXITSTATUS(status) == 3);
}

TEST_CASE("rate queries")
{
	auto r = run("rate " + model("scenario.paloma") + " --action '!!message_move' --loc l0 --context empty --system Scenario1");
	CHECK(r.code == 0);
	CHECK(r.out == "2\n");
	r = run("rate " + model("scenario.paloma") + " --action '??message_move' --loc l1 --system Scenario1");
	CHECK(r.out == "1.5\n");
	r = run("rate " + model("transmitter_receiver.paloma") + " --action '!!message' --system Transmitter");
	CHECK(r.out == "0\n");
	r = run("rate " + model("syntactic.paloma") +
	        " --action message --system Sys --context empty");
	CHECK(r.out == "0\n");
	auto spont = temp_file("tick.paloma", "location a = (0, 0); X(a) := (tick, 2.5).X(a); system S := X(a);");
	CHECK(run("rate " + spont + " --action tick --system S").out == "2.5\n");
	CHECK(run("rate " + spont + " --action '!!' --system S").code == 2);
	CHECK(run("rate " + spont + " --action tick --system S --loc nowhere").code == 2);
}

TEST_CASE("bisim verdicts and exit codes")
{
	auto r = run("bisim " + model("scenario.paloma") + " --left Scenario1 --right Scenario2 --context empty");
	CHECK(r.code == 0);
	CHECK(r.out.find("witness: [[-1, 0], [0, 1]] + (0, 0)") != std::string::npos);

	std::string tr = model("transmitter_receiver.paloma");
	CHECK(run("bisim " + tr + " --left Transmitter --right Receiver").code == 0);
	r = run("bisim " + tr + " --left Transmitter --right Receiver --context Transmitter");
	CHECK(r.code == 1);
	CHECK(r.out.find("!!message") != std::string::npos);

	CHECK(run("bisim " + model("scenario.paloma") + " --left Scenario1 --right Scenario2 --bound 2").code == 3);
	CHECK(run("bisim " + model("scenario.paloma") + " --left Scenario1 --right Scenario2 --mode naive").code == 1);
	CHECK(run("bisim " + model("scenario.paloma") +
	          " --left Scenario1 --right Scenario2 --mode fixed --matrix -1,0,0,1 --offset 0,0")
	          .code == 0);
	CHECK(run("bisim " + model("scenario.paloma") + " --left Scenario1 --right Scenario2 --mode fixed --matrix 2,0,0,1 --offset 0,0")
	          .code == 2);
}

TEST_CASE("output file")
{
	fs::path p = fs::temp_directory_path() / "paloma_test_cli_out.tsv";
	fs::remove(p);
	auto r = run("--out '" + p.string() + "' ctmc " + model("scenario.paloma") + " --system Scenario1");
	CHECK(r.code == 0);
	CHECK(r.out.empty());
	std::ifstream in(p);
	std::string first;
	std::getline(in, first);
	CHECK(first == "# states");
}
