// The reference generator against hand-derived chains, then the engine
// against the reference generator.

#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "oracle/brute_force.hpp"
#include "paloma/semantics.hpp"
#include "support/random_models.hpp"

using namespace paloma;
using testsupport::must_load;

namespace {

std::map<oracle::EdgeKey, double> engine_edges(const Ctmc &c)
{
	std::map<oracle::EdgeKey, double> out;
	for (auto &e : c.edges)
		out[{c.keys[e.src], c.keys[e.dst], std::string(kind_name(e.kind)), e.label}] += e.rate;
	return out;
}

void same_chain(const Model &m, const ModelComponent &sys, const std::string &source)
{
	auto ref = oracle::explore(m, sys, 500);
	auto got = build_ctmc(m, sys, 500);
	INFO(source);
	REQUIRE(ref.exceeded == (got.status == CtmcResult::Status::BoundExceeded));
	if (ref.exceeded)
		return;
	// discovery order depends on outcome enumeration order, so compare sets
	CHECK(ref.states.front() == got.ctmc.keys.front());
	std::set<std::string> a(ref.states.begin(), ref.states.end()), b(got.ctmc.keys.begin(), got.ctmc.keys.end());
	CHECK(a == b);
	CHECK(b.size() == got.ctmc.keys.size());
	auto mine = engine_edges(got.ctmc);
	REQUIRE(mine.size() == ref.edges.size());
	for (auto &[key, rate] : ref.edges) {
		auto it = mine.find(key);
		REQUIRE(it != mine.end());
		CHECK(std::abs(it->second - rate) <= 1e-9 * std::max(1.0, std::abs(rate)));
	}
}

} // namespace

TEST_CASE("reference chain of the mirrored scenario matches the hand derivation")
{
	// r = 2, p = q = 0.75, v = 1.5
	Model m = must_load(testsupport::read_model_file("scenario.paloma"));
	auto chain = oracle::explore(m, *m.find_system("Scenario1"), 100);
	REQUIRE(chain.states == std::vector<std::string>{
		"Transmitter(l0) || Receiver(l1)",
		"Transmitter(l1) || Receiver(l0)",
		"Transmitter(l1) || Receiver(l1)",
		"Transmitter(l0) || Receiver(l0)",
	});
	auto at = [&](int a, int b) { return chain.edges.at({chain.states[a], chain.states[b], "unicast", "message_move"}); };
	CHECK(at(0, 1) == doctest::Approx(1.5).epsilon(1e-12));
	CHECK(at(0, 2) == doctest::Approx(0.5).epsilon(1e-12));
	CHECK(at(1, 0) == doctest::Approx(1.5).epsilon(1e-12));
	CHECK(at(1, 3) == doctest::Approx(0.5).epsilon(1e-12));
	CHECK(at(2, 3) == doctest::Approx(1.5).epsilon(1e-12));
	CHECK(at(2, 0) == doctest::Approx(0.5).epsilon(1e-12));
	CHECK(at(3, 2) == doctest::Approx(1.5).epsilon(1e-12));
	CHECK(at(3, 1) == doctest::Approx(0.5).epsilon(1e-12));
	CHECK(chain.edges.size() == 8);
}

TEST_CASE("reference chain of a lone blocked transmitter is a single silent state")
{
	Model m = must_load(testsupport::read_model_file("transmitter_receiver.paloma"));
	auto chain = oracle::explore(m, *m.find_system("Transmitter"), 100);
	CHECK(chain.states.size() == 1);
	CHECK(chain.edges.empty());
}

TEST_CASE("reference chain of a broadcast with two receivers")
{
	Model m = must_load(R"(
		location a = (0, 0);
		location b = (1, 0);
		S(a) := !(m, 4)@Ir{all}.S(a);
		R(b) := ?(m, 0.5)@Prob{0.5}.Q(b);
		Q(b) := (t, 1).R(b);
		system Main := S(a) || R(b) || R(b);
	)");
	auto chain = oracle::explore(m, *m.find_system("Main"), 100);
	// each receiver succeeds with 0.25: outcomes 1/16, 3/16, 3/16, 9/16 of rate 4
	const std::string s0 = "S(a) || R(b) || R(b)";
	CHECK(chain.edges.at({s0, "S(a) || Q(b) || Q(b)", "broadcast", "m"}) == doctest::Approx(0.25));
	CHECK(chain.edges.at({s0, "S(a) || Q(b) || R(b)", "broadcast", "m"}) == doctest::Approx(0.75));
	CHECK(chain.edges.at({s0, "S(a) || R(b) || Q(b)", "broadcast", "m"}) == doctest::Approx(0.75));
	CHECK(chain.edges.at({s0, s0, "broadcast", "m"}) == doctest::Approx(2.25));
}

TEST_CASE("engine chain equals the reference on the example models")
{
	Model m = must_load(testsupport::read_model_file("scenario.paloma"));
	same_chain(m, *m.find_system("Scenario1"), "Scenario1");
	same_chain(m, *m.find_system("Scenario2"), "Scenario2");
	Model t = must_load(testsupport::read_model_file("transmitter_receiver.paloma"));
	for (auto &[name, sys] : t.systems())
		same_chain(t, sys, name);
}

TEST_CASE("engine chain equals the reference on random models")
{
	std::mt19937_64 rng(0x5eed0001);
	for (int i = 0; i < 100; ++i) {
		auto g = testsupport::random_model(rng);
		same_chain(g.model, g.system, g.source);
	}
}
