#include <algorithm>

#include "doctest.h"
#include "paloma/parser.hpp"
#include "support/random_models.hpp"

using namespace paloma;

namespace {

bool mentions(const std::vector<Diagnostic> &ds, const std::string &text, Diagnostic::Severity sev)
{
	return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic &d) {
		return d.severity == sev && d.message.find(text) != std::string::npos;
	});
}

bool error_with(const std::vector<Diagnostic> &ds, const std::string &text)
{
	return mentions(ds, text, Diagnostic::Severity::Error);
}

const char *kHeader = R"(
	param r = 2.0;
	param p = 0.25;
	location l0 = (-1, 0);
	location l1 = (1, 0);
)";

} // namespace

TEST_CASE("unicast output with an all range and a parameter rate")
{
	auto r = load_model(std::string(kHeader) + R"(
		Transmitter(l0) := !!(message, r)@Ir{all}.Transmitter(l1);
		Transmitter(l1) := !!(message, r)@Ir{l0}.Transmitter(l0);
	)");
	REQUIRE(r.ok());
	auto &m = *r.model;
	auto l0 = *m.find_location("l0"), l1 = *m.find_location("l1");
	auto *eq = m.find_equation({"Transmitter", l0});
	REQUIRE(eq);
	auto *p = eq->body.as_prefixed();
	REQUIRE(p);
	auto *out = p->prefix.as<UnicastOut>();
	REQUIRE(out);
	CHECK(out->label == "message");
	CHECK(out->rate == 2.0);
	CHECK(out->range == LocationSet{l0, l1});
	CHECK(p->next == ConstantRef{"Transmitter", l1});
}

TEST_CASE("unicast input, broadcast and spontaneous prefixes")
{
	auto r = parse_model(std::string(kHeader) + R"(
		R(l1) := ??(msg, p)@Wt{2.0}.R(l0);
		R(l0) := ?(b, 0.5)@Prob{0.4}.R(l0) + (tick, 1.0).R(l0) + !(b, 3)@Ir{}.R(l0);
	)");
	REQUIRE(r.ok());
	auto &m = *r.model;
	auto l0 = *m.find_location("l0"), l1 = *m.find_location("l1");
	auto *in = m.find_equation({"R", l1})->body.as_prefixed()->prefix.as<UnicastIn>();
	REQUIRE(in);
	CHECK(in->act_prob == 0.25);
	CHECK(in->weight == 2.0);

	// left-associative: ((?b + tick) + !b)
	auto *top = m.find_equation({"R", l0})->body.as_choice();
	REQUIRE(top);
	CHECK(top->right.as_prefixed()->prefix.as<BroadcastOut>()->range.empty());
	auto *inner = top->left.as_choice();
	REQUIRE(inner);
	auto *br = inner->left.as_prefixed()->prefix.as<BroadcastIn>();
	CHECK(br->act_prob == 0.5);
	CHECK(br->recv_prob == 0.4);
	auto *sp = inner->right.as_prefixed()->prefix.as<Spontaneous>();
	CHECK(sp->label == "tick");
	CHECK(sp->rate == 1.0);
}

TEST_CASE("parameter substitution is exact")
{
	auto r = parse_model("param r = 0.1; location a = (0, 0); X(a) := (t, r).X(a);");
	REQUIRE(r.ok());
	auto l = *r.model->find_location("a");
	CHECK(r.model->find_equation({"X", l})->body.as_prefixed()->prefix.as<Spontaneous>()->rate == 0.1);
}

TEST_CASE("value range errors")
{
	auto base = std::string(kHeader);
	CHECK(error_with(parse_model(base + "R(l1) := ?\?(msg, 1.5)@Wt{1}.R(l1);").diagnostics, "probability out of range"));
	CHECK(error_with(parse_model(base + "R(l1) := ?(msg, 0.5)@Prob{-0.1}.R(l1);").diagnostics,
	                 "probability out of range"));
	CHECK(error_with(parse_model(base + "T(l1) := (t, 0).T(l1);").diagnostics, "rate must be"));
	CHECK(error_with(parse_model(base + "T(l1) := !!(t, -2)@Ir{all}.T(l1);").diagnostics, "rate must be"));
	CHECK(error_with(parse_model(base + "R(l1) := ?\?(msg, 1)@Wt{0}.R(l1);").diagnostics, "weight must be"));
	CHECK(error_with(parse_model("param z = 0;").diagnostics, "must be a positive"));
	CHECK(error_with(parse_model("param z = 1e999;").diagnostics, "out of range"));
}

TEST_CASE("syntax errors carry positions and parsing recovers")
{
	auto r = parse_model("location a = (0, 0)\nX(a) := (t, 1).X(a);\nY(a) := (t 1).Y(a);\n");
	CHECK_FALSE(r.ok());
	REQUIRE(r.diagnostics.size() >= 2);
	CHECK(r.diagnostics[0].line == 2);
	CHECK(r.diagnostics[0].message.find("';'") != std::string::npos);
	bool third_line = std::any_of(r.diagnostics.begin(), r.diagnostics.end(),
	                              [](const Diagnostic &d) { return d.line == 3; });
	CHECK(third_line);
	CHECK(r.diagnostics[0].to_string().rfind("2:", 0) == 0);
}

TEST_CASE("reference errors")
{
	auto base = std::string(kHeader);
	CHECK(error_with(parse_model(base + "T(l9) := (t, 1).T(l0);").diagnostics, "unknown location"));
	CHECK(error_with(parse_model(base + "T(l0) := (t, q).T(l0);").diagnostics, "unknown parameter"));
	CHECK(error_with(parse_model(base + "T(l0) := !(t, 1)@Ir{l0, nowhere}.T(l0);").diagnostics, "unknown location"));
	CHECK(error_with(parse_model(base + "T(l0) := (t, 1).T(l0); T(l0) := (t, 2).T(l0);").diagnostics, "duplicate"));
	CHECK(error_with(parse_model(base + "location l0 = (5, 5);").diagnostics, "duplicate location"));
	CHECK(error_with(parse_model(base + "T(l0) := (t, 1).T(l0) + U(l1);").diagnostics, "not located at"));
	CHECK(error_with(parse_model(base + "T(l0) := !(t, 1)@Ir{all, l0}.T(l0);").diagnostics, "alone"));
	CHECK(error_with(parse_model(base + "T(l0) := !(t, 1)@Ir{l0, all}.T(l0);").diagnostics, "alone"));
	CHECK(error_with(parse_model(base + "T(l0) := !!(t, 1).T(l0);").diagnostics, "@Ir"));
}

TEST_CASE("validation finds dangling constants")
{
	auto r = load_model(std::string(kHeader) + "T(l0) := (t, 1).T(l9);");
	CHECK(error_with(r.diagnostics, "unknown location"));
	r = load_model(std::string(kHeader) + "T(l0) := (t, 1).U(l1);\nsystem S := T(l0) || V(l1);");
	CHECK_FALSE(r.ok());
	CHECK(error_with(r.diagnostics, "undefined constant U(l1)"));
	CHECK(error_with(r.diagnostics, "undefined constant V(l1) in system S"));
	auto d = std::find_if(r.diagnostics.begin(), r.diagnostics.end(),
	                      [](const Diagnostic &x) { return x.message.find("U(l1)") != std::string::npos; });
	CHECK(d->line == 6);
}

TEST_CASE("validation rejects shared coordinates")
{
	auto r = load_model("location a = (0, 0); location b = (0, 0);");
	CHECK_FALSE(r.ok());
	CHECK(error_with(r.diagnostics, "share coordinates"));
}

TEST_CASE("validation rejects unguarded recursion and ambiguous inputs")
{
	auto r = load_model("location a = (0, 0); A(a) := B(a); B(a) := (t, 1).A(a) + A(a);");
	CHECK(error_with(r.diagnostics, "unguarded recursion"));
	r = load_model("location a = (0, 0); A(a) := ?\?(m, 1)@Wt{1}.A(a) + ?\?(m, 0.5)@Wt{2}.A(a);");
	CHECK(error_with(r.diagnostics, "more than one ??m"));
	r = load_model("location a = (0, 0); A(a) := ?(m, 1)@Prob{1}.A(a) + B(a); B(a) := ?(m, 1)@Prob{1}.A(a);");
	CHECK(error_with(r.diagnostics, "more than one ?m"));
	r = load_model("location a = (0, 0); A(a) := ?\?(m, 1)@Wt{1}.A(a) + ?(m, 1)@Prob{1}.A(a);");
	CHECK(r.ok());
}

TEST_CASE("validation warns about statically blocked unicast")
{
	auto r = load_model(std::string(kHeader) + R"(
		T(l0) := !!(m, r)@Ir{l1}.T(l0);
		R(l0) := ??(m, 1)@Wt{1}.R(l0);
	)");
	REQUIRE(r.ok());
	CHECK(mentions(r.diagnostics, "no possible receiver", Diagnostic::Severity::Warning));
	r = load_model(std::string(kHeader) + R"(
		T(l0) := !!(m, r)@Ir{l1}.T(l0);
		R(l1) := ??(m, 1)@Wt{1}.R(l1);
	)");
	CHECK(r.diagnostics.empty());
}

TEST_CASE("parsing is total on hostile input")
{
	for (const char *text : {"", ";;;", "param", "X(", "!!!!", "location a = (1, 2", "@@@ {}", "system S := ;",
	                         "A(a) := (", "\x01\x02", "location a = (0,0); A(a) := ((t,1).A(a);"}) {
		ParseResult r = load_model(text);
		if (!r.ok())
			CHECK(has_errors(r.diagnostics));
	}
	CHECK(load_model("").ok()); // an empty model is valid
}

TEST_CASE("pretty printing round-trips the example models")
{
	for (const char *file : {"scenario.paloma", "transmitter_receiver.paloma", "syntactic.paloma"}) {
		Model m = testsupport::must_load(testsupport::read_model_file(file));
		std::string text = pretty_print(m);
		Model again = testsupport::must_load(text);
		CHECK(again == m);
		CHECK(pretty_print(again) == text);
	}
}

TEST_CASE("round-trip keeps choice association and parallel order")
{
	Model m = testsupport::must_load(R"(
		location a = (0, 0);
		X(a) := (x, 1).X(a) + ((y, 2).X(a) + (z, 3).X(a));
		Y(a) := ((x, 1).X(a) + (y, 2).X(a)) + (z, 3).X(a);
		system S := Y(a) || X(a) || Y(a);
	)");
	Model again = testsupport::must_load(pretty_print(m));
	CHECK(again == m);
	auto l = *m.find_location("a");
	CHECK(again.find_equation({"X", l})->body.as_choice()->right.as_choice());
	CHECK(again.find_equation({"Y", l})->body.as_choice()->left.as_choice());
	CHECK((*again.find_system("S"))[0] == SeqComponent::constant("Y", l));
}
