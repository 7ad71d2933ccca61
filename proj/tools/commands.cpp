#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "paloma/equivalence.hpp"
#include "paloma/parser.hpp"
#include "paloma/rates.hpp"
#include "paloma/semantics.hpp"

namespace paloma::cli {

std::size_t default_bound()
{
	if (const char *env = std::getenv("PALOMA_BOUND")) {
		std::string_view s(env);
		std::size_t v = 0;
		auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
		if (ec == std::errc() && p == s.data() + s.size() && v > 0)
			return v;
	}
	return 10000;
}

namespace {

std::optional<Model> load(const std::string &path, std::ostream &err)
{
	std::ifstream in(path, std::ios::binary);
	if (!in) {
		err << path << ": cannot open file\n";
		return std::nullopt;
	}
	std::ostringstream text;
	text << in.rdbuf();
	ParseResult r = load_model(text.str());
	for (auto &d : r.diagnostics)
		err << path << ":" << d.to_string() << '\n';
	return std::move(r.model);
}

const ModelComponent *find_system(const Model &m, const std::string &name, std::ostream &err)
{
	const ModelComponent *sys = m.find_system(name);
	if (!sys)
		err << "unknown system '" << name << "'\n";
	return sys;
}

std::optional<ModelComponent> context_of(const Model &m, const std::string &name, std::ostream &err)
{
	if (name == "empty")
		return ModelComponent{};
	if (auto *sys = find_system(m, name, err))
		return *sys;
	return std::nullopt;
}

} // namespace

int cmd_check(const CheckArgs &a, std::ostream &out, std::ostream &err)
{
	auto m = load(a.model, err);
	if (!m)
		return kInputError;
	out << "ok: " << m->locations().size() << " locations, " << m->equations().size() << " equations, "
	    << m->systems().size() << " systems\n";
	return kOk;
}

int cmd_ctmc(const CtmcArgs &a, std::ostream &out, std::ostream &err)
{
	if (a.format != "tsv" && a.format != "dot") {
		err << "unknown format '" << a.format << "'\n";
		return kInputError;
	}
	auto m = load(a.model, err);
	if (!m)
		return kInputError;
	auto *sys = find_system(*m, a.system, err);
	if (!sys)
		return kInputError;
	try {
		CtmcResult r = build_ctmc(*m, *sys, a.bound);
		if (r.status == CtmcResult::Status::BoundExceeded) {
			err << "state bound " << a.bound << " exceeded (" << r.discovered << " states discovered)\n";
			return kBound;
		}
		out << (a.format == "tsv" ? to_tsv(r.ctmc) : to_dot(r.ctmc));
	} catch (const ModelError &e) {
		err << "error: " << e.what() << '\n';
		return kInputError;
	}
	return kOk;
}

int cmd_rate(const RateArgs &a, std::ostream &out, std::ostream &err)
{
	auto action = ActionId::parse(a.action);
	if (!action) {
		err << "cannot parse action '" << a.action << "'\n";
		return kInputError;
	}
	auto m = load(a.model, err);
	if (!m)
		return kInputError;
	auto *sys = find_system(*m, a.system, err);
	auto ctx = context_of(*m, a.context, err);
	if (!sys || !ctx)
		return kInputError;
	auto labels = m->labels();
	if (std::find(labels.begin(), labels.end(), action->label) == labels.end()) {
		err << "unknown action label '" << action->label << "'\n";
		return kInputError;
	}
	RateQuery q{*action, std::nullopt, *ctx, *sys};
	if (!a.locations.empty()) {
		LocationSet at;
		for (auto &name : a.locations) {
			auto id = m->find_location(name);
			if (!id) {
				err << "unknown location '" << name << "'\n";
				return kInputError;
			}
			at.insert(*id);
		}
		q.locations = at;
	}
	try {
		out << format_rate(exit_rate(*m, q)) << '\n';
	} catch (const ModelError &e) {
		err << "error: " << e.what() << '\n';
		return kInputError;
	}
	return kOk;
}

int cmd_bisim(const BisimArgs &a, std::ostream &out, std::ostream &err)
{
	auto m = load(a.model, err);
	if (!m)
		return kInputError;
	auto *left = find_system(*m, a.left, err);
	auto *right = find_system(*m, a.right, err);
	auto ctx = context_of(*m, a.context, err);
	if (!left || !right || !ctx)
		return kInputError;

	BisimOptions opts{a.bound, a.subset_size};
	BisimResult r;
	try {
		if (a.mode == "isometry") {
			r = bisimilar(*m, *left, *right, *ctx, opts);
		} else if (a.mode == "naive") {
			r = naive_bisim(*m, *left, *right, *ctx, opts);
		} else if (a.mode == "fixed") {
			if (a.matrix.size() != 4 || a.offset.size() != 2) {
				err << "fixed mode needs --matrix a,b,c,d and --offset x,y\n";
				return kInputError;
			}
			Isometry phi({a.matrix[0], a.matrix[1], a.matrix[2], a.matrix[3]}, {a.offset[0], a.offset[1]});
			r = check_bisim_phi(*m, *left, *right, *ctx, phi, opts);
		} else {
			err << "unknown mode '" << a.mode << "'\n";
			return kInputError;
		}
	} catch (const std::invalid_argument &e) {
		err << "error: " << e.what() << '\n';
		return kInputError;
	} catch (const ModelError &e) {
		err << "error: " << e.what() << '\n';
		return kInputError;
	}
	out << format_report(*m, r);
	switch (r.verdict) {
	case Verdict::Related: return kOk;
	case Verdict::NotRelated: return kNotRelated;
	case Verdict::Inconclusive: return kBound;
	}
	return kBound;
}

} // namespace paloma::cli
