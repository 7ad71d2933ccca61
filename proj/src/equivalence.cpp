#include "paloma/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <tuple>
#include <sstream>
#include <unordered_map>

#include "paloma/rates.hpp"
#include "paloma/semantics.hpp"

namespace paloma {

bool rates_equal(double a, double b)
{
	return std::abs(a - b) <= kRateTolerance * std::max(std::abs(a), std::abs(b));
}

std::string_view verdict_name(Verdict v)
{
	switch (v) {
	case Verdict::Related: return "related";
	case Verdict::NotRelated: return "not related";
	case Verdict::Inconclusive: return "inconclusive";
	}
	return "";
}

std::string Failure::to_string() const
{
	switch (kind) {
	case Kind::RateMismatch:
		return "rate mismatch: " + action.to_string() + " at {" + left_location + "} = " + format_rate(left_rate) +
		       " but at {" + right_location + "} = " + format_rate(right_rate);
	case Kind::Location:
		return "location mismatch: " + left_location + " vs " + right_location;
	case Kind::Unmatched:
		return std::string("unmatched transition: ") + (from_left ? "left" : "right") + " side performs " +
		       action.to_string() + " (via " + via + ") to " + target + " with no related answer";
	}
	return "";
}

namespace {

struct Step {
	ActionId action;
	std::size_t target;
	std::string via;
};

struct Space {
	std::vector<ModelComponent> states;
	std::vector<std::string> keys;
	std::vector<std::vector<Step>> steps;
	bool exceeded = false;
};

Space explore(const Model &m, const ModelComponent &sys, const ModelComponent &start, std::size_t bound)
{
	Space sp;
	std::unordered_map<std::string, std::size_t> index;
	auto discover = [&](const ModelComponent &s) {
		std::string key = m.canonical_text(s);
		auto [it, fresh] = index.emplace(key, sp.states.size());
		if (fresh) {
			sp.states.push_back(s);
			sp.keys.push_back(std::move(key));
		}
		return it->second;
	};
	discover(start);
	for (std::size_t cur = 0; cur < sp.states.size(); ++cur) {
		if (sp.states.size() > bound) {
			sp.exceeded = true;
			break;
		}
		std::vector<Step> out;
		ModelComponent s = sp.states[cur];
		for (auto &st : lifted_steps(m, sys, s))
			out.push_back({st.action, discover(st.target), st.via});
		sp.steps.push_back(std::move(out));
	}
	if (sp.states.size() > bound)
		sp.exceeded = true;
	return sp;
}

std::vector<ActionId> alphabet(const Model &m)
{
	std::vector<ActionId> out;
	for (auto &label : m.labels())
		for (auto t : {ActionType::Spontaneous, ActionType::BroadcastOut, ActionType::BroadcastIn,
		               ActionType::UnicastOut, ActionType::UnicastIn})
			out.push_back({t, label});
	return out;
}

/* Rate condition between two states under a location correspondence. */
class RateCheck {
public:
	RateCheck(const Model &m, const ModelComponent &sys, const Isometry &phi, std::size_t subset_size)
		: m_(m), sys_(sys), actions_(alphabet(m)), subset_(std::max<std::size_t>(1, subset_size))
	{
		const std::size_t n = m.locations().size();
		for (std::size_t i = 0; i < n; ++i) {
			LocationId l{static_cast<std::uint32_t>(i)};
			image_.push_back(map_location(m, phi, l));
			preimage_.push_back(map_location(m, phi.inverse(), l));
		}
	}

	std::vector<Failure> failures(const ModelComponent &p, const ModelComponent &q, bool first_only) const
	{
		using Corr = std::pair<std::optional<LocationId>, std::optional<LocationId>>;
		std::vector<Corr> corr;
		std::set<LocationId> covered;
		for (LocationId l : locations_of(p)) {
			corr.push_back({l, image_[l.value]});
			if (image_[l.value])
				covered.insert(*image_[l.value]);
		}
		for (LocationId l : locations_of(q))
			if (!covered.contains(l))
				corr.push_back({preimage_[l.value], l});

		std::vector<Failure> out;
		std::vector<std::size_t> pick;
		auto test = [&]() {
			LocationSet left, right;
			for (auto i : pick) {
				if (corr[i].first)
					left.insert(*corr[i].first);
				if (corr[i].second)
					right.insert(*corr[i].second);
			}
			for (std::size_t ai = 0; ai < actions_.size(); ++ai) {
				const ActionId &a = actions_[ai];
				double x = rate(ai, left, p), y = rate(ai, right, q);
				if (!rates_equal(x, y)) {
					Failure f;
					f.kind = Failure::Kind::RateMismatch;
					f.action = a;
					f.left_location = names(left, pick, corr, true);
					f.right_location = names(right, pick, corr, false);
					f.left_rate = x;
					f.right_rate = y;
					out.push_back(std::move(f));
					if (first_only)
						return;
				}
			}
		};
		std::function<void(std::size_t)> choose = [&](std::size_t from) {
			if (!pick.empty()) {
				test();
				if (first_only && !out.empty())
					return;
			}
			if (pick.size() == subset_)
				return;
			for (std::size_t i = from; i < corr.size(); ++i) {
				pick.push_back(i);
				choose(i + 1);
				pick.pop_back();
				if (first_only && !out.empty())
					return;
			}
		};
		choose(0);
		return out;
	}

private:
	// States live in an explored space for the whole check, so their address
	// identifies them.
	double rate(std::size_t action, const LocationSet &at, const ModelComponent &s) const
	{
		if (at.empty())
			return 0.0;
		auto key = std::make_tuple(static_cast<const void *>(&s), action, at);
		auto it = memo_.find(key);
		if (it != memo_.end())
			return it->second;
		double v = exit_rate(m_, actions_[action], at, sys_, s);
		memo_.emplace(std::move(key), v);
		return v;
	}

	std::string names(const LocationSet &set, const std::vector<std::size_t> &pick,
	                  const std::vector<std::pair<std::optional<LocationId>, std::optional<LocationId>>> &corr,
	                  bool left) const
	{
		std::string out = m_.location_text(set);
		std::size_t missing = 0;
		for (auto i : pick)
			if (!(left ? corr[i].first : corr[i].second))
				++missing;
		for (std::size_t k = 0; k < missing; ++k)
			out += std::string(out.empty() ? "" : ", ") + "undeclared image";
		return out;
	}

	const Model &m_;
	const ModelComponent &sys_;
	std::vector<ActionId> actions_;
	std::size_t subset_;
	std::vector<std::optional<LocationId>> image_, preimage_;
	mutable std::map<std::tuple<const void *, std::size_t, LocationSet>, double> memo_;
};

using Compat = std::function<std::vector<Failure>(const ModelComponent &, const ModelComponent &, bool)>;

std::vector<Failure> unmatched(const Space &left, const Space &right, std::size_t i, std::size_t j,
                               const std::vector<std::vector<char>> &rel)
{
	std::vector<Failure> out;
	auto side = [&](const Space &a, const Space &b, std::size_t x, std::size_t y, bool from_left) {
		for (auto &s : a.steps[x]) {
			bool ok = std::any_of(b.steps[y].begin(), b.steps[y].end(), [&](const Step &t) {
				return t.action == s.action && (from_left ? rel[s.target][t.target] : rel[t.target][s.target]);
			});
			if (!ok) {
				Failure f;
				f.kind = Failure::Kind::Unmatched;
				f.action = s.action;
				f.from_left = from_left;
				f.via = s.via;
				f.target = a.keys[s.target];
				out.push_back(std::move(f));
			}
		}
	};
	side(left, right, i, j, true);
	side(right, left, j, i, false);
	return out;
}

BisimResult refine(const Space &left, const Space &right, const Compat &compat)
{
	BisimResult r;
	r.left_states = left.states.size();
	r.right_states = right.states.size();
	if (left.exceeded || right.exceeded) {
		r.verdict = Verdict::Inconclusive;
		r.note = "state bound exceeded while exploring the " +
		         std::string(left.exceeded ? (right.exceeded ? "both sides" : "left side") : "right side");
		return r;
	}
	const std::size_t n = left.states.size(), k = right.states.size();
	std::vector<std::vector<char>> rel(n, std::vector<char>(k, 0));
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < k; ++j)
			rel[i][j] = compat(left.states[i], right.states[j], true).empty();

	for (bool changed = true; changed;) {
		changed = false;
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < k; ++j)
				if (rel[i][j] && !unmatched(left, right, i, j, rel).empty()) {
					rel[i][j] = 0;
					changed = true;
				}
	}

	if (rel[0][0]) {
		r.verdict = Verdict::Related;
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < k; ++j)
				if (rel[i][j])
					r.relation.emplace_back(left.states[i], right.states[j]);
	} else {
		r.verdict = Verdict::NotRelated;
		r.counterexample = compat(left.states[0], right.states[0], false);
		auto more = unmatched(left, right, 0, 0, rel);
		r.counterexample.insert(r.counterexample.end(), more.begin(), more.end());
	}
	return r;
}

BisimResult with_phi(const Model &m, const Space &left, const Space &right, const ModelComponent &sys,
                     const Isometry &phi, const BisimOptions &opts)
{
	RateCheck check(m, sys, phi, opts.subset_size);
	BisimResult r = refine(left, right, [&](const ModelComponent &p, const ModelComponent &q, bool first) {
		return check.failures(p, q, first);
	});
	r.witness = r.related() ? std::optional(phi) : std::nullopt;
	r.attempts.push_back({phi, r.verdict, r.counterexample});
	return r;
}

std::vector<Point> points(const Model &m, const LocationSet &set)
{
	std::vector<Point> out;
	for (auto l : set)
		out.push_back(m.location(l).point);
	return out;
}

} // namespace

BisimResult check_bisim_phi(const Model &m, const ModelComponent &p, const ModelComponent &q,
                            const ModelComponent &sys, const Isometry &phi, const BisimOptions &opts)
{
	Space left = explore(m, sys, p, opts.bound);
	Space right = explore(m, sys, q, opts.bound);
	return with_phi(m, left, right, sys, phi, opts);
}

BisimResult bisimilar(const Model &m, const ModelComponent &p, const ModelComponent &q, const ModelComponent &sys,
                      const BisimOptions &opts)
{
	Candidates cands = candidate_isometries(points(m, locations_of(parallel(sys, p))),
	                                        points(m, locations_of(parallel(sys, q))));
	BisimResult out;
	if (cands.isometries.empty()) {
		out.verdict = Verdict::NotRelated;
		out.note = cands.note;
		return out;
	}
	Space left = explore(m, sys, p, opts.bound);
	Space right = explore(m, sys, q, opts.bound);

	std::set<std::vector<std::optional<LocationId>>> tried;
	bool inconclusive = false;
	for (auto &phi : cands.isometries) {
		std::vector<std::optional<LocationId>> induced;
		for (std::size_t i = 0; i < m.locations().size(); ++i)
			induced.push_back(map_location(m, phi, LocationId{static_cast<std::uint32_t>(i)}));
		if (!tried.insert(induced).second)
			continue;
		BisimResult r = with_phi(m, left, right, sys, phi, opts);
		out.attempts.push_back(r.attempts.front());
		out.left_states = r.left_states;
		out.right_states = r.right_states;
		if (r.related()) {
			r.attempts = std::move(out.attempts);
			return r;
		}
		if (r.verdict == Verdict::Inconclusive) {
			inconclusive = true;
			out.note = r.note;
		} else if (out.counterexample.empty()) {
			out.counterexample = r.counterexample;
		}
	}
	out.verdict = inconclusive ? Verdict::Inconclusive : Verdict::NotRelated;
	if (!inconclusive)
		out.note = "no candidate isometry yields a bisimulation";
	return out;
}

BisimResult naive_bisim(const Model &m, const ModelComponent &p, const ModelComponent &q, const ModelComponent &sys,
                        const BisimOptions &opts)
{
	Space left = explore(m, sys, p, opts.bound);
	Space right = explore(m, sys, q, opts.bound);
	auto actions = alphabet(m);
	auto place = [&](const ModelComponent &c) {
		std::string out;
		for (auto &s : c)
			out += (out.empty() ? "" : ", ") + m.location(s.location()).name;
		return out;
	};
	BisimResult r = refine(left, right, [&](const ModelComponent &a, const ModelComponent &b, bool first) {
		std::vector<Failure> out;
		if (place(a) != place(b)) {
			Failure f;
			f.kind = Failure::Kind::Location;
			f.left_location = place(a);
			f.right_location = place(b);
			out.push_back(std::move(f));
			if (first)
				return out;
		}
		for (auto &act : actions) {
			double x = exit_rate(m, act, sys, a), y = exit_rate(m, act, sys, b);
			if (!rates_equal(x, y)) {
				Failure f;
				f.kind = Failure::Kind::RateMismatch;
				f.action = act;
				f.left_location = place(a);
				f.right_location = place(b);
				f.left_rate = x;
				f.right_rate = y;
				out.push_back(std::move(f));
				if (first)
					return out;
			}
		}
		return out;
	});
	if (r.related())
		r.witness = Isometry::identity();
	r.attempts.push_back({Isometry::identity(), r.verdict, r.counterexample});
	return r;
}

bool check_relation(const Model &m, const std::vector<StatePair> &relation, const ModelComponent &sys,
                    const Isometry &phi)
{
	RateCheck check(m, sys, phi, 1);
	std::set<std::pair<std::string, std::string>> keys;
	for (auto &[p, q] : relation)
		keys.insert({m.canonical_text(p), m.canonical_text(q)});
	for (auto &[p, q] : relation) {
		if (!check.failures(p, q, true).empty())
			return false;
		auto ps = lifted_steps(m, sys, p);
		auto qs = lifted_steps(m, sys, q);
		auto answered = [&](const LiftedStep &s, const std::vector<LiftedStep> &other, bool left) {
			std::string k = m.canonical_text(s.target);
			return std::any_of(other.begin(), other.end(), [&](const LiftedStep &t) {
				if (t.action != s.action)
					return false;
				std::string kt = m.canonical_text(t.target);
				return keys.contains(left ? std::pair{k, kt} : std::pair{kt, k});
			});
		};
		for (auto &s : ps)
			if (!answered(s, qs, true))
				return false;
		for (auto &s : qs)
			if (!answered(s, ps, false))
				return false;
	}
	return true;
}

std::string format_report(const Model &m, const BisimResult &r)
{
	std::ostringstream out;
	out << "verdict: " << verdict_name(r.verdict) << '\n';
	if (r.witness)
		out << "witness: " << r.witness->to_string() << '\n';
	out << "states: " << r.left_states << " left, " << r.right_states << " right\n";
	if (!r.note.empty())
		out << "note: " << r.note << '\n';
	if (!r.attempts.empty()) {
		out << "attempts:\n";
		for (auto &a : r.attempts)
			out << "  " << a.phi.to_string() << ": " << verdict_name(a.verdict) << '\n';
	}
	if (r.related()) {
		out << "relation (" << r.relation.size() << " pairs):\n";
		for (auto &[p, q] : r.relation)
			out << "  " << m.canonical_text(p) << "  ~  " << m.canonical_text(q) << '\n';
	} else if (!r.counterexample.empty()) {
		out << "counterexample:\n";
		for (auto &f : r.counterexample)
			out << "  " << f.to_string() << '\n';
	}
	return out.str();
}

} // namespace paloma
