#include "paloma/semantics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "paloma/rates.hpp"

namespace paloma {

std::string_view kind_name(StochKind k)
{
	switch (k) {
	case StochKind::Spontaneous: return "spontaneous";
	case StochKind::Broadcast: return "broadcast";
	case StochKind::Unicast: return "unicast";
	}
	return "";
}

std::string StochLabel::to_string() const
{
	switch (kind) {
	case StochKind::Spontaneous: return label;
	case StochKind::Broadcast: return "!" + label;
	case StochKind::Unicast: return "!!" + label;
	}
	return label;
}

void Continuation::add(const Model &m, const ModelComponent &target, double value)
{
	std::string key = m.canonical_text(target);
	for (auto &e : entries_) {
		if (e.key == key) {
			e.value += value;
			return;
		}
	}
	entries_.push_back({target, std::move(key), value});
}

double Continuation::at(const std::string &key) const
{
	for (auto &e : entries_)
		if (e.key == key)
			return e.value;
	return 0.0;
}

double Continuation::total() const
{
	double t = 0.0;
	for (auto &e : entries_)
		t += e.value;
	return t;
}

namespace {

struct Branch {
	SeqComponent target;
	double value;
	bool success;
};

std::optional<Prefixed> sole_input(const Model &m, const SeqComponent &s, const ActionId &action)
{
	std::optional<Prefixed> found;
	for (auto &sm : summands(m, s)) {
		if (sm.prefix.action() != action)
			continue;
		if (found)
			throw ModelError("component offers " + action.to_string() + " more than once");
		found = sm;
	}
	return found;
}

/* Success/failure branches of one component for an input label; empty when
 * the component is not capable. `others` only matters for unicast. */
std::vector<Branch> branches(const Model &m, const SeqComponent &s, CapKind kind, const std::string &label,
                             const LocationSet &range, const ModelComponent &others)
{
	if (!range.contains(s.location()))
		return {};
	ActionType type = kind == CapKind::BroadcastIn ? ActionType::BroadcastIn : ActionType::UnicastIn;
	auto sm = sole_input(m, s, {type, label});
	if (!sm)
		return {};
	SeqComponent next = SeqComponent::constant(sm->next);
	double ok, fail;
	if (auto *in = sm->prefix.as<BroadcastIn>()) {
		ok = in->act_prob * in->recv_prob;
		fail = 1.0 - ok;
	} else {
		auto *uin = sm->prefix.as<UnicastIn>();
		double total = weight(m, seq_in(parallel(others, s), range), label);
		if (total == 0.0)
			return {};
		ok = uin->weight * uin->act_prob / total;
		fail = uin->weight * (1.0 - uin->act_prob) / total;
	}
	std::vector<Branch> out;
	if (ok > 0.0)
		out.push_back({next, ok, true});
	if (fail > 0.0)
		out.push_back({s, fail, false});
	return out;
}

/* Joint broadcast reception by every part of p except `skip`: one entry per
 * outcome vector, success before failure, earlier positions varying slowest. */
struct Joint {
	ModelComponent target;
	double prob;
	std::vector<std::size_t> accepted;
};

std::vector<Joint> joint_reception(const Model &m, const ModelComponent &p, std::size_t skip,
                                   const std::string &label, const LocationSet &range)
{
	std::vector<Joint> acc{{p, 1.0, {}}};
	for (std::size_t j = 0; j < p.size(); ++j) {
		if (j == skip)
			continue;
		auto bs = branches(m, p[j], CapKind::BroadcastIn, label, range, {});
		if (bs.empty())
			continue;
		std::vector<Joint> next;
		for (auto &a : acc) {
			for (auto &b : bs) {
				double prob = a.prob * b.value;
				if (prob == 0.0)
					continue;
				Joint n{replace_at(a.target, j, b.target), prob, a.accepted};
				if (b.success)
					n.accepted.push_back(j);
				next.push_back(std::move(n));
			}
		}
		acc = std::move(next);
	}
	return acc;
}

constexpr std::size_t none = static_cast<std::size_t>(-1);

} // namespace

std::optional<Continuation> cap_step(const Model &m, const SeqComponent &s, const CapLabel &l)
{
	auto bs = branches(m, s, l.kind, l.label, l.range, l.context);
	if (bs.empty())
		return std::nullopt;
	Continuation c;
	for (auto &b : bs)
		if (b.value > 0.0)
			c.add(m, b.target, b.value);
	return c;
}

std::optional<Continuation> cap_step(const Model &m, const ModelComponent &p, const CapLabel &l)
{
	Continuation c;
	bool capable = false;
	if (l.kind == CapKind::BroadcastIn) {
		for (auto &s : p)
			if (!branches(m, s, l.kind, l.label, l.range, {}).empty())
				capable = true;
		if (!capable)
			return std::nullopt;
		for (auto &j : joint_reception(m, p, none, l.label, l.range))
			c.add(m, j.target, j.prob);
		return c;
	}
	for (std::size_t i = 0; i < p.size(); ++i) {
		auto bs = branches(m, p[i], l.kind, l.label, l.range, parallel(l.context, remove_at(p, i)));
		if (bs.empty())
			continue;
		capable = true;
		for (auto &b : bs)
			if (b.value > 0.0)
				c.add(m, replace_at(p, i, b.target), b.value);
	}
	if (!capable)
		return std::nullopt;
	return c;
}

Continuation StochTransition::continuation(const Model &m) const
{
	Continuation c;
	for (auto &o : outcomes)
		c.add(m, o.target, o.rate);
	return c;
}

double StochTransition::total_rate() const
{
	double t = 0.0;
	for (auto &o : outcomes)
		t += o.rate;
	return t;
}

std::vector<StochTransition> stoch_step(const Model &m, const ModelComponent &sys)
{
	std::vector<StochTransition> out;
	for (std::size_t i = 0; i < sys.size(); ++i) {
		for (auto &sm : summands(m, sys[i])) {
			ModelComponent moved = replace_at(sys, i, SeqComponent::constant(sm.next));
			StochTransition t;
			t.sender = i;
			t.label.context = sys;
			t.label.label = sm.prefix.label();

			if (auto *sp = sm.prefix.as<Spontaneous>()) {
				t.label.kind = StochKind::Spontaneous;
				t.outcomes.push_back({moved, sp->rate, {}});
			} else if (auto *br = sm.prefix.as<BroadcastOut>()) {
				t.label.kind = StochKind::Broadcast;
				t.label.range = br->range;
				for (auto &j : joint_reception(m, moved, i, br->label, br->range))
					t.outcomes.push_back({std::move(j.target), br->rate * j.prob, std::move(j.accepted)});
			} else if (auto *uni = sm.prefix.as<UnicastOut>()) {
				t.label.kind = StochKind::Unicast;
				t.label.range = uni->range;
				ModelComponent others = remove_at(sys, i);
				if (weight(m, seq_in(others, uni->range), uni->label) == 0.0)
					continue; // no eligible receiver: blocked
				for (std::size_t j = 0; j < sys.size(); ++j) {
					if (j == i)
						continue;
					ModelComponent rest = remove_at(others, j < i ? j : j - 1);
					for (auto &b : branches(m, sys[j], CapKind::UnicastIn, uni->label, uni->range, rest)) {
						double rate = uni->rate * b.value;
						if (rate == 0.0)
							continue;
						Outcome o{replace_at(moved, j, b.target), rate, {}};
						if (b.success)
							o.accepted.push_back(j);
						t.outcomes.push_back(std::move(o));
					}
				}
			} else {
				continue; // inputs only move through a sender
			}
			if (!t.outcomes.empty())
				out.push_back(std::move(t));
		}
	}
	return out;
}

namespace {

ActionId sender_action(const StochLabel &l)
{
	switch (l.kind) {
	case StochKind::Spontaneous: return {ActionType::Spontaneous, l.label};
	case StochKind::Broadcast: return {ActionType::BroadcastOut, l.label};
	case StochKind::Unicast: return {ActionType::UnicastOut, l.label};
	}
	return {};
}

ActionId receiver_action(const StochLabel &l)
{
	return {l.kind == StochKind::Broadcast ? ActionType::BroadcastIn : ActionType::UnicastIn, l.label};
}

} // namespace

std::vector<AgentStep> agent_steps(const Model &m, const ModelComponent &sys, std::size_t position)
{
	if (position >= sys.size())
		throw std::out_of_range("agent_steps: position out of range");
	std::vector<AgentStep> out;
	std::set<std::pair<ActionId, std::string>> seen;
	for (auto &t : stoch_step(m, sys)) {
		for (auto &o : t.outcomes) {
			ActionId a;
			if (t.sender == position)
				a = sender_action(t.label);
			else if (std::find(o.accepted.begin(), o.accepted.end(), position) != o.accepted.end())
				a = receiver_action(t.label);
			else
				continue;
			const SeqComponent &target = o.target[position];
			if (seen.insert({a, m.canonical_text(target)}).second)
				out.push_back({a, target, t.label.to_string()});
		}
	}
	return out;
}

std::vector<LiftedStep> lifted_steps(const Model &m, const ModelComponent &context, const ModelComponent &p)
{
	const std::size_t off = context.size();
	std::vector<LiftedStep> out;
	std::set<std::pair<ActionId, std::string>> seen;
	for (auto &t : stoch_step(m, parallel(context, p))) {
		for (auto &o : t.outcomes) {
			std::vector<ActionId> roles;
			if (t.sender >= off)
				roles.push_back(sender_action(t.label));
			for (auto j : o.accepted)
				if (j >= off)
					roles.push_back(receiver_action(t.label));
			if (roles.empty())
				continue;
			ModelComponent target(std::vector<SeqComponent>(o.target.begin() + static_cast<std::ptrdiff_t>(off),
			                                                o.target.end()));
			std::string key = m.canonical_text(target);
			for (auto &a : roles)
				if (seen.insert({a, key}).second)
					out.push_back({a, target, t.label.to_string()});
		}
	}
	return out;
}

CtmcResult build_ctmc(const Model &m, const ModelComponent &initial, std::size_t bound)
{
	CtmcResult result;
	Ctmc &c = result.ctmc;
	std::unordered_map<std::string, std::size_t> index;

	auto discover = [&](const ModelComponent &s) {
		std::string key = m.canonical_text(s);
		auto [it, fresh] = index.emplace(key, c.states.size());
		if (fresh) {
			c.states.push_back(s);
			c.keys.push_back(std::move(key));
		}
		return it->second;
	};

	discover(initial);
	for (std::size_t cur = 0; cur < c.states.size(); ++cur) {
		if (c.states.size() > bound)
			break;
		using EdgeKey = std::tuple<std::size_t, StochKind, std::string, LocationSet>;
		std::map<EdgeKey, std::size_t> merged;
		ModelComponent state = c.states[cur];
		for (auto &t : stoch_step(m, state)) {
			for (auto &o : t.outcomes) {
				std::size_t dst = discover(o.target);
				EdgeKey key{dst, t.label.kind, t.label.label, t.label.range};
				auto [it, fresh] = merged.emplace(key, c.edges.size());
				if (fresh)
					c.edges.push_back({cur, dst, o.rate, t.label.kind, t.label.label, t.label.range});
				else
					c.edges[it->second].rate += o.rate;
			}
		}
	}
	result.discovered = c.states.size();
	if (c.states.size() > bound)
		result.status = CtmcResult::Status::BoundExceeded;
	return result;
}

} // namespace paloma
