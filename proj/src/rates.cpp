#include "paloma/rates.hpp"

#include <algorithm>

namespace paloma {

namespace {

void collect(const Model &m, const SeqComponent &s, std::vector<Prefixed> &out)
{
	const SeqComponent &body = m.resolve(s);
	if (auto *p = body.as_prefixed()) {
		out.push_back(*p);
	} else {
		auto *c = body.as_choice();
		collect(m, c->left, out);
		collect(m, c->right, out);
	}
}

template <class T, class F> double sum_of(const Model &m, const SeqComponent &s, std::string_view label, F value)
{
	double total = 0.0;
	for (auto &sm : summands(m, s))
		if (auto *p = sm.prefix.as<T>(); p && p->label == label)
			total += value(*p);
	return total;
}

bool has_weight_in(const Model &m, const ModelComponent &p, const LocationSet &range, std::string_view label)
{
	return weight(m, seq_in(p, range), label) > 0.0;
}

} // namespace

std::vector<Prefixed> summands(const Model &m, const SeqComponent &s)
{
	std::vector<Prefixed> out;
	collect(m, s, out);
	return out;
}

std::optional<Prefixed> find_summand(const Model &m, const SeqComponent &s, const ActionId &action)
{
	for (auto &sm : summands(m, s))
		if (sm.prefix.action() == action)
			return sm;
	return std::nullopt;
}

double unicast_rate(const Model &m, const SeqComponent &s, std::string_view label)
{
	return sum_of<UnicastOut>(m, s, label, [](const UnicastOut &p) { return p.rate; });
}

double broadcast_rate(const Model &m, const SeqComponent &s, std::string_view label)
{
	return sum_of<BroadcastOut>(m, s, label, [](const BroadcastOut &p) { return p.rate; });
}

double spontaneous_rate(const Model &m, const SeqComponent &s, std::string_view label)
{
	return sum_of<Spontaneous>(m, s, label, [](const Spontaneous &p) { return p.rate; });
}

LocationSet unicast_range(const Model &m, const SeqComponent &s, std::string_view label)
{
	LocationSet out;
	for (auto &sm : summands(m, s))
		if (auto *p = sm.prefix.as<UnicastOut>(); p && p->label == label)
			out.insert(p->range.begin(), p->range.end());
	return out;
}

double weight(const Model &m, const SeqComponent &s, std::string_view label)
{
	return sum_of<UnicastIn>(m, s, label, [](const UnicastIn &p) { return p.weight; });
}

double weight(const Model &m, const ModelComponent &p, std::string_view label)
{
	return weight(m, p.parts(), label);
}

double weight(const Model &m, const std::vector<SeqComponent> &parts, std::string_view label)
{
	double total = 0.0;
	for (auto &s : parts)
		total += weight(m, s, label);
	return total;
}

double unicast_accept_prob(const Model &m, const SeqComponent &s, std::string_view label)
{
	auto sm = find_summand(m, s, {ActionType::UnicastIn, std::string(label)});
	return sm ? sm->prefix.as<UnicastIn>()->act_prob : 0.0;
}

double broadcast_accept_prob(const Model &m, const SeqComponent &s, std::string_view label)
{
	auto sm = find_summand(m, s, {ActionType::BroadcastIn, std::string(label)});
	if (!sm)
		return 0.0;
	auto *p = sm->prefix.as<BroadcastIn>();
	return p->act_prob * p->recv_prob;
}

double unicast_capability(const Model &m, LocationId to, const SeqComponent &s, std::string_view label)
{
	return sum_of<UnicastOut>(m, s, label, [&](const UnicastOut &p) { return p.range.contains(to) ? p.rate : 0.0; });
}

double unicast_rate_in_context(const Model &m, LocationId to, const ModelComponent &sys, const ModelComponent &p,
                               std::string_view label)
{
	double total = 0.0;
	for (std::size_t i = 0; i < p.size(); ++i) {
		ModelComponent others = parallel(sys, remove_at(p, i));
		total += sum_of<UnicastOut>(m, p[i], label, [&](const UnicastOut &out) {
			if (!out.range.contains(to))
				return 0.0;
			return has_weight_in(m, others, out.range, label) ? out.rate : 0.0;
		});
	}
	return total;
}

double unicast_receive_prob(const Model &m, const SeqComponent &receiver, const ModelComponent &others,
                            const LocationSet &range, std::string_view label)
{
	if (!range.contains(receiver.location()))
		return 0.0;
	double w = weight(m, receiver, label);
	if (w == 0.0)
		return 0.0;
	double total = weight(m, seq_in(parallel(others, receiver), range), label);
	return total == 0.0 ? 0.0 : w / total;
}

double unicast_receive_prob(const Model &m, const SeqComponent &receiver, const ModelComponent &others,
                            const SeqComponent &sender, std::string_view label)
{
	return unicast_receive_prob(m, receiver, others, unicast_range(m, sender, label), label);
}

double broadcast_rate_at(const Model &m, LocationId at, const ModelComponent &sys, std::string_view label)
{
	double total = 0.0;
	for (auto &s : sys)
		total += sum_of<BroadcastOut>(m, s, label,
		                              [&](const BroadcastOut &p) { return p.range.contains(at) ? p.rate : 0.0; });
	return total;
}

double exit_rate(const Model &m, const ActionId &a, const ModelComponent &sys, const SeqComponent &s)
{
	const std::string &label = a.label;
	switch (a.type) {
	case ActionType::Spontaneous:
		return spontaneous_rate(m, s, label);
	case ActionType::BroadcastOut:
		return broadcast_rate(m, s, label);
	case ActionType::BroadcastIn:
		return broadcast_rate_at(m, s.location(), sys, label) * broadcast_accept_prob(m, s, label);
	case ActionType::UnicastOut: {
		double best = 0.0;
		for (LocationId l : locations_of(sys))
			best = std::max(best, unicast_rate_in_context(m, l, sys, s, label));
		return best;
	}
	case ActionType::UnicastIn: {
		double p = unicast_accept_prob(m, s, label);
		if (p == 0.0)
			return 0.0;
		double total = 0.0;
		for (std::size_t k = 0; k < sys.size(); ++k) {
			ModelComponent rest = remove_at(sys, k);
			total += sum_of<UnicastOut>(m, sys[k], label, [&](const UnicastOut &out) {
				if (!out.range.contains(s.location()))
					return 0.0;
				if (!has_weight_in(m, parallel(rest, s), out.range, label))
					return 0.0;
				return out.rate * unicast_receive_prob(m, s, rest, out.range, label);
			});
		}
		return total * p;
	}
	}
	return 0.0;
}

double exit_rate(const Model &m, const ActionId &a, const ModelComponent &sys, const ModelComponent &p)
{
	double total = 0.0;
	for (std::size_t i = 0; i < p.size(); ++i)
		total += exit_rate(m, a, parallel(sys, remove_at(p, i)), p[i]);
	return total;
}

double exit_rate(const Model &m, const ActionId &a, const LocationSet &at, const ModelComponent &sys,
                 const ModelComponent &p)
{
	double total = 0.0;
	for (std::size_t i = 0; i < p.size(); ++i)
		if (at.contains(p[i].location()))
			total += exit_rate(m, a, parallel(sys, remove_at(p, i)), p[i]);
	return total;
}

double exit_rate(const Model &m, const RateQuery &q)
{
	if (auto *s = std::get_if<SeqComponent>(&q.subject)) {
		if (q.locations && !q.locations->contains(s->location()))
			return 0.0;
		return exit_rate(m, q.action, q.context, *s);
	}
	const auto &p = std::get<ModelComponent>(q.subject);
	if (q.locations)
		return exit_rate(m, q.action, *q.locations, q.context, p);
	return exit_rate(m, q.action, q.context, p);
}

} // namespace paloma
