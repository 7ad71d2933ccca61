#pragma once

// Capability and stochastic transition relations, agent-level steps and
// CTMC generation.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "paloma/core.hpp"

namespace paloma {

enum class CapKind { BroadcastIn, UnicastIn };

struct CapLabel {
	CapKind kind = CapKind::BroadcastIn;
	std::string label;
	LocationSet range;
	ModelComponent context; // for unicast, the other potential receivers
};

enum class StochKind { Spontaneous, Broadcast, Unicast };

std::string_view kind_name(StochKind k); // "spontaneous", "broadcast", "unicast"

struct StochLabel {
	StochKind kind = StochKind::Spontaneous;
	std::string label;
	LocationSet range; // empty for spontaneous
	ModelComponent context;

	/* "tick", "!m", "!!m" */
	std::string to_string() const;
};

/* Finite-support map from model components to values, keyed by canonical
 * text so that ≡-identical targets share one entry. */
class Continuation {
public:
	struct Entry {
		ModelComponent target;
		std::string key;
		double value;
	};

	void add(const Model &m, const ModelComponent &target, double value);
	double at(const std::string &key) const;
	double total() const;

	const std::vector<Entry> &entries() const { return entries_; }
	bool empty() const { return entries_.empty(); }

private:
	std::vector<Entry> entries_;
};

/* Absent when s is outside the range or cannot perform the input. A failed
 * input leaves s unchanged. Throws ModelError when s offers the input more
 * than once. */
std::optional<Continuation> cap_step(const Model &m, const SeqComponent &s, const CapLabel &l);
/* Broadcast: independent product over the capable parts, others unchanged.
 * Unicast: exactly one capable part moves. Absent when no part is capable. */
std::optional<Continuation> cap_step(const Model &m, const ModelComponent &p, const CapLabel &l);

struct Outcome {
	ModelComponent target;
	double rate = 0.0;
	std::vector<std::size_t> accepted; // receivers whose input succeeded
};

struct StochTransition {
	StochLabel label;
	std::size_t sender = 0; // position of the acting component
	std::vector<Outcome> outcomes;

	Continuation continuation(const Model &m) const;
	double total_rate() const;
};

/* All stochastic transitions of sys, one per enabled output or spontaneous
 * prefix, in position order. Zero-rate outcomes are omitted. */
std::vector<StochTransition> stoch_step(const Model &m, const ModelComponent &sys);

struct AgentStep {
	ActionId action;
	SeqComponent target;
	std::string via; // system-level label, e.g. "!!m"
};

/* Steps of the component at `position` as observed inside sys. Throws
 * std::out_of_range on a bad position. */
std::vector<AgentStep> agent_steps(const Model &m, const ModelComponent &sys, std::size_t position);

struct LiftedStep {
	ActionId action;
	ModelComponent target;
	std::string via;
};

/* Steps of p as the trailing part of context ∥ p; moves of the context are
 * not observed. */
std::vector<LiftedStep> lifted_steps(const Model &m, const ModelComponent &context, const ModelComponent &p);

struct CtmcEdge {
	std::size_t src = 0;
	std::size_t dst = 0;
	double rate = 0.0;
	StochKind kind = StochKind::Spontaneous;
	std::string label;
	LocationSet range;
};

struct Ctmc {
	std::vector<ModelComponent> states;
	std::vector<std::string> keys; // canonical text per state
	std::vector<CtmcEdge> edges;
	std::size_t initial = 0;
};

struct CtmcResult {
	enum class Status { Complete, BoundExceeded };
	Status status = Status::Complete;
	Ctmc ctmc;
	std::size_t discovered = 0;
};

/* Breadth-first closure of stoch_step. Parallel edges with equal kind,
 * label and range are merged. */
CtmcResult build_ctmc(const Model &m, const ModelComponent &initial, std::size_t bound);

/* Tab-separated state table and transition list. */
std::string to_tsv(const Ctmc &c);
std::string to_dot(const Ctmc &c);

} // namespace paloma
