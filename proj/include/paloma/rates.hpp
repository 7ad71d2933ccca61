#pragma once

// Syntactic and context-aware rate, weight and probability functions.
//
// Every function resolves constant references and sums over choice
// operands. Labels are plain action labels; the action type is implied by
// the function (or by the ActionId for exit_rate).

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "paloma/core.hpp"

namespace paloma {

/* Prefix-guarded summands of s, left to right, with constants unfolded. */
std::vector<Prefixed> summands(const Model &m, const SeqComponent &s);

/* First summand whose prefix is `action`, if any. */
std::optional<Prefixed> find_summand(const Model &m, const SeqComponent &s, const ActionId &action);

double unicast_rate(const Model &m, const SeqComponent &s, std::string_view label);
double broadcast_rate(const Model &m, const SeqComponent &s, std::string_view label);
double spontaneous_rate(const Model &m, const SeqComponent &s, std::string_view label);

/* Union of the ranges of all !!label prefixes of s. */
LocationSet unicast_range(const Model &m, const SeqComponent &s, std::string_view label);

double weight(const Model &m, const SeqComponent &s, std::string_view label);
double weight(const Model &m, const ModelComponent &p, std::string_view label);
double weight(const Model &m, const std::vector<SeqComponent> &parts, std::string_view label);

/* p of the ??label prefix, 0 when absent. */
double unicast_accept_prob(const Model &m, const SeqComponent &s, std::string_view label);
/* p·q of the ?label prefix, 0 when absent. */
double broadcast_accept_prob(const Model &m, const SeqComponent &s, std::string_view label);

/* Rate at which s can unicast `label` to location `to`. */
double unicast_capability(const Model &m, LocationId to, const SeqComponent &s, std::string_view label);

/* Rate at which p unicasts `label` to `to` inside `sys`. A sender prefix only
 * counts when some other component of sys ∥ p in its range has weight. */
double unicast_rate_in_context(const Model &m, LocationId to, const ModelComponent &sys, const ModelComponent &p,
                               std::string_view label);

/* Probability that `receiver` is the one picked by a unicast over `range`,
 * with `others` the remaining potential receivers. */
double unicast_receive_prob(const Model &m, const SeqComponent &receiver, const ModelComponent &others,
                            const LocationSet &range, std::string_view label);
/* Same, with the range taken from the sender's !!label prefixes. */
double unicast_receive_prob(const Model &m, const SeqComponent &receiver, const ModelComponent &others,
                            const SeqComponent &sender, std::string_view label);

/* Total rate of !label prefixes in sys whose range contains `at`. */
double broadcast_rate_at(const Model &m, LocationId at, const ModelComponent &sys, std::string_view label);

/* Context-aware exit rate of action a. */
double exit_rate(const Model &m, const ActionId &a, const ModelComponent &sys, const SeqComponent &s);
double exit_rate(const Model &m, const ActionId &a, const ModelComponent &sys, const ModelComponent &p);
double exit_rate(const Model &m, const ActionId &a, const LocationSet &at, const ModelComponent &sys,
                 const ModelComponent &p);

struct RateQuery {
	ActionId action;
	std::optional<LocationSet> locations;
	ModelComponent context;
	std::variant<SeqComponent, ModelComponent> subject;
};

double exit_rate(const Model &m, const RateQuery &q);

} // namespace paloma
