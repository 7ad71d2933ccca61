#pragma once

// Reference CTMC generator for cross-checking the engine. It reads the
// equations of a parsed Model but shares no code with rates or semantics:
// states are vectors of equation indices and every rule is applied by
// direct enumeration.

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "paloma/core.hpp"

namespace oracle {

// (source text, target text, kind, label); kind is "spontaneous",
// "broadcast" or "unicast"
using EdgeKey = std::tuple<std::string, std::string, std::string, std::string>;

struct Chain {
	std::vector<std::string> states; // BFS order, initial first
	std::map<EdgeKey, double> edges; // summed rates
	bool exceeded = false;
};

Chain explore(const paloma::Model &m, const paloma::ModelComponent &initial, std::size_t bound);

} // namespace oracle
