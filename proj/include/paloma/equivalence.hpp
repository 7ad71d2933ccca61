#pragma once

// Bisimulation of model components within a fixed context, relative to a
// plane isometry, and the existential check over candidate isometries.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paloma/core.hpp"
#include "paloma/isometry.hpp"

namespace paloma {

inline constexpr double kRateTolerance = 1e-9;

/* |a − b| ≤ 1e-9 · max(|a|, |b|) */
bool rates_equal(double a, double b);

enum class Verdict { Related, NotRelated, Inconclusive };

std::string_view verdict_name(Verdict v); // "related", "not related", "inconclusive"

struct Failure {
	enum class Kind { RateMismatch, Unmatched, Location };
	Kind kind = Kind::RateMismatch;
	ActionId action;
	// RateMismatch: rates at a location and its image; Location: the two
	// locations that differ
	std::string left_location, right_location;
	double left_rate = 0.0, right_rate = 0.0;
	// Unmatched: which side moved, the system-level label, and the target
	bool from_left = true;
	std::string via;
	std::string target;

	std::string to_string() const;
};

struct Attempt {
	Isometry phi;
	Verdict verdict;
	std::vector<Failure> failures; // for the root pair
};

using StatePair = std::pair<ModelComponent, ModelComponent>;

struct BisimResult {
	Verdict verdict = Verdict::NotRelated;
	std::optional<Isometry> witness;
	std::vector<StatePair> relation; // greatest bisimulation found, when related
	std::vector<Failure> counterexample;
	std::vector<Attempt> attempts;
	std::string note;
	std::size_t left_states = 0, right_states = 0;

	bool related() const { return verdict == Verdict::Related; }
};

struct BisimOptions {
	std::size_t bound = 10000;
	/* Check the rate condition on every location subset up to this size
	 * rather than on singletons only. */
	std::size_t subset_size = 1;
};

/* Greatest bisimulation w.r.t. phi between the states reachable from p and q
 * inside context sys. */
BisimResult check_bisim_phi(const Model &m, const ModelComponent &p, const ModelComponent &q,
                            const ModelComponent &sys, const Isometry &phi, const BisimOptions &opts = {});

/* Tries each candidate isometry for locations_of(sys ∥ p) → locations_of(sys ∥ q). */
BisimResult bisimilar(const Model &m, const ModelComponent &p, const ModelComponent &q, const ModelComponent &sys,
                      const BisimOptions &opts = {});

/* Identity φ, equal locations and equal total rates for every action. */
BisimResult naive_bisim(const Model &m, const ModelComponent &p, const ModelComponent &q, const ModelComponent &sys,
                        const BisimOptions &opts = {});

/* Whether `relation` satisfies the rate and transfer conditions w.r.t. phi. */
bool check_relation(const Model &m, const std::vector<StatePair> &relation, const ModelComponent &sys,
                    const Isometry &phi);

/* Deterministic text report of a result. */
std::string format_report(const Model &m, const BisimResult &r);

} // namespace paloma
