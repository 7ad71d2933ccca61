#pragma once

// Randomized invariants. Each property draws its own cases from a fixed seed
// and reports how many held; the unit test binary and the acceptance runner
// share these definitions.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace testsupport {

struct PropertyResult {
	std::string name;
	int cases = 0;
	int failures = 0;
	int skipped = 0; // generated but not applicable (e.g. bound exceeded)
	std::string first_failure;
	std::string note; // informational counts

	bool ok(int min_cases) const { return failures == 0 && cases >= min_cases; }
	void fail(const std::string &why)
	{
		if (failures++ == 0)
			first_failure = why;
	}
};

struct Property {
	std::string name;
	std::function<PropertyResult(std::uint64_t seed, int cases)> run;
	std::uint64_t seed;
};

inline constexpr int kMinCases = 200;

/* Every property in a fixed order. */
const std::vector<Property> &property_suite();

/* Looks up a property by name; throws std::out_of_range. */
const Property &property(const std::string &name);

} // namespace testsupport
