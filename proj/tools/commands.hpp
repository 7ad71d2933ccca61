#pragma once

// Subcommands of the `paloma` tool. Each returns the process exit code:
// 0 ok / related, 1 not related, 2 input error, 3 bound exceeded or
// inconclusive.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace paloma::cli {

enum ExitCode { kOk = 0, kNotRelated = 1, kInputError = 2, kBound = 3 };

/* PALOMA_BOUND when set to a positive integer, else 10000. */
std::size_t default_bound();

struct CheckArgs {
	std::string model;
};

struct CtmcArgs {
	std::string model;
	std::string system;
	std::size_t bound = 10000;
	std::string format = "tsv"; // tsv | dot
};

struct RateArgs {
	std::string model;
	std::string system;
	std::string action;
	std::vector<std::string> locations; // empty: the whole component
	std::string context = "empty";
};

struct BisimArgs {
	std::string model;
	std::string left;
	std::string right;
	std::string context = "empty";
	std::string mode = "isometry"; // isometry | naive | fixed
	std::vector<double> matrix;    // fixed mode, row-major 2×2
	std::vector<double> offset;    // fixed mode
	std::size_t bound = 10000;
	std::size_t subset_size = 1;
};

int cmd_check(const CheckArgs &a, std::ostream &out, std::ostream &err);
int cmd_ctmc(const CtmcArgs &a, std::ostream &out, std::ostream &err);
int cmd_rate(const RateArgs &a, std::ostream &out, std::ostream &err);
int cmd_bisim(const BisimArgs &a, std::ostream &out, std::ostream &err);

} // namespace paloma::cli
