#pragma once

// Concrete `.paloma` syntax:
//
//   param r = 2.0;
//   location l0 = (-1, 0);
//   Transmitter(l0) := !!(message, r)@Ir{all}.Transmitter(l1);
//   Receiver(l1)    := ??(message, p)@Wt{2.0}.Receiver(l0) + (tick, 1).Receiver(l1);
//   system Scenario := Transmitter(l0) || Receiver(l1);
//
// Prefixes: !!(a, rate)@Ir{...}  ??(a, prob)@Wt{w}  !(a, rate)@Ir{...}
// ?(a, prob)@Prob{q}  (a, rate). `all` inside Ir{} must appear alone.
// Rates, probabilities and weights are decimal literals or parameter names.
// `+` is left-associative; parentheses group choices. `//` starts a comment.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "paloma/core.hpp"

namespace paloma {

struct Diagnostic {
	enum class Severity { Error, Warning };

	Severity severity = Severity::Error;
	std::string message;
	int line = 0; // 1-based; 0 when no source position is known
	int column = 0;

	std::string to_string() const;
};

bool has_errors(const std::vector<Diagnostic> &diags);

/* Where declarations appeared in the source, for positioning validation
 * diagnostics. */
struct SourceMap {
	struct Pos {
		int line = 0;
		int column = 0;
	};
	std::map<ConstantRef, Pos> equations;
	std::map<std::string, Pos> locations;
	std::map<std::string, Pos> systems;
};

struct ParseResult {
	std::optional<Model> model;
	std::vector<Diagnostic> diagnostics;
	SourceMap sources;

	bool ok() const { return model.has_value(); }
};

/* Lexing, syntax and name/value elaboration. Never throws on bad input: every
 * failure is reported as at least one error diagnostic and no model. */
ParseResult parse_model(std::string_view text);

/* Cross-equation checks on a parsed model. */
std::vector<Diagnostic> validate(const Model &model, const SourceMap *sources = nullptr);

/* parse_model followed by validate; the model is dropped when either reports
 * an error. */
ParseResult load_model(std::string_view text);

/* Source text that parses back to a structurally identical model. */
std::string pretty_print(const Model &model);

} // namespace paloma
