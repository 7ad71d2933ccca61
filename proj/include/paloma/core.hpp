#pragma once

// Abstract syntax of located agents: locations, actions, prefixes,
// sequential components (agents) and model components (parallel
// compositions), plus the Model that owns constant definitions.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace paloma {

struct Point {
	double x = 0.0;
	double y = 0.0;
	friend bool operator==(const Point &, const Point &) = default;
};

/* Index into Model::locations(). Equality of locations is equality of names,
 * and names are unique per model, so the index is a faithful identity. */
struct LocationId {
	std::uint32_t value = 0;
	friend auto operator<=>(const LocationId &, const LocationId &) = default;
};

using LocationSet = std::set<LocationId>;

struct Location {
	std::string name;
	Point point;
	friend bool operator==(const Location &, const Location &) = default;
};

enum class ActionType { Spontaneous, BroadcastOut, BroadcastIn, UnicastOut, UnicastIn };

/* "", "!", "?", "!!", "??" */
std::string_view glyph(ActionType t);

struct ActionId {
	ActionType type = ActionType::Spontaneous;
	std::string label;

	friend auto operator<=>(const ActionId &, const ActionId &) = default;

	std::string to_string() const;
	/* Accepts the glyph-prefixed forms `!!m`, `??m`, `!m`, `?m` and bare `m`. */
	static std::optional<ActionId> parse(std::string_view text);
};

struct UnicastOut {
	std::string label;
	double rate = 0.0;
	LocationSet range;
	friend bool operator==(const UnicastOut &, const UnicastOut &) = default;
};

struct UnicastIn {
	std::string label;
	double act_prob = 0.0;
	double weight = 0.0;
	friend bool operator==(const UnicastIn &, const UnicastIn &) = default;
};

struct BroadcastOut {
	std::string label;
	double rate = 0.0;
	LocationSet range;
	friend bool operator==(const BroadcastOut &, const BroadcastOut &) = default;
};

struct BroadcastIn {
	std::string label;
	double act_prob = 0.0;
	double recv_prob = 0.0;
	friend bool operator==(const BroadcastIn &, const BroadcastIn &) = default;
};

struct Spontaneous {
	std::string label;
	double rate = 0.0;
	friend bool operator==(const Spontaneous &, const Spontaneous &) = default;
};

class Prefix {
public:
	using Variant = std::variant<UnicastOut, UnicastIn, BroadcastOut, BroadcastIn, Spontaneous>;

	Prefix(UnicastOut p) : v_(std::move(p)) {}
	Prefix(UnicastIn p) : v_(std::move(p)) {}
	Prefix(BroadcastOut p) : v_(std::move(p)) {}
	Prefix(BroadcastIn p) : v_(std::move(p)) {}
	Prefix(Spontaneous p) : v_(std::move(p)) {}

	ActionType type() const;
	const std::string &label() const;
	ActionId action() const { return {type(), label()}; }

	const Variant &get() const { return v_; }
	template <class T> const T *as() const { return std::get_if<T>(&v_); }

	friend bool operator==(const Prefix &, const Prefix &) = default;

private:
	Variant v_;
};

struct ConstantRef {
	std::string name;
	LocationId location;
	friend auto operator<=>(const ConstantRef &, const ConstantRef &) = default;
};

class SeqComponent;
struct Prefixed;
struct Choice;

/* A located agent term: prefix-guarded continuation, binary choice, or a
 * constant reference. Immutable and cheap to copy (shared node). */
class SeqComponent {
public:
	static SeqComponent constant(ConstantRef ref);
	static SeqComponent constant(std::string name, LocationId at);
	static SeqComponent prefixed(Prefix prefix, ConstantRef next, LocationId at);
	/* Throws std::invalid_argument when the operands are located differently. */
	static SeqComponent choice(SeqComponent left, SeqComponent right);

	LocationId location() const;

	const Prefixed *as_prefixed() const;
	const Choice *as_choice() const;
	const ConstantRef *as_constant() const;

	/* Structural identity; constants are not unfolded. */
	friend bool operator==(const SeqComponent &a, const SeqComponent &b);

private:
	struct Node;
	explicit SeqComponent(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
	std::shared_ptr<const Node> node_;
};

struct Prefixed {
	Prefix prefix;
	ConstantRef next;
};

struct Choice {
	SeqComponent left;
	SeqComponent right;
};

/* Ordered parallel composition; the empty composition is the empty context. */
class ModelComponent {
public:
	ModelComponent() = default;
	explicit ModelComponent(std::vector<SeqComponent> parts) : parts_(std::move(parts)) {}
	ModelComponent(std::initializer_list<SeqComponent> parts) : parts_(parts) {}
	ModelComponent(const SeqComponent &single) : parts_{single} {}

	std::size_t size() const { return parts_.size(); }
	bool empty() const { return parts_.empty(); }
	const SeqComponent &operator[](std::size_t i) const { return parts_[i]; }
	const std::vector<SeqComponent> &parts() const { return parts_; }
	auto begin() const { return parts_.begin(); }
	auto end() const { return parts_.end(); }

	friend bool operator==(const ModelComponent &, const ModelComponent &) = default;

private:
	std::vector<SeqComponent> parts_;
};

/* a ∥ b, preserving order */
ModelComponent parallel(const ModelComponent &a, const ModelComponent &b);

LocationSet locations_of(const SeqComponent &s);
LocationSet locations_of(const ModelComponent &p);

/* Sequential components of p located in `in`, in composition order. */
std::vector<SeqComponent> seq_in(const ModelComponent &p, const LocationSet &in);
std::vector<SeqComponent> seq_in(const ModelComponent &p);

/* Positional deletion / insertion / replacement. Throw std::out_of_range. */
ModelComponent remove_at(const ModelComponent &p, std::size_t i);
ModelComponent insert_at(const ModelComponent &p, std::size_t i, const SeqComponent &s);
ModelComponent replace_at(const ModelComponent &p, std::size_t i, const SeqComponent &s);

struct Equation {
	ConstantRef head;
	SeqComponent body;
};

class ModelError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

/* Declarations of one model: parameters, located constants and named systems.
 * Built once (by the parser or by hand) and then only read. */
class Model {
public:
	void set_param(const std::string &name, double value);
	/* Throws ModelError on a duplicate name. */
	LocationId add_location(const std::string &name, Point at);
	/* Throws ModelError on a duplicate head or when body and head are located
	 * differently. */
	void add_equation(ConstantRef head, SeqComponent body);
	void add_system(const std::string &name, ModelComponent system);

	const std::map<std::string, double> &params() const { return params_; }
	const std::vector<Location> &locations() const { return locations_; }
	const Location &location(LocationId id) const { return locations_.at(id.value); }
	std::optional<LocationId> find_location(std::string_view name) const;
	LocationSet all_locations() const;

	const std::vector<Equation> &equations() const { return equations_; }
	const Equation *find_equation(const ConstantRef &head) const;

	const std::vector<std::pair<std::string, ModelComponent>> &systems() const { return systems_; }
	const ModelComponent *find_system(std::string_view name) const;

	/* Every action label mentioned by some prefix, sorted. */
	std::vector<std::string> labels() const;

	/* Unfolds top-level constant references until a prefix or choice term is
	 * reached. Throws ModelError on undefined constants or alias cycles. */
	const SeqComponent &resolve(const SeqComponent &s) const;

	/* Source-like rendering of a term body (no location suffix). */
	std::string to_text(const SeqComponent &s) const;
	std::string location_text(const LocationSet &set) const;

	/* Key identifying the ≡-class of a term: the first constant (in definition
	 * order) whose unfolded body is identical, else a rendering of the term. */
	std::string canonical_text(const SeqComponent &s) const;
	std::string canonical_text(const ModelComponent &p) const;

	friend bool operator==(const Model &a, const Model &b);

private:
	std::map<std::string, double> params_;
	std::vector<Location> locations_;
	std::vector<Equation> equations_;
	std::map<ConstantRef, std::size_t> equation_index_;
	std::vector<std::pair<std::string, ModelComponent>> systems_;
	/* body rendering@location -> first equation with that body */
	std::unordered_map<std::string, std::size_t> representative_;
};

/* P ≡ Q: position-wise identity after unfolding top-level constants. */
bool struct_equiv(const Model &m, const SeqComponent &a, const SeqComponent &b);
bool struct_equiv(const Model &m, const ModelComponent &p, const ModelComponent &q);

/* Shortest decimal text that reads back to the same double. */
std::string format_number(double v);
/* 17 significant digits, for exported rates. */
std::string format_rate(double v);

} // namespace paloma
