#include "paloma/core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace paloma {

std::string_view glyph(ActionType t)
{
	switch (t) {
	case ActionType::Spontaneous: return "";
	case ActionType::BroadcastOut: return "!";
	case ActionType::BroadcastIn: return "?";
	case ActionType::UnicastOut: return "!!";
	case ActionType::UnicastIn: return "??";
	}
	return "";
}

std::string ActionId::to_string() const
{
	return std::string(glyph(type)) + label;
}

static bool is_ident(std::string_view s)
{
	if (s.empty())
		return false;
	auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
	auto tail = [&](char c) { return head(c) || std::isdigit(static_cast<unsigned char>(c)); };
	return head(s[0]) && std::all_of(s.begin() + 1, s.end(), tail);
}

std::optional<ActionId> ActionId::parse(std::string_view text)
{
	ActionId a;
	if (text.starts_with("!!")) {
		a.type = ActionType::UnicastOut;
		text.remove_prefix(2);
	} else if (text.starts_with("??")) {
		a.type = ActionType::UnicastIn;
		text.remove_prefix(2);
	} else if (text.starts_with("!")) {
		a.type = ActionType::BroadcastOut;
		text.remove_prefix(1);
	} else if (text.starts_with("?")) {
		a.type = ActionType::BroadcastIn;
		text.remove_prefix(1);
	}
	if (!is_ident(text))
		return std::nullopt;
	a.label = std::string(text);
	return a;
}

ActionType Prefix::type() const
{
	struct {
		ActionType operator()(const UnicastOut &) const { return ActionType::UnicastOut; }
		ActionType operator()(const UnicastIn &) const { return ActionType::UnicastIn; }
		ActionType operator()(const BroadcastOut &) const { return ActionType::BroadcastOut; }
		ActionType operator()(const BroadcastIn &) const { return ActionType::BroadcastIn; }
		ActionType operator()(const Spontaneous &) const { return ActionType::Spontaneous; }
	} v;
	return std::visit(v, v_);
}

const std::string &Prefix::label() const
{
	return std::visit([](const auto &p) -> const std::string & { return p.label; }, v_);
}

// ---------------------------------------------------------------- terms

struct SeqComponent::Node {
	std::variant<Prefixed, Choice, ConstantRef> body;
	LocationId location;
};

SeqComponent SeqComponent::constant(ConstantRef ref)
{
	LocationId at = ref.location;
	return SeqComponent(std::make_shared<const Node>(Node{std::move(ref), at}));
}

SeqComponent SeqComponent::constant(std::string name, LocationId at)
{
	return constant(ConstantRef{std::move(name), at});
}

SeqComponent SeqComponent::prefixed(Prefix prefix, ConstantRef next, LocationId at)
{
	return SeqComponent(std::make_shared<const Node>(
		Node{Prefixed{std::move(prefix), std::move(next)}, at}));
}

SeqComponent SeqComponent::choice(SeqComponent left, SeqComponent right)
{
	if (left.location() != right.location())
		throw std::invalid_argument("choice operands must share a location");
	LocationId at = left.location();
	return SeqComponent(std::make_shared<const Node>(
		Node{Choice{std::move(left), std::move(right)}, at}));
}

LocationId SeqComponent::location() const { return node_->location; }

const Prefixed *SeqComponent::as_prefixed() const { return std::get_if<Prefixed>(&node_->body); }
const Choice *SeqComponent::as_choice() const { return std::get_if<Choice>(&node_->body); }
const ConstantRef *SeqComponent::as_constant() const { return std::get_if<ConstantRef>(&node_->body); }

bool operator==(const SeqComponent &a, const SeqComponent &b)
{
	if (a.node_ == b.node_)
		return true;
	if (a.node_->location != b.node_->location)
		return false;
	if (auto *pa = a.as_prefixed()) {
		auto *pb = b.as_prefixed();
		return pb && pa->prefix == pb->prefix && pa->next == pb->next;
	}
	if (auto *ca = a.as_choice()) {
		auto *cb = b.as_choice();
		return cb && ca->left == cb->left && ca->right == cb->right;
	}
	auto *ka = a.as_constant();
	auto *kb = b.as_constant();
	return kb && *ka == *kb;
}

ModelComponent parallel(const ModelComponent &a, const ModelComponent &b)
{
	std::vector<SeqComponent> parts = a.parts();
	parts.insert(parts.end(), b.begin(), b.end());
	return ModelComponent(std::move(parts));
}

LocationSet locations_of(const SeqComponent &s)
{
	return {s.location()};
}

LocationSet locations_of(const ModelComponent &p)
{
	LocationSet out;
	for (const auto &s : p)
		out.insert(s.location());
	return out;
}

std::vector<SeqComponent> seq_in(const ModelComponent &p, const LocationSet &in)
{
	std::vector<SeqComponent> out;
	for (const auto &s : p)
		if (in.contains(s.location()))
			out.push_back(s);
	return out;
}

std::vector<SeqComponent> seq_in(const ModelComponent &p)
{
	return p.parts();
}

ModelComponent remove_at(const ModelComponent &p, std::size_t i)
{
	if (i >= p.size())
		throw std::out_of_range("remove_at: index " + std::to_string(i) + " out of range");
	std::vector<SeqComponent> parts = p.parts();
	parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(i));
	return ModelComponent(std::move(parts));
}

ModelComponent insert_at(const ModelComponent &p, std::size_t i, const SeqComponent &s)
{
	if (i > p.size())
		throw std::out_of_range("insert_at: index " + std::to_string(i) + " out of range");
	std::vector<SeqComponent> parts = p.parts();
	parts.insert(parts.begin() + static_cast<std::ptrdiff_t>(i), s);
	return ModelComponent(std::move(parts));
}

ModelComponent replace_at(const ModelComponent &p, std::size_t i, const SeqComponent &s)
{
	if (i >= p.size())
		throw std::out_of_range("replace_at: index " + std::to_string(i) + " out of range");
	std::vector<SeqComponent> parts = p.parts();
	parts[i] = s;
	return ModelComponent(std::move(parts));
}

// ---------------------------------------------------------------- numbers

std::string format_number(double v)
{
	char buf[64];
	auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
	if (ec != std::errc())
		return "nan";
	return std::string(buf, end);
}

std::string format_rate(double v)
{
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.17g", v);
	return buf;
}

// ---------------------------------------------------------------- model

void Model::set_param(const std::string &name, double value)
{
	params_[name] = value;
}

LocationId Model::add_location(const std::string &name, Point at)
{
	if (find_location(name))
		throw ModelError("duplicate location '" + name + "'");
	locations_.push_back({name, at});
	return LocationId{static_cast<std::uint32_t>(locations_.size() - 1)};
}

std::optional<LocationId> Model::find_location(std::string_view name) const
{
	for (std::size_t i = 0; i < locations_.size(); ++i)
		if (locations_[i].name == name)
			return LocationId{static_cast<std::uint32_t>(i)};
	return std::nullopt;
}

LocationSet Model::all_locations() const
{
	LocationSet out;
	for (std::size_t i = 0; i < locations_.size(); ++i)
		out.insert(LocationId{static_cast<std::uint32_t>(i)});
	return out;
}

void Model::add_equation(ConstantRef head, SeqComponent body)
{
	if (equation_index_.contains(head))
		throw ModelError("duplicate definition of " + head.name + "(" + location(head.location).name + ")");
	if (body.location() != head.location)
		throw ModelError("body of " + head.name + " is not located at " + location(head.location).name);
	std::size_t idx = equations_.size();
	if (!body.as_constant()) {
		std::string key = to_text(body) + "@" + location(head.location).name;
		representative_.try_emplace(std::move(key), idx);
	}
	equation_index_.emplace(head, idx);
	equations_.push_back({std::move(head), std::move(body)});
}

void Model::add_system(const std::string &name, ModelComponent system)
{
	for (auto &[n, s] : systems_)
		if (n == name)
			throw ModelError("duplicate system '" + name + "'");
	systems_.emplace_back(name, std::move(system));
}

const Equation *Model::find_equation(const ConstantRef &head) const
{
	auto it = equation_index_.find(head);
	return it == equation_index_.end() ? nullptr : &equations_[it->second];
}

const ModelComponent *Model::find_system(std::string_view name) const
{
	for (auto &[n, s] : systems_)
		if (n == name)
			return &s;
	return nullptr;
}

static void collect_labels(const SeqComponent &s, std::set<std::string> &out)
{
	if (auto *p = s.as_prefixed())
		out.insert(p->prefix.label());
	else if (auto *c = s.as_choice()) {
		collect_labels(c->left, out);
		collect_labels(c->right, out);
	}
}

std::vector<std::string> Model::labels() const
{
	std::set<std::string> out;
	for (auto &eq : equations_)
		collect_labels(eq.body, out);
	return {out.begin(), out.end()};
}

const SeqComponent &Model::resolve(const SeqComponent &s) const
{
	const SeqComponent *cur = &s;
	for (std::size_t steps = 0; auto *ref = cur->as_constant(); ++steps) {
		if (steps > equations_.size())
			throw ModelError("cyclic constant alias involving " + ref->name);
		const Equation *eq = find_equation(*ref);
		if (!eq)
			throw ModelError("no definition for " + ref->name + "(" + location(ref->location).name + ")");
		cur = &eq->body;
	}
	return *cur;
}

std::string Model::location_text(const LocationSet &set) const
{
	std::string out;
	for (auto id : set) {
		if (!out.empty())
			out += ", ";
		out += location(id).name;
	}
	return out;
}

namespace {

struct PrefixPrinter {
	const Model &m;
	std::string operator()(const UnicastOut &p) const
	{
		return "!!(" + p.label + ", " + format_number(p.rate) + ")@Ir{" + m.location_text(p.range) + "}";
	}
	std::string operator()(const UnicastIn &p) const
	{
		return "?\?(" + p.label + ", " + format_number(p.act_prob) + ")@Wt{" + format_number(p.weight) + "}";
	}
	std::string operator()(const BroadcastOut &p) const
	{
		return "!(" + p.label + ", " + format_number(p.rate) + ")@Ir{" + m.location_text(p.range) + "}";
	}
	std::string operator()(const BroadcastIn &p) const
	{
		return "?(" + p.label + ", " + format_number(p.act_prob) + ")@Prob{" + format_number(p.recv_prob) + "}";
	}
	std::string operator()(const Spontaneous &p) const
	{
		return "(" + p.label + ", " + format_number(p.rate) + ")";
	}
};

} // namespace

std::string Model::to_text(const SeqComponent &s) const
{
	if (auto *k = s.as_constant())
		return k->name + "(" + location(k->location).name + ")";
	if (auto *p = s.as_prefixed())
		return std::visit(PrefixPrinter{*this}, p->prefix.get()) + "." + p->next.name + "(" +
		       location(p->next.location).name + ")";
	auto *c = s.as_choice();
	std::string right = to_text(c->right);
	if (c->right.as_choice())
		right = "(" + right + ")";
	return to_text(c->left) + " + " + right;
}

std::string Model::canonical_text(const SeqComponent &s) const
{
	const SeqComponent &body = resolve(s);
	const std::string &loc = location(s.location()).name;
	std::string text = to_text(body);
	auto it = representative_.find(text + "@" + loc);
	if (it != representative_.end()) {
		const ConstantRef &head = equations_[it->second].head;
		return head.name + "(" + loc + ")";
	}
	return "{" + text + "}@" + loc;
}

std::string Model::canonical_text(const ModelComponent &p) const
{
	if (p.empty())
		return "empty";
	std::string out;
	for (std::size_t i = 0; i < p.size(); ++i) {
		if (i)
			out += " || ";
		out += canonical_text(p[i]);
	}
	return out;
}

bool operator==(const Model &a, const Model &b)
{
	if (a.params_ != b.params_ || a.locations_ != b.locations_ || a.systems_ != b.systems_)
		return false;
	if (a.equations_.size() != b.equations_.size())
		return false;
	for (std::size_t i = 0; i < a.equations_.size(); ++i)
		if (a.equations_[i].head != b.equations_[i].head || !(a.equations_[i].body == b.equations_[i].body))
			return false;
	return true;
}

bool struct_equiv(const Model &m, const SeqComponent &a, const SeqComponent &b)
{
	return a.location() == b.location() && m.resolve(a) == m.resolve(b);
}

bool struct_equiv(const Model &m, const ModelComponent &p, const ModelComponent &q)
{
	if (p.size() != q.size())
		return false;
	for (std::size_t i = 0; i < p.size(); ++i)
		if (!struct_equiv(m, p[i], q[i]))
			return false;
	return true;
}

} // namespace paloma
