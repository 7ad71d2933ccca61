#include "paloma/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <memory>
#include <sstream>

namespace paloma {

std::string Diagnostic::to_string() const
{
	std::string out;
	if (line > 0)
		out = std::to_string(line) + ":" + std::to_string(column) + ": ";
	out += severity == Severity::Error ? "error: " : "warning: ";
	return out + message;
}

bool has_errors(const std::vector<Diagnostic> &diags)
{
	return std::any_of(diags.begin(), diags.end(),
	                   [](const Diagnostic &d) { return d.severity == Diagnostic::Severity::Error; });
}

namespace {

using Pos = SourceMap::Pos;

// ---------------------------------------------------------------- lexer

enum class Tok {
	Ident, Number,
	Bang2, Bang, Quest2, Quest,
	LParen, RParen, LBrace, RBrace,
	Comma, Dot, Semi, Assign, Equals, Plus, Par, At,
	End
};

struct Token {
	Tok kind = Tok::End;
	std::string text;
	double number = 0.0;
	Pos pos;
};

std::string describe(const Token &t)
{
	switch (t.kind) {
	case Tok::End: return "end of input";
	case Tok::Ident: return "identifier '" + t.text + "'";
	case Tok::Number: return "number " + t.text;
	default: return "'" + t.text + "'";
	}
}

class Lexer {
public:
	Lexer(std::string_view src, std::vector<Diagnostic> &diags) : src_(src), diags_(diags) {}

	std::vector<Token> run()
	{
		std::vector<Token> out;
		for (;;) {
			skip_space();
			Pos at{line_, col_};
			if (i_ >= src_.size()) {
				out.push_back({Tok::End, "", 0.0, at});
				return out;
			}
			char c = src_[i_];
			if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
				std::size_t b = i_;
				while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
					advance();
				out.push_back({Tok::Ident, std::string(src_.substr(b, i_ - b)), 0.0, at});
			} else if (std::isdigit(static_cast<unsigned char>(c)) ||
			           (c == '-' && i_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_ + 1])))) {
				out.push_back(number(at));
			} else if (auto t = symbol(); t) {
				t->pos = at;
				out.push_back(*t);
			} else {
				diags_.push_back({Diagnostic::Severity::Error,
				                  std::string("unexpected character '") + c + "'", at.line, at.column});
				advance();
			}
		}
	}

private:
	void advance()
	{
		if (src_[i_] == '\n') {
			++line_;
			col_ = 1;
		} else {
			++col_;
		}
		++i_;
	}

	void skip_space()
	{
		while (i_ < src_.size()) {
			if (std::isspace(static_cast<unsigned char>(src_[i_])))
				advance();
			else if (src_.substr(i_, 2) == "//")
				while (i_ < src_.size() && src_[i_] != '\n')
					advance();
			else
				break;
		}
	}

	Token number(Pos at)
	{
		std::size_t b = i_;
		if (src_[i_] == '-')
			advance();
		auto digits = [&] {
			while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_])))
				advance();
		};
		digits();
		if (i_ + 1 < src_.size() && src_[i_] == '.' && std::isdigit(static_cast<unsigned char>(src_[i_ + 1]))) {
			advance();
			digits();
		}
		if (i_ < src_.size() && (src_[i_] == 'e' || src_[i_] == 'E')) {
			std::size_t save = i_;
			int sl = line_, sc = col_;
			advance();
			if (i_ < src_.size() && (src_[i_] == '+' || src_[i_] == '-'))
				advance();
			if (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) {
				digits();
			} else {
				i_ = save;
				line_ = sl;
				col_ = sc;
			}
		}
		std::string text(src_.substr(b, i_ - b));
		double v = 0.0;
		auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
		if (ec != std::errc() || p != text.data() + text.size() || !std::isfinite(v))
			diags_.push_back({Diagnostic::Severity::Error, "number '" + text + "' out of range", at.line, at.column});
		return {Tok::Number, text, v, at};
	}

	std::optional<Token> symbol()
	{
		static const std::pair<std::string_view, Tok> table[] = {
			{"!!", Tok::Bang2}, {"??", Tok::Quest2}, {":=", Tok::Assign}, {"||", Tok::Par},
			{"!", Tok::Bang}, {"?", Tok::Quest}, {"(", Tok::LParen}, {")", Tok::RParen},
			{"{", Tok::LBrace}, {"}", Tok::RBrace}, {",", Tok::Comma}, {".", Tok::Dot},
			{";", Tok::Semi}, {"=", Tok::Equals}, {"+", Tok::Plus}, {"@", Tok::At},
		};
		for (auto &[text, kind] : table) {
			if (src_.substr(i_, text.size()) == text) {
				for (std::size_t k = 0; k < text.size(); ++k)
					advance();
				return Token{kind, std::string(text), 0.0, {}};
			}
		}
		return std::nullopt;
	}

	std::string_view src_;
	std::vector<Diagnostic> &diags_;
	std::size_t i_ = 0;
	int line_ = 1;
	int col_ = 1;
};

// ---------------------------------------------------------------- raw syntax

struct RawValue {
	bool is_param = false;
	double number = 0.0;
	std::string name;
	Pos pos;
};

struct RawRef {
	std::string name;
	std::string loc;
	Pos pos;
	Pos loc_pos;
};

struct RawPrefix {
	ActionType type = ActionType::Spontaneous;
	std::string label;
	RawValue first;
	RawValue second;
	bool all = false;
	std::vector<std::pair<std::string, Pos>> range;
	Pos pos;
};

struct RawTerm {
	enum class Kind { Prefixed, Choice, Ref } kind = Kind::Ref;
	RawPrefix prefix;
	RawRef ref; // continuation for Prefixed, the reference for Ref
	std::unique_ptr<RawTerm> left, right;
	Pos pos;
};

struct RawParam {
	std::string name;
	double value;
	Pos pos;
};

struct RawLocation {
	std::string name;
	Point point;
	Pos pos;
};

struct RawEquation {
	RawRef head;
	std::unique_ptr<RawTerm> body;
};

struct RawSystem {
	std::string name;
	std::vector<RawRef> parts;
	Pos pos;
};

struct SyntaxError {
	std::string message;
	Pos pos;
};

class Parser {
public:
	Parser(std::vector<Token> toks, std::vector<Diagnostic> &diags) : toks_(std::move(toks)), diags_(diags) {}

	void run()
	{
		while (peek().kind != Tok::End) {
			try {
				statement();
			} catch (const SyntaxError &e) {
				diags_.push_back({Diagnostic::Severity::Error, e.message, e.pos.line, e.pos.column});
				while (peek().kind != Tok::End && peek().kind != Tok::Semi)
					++i_;
				if (peek().kind == Tok::Semi)
					++i_;
			}
		}
	}

	std::vector<RawParam> params;
	std::vector<RawLocation> locations;
	std::vector<RawEquation> equations;
	std::vector<RawSystem> systems;

private:
	const Token &peek(std::size_t ahead = 0) const
	{
		return toks_[std::min(i_ + ahead, toks_.size() - 1)];
	}

	const Token &expect(Tok kind, std::string_view what)
	{
		const Token &t = peek();
		if (t.kind != kind)
			throw SyntaxError{"expected " + std::string(what) + ", found " + describe(t), t.pos};
		++i_;
		return t;
	}

	bool accept(Tok kind)
	{
		if (peek().kind != kind)
			return false;
		++i_;
		return true;
	}

	void keyword(std::string_view word)
	{
		const Token &t = peek();
		if (t.kind != Tok::Ident || t.text != word)
			throw SyntaxError{"expected '" + std::string(word) + "', found " + describe(t), t.pos};
		++i_;
	}

	void statement()
	{
		const Token &t = peek();
		if (t.kind != Tok::Ident)
			throw SyntaxError{"expected a declaration, found " + describe(t), t.pos};
		bool decl = peek(1).kind == Tok::Ident;
		if (decl && t.text == "param") {
			++i_;
			const Token &name = expect(Tok::Ident, "parameter name");
			expect(Tok::Equals, "'='");
			const Token &v = expect(Tok::Number, "number");
			expect(Tok::Semi, "';'");
			params.push_back({name.text, v.number, name.pos});
		} else if (decl && t.text == "location") {
			++i_;
			const Token &name = expect(Tok::Ident, "location name");
			expect(Tok::Equals, "'='");
			expect(Tok::LParen, "'('");
			double x = expect(Tok::Number, "x coordinate").number;
			expect(Tok::Comma, "','");
			double y = expect(Tok::Number, "y coordinate").number;
			expect(Tok::RParen, "')'");
			expect(Tok::Semi, "';'");
			locations.push_back({name.text, {x, y}, name.pos});
		} else if (decl && t.text == "system") {
			++i_;
			const Token &name = expect(Tok::Ident, "system name");
			expect(Tok::Assign, "':='");
			RawSystem sys{name.text, {}, name.pos};
			sys.parts.push_back(ref());
			while (accept(Tok::Par))
				sys.parts.push_back(ref());
			expect(Tok::Semi, "';'");
			systems.push_back(std::move(sys));
		} else {
			RawRef head = ref();
			expect(Tok::Assign, "':='");
			auto body = choice();
			expect(Tok::Semi, "';'");
			equations.push_back({std::move(head), std::move(body)});
		}
	}

	RawRef ref()
	{
		const Token &name = expect(Tok::Ident, "constant name");
		expect(Tok::LParen, "'('");
		const Token &loc = expect(Tok::Ident, "location name");
		expect(Tok::RParen, "')'");
		return {name.text, loc.text, name.pos, loc.pos};
	}

	std::unique_ptr<RawTerm> choice()
	{
		auto left = summand();
		while (peek().kind == Tok::Plus) {
			Pos at = peek().pos;
			++i_;
			auto node = std::make_unique<RawTerm>();
			node->kind = RawTerm::Kind::Choice;
			node->pos = at;
			node->left = std::move(left);
			node->right = summand();
			left = std::move(node);
		}
		return left;
	}

	std::unique_ptr<RawTerm> summand()
	{
		const Token &t = peek();
		switch (t.kind) {
		case Tok::Bang2:
		case Tok::Quest2:
		case Tok::Bang:
		case Tok::Quest:
			return prefixed();
		case Tok::LParen:
			if (peek(1).kind == Tok::Ident && peek(2).kind == Tok::Comma)
				return prefixed();
			{
				++i_;
				auto inner = choice();
				expect(Tok::RParen, "')'");
				return inner;
			}
		case Tok::Ident: {
			auto node = std::make_unique<RawTerm>();
			node->kind = RawTerm::Kind::Ref;
			node->pos = t.pos;
			node->ref = ref();
			return node;
		}
		default:
			throw SyntaxError{"expected a prefix, constant or '(', found " + describe(t), t.pos};
		}
	}

	RawValue value(std::string_view what)
	{
		const Token &t = peek();
		if (t.kind == Tok::Number) {
			++i_;
			return {false, t.number, "", t.pos};
		}
		if (t.kind == Tok::Ident) {
			++i_;
			return {true, 0.0, t.text, t.pos};
		}
		throw SyntaxError{"expected " + std::string(what) + " (number or parameter), found " + describe(t), t.pos};
	}

	void range(RawPrefix &p)
	{
		expect(Tok::LBrace, "'{'");
		if (accept(Tok::RBrace))
			return;
		for (;;) {
			const Token &loc = expect(Tok::Ident, "location name or 'all'");
			if (loc.text == "all") {
				if (p.all || !p.range.empty() || peek().kind != Tok::RBrace)
					throw SyntaxError{"'all' must appear alone in an influence range", loc.pos};
				p.all = true;
			} else {
				p.range.emplace_back(loc.text, loc.pos);
			}
			if (accept(Tok::RBrace))
				return;
			expect(Tok::Comma, "',' or '}'");
		}
	}

	std::unique_ptr<RawTerm> prefixed()
	{
		auto node = std::make_unique<RawTerm>();
		node->kind = RawTerm::Kind::Prefixed;
		RawPrefix &p = node->prefix;
		p.pos = node->pos = peek().pos;
		switch (peek().kind) {
		case Tok::Bang2: p.type = ActionType::UnicastOut; ++i_; break;
		case Tok::Quest2: p.type = ActionType::UnicastIn; ++i_; break;
		case Tok::Bang: p.type = ActionType::BroadcastOut; ++i_; break;
		case Tok::Quest: p.type = ActionType::BroadcastIn; ++i_; break;
		default: p.type = ActionType::Spontaneous; break;
		}
		expect(Tok::LParen, "'('");
		p.label = expect(Tok::Ident, "action label").text;
		expect(Tok::Comma, "','");
		bool is_input = p.type == ActionType::UnicastIn || p.type == ActionType::BroadcastIn;
		p.first = value(is_input ? "probability" : "rate");
		expect(Tok::RParen, "')'");
		switch (p.type) {
		case ActionType::UnicastOut:
		case ActionType::BroadcastOut:
			expect(Tok::At, "'@Ir{...}'");
			keyword("Ir");
			range(p);
			break;
		case ActionType::UnicastIn:
			expect(Tok::At, "'@Wt{...}'");
			keyword("Wt");
			expect(Tok::LBrace, "'{'");
			p.second = value("weight");
			expect(Tok::RBrace, "'}'");
			break;
		case ActionType::BroadcastIn:
			expect(Tok::At, "'@Prob{...}'");
			keyword("Prob");
			expect(Tok::LBrace, "'{'");
			p.second = value("probability");
			expect(Tok::RBrace, "'}'");
			break;
		case ActionType::Spontaneous:
			break;
		}
		expect(Tok::Dot, "'.' and a continuation");
		node->ref = ref();
		return node;
	}

	std::vector<Token> toks_;
	std::vector<Diagnostic> &diags_;
	std::size_t i_ = 0;
};

// ---------------------------------------------------------------- elaboration

class Elaborator {
public:
	Elaborator(Model &m, std::vector<Diagnostic> &d) : model_(m), diags_(d) {}

	void error(const std::string &msg, Pos at)
	{
		diags_.push_back({Diagnostic::Severity::Error, msg, at.line, at.column});
		failed_ = true;
	}

	bool failed() const { return failed_; }

	std::optional<LocationId> location(const std::string &name, Pos at)
	{
		auto id = model_.find_location(name);
		if (!id)
			error("unknown location '" + name + "'", at);
		return id;
	}

	std::optional<double> value(const RawValue &v)
	{
		if (!v.is_param)
			return v.number;
		auto it = model_.params().find(v.name);
		if (it == model_.params().end()) {
			error("unknown parameter '" + v.name + "'", v.pos);
			return std::nullopt;
		}
		return it->second;
	}

	std::optional<double> rate(const RawValue &v)
	{
		auto x = value(v);
		if (x && !(*x > 0.0 && std::isfinite(*x))) {
			error("rate must be a positive finite number", v.pos);
			return std::nullopt;
		}
		return x;
	}

	std::optional<double> probability(const RawValue &v)
	{
		auto x = value(v);
		if (x && !(*x >= 0.0 && *x <= 1.0)) {
			error("probability out of range [0, 1]", v.pos);
			return std::nullopt;
		}
		return x;
	}

	std::optional<double> weight(const RawValue &v)
	{
		auto x = value(v);
		if (x && !(*x > 0.0 && std::isfinite(*x))) {
			error("weight must be a positive finite number", v.pos);
			return std::nullopt;
		}
		return x;
	}

	std::optional<LocationSet> range(const RawPrefix &p)
	{
		if (p.all)
			return model_.all_locations();
		LocationSet out;
		bool ok = true;
		for (auto &[name, at] : p.range) {
			if (auto id = location(name, at))
				out.insert(*id);
			else
				ok = false;
		}
		return ok ? std::optional(out) : std::nullopt;
	}

	std::optional<Prefix> prefix(const RawPrefix &p)
	{
		switch (p.type) {
		case ActionType::UnicastOut: {
			auto r = rate(p.first);
			auto ir = range(p);
			if (r && ir)
				return UnicastOut{p.label, *r, *ir};
			return std::nullopt;
		}
		case ActionType::BroadcastOut: {
			auto r = rate(p.first);
			auto ir = range(p);
			if (r && ir)
				return BroadcastOut{p.label, *r, *ir};
			return std::nullopt;
		}
		case ActionType::UnicastIn: {
			auto pr = probability(p.first);
			auto w = weight(p.second);
			if (pr && w)
				return UnicastIn{p.label, *pr, *w};
			return std::nullopt;
		}
		case ActionType::BroadcastIn: {
			auto pr = probability(p.first);
			auto q = probability(p.second);
			if (pr && q)
				return BroadcastIn{p.label, *pr, *q};
			return std::nullopt;
		}
		case ActionType::Spontaneous: {
			auto r = rate(p.first);
			if (r)
				return Spontaneous{p.label, *r};
			return std::nullopt;
		}
		}
		return std::nullopt;
	}

	std::optional<SeqComponent> term(const RawTerm &t, LocationId at)
	{
		switch (t.kind) {
		case RawTerm::Kind::Prefixed: {
			auto p = prefix(t.prefix);
			auto next = location(t.ref.loc, t.ref.loc_pos);
			if (p && next)
				return SeqComponent::prefixed(*p, ConstantRef{t.ref.name, *next}, at);
			return std::nullopt;
		}
		case RawTerm::Kind::Ref: {
			auto loc = location(t.ref.loc, t.ref.loc_pos);
			if (!loc)
				return std::nullopt;
			if (*loc != at) {
				error("operand " + t.ref.name + "(" + t.ref.loc + ") is not located at " +
				              model_.location(at).name,
				      t.ref.pos);
				return std::nullopt;
			}
			return SeqComponent::constant(t.ref.name, *loc);
		}
		case RawTerm::Kind::Choice: {
			auto l = term(*t.left, at);
			auto r = term(*t.right, at);
			if (l && r)
				return SeqComponent::choice(*l, *r);
			return std::nullopt;
		}
		}
		return std::nullopt;
	}

private:
	Model &model_;
	std::vector<Diagnostic> &diags_;
	bool failed_ = false;
};

} // namespace

ParseResult parse_model(std::string_view text)
{
	ParseResult result;
	auto &diags = result.diagnostics;
	auto tokens = Lexer(text, diags).run();
	Parser parser(std::move(tokens), diags);
	parser.run();

	Model model;
	Elaborator elab(model, diags);

	for (auto &p : parser.params) {
		if (model.params().contains(p.name)) {
			elab.error("duplicate parameter '" + p.name + "'", p.pos);
			continue;
		}
		if (!(p.value > 0.0 && std::isfinite(p.value)))
			elab.error("parameter '" + p.name + "' must be a positive finite number", p.pos);
		model.set_param(p.name, p.value);
	}
	for (auto &l : parser.locations) {
		if (model.find_location(l.name)) {
			elab.error("duplicate location '" + l.name + "'", l.pos);
			continue;
		}
		model.add_location(l.name, l.point);
		result.sources.locations[l.name] = l.pos;
	}
	for (auto &eq : parser.equations) {
		auto at = elab.location(eq.head.loc, eq.head.loc_pos);
		if (!at)
			continue;
		auto body = elab.term(*eq.body, *at);
		if (!body)
			continue;
		ConstantRef head{eq.head.name, *at};
		if (model.find_equation(head)) {
			elab.error("duplicate definition of " + eq.head.name + "(" + eq.head.loc + ")", eq.head.pos);
			continue;
		}
		model.add_equation(head, *body);
		result.sources.equations[head] = eq.head.pos;
	}
	for (auto &sys : parser.systems) {
		if (model.find_system(sys.name)) {
			elab.error("duplicate system '" + sys.name + "'", sys.pos);
			continue;
		}
		std::vector<SeqComponent> parts;
		bool ok = true;
		for (auto &r : sys.parts) {
			if (auto loc = elab.location(r.loc, r.loc_pos))
				parts.push_back(SeqComponent::constant(r.name, *loc));
			else
				ok = false;
		}
		if (ok) {
			model.add_system(sys.name, ModelComponent(std::move(parts)));
			result.sources.systems[sys.name] = sys.pos;
		}
	}

	if (!has_errors(diags))
		result.model = std::move(model);
	return result;
}

// ---------------------------------------------------------------- validation

namespace {

class Validator {
public:
	Validator(const Model &m, const SourceMap *src, std::vector<Diagnostic> &d) : m_(m), src_(src), diags_(d) {}

	void run()
	{
		coordinates();
		dangling();
		bool acyclic = unguarded_cycles();
		if (acyclic) {
			duplicate_inputs();
			blocked_unicasts();
		}
	}

private:
	Pos eq_pos(const ConstantRef &head) const
	{
		if (src_) {
			auto it = src_->equations.find(head);
			if (it != src_->equations.end())
				return it->second;
		}
		return {};
	}

	void report(Diagnostic::Severity sev, std::string msg, Pos at)
	{
		diags_.push_back({sev, std::move(msg), at.line, at.column});
	}

	std::string ref_text(const ConstantRef &r) const
	{
		return r.name + "(" + m_.location(r.location).name + ")";
	}

	void coordinates()
	{
		auto &locs = m_.locations();
		for (std::size_t j = 0; j < locs.size(); ++j)
			for (std::size_t i = 0; i < j; ++i)
				if (locs[i].point == locs[j].point) {
					Pos at;
					if (src_ && src_->locations.contains(locs[j].name))
						at = src_->locations.at(locs[j].name);
					report(Diagnostic::Severity::Error,
					       "locations '" + locs[i].name + "' and '" + locs[j].name + "' share coordinates", at);
				}
	}

	static void refs_of(const SeqComponent &s, std::vector<ConstantRef> &out)
	{
		if (auto *k = s.as_constant())
			out.push_back(*k);
		else if (auto *p = s.as_prefixed())
			out.push_back(p->next);
		else {
			refs_of(s.as_choice()->left, out);
			refs_of(s.as_choice()->right, out);
		}
	}

	void dangling()
	{
		for (auto &eq : m_.equations()) {
			std::vector<ConstantRef> refs;
			refs_of(eq.body, refs);
			for (auto &r : refs)
				if (!m_.find_equation(r))
					report(Diagnostic::Severity::Error,
					       "undefined constant " + ref_text(r) + " in definition of " + ref_text(eq.head),
					       eq_pos(eq.head));
		}
		for (auto &[name, sys] : m_.systems()) {
			Pos at;
			if (src_ && src_->systems.contains(name))
				at = src_->systems.at(name);
			for (auto &s : sys)
				if (auto *k = s.as_constant(); k && !m_.find_equation(*k))
					report(Diagnostic::Severity::Error,
					       "undefined constant " + ref_text(*k) + " in system " + name, at);
		}
	}

	static void unguarded_refs(const SeqComponent &s, std::vector<ConstantRef> &out)
	{
		if (auto *k = s.as_constant())
			out.push_back(*k);
		else if (auto *c = s.as_choice()) {
			unguarded_refs(c->left, out);
			unguarded_refs(c->right, out);
		}
	}

	bool unguarded_cycles()
	{
		enum class Mark { None, Active, Done };
		std::map<ConstantRef, Mark> mark;
		bool acyclic = true;
		std::function<void(const Equation &)> visit = [&](const Equation &eq) {
			mark[eq.head] = Mark::Active;
			std::vector<ConstantRef> refs;
			unguarded_refs(eq.body, refs);
			for (auto &r : refs) {
				const Equation *next = m_.find_equation(r);
				if (!next)
					continue;
				Mark &mk = mark[r];
				if (mk == Mark::Active) {
					report(Diagnostic::Severity::Error,
					       "unguarded recursion through " + ref_text(r), eq_pos(eq.head));
					acyclic = false;
				} else if (mk == Mark::None) {
					visit(*next);
				}
			}
			mark[eq.head] = Mark::Done;
		};
		for (auto &eq : m_.equations())
			if (mark[eq.head] == Mark::None)
				visit(eq);
		return acyclic;
	}

	void prefixes(const SeqComponent &s, std::vector<const Prefix *> &out) const
	{
		if (auto *p = s.as_prefixed())
			out.push_back(&p->prefix);
		else if (auto *c = s.as_choice()) {
			prefixes(c->left, out);
			prefixes(c->right, out);
		} else if (const Equation *eq = m_.find_equation(*s.as_constant())) {
			prefixes(eq->body, out);
		}
	}

	void duplicate_inputs()
	{
		for (auto &eq : m_.equations()) {
			std::vector<const Prefix *> ps;
			prefixes(eq.body, ps);
			std::map<ActionId, int> count;
			for (auto *p : ps)
				if (p->type() == ActionType::UnicastIn || p->type() == ActionType::BroadcastIn)
					if (++count[p->action()] == 2)
						report(Diagnostic::Severity::Error,
						       "definition of " + ref_text(eq.head) + " offers more than one " +
						               p->action().to_string() + " input",
						       eq_pos(eq.head));
		}
	}

	void blocked_unicasts()
	{
		std::map<std::string, LocationSet> receivers;
		for (auto &eq : m_.equations()) {
			std::vector<const Prefix *> ps;
			prefixes(eq.body, ps);
			for (auto *p : ps)
				if (p->type() == ActionType::UnicastIn)
					receivers[p->label()].insert(eq.head.location);
		}
		for (auto &eq : m_.equations()) {
			std::vector<const Prefix *> ps;
			prefixes(eq.body, ps);
			for (auto *p : ps) {
				auto *out = p->as<UnicastOut>();
				if (!out)
					continue;
				auto &rx = receivers[out->label];
				bool reachable = std::any_of(out->range.begin(), out->range.end(),
				                             [&](LocationId l) { return rx.contains(l); });
				if (!reachable)
					report(Diagnostic::Severity::Warning,
					       "unicast " + p->action().to_string() + " in " + ref_text(eq.head) +
					               " has no possible receiver in Ir{" + m_.location_text(out->range) + "}",
					       eq_pos(eq.head));
			}
		}
	}

	const Model &m_;
	const SourceMap *src_;
	std::vector<Diagnostic> &diags_;
};

} // namespace

std::vector<Diagnostic> validate(const Model &model, const SourceMap *sources)
{
	std::vector<Diagnostic> out;
	Validator(model, sources, out).run();
	return out;
}

ParseResult load_model(std::string_view text)
{
	ParseResult r = parse_model(text);
	if (!r.model)
		return r;
	auto more = validate(*r.model, &r.sources);
	r.diagnostics.insert(r.diagnostics.end(), more.begin(), more.end());
	if (has_errors(r.diagnostics))
		r.model.reset();
	return r;
}

std::string pretty_print(const Model &model)
{
	std::ostringstream out;
	for (auto &[name, v] : model.params())
		out << "param " << name << " = " << format_number(v) << ";\n";
	for (auto &l : model.locations())
		out << "location " << l.name << " = (" << format_number(l.point.x) << ", " << format_number(l.point.y)
		    << ");\n";
	for (auto &eq : model.equations())
		out << eq.head.name << "(" << model.location(eq.head.location).name << ") := " << model.to_text(eq.body)
		    << ";\n";
	for (auto &[name, sys] : model.systems()) {
		out << "system " << name << " := ";
		for (std::size_t i = 0; i < sys.size(); ++i)
			out << (i ? " || " : "") << model.to_text(sys[i]);
		out << ";\n";
	}
	return out.str();
}

} // namespace paloma
