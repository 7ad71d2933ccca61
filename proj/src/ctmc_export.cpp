#include <sstream>

#include "paloma/semantics.hpp"

namespace paloma {

namespace {

std::string dot_quote(std::string_view s)
{
	std::string out = "\"";
	for (char c : s) {
		if (c == '"' || c == '\\')
			out += '\\';
		out += c;
	}
	return out + "\"";
}

std::string edge_label(const CtmcEdge &e)
{
	switch (e.kind) {
	case StochKind::Spontaneous: return e.label;
	case StochKind::Broadcast: return "!" + e.label;
	case StochKind::Unicast: return "!!" + e.label;
	}
	return e.label;
}

} // namespace

std::string to_tsv(const Ctmc &c)
{
	std::ostringstream out;
	out << "# states\n";
	for (std::size_t i = 0; i < c.keys.size(); ++i)
		out << i << '\t' << c.keys[i] << '\n';
	out << "# transitions\n";
	for (auto &e : c.edges)
		out << e.src << '\t' << e.dst << '\t' << format_rate(e.rate) << '\t' << kind_name(e.kind) << '\t' << e.label
		    << '\n';
	return out.str();
}

std::string to_dot(const Ctmc &c)
{
	std::ostringstream out;
	out << "digraph ctmc {\n";
	for (std::size_t i = 0; i < c.keys.size(); ++i)
		out << "  s" << i << " [label=" << dot_quote(c.keys[i]) << "];\n";
	for (auto &e : c.edges)
		out << "  s" << e.src << " -> s" << e.dst << " [label=" << dot_quote(edge_label(e) + " " + format_rate(e.rate))
		    << "];\n";
	out << "}\n";
	return out.str();
}

} // namespace paloma
