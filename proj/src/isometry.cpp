#include "paloma/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace paloma {

Isometry::Isometry(std::array<double, 4> linear, Point offset) : a_(linear), t_(offset)
{
	double c0 = a_[0] * a_[0] + a_[2] * a_[2];
	double c1 = a_[1] * a_[1] + a_[3] * a_[3];
	double dot = a_[0] * a_[1] + a_[2] * a_[3];
	if (!std::isfinite(t_.x) || !std::isfinite(t_.y) || std::abs(c0 - 1.0) > 1e-9 || std::abs(c1 - 1.0) > 1e-9 ||
	    std::abs(dot) > 1e-9)
		throw std::invalid_argument("isometry: linear part is not orthogonal");
}

Isometry Isometry::identity() { return {{1, 0, 0, 1}, {0, 0}}; }

Isometry Isometry::translation(double dx, double dy) { return {{1, 0, 0, 1}, {dx, dy}}; }

Isometry Isometry::rotation(double radians, Point center)
{
	double c = std::cos(radians), s = std::sin(radians);
	// x ↦ R(x − c) + c
	return {{c, -s, s, c}, {center.x - (c * center.x - s * center.y), center.y - (s * center.x + c * center.y)}};
}

Isometry Isometry::reflection(double radians, Point through)
{
	double c = std::cos(2 * radians), s = std::sin(2 * radians);
	return {{c, s, s, -c}, {through.x - (c * through.x + s * through.y), through.y - (s * through.x - c * through.y)}};
}

Point Isometry::apply(Point p) const
{
	return {a_[0] * p.x + a_[1] * p.y + t_.x, a_[2] * p.x + a_[3] * p.y + t_.y};
}

Isometry Isometry::inverse() const
{
	// orthogonal: A⁻¹ = Aᵀ, t' = −Aᵀt
	std::array<double, 4> at{a_[0], a_[2], a_[1], a_[3]};
	return {at, {-(at[0] * t_.x + at[1] * t_.y), -(at[2] * t_.x + at[3] * t_.y)}};
}

bool Isometry::approx_equal(const Isometry &o, double tol) const
{
	for (int i = 0; i < 4; ++i)
		if (std::abs(a_[i] - o.a_[i]) > tol)
			return false;
	return std::abs(t_.x - o.t_.x) <= tol && std::abs(t_.y - o.t_.y) <= tol;
}

std::string Isometry::to_string() const
{
	auto n = [](double v) { return format_number(std::abs(v) < 1e-12 ? 0.0 : v); };
	return "[[" + n(a_[0]) + ", " + n(a_[1]) + "], [" + n(a_[2]) + ", " + n(a_[3]) + "]] + (" + n(t_.x) + ", " +
	       n(t_.y) + ")";
}

Isometry compose(const Isometry &outer, const Isometry &inner)
{
	auto &a = outer.linear();
	auto &b = inner.linear();
	std::array<double, 4> ab{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
	                         a[2] * b[1] + a[3] * b[3]};
	return {ab, outer.apply(inner.offset())};
}

Isometry invert(const Isometry &phi) { return phi.inverse(); }

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::optional<LocationId> map_location(const Model &m, const Isometry &phi, LocationId l)
{
	Point p = phi.apply(m.location(l).point);
	auto &locs = m.locations();
	for (std::size_t i = 0; i < locs.size(); ++i)
		if (distance(p, locs[i].point) <= kGeometryTolerance)
			return LocationId{static_cast<std::uint32_t>(i)};
	return std::nullopt;
}

namespace {

/* Direct (det +1) and reflected (det −1) maps sending a1→b1, a2→b2. */
std::vector<Isometry> pair_maps(Point a1, Point a2, Point b1, Point b2)
{
	double ux = a2.x - a1.x, uy = a2.y - a1.y;
	double vx = b2.x - b1.x, vy = b2.y - b1.y;
	double norm = std::hypot(ux, uy) * std::hypot(vx, vy);
	double c = (ux * vx + uy * vy) / norm, s = (ux * vy - uy * vx) / norm;
	double h = std::hypot(c, s);
	c /= h;
	s /= h;
	double rc = (ux * vx - uy * vy) / norm, rs = (uy * vx + ux * vy) / norm;
	double rh = std::hypot(rc, rs);
	rc /= rh;
	rs /= rh;
	std::vector<Isometry> out;
	for (std::array<double, 4> lin : {std::array<double, 4>{c, -s, s, c}, std::array<double, 4>{rc, rs, rs, -rc}}) {
		Point moved{lin[0] * a1.x + lin[1] * a1.y, lin[2] * a1.x + lin[3] * a1.y};
		out.emplace_back(lin, Point{b1.x - moved.x, b1.y - moved.y});
	}
	return out;
}

bool maps_onto(const Isometry &phi, const std::vector<Point> &a, const std::vector<Point> &b)
{
	std::vector<bool> used(b.size(), false);
	for (auto &p : a) {
		Point q = phi.apply(p);
		bool hit = false;
		for (std::size_t j = 0; j < b.size() && !hit; ++j) {
			if (!used[j] && distance(q, b[j]) <= kGeometryTolerance) {
				used[j] = true;
				hit = true;
			}
		}
		if (!hit)
			return false;
	}
	return true;
}

} // namespace

Candidates candidate_isometries(const std::vector<Point> &a, const std::vector<Point> &b)
{
	Candidates out;
	if (a.size() != b.size()) {
		out.note = "location sets differ in size (" + std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
		           "), so no isometry can match them";
		return out;
	}
	if (a.empty()) {
		out.isometries.push_back(Isometry::identity());
		return out;
	}
	std::vector<Isometry> found;
	if (a.size() == 1) {
		found.push_back(Isometry::translation(b[0].x - a[0].x, b[0].y - a[0].y));
	} else {
		for (std::size_t i = 0; i < a.size(); ++i)
			for (std::size_t j = 0; j < a.size(); ++j) {
				if (i == j)
					continue;
				double d = distance(a[i], a[j]);
				for (std::size_t k = 0; k < b.size(); ++k)
					for (std::size_t l = 0; l < b.size(); ++l) {
						if (k == l || std::abs(distance(b[k], b[l]) - d) > kGeometryTolerance)
							continue;
						for (auto &phi : pair_maps(a[i], a[j], b[k], b[l]))
							if (maps_onto(phi, a, b))
								found.push_back(phi);
					}
			}
	}
	for (auto &phi : found)
		if (std::none_of(out.isometries.begin(), out.isometries.end(),
		                 [&](const Isometry &x) { return x.approx_equal(phi); }))
			out.isometries.push_back(phi);

	auto rank = [](const Isometry &phi) {
		bool id = phi.approx_equal(Isometry::identity());
		double len = std::hypot(phi.offset().x, phi.offset().y);
		auto &l = phi.linear();
		auto q = [](double v) { return std::round(v * 1e9); };
		return std::make_tuple(!id, q(len), phi.determinant() > 0, q(l[0]), q(l[1]), q(l[2]), q(l[3]),
		                       q(phi.offset().x), q(phi.offset().y));
	};
	std::stable_sort(out.isometries.begin(), out.isometries.end(),
	                 [&](const Isometry &x, const Isometry &y) { return rank(x) < rank(y); });
	if (out.isometries.empty())
		out.note = "no isometry maps the occupied locations onto each other";
	return out;
}

} // namespace paloma
