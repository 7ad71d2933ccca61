#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "paloma/isometry.hpp"
#include "support/random_models.hpp"

using namespace paloma;

namespace {

bool near(Point a, Point b) { return distance(a, b) <= 1e-9; }

const Isometry kMirrorY({-1, 0, 0, 1}, {0, 0});
const Isometry kMirrorX({1, 0, 0, -1}, {0, 0});

} // namespace

TEST_CASE("reflection in the y axis swaps the scenario locations")
{
	CHECK(near(kMirrorY.apply({-1, 0}), {1, 0}));
	CHECK(near(kMirrorY.apply({1, 0}), {-1, 0}));
	CHECK(near(Isometry::identity().apply({3, -4}), {3, -4}));
	CHECK(Isometry::reflection(std::numbers::pi / 2).approx_equal(kMirrorY));

	Model m = testsupport::must_load(testsupport::read_model_file("scenario.paloma"));
	auto l0 = *m.find_location("l0"), l1 = *m.find_location("l1");
	CHECK(map_location(m, kMirrorY, l0) == l1);
	CHECK(map_location(m, kMirrorY, l1) == l0);
	CHECK_FALSE(map_location(m, Isometry::translation(0.5, 0), l0));
}

TEST_CASE("construction rejects non-orthogonal matrices")
{
	CHECK_THROWS_AS(Isometry({2, 0, 0, 1}, {0, 0}), std::invalid_argument);
	CHECK_THROWS_AS(Isometry({1, 1, 0, 1}, {0, 0}), std::invalid_argument);
	CHECK_NOTHROW(Isometry({0, -1, 1, 0}, {1, 2}));
}

TEST_CASE("group laws on fixed elements")
{
	CHECK(compose(kMirrorY, kMirrorY).approx_equal(Isometry::identity()));
	CHECK(invert(Isometry::translation(2, -3)).approx_equal(Isometry::translation(-2, 3)));
	auto rot = Isometry::rotation(0.7, {1, 2});
	auto refl = Isometry::reflection(1.1, {-2, 0.5});
	CHECK(compose(rot, refl).determinant() == doctest::Approx(rot.determinant() * refl.determinant()));
	CHECK(compose(rot, invert(rot)).approx_equal(Isometry::identity()));
	CHECK(near(rot.apply({1, 2}), {1, 2}));
	CHECK(near(refl.apply({-2, 0.5}), {-2, 0.5}));
	Point p{0.3, -1.7};
	CHECK(near(compose(rot, refl).apply(p), rot.apply(refl.apply(p))));
}

TEST_CASE("text rendering")
{
	CHECK(kMirrorY.to_string() == "[[-1, 0], [0, 1]] + (0, 0)");
	CHECK(Isometry::translation(5, 5).to_string() == "[[1, 0], [0, 1]] + (5, 5)");
}

TEST_CASE("candidates for two points on the x axis")
{
	std::vector<Point> pts{{-1, 0}, {1, 0}};
	auto c = candidate_isometries(pts, pts);
	REQUIRE(c.isometries.size() == 4);
	CHECK(c.isometries[0].approx_equal(Isometry::identity()));
	CHECK(c.isometries[1].approx_equal(kMirrorY));
	CHECK(c.isometries[2].approx_equal(kMirrorX));
	CHECK(c.isometries[3].approx_equal(Isometry::rotation(std::numbers::pi)));
	for (auto &phi : c.isometries) {
		CHECK((near(phi.apply(pts[0]), pts[0]) || near(phi.apply(pts[0]), pts[1])));
		CHECK((near(phi.apply(pts[1]), pts[0]) || near(phi.apply(pts[1]), pts[1])));
	}
}

TEST_CASE("candidates for single points and mismatched sets")
{
	auto one = candidate_isometries({{0, 0}}, {{5, 5}});
	REQUIRE(one.isometries.size() == 1);
	CHECK(one.isometries[0].approx_equal(Isometry::translation(5, 5)));

	CHECK(candidate_isometries({{0, 0}, {1, 0}}, {{0, 0}, {2, 0}}).isometries.empty());
	auto sizes = candidate_isometries({{0, 0}}, {{0, 0}, {1, 0}});
	CHECK(sizes.isometries.empty());
	CHECK_FALSE(sizes.note.empty());
	auto none = candidate_isometries({}, {});
	REQUIRE(none.isometries.size() == 1);
	CHECK(none.isometries[0].approx_equal(Isometry::identity()));
}

TEST_CASE("candidates for a scalene triangle")
{
	std::vector<Point> a{{0, 0}, {3, 0}, {0, 1}};
	auto rot = Isometry::rotation(0.4, {2, 2});
	std::vector<Point> b;
	for (auto p : a)
		b.push_back(rot.apply(p));
	auto c = candidate_isometries(a, b);
	REQUIRE(c.isometries.size() == 1);
	CHECK(c.isometries[0].approx_equal(rot, 1e-9));
}
