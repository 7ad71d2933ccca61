#pragma once

// Isometries of the Euclidean plane: x ↦ A·x + t with A orthogonal.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "paloma/core.hpp"

namespace paloma {

inline constexpr double kGeometryTolerance = 1e-6;

class Isometry {
public:
	/* Row-major linear part. Throws std::invalid_argument unless AᵀA = I
	 * within 1e-9. */
	Isometry(std::array<double, 4> linear, Point offset);

	static Isometry identity();
	static Isometry translation(double dx, double dy);
	/* Counter-clockwise by `radians` about `center`. */
	static Isometry rotation(double radians, Point center = {});
	/* Mirror in the line through `through` at angle `radians` to the x axis. */
	static Isometry reflection(double radians, Point through = {});

	const std::array<double, 4> &linear() const { return a_; }
	Point offset() const { return t_; }
	double determinant() const { return a_[0] * a_[3] - a_[1] * a_[2]; }

	Point apply(Point p) const;
	Isometry inverse() const;

	bool approx_equal(const Isometry &o, double tol = 1e-9) const;
	std::string to_string() const;

private:
	std::array<double, 4> a_;
	Point t_;
};

/* outer ∘ inner: apply `inner` first. */
Isometry compose(const Isometry &outer, const Isometry &inner);
Isometry invert(const Isometry &phi);

double distance(Point a, Point b);

/* Declared location within kGeometryTolerance of φ(l), if any. */
std::optional<LocationId> map_location(const Model &m, const Isometry &phi, LocationId l);

struct Candidates {
	std::vector<Isometry> isometries;
	std::string note; // why the list is empty, when it is
};

/* Every isometry mapping the point set A onto B that is determined by a pair
 * correspondence (or the translation when both are singletons). Identity
 * first, then by offset length, reflections before rotations. */
Candidates candidate_isometries(const std::vector<Point> &a, const std::vector<Point> &b);

} // namespace paloma
