#pragma once

#include "meeting/geometry.hpp"

#include <string>
#include <utility>
#include <vector>

namespace meeting {

/// Exact (cos, sin) of 2*pi*k/n for n in {1, 2, 3, 4, 5, 6, 8 (k even), 10, 12 (k even)}.
std::pair<Real, Real> unit_rotation(int k, int n);
Point rotate(const Point& p, const Real& c, const Real& s);

/// Sigma-pointed star with a star-shaped hole that leaves a thin band.
/// Symmetric points see no rotated copy of themselves.
Polygon star_polygon(int sigma);
/// Regular n-gon with circumradius 10, n in {3, 4, 5, 6}.
Polygon regular_polygon(int n);
/// Twofold-looking from the outer boundary; a small irregular hole in the
/// middle breaks the symmetry and is hidden behind two layers of walls.
Polygon hidden_hole_polygon();
/// The same walls with a centrally symmetric middle hole.
Polygon hidden_hole_decoy();
/// Four bent branches around a central square; no holes.
Polygon four_branch_polygon();
/// Mirror symmetric (one axis) with holes on and off the axis.
Polygon axial_holes_polygon();
/// Fourfold dihedral polygon with a hole in each branch.
Polygon branched_holes_polygon();
/// No symmetry at all.
Polygon scalene_polygon();
/// Twofold, no axes, holes away from the centre.
Polygon twofold_holes_polygon();
/// Threefold rotation without axes, no holes.
Polygon pinwheel_polygon();

struct GalleryEntry {
    std::string name;
    Polygon polygon;
    int sigma;
    std::size_t holes;
    bool centroid_in_hole;
    bool axial;
};

std::vector<GalleryEntry> gallery();

/// Builds a fixture by kind: star, regular, hidden_hole, hidden_hole_decoy,
/// four_branch, axial_holes, branched_holes, scalene, twofold_holes, pinwheel.
/// `param` is sigma for star and n for regular. Throws std::invalid_argument.
Polygon make_fixture(const std::string& kind, int param = 0);

}  // namespace meeting
