#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ctlink/halfspace.hpp"

namespace ctlink
{

struct QuadratureParams
{
    int max_depth = 8;        // quadtree levels below the footprint bounding box
    int min_depth = 3;        // levels refined unconditionally
    double tolerance = 1e-11; // a cell is split while its one-level refinement changes it by more
};

struct VolumeResult
{
    double volume = 0.0;
    double error_estimate = 0.0; // |V(max_depth) - V(max_depth - 1)| plus residuals of cells accepted early
    std::size_t cells = 0;       // leaf cells at max_depth
};

/// Raised when the volume integral diverges: some positive-area part of the
/// footprint is not shaded by any excluded hemisphere.
class DivergentVolume : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

struct Point2
{
    double x = 0.0;
    double y = 0.0;
};

/// Intersection of the kept half-planes of all vertical walls, as a convex
/// polygon (counter-clockwise). Empty when the planes leave nothing.
/// Throws DivergentVolume when the footprint is unbounded.
std::vector<Point2> footprint_polygon(const PolyhedronSpec& spec);

/// Volume integrand at (x, y): integral of dz / z^3 over the kept heights,
/// i.e. (1/z_lo^2 - 1/z_hi^2) / 2. Returns a negative value when the
/// column is unbounded below (not covered by an excluded hemisphere).
double column_volume(const PolyhedronSpec& spec, double x, double y);

/// Hyperbolic volume of a polyhedron bounded by vertical planes and
/// hemispheres, via midpoint rule on an adaptive quadtree over the footprint.
/// Walls are not required to be in general position.
VolumeResult polyhedron_volume(const PolyhedronSpec& spec, const QuadratureParams& params = {});

} // namespace ctlink
