#pragma once

#include <cstdint>
#include <random>

#include "pht/complex.hpp"

namespace pht::shapes {

// Regular n-gon boundary of the given radius, vertex k at angle phase + 2*pi*k/n.
ComplexPtr regular_polygon(std::size_t n, double radius = 1, double phase = 0);

// Two closed arcs of a regular polygon with n divisible by 4 (vertex 0 on the
// positive x axis): the right half x >= 0 and the left half x <= 0. They share
// the two vertices on the y axis.
Cover polygon_halves(const ComplexPtr& polygon);

// Octahedron with every face subdivided into level^2 triangles, vertices
// pushed out to the unit sphere.
ComplexPtr octahedron_sphere(std::size_t level);

// One element per octant face of octahedron_sphere.
Cover octant_cover(const ComplexPtr& sphere);

// One element per maximal simplex (its closure).
Cover maximal_simplex_cover(const ComplexPtr& complex);

// Jittered grid polyhedron: d = 2 uses triangles and edges of a 6 x 5 grid,
// d = 3 tetrahedra of a 3 x 3 x 2 grid. At most 300 simplices.
ComplexPtr random_polyhedron(std::mt19937_64& rng, int d);

// k elements, each the closure of a random set of maximal simplices; every
// maximal simplex lands in at least one element and some overlap.
Cover random_cover(std::mt19937_64& rng, const ComplexPtr& complex, std::size_t k);

}  // namespace pht::shapes
