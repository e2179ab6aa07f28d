#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pht/complex.hpp"

namespace pht::homology {

// Betti numbers over F2 in degrees 0..max_degree of a face-closed simplex set,
// from ranks of boundary matrices: b_k = n_k - rank d_k - rank d_{k+1}.
std::vector<int> betti_numbers(const EmbeddedComplex& complex, std::span<const std::uint32_t> ids,
                               int max_degree);

std::vector<int> betti_numbers(const Subcomplex& sub, int max_degree);

// Euler characteristic from simplex counts.
long euler_characteristic(const EmbeddedComplex& complex);

}  // namespace pht::homology
