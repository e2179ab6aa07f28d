#include "pht/homology.hpp"

#include "pht/f2.hpp"

namespace pht::homology {

std::vector<int> betti_numbers(const EmbeddedComplex& complex, std::span<const std::uint32_t> ids,
                               int max_degree) {
  std::vector<int> betti(static_cast<std::size_t>(max_degree) + 1, 0);
  const int top = max_degree + 1;
  // Local numbering per dimension.
  thread_local std::vector<std::int32_t> local;
  if (local.size() < complex.num_simplices()) local.assign(complex.num_simplices(), -1);
  std::vector<std::vector<std::uint32_t>> by_dim(static_cast<std::size_t>(top) + 1);
  for (auto id : ids) {
    const int k = complex.dim(id);
    if (k > top) continue;
    auto& level = by_dim[static_cast<std::size_t>(k)];
    local[id] = static_cast<std::int32_t>(level.size());
    level.push_back(id);
  }
  std::vector<std::size_t> ranks(static_cast<std::size_t>(top) + 2, 0);
  for (int k = 1; k <= top; ++k) {
    const auto& cols = by_dim[static_cast<std::size_t>(k)];
    if (cols.empty()) continue;
    f2::Matrix boundary(by_dim[static_cast<std::size_t>(k) - 1].size());
    for (auto id : cols) {
      for (auto f : complex.facets(id)) boundary.push_entry(static_cast<std::uint32_t>(local[f]));
      boundary.finish_column();
    }
    ranks[static_cast<std::size_t>(k)] = f2::rank(boundary);
  }
  for (auto id : ids) local[id] = -1;
  for (int k = 0; k <= max_degree; ++k) {
    const auto n = by_dim[static_cast<std::size_t>(k)].size();
    betti[static_cast<std::size_t>(k)] = static_cast<int>(
        n - ranks[static_cast<std::size_t>(k)] - ranks[static_cast<std::size_t>(k) + 1]);
  }
  return betti;
}

std::vector<int> betti_numbers(const Subcomplex& sub, int max_degree) {
  std::vector<std::uint32_t> ids;
  sub.mask().for_each([&](std::size_t id) { ids.push_back(static_cast<std::uint32_t>(id)); });
  return betti_numbers(sub.complex(), ids, max_degree);
}

long euler_characteristic(const EmbeddedComplex& complex) {
  long chi = 0;
  for (int k = 0; k <= complex.top_dimension(); ++k) {
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(complex.count(k));
  }
  return chi;
}

}  // namespace pht::homology
