#include "pht/f2.hpp"

#include <stdexcept>

#include "pht/kernels.hpp"

namespace pht::f2 {

bool Matrix::at(std::size_t r, std::size_t c) const {
  bool v = false;
  for (auto it = column_begin(c); it != column_end(c); ++it) {
    if (*it == r) v = !v;
  }
  return v;
}

std::size_t rank(const Matrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (rows == 0 || cols == 0) return 0;
  const std::size_t words = (rows + 63) / 64;
  const auto& k = kernels::active();

  // Reduced pivot columns are kept packed; pivot_of[row] indexes into them.
  std::vector<std::uint64_t> store;
  store.reserve(std::min(rows, cols) * words);
  std::vector<std::int32_t> pivot_of(rows, -1);
  std::vector<std::uint64_t> work(words);
  std::size_t r = 0;

  for (std::size_t c = 0; c < cols; ++c) {
    std::fill(work.begin(), work.end(), 0);
    for (auto it = m.column_begin(c); it != m.column_end(c); ++it) {
      if (*it >= rows) throw std::out_of_range("f2::rank: row index out of range");
      work[*it >> 6] ^= std::uint64_t{1} << (*it & 63);
    }
    for (;;) {
      std::ptrdiff_t low = k.highest_bit(work.data(), words);
      if (low < 0) break;
      std::int32_t p = pivot_of[static_cast<std::size_t>(low)];
      if (p < 0) {
        pivot_of[static_cast<std::size_t>(low)] = static_cast<std::int32_t>(r);
        store.insert(store.end(), work.begin(), work.end());
        ++r;
        break;
      }
      // Bits above `low` are zero, so only the prefix participates.
      const std::size_t span = static_cast<std::size_t>(low) / 64 + 1;
      k.xor_words(work.data(), store.data() + static_cast<std::size_t>(p) * words, span);
    }
  }
  return r;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("f2::multiply: shape mismatch");
  Matrix out(a.rows());
  std::vector<std::uint8_t> acc(a.rows());
  std::vector<std::uint8_t> seen(a.rows());
  std::vector<std::uint32_t> touched;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    touched.clear();
    for (auto it = b.column_begin(c); it != b.column_end(c); ++it) {
      for (auto jt = a.column_begin(*it); jt != a.column_end(*it); ++jt) {
        if (seen[*jt] == 0) {
          seen[*jt] = 1;
          touched.push_back(*jt);
        }
        acc[*jt] ^= 1;
      }
    }
    for (auto row : touched) {
      if (acc[row] != 0) out.push_entry(row);
      acc[row] = 0;
      seen[row] = 0;
    }
    out.finish_column();
  }
  return out;
}

bool is_zero(const Matrix& m) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (auto it = m.column_begin(c); it != m.column_end(c); ++it) {
      if (m.at(*it, c)) return false;
    }
  }
  return true;
}

}  // namespace pht::f2
