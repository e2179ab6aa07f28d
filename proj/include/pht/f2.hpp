#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pht::f2 {

// Sparse matrix over the two-element field, stored by columns. Repeated row
// indices inside a column cancel in pairs.
class Matrix {
 public:
  Matrix() = default;
  // Builder interface: columns are appended in order.
  explicit Matrix(std::size_t rows) : rows_(rows), offsets_{0} {}
  void push_entry(std::uint32_t row) { entries_.push_back(row); }
  void finish_column() { offsets_.push_back(entries_.size()); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t nonzeros() const { return entries_.size(); }

  const std::uint32_t* column_begin(std::size_t c) const { return entries_.data() + offsets_[c]; }
  const std::uint32_t* column_end(std::size_t c) const {
    return entries_.data() + offsets_[c + 1];
  }

  // Entry (r, c) with cancellation applied.
  bool at(std::size_t r, std::size_t c) const;

 private:
  std::size_t rows_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> entries_;
};

// Rank by column reduction on packed bit columns (xor and pivot-search kernels).
std::size_t rank(const Matrix& m);

// Product a * b over F2; used to check that differentials compose to zero.
Matrix multiply(const Matrix& a, const Matrix& b);

bool is_zero(const Matrix& m);

}  // namespace pht::f2
