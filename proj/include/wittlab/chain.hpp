#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wittlab/witt_vector.hpp"

namespace wittlab {

// Arithmetic in the chain ring W_n(F_q): every element is p^v u with u a
// unit, and the ideals are exactly (p^v).

// x = p^v * unit_part(x) with v = x.valuation(); requires x != 0.
WittFq unit_part(const WittFq& x);
WittFq unit_inverse(const WittFq& u);
// Some q with b*q = a, present iff v(a) >= v(b). The choice is
// p^{v(a)-v(b)} u_a u_b^{-1}.
std::optional<WittFq> chain_divide(const WittFq& a, const WittFq& b);
WittFq p_power(const FqContext& field, unsigned level, unsigned k);

using ChainVector = std::vector<WittFq>;

// Sparse matrix over W_n(F_q). Absent entries are zero.
class ChainMatrix {
 public:
  using Row = std::map<std::size_t, WittFq>;

  ChainMatrix() = default;
  ChainMatrix(const FqContext& field, unsigned level, std::size_t rows, std::size_t cols);
  static ChainMatrix identity(const FqContext& field, unsigned level, std::size_t k);
  static ChainMatrix from_rows(const FqContext& field, unsigned level, std::size_t cols,
                               const std::vector<ChainVector>& rows);

  const FqContext& field() const { return *field_; }
  unsigned level() const { return level_; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  WittFq at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const WittFq& x);
  void add_to(std::size_t i, std::size_t j, const WittFq& x);
  const Row& row(std::size_t i) const { return rows_[i]; }
  ChainVector row_vector(std::size_t i) const;
  ChainVector column_vector(std::size_t j) const;
  void append_row(const ChainVector& v);
  void append_row(Row r);
  std::size_t nonzeros() const;

  ChainMatrix operator*(const ChainMatrix& o) const;
  ChainMatrix operator+(const ChainMatrix& o) const;
  ChainMatrix operator-(const ChainMatrix& o) const;
  ChainMatrix scaled(const WittFq& c) const;
  ChainMatrix transpose() const;
  ChainVector apply(const ChainVector& x) const;
  // Entry-wise sigma^k.
  ChainMatrix frobenius_power(long long k) const;
  // Entry-wise restriction to a lower level.
  ChainMatrix restrict(unsigned m) const;
  ChainMatrix hconcat(const ChainMatrix& o) const;
  ChainMatrix vconcat(const ChainMatrix& o) const;
  ChainMatrix select_columns(std::size_t first, std::size_t count) const;
  ChainMatrix select_rows(const std::vector<std::size_t>& which) const;

  std::string to_string() const;

  friend bool operator==(const ChainMatrix& a, const ChainMatrix& b);

 private:
  friend struct SmithWorker;

  const FqContext* field_ = nullptr;
  unsigned level_ = 0;
  std::size_t cols_ = 0;
  std::vector<Row> rows_;
};

ChainVector zero_vector(const FqContext& field, unsigned level, std::size_t k);
bool is_zero_vector(const ChainVector& v);

// U A V = D with U, V invertible and D diagonal, D_ii = p^{pivots[i]} for
// i < rank and zero beyond. Pivots are chosen by minimal valuation, so they
// come out non-decreasing.
struct SmithForm {
  std::size_t rank = 0;
  std::vector<unsigned> pivots;
  ChainMatrix U, U_inv, V;
  bool has_row_transforms = false;
  bool has_col_transforms = false;
};

SmithForm smith_form(const ChainMatrix& a, bool row_transforms, bool col_transforms);

// log_q of the number of elements of the column span of a.
std::size_t column_span_log_size(const ChainMatrix& a);
std::size_t row_span_log_size(const ChainMatrix& a);

// Generators (as rows) of {x : a x = 0} in W_n^{cols}.
ChainMatrix kernel_rows(const ChainMatrix& a);

// Whether y lies in the column span of the matrix factored in sf (needs row
// transforms).
bool in_column_span(const SmithForm& sf, const ChainVector& y);

}  // namespace wittlab
