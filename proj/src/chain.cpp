#include "wittlab/chain.hpp"

#include <algorithm>
#include <sstream>

#include "wittlab/errors.hpp"

namespace wittlab {

WittFq unit_part(const WittFq& x) {
  const unsigned v = x.valuation();
  const unsigned n = x.level();
  if (v >= n) throw DomainError("unit part of zero");
  if (v == 0) return x;
  std::vector<FqElem> shifted(x.components().begin() + v, x.components().end());
  return WittFq(x.ring(), std::move(shifted)).zero_pad(n).frobenius_power(-static_cast<long long>(v));
}

WittFq unit_inverse(const WittFq& u) {
  if (u.level() == 0 || u[0].is_zero()) throw DomainError("inverse of a non-unit " + u.to_string());
  const unsigned n = u.level();
  const WittFq one = WittFq::one(u.ring(), n);
  const WittFq two = one + one;
  WittFq y = WittFq::teichmuller(u.ring(), u[0].inverse(), n);
  // Newton: the number of correct components at least doubles each step.
  for (unsigned correct = 1; correct < n; correct *= 2) y = y * (two - u * y);
  if (!(u * y == one)) throw InternalError("unit inversion did not converge for " + u.to_string());
  return y;
}

WittFq p_power(const FqContext& field, unsigned level, unsigned k) {
  return WittFq::one(CoeffRing::fq(field), level).mul_by_p_power(k);
}

std::optional<WittFq> chain_divide(const WittFq& a, const WittFq& b) {
  const unsigned n = a.level();
  if (b.level() != n) throw DomainError("chain_divide: level mismatch");
  const unsigned va = a.valuation(), vb = b.valuation();
  if (va >= n) return WittFq::zero(a.ring(), n);
  if (va < vb) return std::nullopt;
  return unit_part(a).mul_by_p_power(va - vb) * unit_inverse(unit_part(b));
}

ChainVector zero_vector(const FqContext& field, unsigned level, std::size_t k) {
  return ChainVector(k, WittFq::zero(CoeffRing::fq(field), level));
}

bool is_zero_vector(const ChainVector& v) {
  return std::all_of(v.begin(), v.end(), [](const WittFq& x) { return x.is_zero(); });
}

ChainMatrix::ChainMatrix(const FqContext& field, unsigned level, std::size_t rows, std::size_t cols)
    : field_(&field), level_(level), cols_(cols), rows_(rows) {
  if (level < 1) throw DomainError("chain matrices need level >= 1");
}

ChainMatrix ChainMatrix::identity(const FqContext& field, unsigned level, std::size_t k) {
  ChainMatrix m(field, level, k, k);
  const WittFq one = WittFq::one(CoeffRing::fq(field), level);
  for (std::size_t i = 0; i < k; ++i) m.rows_[i].emplace(i, one);
  return m;
}

ChainMatrix ChainMatrix::from_rows(const FqContext& field, unsigned level, std::size_t cols,
                                   const std::vector<ChainVector>& rows) {
  ChainMatrix m(field, level, 0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

WittFq ChainMatrix::at(std::size_t i, std::size_t j) const {
  auto it = rows_.at(i).find(j);
  if (it != rows_[i].end()) return it->second;
  return WittFq::zero(CoeffRing::fq(*field_), level_);
}

void ChainMatrix::set(std::size_t i, std::size_t j, const WittFq& x) {
  if (j >= cols_ || i >= rows_.size()) throw DomainError("matrix index out of range");
  if (x.level() != level_) throw DomainError("matrix entry level mismatch");
  if (x.is_zero())
    rows_[i].erase(j);
  else
    rows_[i][j] = x;
}

void ChainMatrix::add_to(std::size_t i, std::size_t j, const WittFq& x) {
  if (x.is_zero()) return;
  auto it = rows_.at(i).find(j);
  if (it == rows_[i].end()) {
    set(i, j, x);
    return;
  }
  WittFq s = it->second + x;
  if (s.is_zero())
    rows_[i].erase(it);
  else
    it->second = s;
}

ChainVector ChainMatrix::row_vector(std::size_t i) const {
  ChainVector v = zero_vector(*field_, level_, cols_);
  for (const auto& [j, x] : rows_.at(i)) v[j] = x;
  return v;
}

ChainVector ChainMatrix::column_vector(std::size_t j) const {
  ChainVector v = zero_vector(*field_, level_, rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    auto it = rows_[i].find(j);
    if (it != rows_[i].end()) v[i] = it->second;
  }
  return v;
}

void ChainMatrix::append_row(const ChainVector& v) {
  if (v.size() != cols_) throw DomainError("row length " + std::to_string(v.size()) + " != " + std::to_string(cols_));
  Row r;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j].level() != level_) throw DomainError("matrix entry level mismatch");
    if (!v[j].is_zero()) r.emplace(j, v[j]);
  }
  rows_.push_back(std::move(r));
}

void ChainMatrix::append_row(Row r) {
  for (auto it = r.begin(); it != r.end();) {
    if (it->first >= cols_) throw DomainError("row entry out of range");
    if (it->second.is_zero())
      it = r.erase(it);
    else
      ++it;
  }
  rows_.push_back(std::move(r));
}

std::size_t ChainMatrix::nonzeros() const {
  std::size_t k = 0;
  for (const auto& r : rows_) k += r.size();
  return k;
}

ChainMatrix ChainMatrix::operator*(const ChainMatrix& o) const {
  if (cols_ != o.rows()) throw DomainError("matrix product dimension mismatch");
  if (level_ != o.level_) throw DomainError("matrix product level mismatch");
  ChainMatrix r(*field_, level_, rows_.size(), o.cols_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& [k, a] : rows_[i])
      for (const auto& [j, b] : o.rows_[k]) r.add_to(i, j, a * b);
  return r;
}

ChainMatrix ChainMatrix::operator+(const ChainMatrix& o) const {
  if (cols_ != o.cols_ || rows() != o.rows()) throw DomainError("matrix sum dimension mismatch");
  ChainMatrix r = *this;
  for (std::size_t i = 0; i < o.rows(); ++i)
    for (const auto& [j, b] : o.rows_[i]) r.add_to(i, j, b);
  return r;
}

ChainMatrix ChainMatrix::scaled(const WittFq& c) const {
  ChainMatrix r(*field_, level_, rows(), cols_);
  for (std::size_t i = 0; i < rows(); ++i)
    for (const auto& [j, a] : rows_[i]) r.set(i, j, c * a);
  return r;
}

ChainMatrix ChainMatrix::operator-(const ChainMatrix& o) const {
  return *this + o.scaled(-WittFq::one(CoeffRing::fq(*field_), level_));
}

ChainMatrix ChainMatrix::transpose() const {
  ChainMatrix r(*field_, level_, cols_, rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& [j, a] : rows_[i]) r.rows_[j].emplace(i, a);
  return r;
}

ChainVector ChainMatrix::apply(const ChainVector& x) const {
  if (x.size() != cols_) throw DomainError("matrix-vector dimension mismatch");
  ChainVector y = zero_vector(*field_, level_, rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (const auto& [j, a] : rows_[i])
      if (!x[j].is_zero()) y[i] = y[i] + a * x[j];
  return y;
}

ChainMatrix ChainMatrix::frobenius_power(long long k) const {
  ChainMatrix r = *this;
  for (auto& row : r.rows_)
    for (auto& [j, a] : row) a = a.frobenius_power(k);
  return r;
}

ChainMatrix ChainMatrix::restrict(unsigned m) const {
  ChainMatrix r(*field_, m, rows(), cols_);
  for (std::size_t i = 0; i < rows(); ++i)
    for (const auto& [j, a] : rows_[i]) r.set(i, j, a.restrict(m));
  return r;
}

ChainMatrix ChainMatrix::hconcat(const ChainMatrix& o) const {
  if (rows() != o.rows()) throw DomainError("hconcat row mismatch");
  ChainMatrix r(*field_, level_, rows(), cols_ + o.cols_);
  for (std::size_t i = 0; i < rows(); ++i) {
    r.rows_[i] = rows_[i];
    for (const auto& [j, a] : o.rows_[i]) r.rows_[i].emplace(cols_ + j, a);
  }
  return r;
}

ChainMatrix ChainMatrix::vconcat(const ChainMatrix& o) const {
  if (cols_ != o.cols_) throw DomainError("vconcat column mismatch");
  ChainMatrix r = *this;
  for (const auto& row : o.rows_) r.rows_.push_back(row);
  return r;
}

ChainMatrix ChainMatrix::select_columns(std::size_t first, std::size_t count) const {
  ChainMatrix r(*field_, level_, rows(), count);
  for (std::size_t i = 0; i < rows(); ++i)
    for (auto it = rows_[i].lower_bound(first); it != rows_[i].end() && it->first < first + count; ++it)
      r.rows_[i].emplace(it->first - first, it->second);
  return r;
}

ChainMatrix ChainMatrix::select_rows(const std::vector<std::size_t>& which) const {
  ChainMatrix r(*field_, level_, 0, cols_);
  for (auto i : which) r.rows_.push_back(rows_.at(i));
  return r;
}

std::string ChainMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows(); ++i) {
    os << (i ? ", " : "") << "[";
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

bool operator==(const ChainMatrix& a, const ChainMatrix& b) {
  return a.field_ == b.field_ && a.level_ == b.level_ && a.cols_ == b.cols_ && a.rows_ == b.rows_;
}

struct SmithWorker {
  using Row = ChainMatrix::Row;

  ChainMatrix a;
  std::vector<Row> u;       // rows of U
  std::vector<Row> uinv_t;  // rows of U^{-1} transposed
  std::vector<Row> v_t;     // rows of V transposed
  bool rows_on, cols_on;

  static void row_axpy(Row& target, const WittFq& f, const Row& src) {
    // target -= f * src
    for (const auto& [j, x] : src) {
      WittFq delta = f * x;
      if (delta.is_zero()) continue;
      auto it = target.find(j);
      if (it == target.end()) {
        target.emplace(j, -delta);
      } else {
        it->second = it->second - delta;
        if (it->second.is_zero()) target.erase(it);
      }
    }
  }

  static void row_scale(Row& r, const WittFq& c) {
    for (auto it = r.begin(); it != r.end();) {
      it->second = c * it->second;
      if (it->second.is_zero())
        it = r.erase(it);
      else
        ++it;
    }
  }

  static std::vector<Row> identity_rows(const FqContext& field, unsigned level, std::size_t k) {
    std::vector<Row> rows(k);
    const WittFq one = WittFq::one(CoeffRing::fq(field), level);
    for (std::size_t i = 0; i < k; ++i) rows[i].emplace(i, one);
    return rows;
  }

  void swap_columns(std::size_t c1, std::size_t c2, std::size_t from_row) {
    if (c1 == c2) return;
    for (std::size_t i = from_row; i < a.rows_.size(); ++i) {
      auto& row = a.rows_[i];
      auto i1 = row.find(c1), i2 = row.find(c2);
      const bool h1 = i1 != row.end(), h2 = i2 != row.end();
      if (h1 && h2) {
        std::swap(i1->second, i2->second);
      } else if (h1) {
        row.emplace(c2, i1->second);
        row.erase(c1);
      } else if (h2) {
        row.emplace(c1, i2->second);
        row.erase(c2);
      }
    }
    if (cols_on) std::swap(v_t[c1], v_t[c2]);
  }

  SmithForm run() {
    const FqContext& field = *a.field_;
    const unsigned n = a.level_;
    const std::size_t m = a.rows_.size(), k = a.cols_;
    if (rows_on) {
      u = identity_rows(field, n, m);
      uinv_t = identity_rows(field, n, m);
    }
    if (cols_on) v_t = identity_rows(field, n, k);

    SmithForm sf;
    for (std::size_t t = 0; t < std::min(m, k); ++t) {
      // Minimal-valuation pivot among rows >= t, columns >= t.
      std::size_t pr = m, pc = k;
      unsigned best = n;
      for (std::size_t i = t; i < m && best > 0; ++i) {
        const auto& row = a.rows_[i];
        for (auto it = row.lower_bound(t); it != row.end(); ++it) {
          const unsigned v = it->second.valuation();
          if (v < best) {
            best = v;
            pr = i;
            pc = it->first;
            if (v == 0) break;
          }
        }
      }
      if (pr == m) break;

      if (pr != t) {
        std::swap(a.rows_[pr], a.rows_[t]);
        if (rows_on) {
          std::swap(u[pr], u[t]);
          std::swap(uinv_t[pr], uinv_t[t]);
        }
      }
      swap_columns(pc, t, t);

      const WittFq pivot = a.rows_[t].at(t);
      const WittFq unit = unit_part(pivot);
      const WittFq unit_inv = unit_inverse(unit);
      if (!(unit == WittFq::one(unit.ring(), n))) {
        row_scale(a.rows_[t], unit_inv);
        if (rows_on) {
          row_scale(u[t], unit_inv);
          row_scale(uinv_t[t], unit);
        }
      }
      const WittFq pv = p_power(field, n, best);

      for (std::size_t i = t + 1; i < m; ++i) {
        auto it = a.rows_[i].find(t);
        if (it == a.rows_[i].end()) continue;
        const WittFq f = *chain_divide(it->second, pv);
        row_axpy(a.rows_[i], f, a.rows_[t]);
        if (rows_on) {
          row_axpy(u[i], f, u[t]);
          // U^{-1} <- U^{-1} (I + f e_i e_t^T): column t += f column i.
          row_axpy(uinv_t[t], -f, uinv_t[i]);
        }
      }
      Row& prow = a.rows_[t];
      for (auto it = prow.upper_bound(t); it != prow.end();) {
        if (cols_on) {
          const WittFq f = *chain_divide(it->second, pv);
          row_axpy(v_t[it->first], f, v_t[t]);
        }
        it = prow.erase(it);
      }
      sf.pivots.push_back(best);
      ++sf.rank;
    }

    auto from_rows = [&](std::vector<Row>& rows, std::size_t cols) {
      ChainMatrix r(field, n, 0, cols);
      for (auto& row : rows) r.append_row(std::move(row));
      return r;
    };
    if (rows_on) {
      sf.U = from_rows(u, m);
      sf.U_inv = from_rows(uinv_t, m).transpose();
      sf.has_row_transforms = true;
    }
    if (cols_on) {
      sf.V = from_rows(v_t, k).transpose();
      sf.has_col_transforms = true;
    }
    return sf;
  }
};

SmithForm smith_form(const ChainMatrix& a, bool row_transforms, bool col_transforms) {
  SmithWorker w{a, {}, {}, {}, row_transforms, col_transforms};
  return w.run();
}

std::size_t column_span_log_size(const ChainMatrix& a) {
  const SmithForm sf = smith_form(a, false, false);
  std::size_t s = 0;
  for (auto v : sf.pivots) s += a.level() - v;
  return s;
}

std::size_t row_span_log_size(const ChainMatrix& a) { return column_span_log_size(a); }

ChainMatrix kernel_rows(const ChainMatrix& a) {
  const SmithForm sf = smith_form(a, false, true);
  const unsigned n = a.level();
  ChainMatrix out(a.field(), n, 0, a.cols());
  for (std::size_t i = 0; i < a.cols(); ++i) {
    ChainVector col = sf.V.column_vector(i);
    if (i < sf.rank) {
      const unsigned v = sf.pivots[i];
      if (v == 0) continue;
      for (auto& x : col) x = x.mul_by_p_power(n - v);
    }
    if (!is_zero_vector(col)) out.append_row(col);
  }
  return out;
}

bool in_column_span(const SmithForm& sf, const ChainVector& y) {
  if (!sf.has_row_transforms) throw InternalError("in_column_span needs row transforms");
  const ChainVector uy = sf.U.apply(y);
  for (std::size_t i = 0; i < uy.size(); ++i) {
    if (i < sf.rank) {
      if (uy[i].valuation() < sf.pivots[i]) return false;
    } else if (!uy[i].is_zero()) {
      return false;
    }
  }
  return true;
}

}  // namespace wittlab
