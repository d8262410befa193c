#ifndef GENPOS_SPARSE_HPP
#define GENPOS_SPARSE_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace genpos {

/// Sparse vector: (column, value) pairs sorted by column, values nonzero.
template <class F>
using SparseRow = std::vector<std::pair<size_t, typename F::Element>>;

/// A row of the form e_{unit_col} + tail where the tail's support lies in
/// a shared small column set S (the unit column itself may or may not be
/// in S).  Kernel-basis rows shifted by a monomial have exactly this
/// shape: unit entry at the shifted free column, remaining support on the
/// shifted pivot columns.
template <class F>
struct UnitRow {
  size_t unit_col = 0;
  SparseRow<F> tail;
};

/// Incremental rank accumulator over a small fixed set of columns.
/// Stored pivot rows are kept mutually reduced, so one pass per insert
/// suffices.
template <class F>
class DenseRankAccumulator {
 public:
  using Element = typename F::Element;

  DenseRankAccumulator(const F& field, size_t ncols) : f_(field), ncols_(ncols) {}

  size_t rank() const { return pivots_.size(); }
  bool full() const { return pivots_.size() == ncols_; }

  /// Returns true when the row enlarged the span.
  bool insert(std::vector<Element> row) {
    for (const auto& [pc, pr] : pivots_) {
      if (f_.is_zero(row[pc])) continue;
      Element c = row[pc];
      for (size_t j = 0; j < ncols_; ++j) row[j] = f_.sub(row[j], f_.mul(c, pr[j]));
    }
    size_t lead = ncols_;
    for (size_t j = 0; j < ncols_; ++j) {
      if (!f_.is_zero(row[j])) {
        lead = j;
        break;
      }
    }
    if (lead == ncols_) return false;
    Element inv = f_.inv(row[lead]);
    for (size_t j = 0; j < ncols_; ++j) row[j] = f_.mul(row[j], inv);
    for (auto& [pc, pr] : pivots_) {
      if (f_.is_zero(pr[lead])) continue;
      Element c = pr[lead];
      for (size_t j = 0; j < ncols_; ++j) pr[j] = f_.sub(pr[j], f_.mul(c, row[j]));
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead,
                                [](const auto& a, size_t b) { return a.first < b; });
    pivots_.insert(pos, {lead, std::move(row)});
    return true;
  }

 private:
  F f_;
  size_t ncols_;
  std::vector<std::pair<size_t, std::vector<Element>>> pivots_;
};

/// Rank of a stack of unit rows with tails inside the sorted column set
/// `s_cols`.  Rows whose unit columns are distinct and outside S are
/// independent after keeping one representative each; every other row
/// reduces (by subtracting its representative) into the S-block, which is
/// eliminated densely.  Equal to span_dim of the dense stack.
template <class F>
size_t unit_row_span_dim(const F& f, const std::vector<UnitRow<F>>& rows, const std::vector<size_t>& s_cols) {
  auto s_index = [&](size_t col) -> size_t {
    auto it = std::lower_bound(s_cols.begin(), s_cols.end(), col);
    if (it == s_cols.end() || *it != col) return s_cols.size();
    return static_cast<size_t>(it - s_cols.begin());
  };

  DenseRankAccumulator<F> acc(f, s_cols.size());
  std::map<size_t, const UnitRow<F>*> reps;

  auto densify_tail = [&](const SparseRow<F>& tail, std::vector<typename F::Element>& dense) {
    for (const auto& [col, val] : tail) {
      size_t si = s_index(col);
      if (si == s_cols.size()) throw std::logic_error("unit_row_span_dim: tail support outside S");
      dense[si] = f.add(dense[si], val);
    }
  };

  for (const auto& row : rows) {
    size_t usi = s_index(row.unit_col);
    if (usi != s_cols.size()) {
      // Whole row lives in the S-block.
      if (acc.full()) continue;
      std::vector<typename F::Element> dense(s_cols.size(), f.zero());
      densify_tail(row.tail, dense);
      dense[usi] = f.add(dense[usi], f.one());
      acc.insert(std::move(dense));
      continue;
    }
    auto [it, inserted] = reps.try_emplace(row.unit_col, &row);
    if (inserted) continue;
    if (acc.full()) continue;
    // Same unit column as the representative: the difference of the two
    // rows has support in S only.
    std::vector<typename F::Element> dense(s_cols.size(), f.zero());
    densify_tail(row.tail, dense);
    for (const auto& [col, val] : it->second->tail) {
      size_t si = s_index(col);
      if (si == s_cols.size()) throw std::logic_error("unit_row_span_dim: tail support outside S");
      dense[si] = f.sub(dense[si], val);
    }
    acc.insert(std::move(dense));
  }
  return reps.size() + acc.rank();
}

}  // namespace genpos

#endif  // GENPOS_SPARSE_HPP
