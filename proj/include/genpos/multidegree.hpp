#ifndef GENPOS_MULTIDEGREE_HPP
#define GENPOS_MULTIDEGREE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace genpos {

/// An element of N^k.  Indexes the graded pieces of the coordinate ring of
/// P^{n_1} x ... x P^{n_k}.  The length is fixed at construction and all
/// parts are non-negative.
class MultiDegree {
 public:
  MultiDegree() = default;
  explicit MultiDegree(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int v : parts_) {
      if (v < 0) throw std::invalid_argument("MultiDegree: negative part");
    }
  }

  static MultiDegree zero(int k) { return MultiDegree(std::vector<int>(k, 0)); }

  /// c * e_l (0-based axis).
  static MultiDegree axis(int k, int l, int c = 1) {
    std::vector<int> p(k, 0);
    p.at(l) = c;
    return MultiDegree(std::move(p));
  }

  int size() const { return static_cast<int>(parts_.size()); }
  int operator[](int h) const { return parts_[h]; }
  const std::vector<int>& parts() const { return parts_; }

  /// |j| = sum of the parts.
  int total() const {
    int t = 0;
    for (int v : parts_) t += v;
    return t;
  }

  MultiDegree plus_axis(int l, int c = 1) const {
    std::vector<int> p = parts_;
    p.at(l) += c;
    return MultiDegree(std::move(p));
  }

  bool can_minus_axis(int l, int c = 1) const { return parts_.at(l) >= c; }

  MultiDegree minus_axis(int l, int c = 1) const {
    std::vector<int> p = parts_;
    p.at(l) -= c;
    if (p[l] < 0) throw std::invalid_argument("MultiDegree: negative part after subtraction");
    return MultiDegree(std::move(p));
  }

  bool operator==(const MultiDegree& o) const { return parts_ == o.parts_; }
  bool operator!=(const MultiDegree& o) const { return parts_ != o.parts_; }
  /// Lexicographic order; a total order used for containers, not the
  /// componentwise partial order.
  bool operator<(const MultiDegree& o) const { return parts_ < o.parts_; }

  std::string str() const {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < parts_.size(); ++i) {
      if (i) os << ',';
      os << parts_[i];
    }
    os << ')';
    return os.str();
  }

 private:
  std::vector<int> parts_;
};

/// Componentwise partial order: a <= b in every coordinate.
inline bool leq(const MultiDegree& a, const MultiDegree& b) {
  if (a.size() != b.size()) throw std::invalid_argument("leq: dimension mismatch");
  for (int h = 0; h < a.size(); ++h) {
    if (a[h] > b[h]) return false;
  }
  return true;
}

inline MultiDegree operator+(const MultiDegree& a, const MultiDegree& b) {
  if (a.size() != b.size()) throw std::invalid_argument("MultiDegree+: dimension mismatch");
  std::vector<int> p(a.size());
  for (int h = 0; h < a.size(); ++h) p[h] = a[h] + b[h];
  return MultiDegree(std::move(p));
}

/// The tuple (n_1,...,n_k) describing P^{n_1} x ... x P^{n_k}.
class SpaceShape {
 public:
  SpaceShape() = default;
  explicit SpaceShape(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw std::invalid_argument("SpaceShape: k >= 1 required");
    for (int n : dims_) {
      if (n < 1) throw std::invalid_argument("SpaceShape: every factor dimension must be >= 1");
    }
  }

  int k() const { return static_cast<int>(dims_.size()); }
  int n(int h) const { return dims_.at(h); }
  const std::vector<int>& dims() const { return dims_; }
  /// Number of variables in block h, i.e. n_h + 1.
  int block_vars(int h) const { return dims_.at(h) + 1; }
  int total_vars() const {
    int t = 0;
    for (int n : dims_) t += n + 1;
    return t;
  }
  int max_dim() const { return *std::max_element(dims_.begin(), dims_.end()); }

  bool operator==(const SpaceShape& o) const { return dims_ == o.dims_; }
  bool operator!=(const SpaceShape& o) const { return dims_ != o.dims_; }
  bool operator<(const SpaceShape& o) const {
    if (dims_.size() != o.dims_.size()) return dims_.size() < o.dims_.size();
    return dims_ < o.dims_;
  }

  /// "1x2x2" -- also the form used in CSV output, where a comma would
  /// collide with the field separator.
  std::string str() const {
    std::ostringstream os;
    for (size_t i = 0; i < dims_.size(); ++i) {
      if (i) os << 'x';
      os << dims_[i];
    }
    return os.str();
  }

 private:
  std::vector<int> dims_;
};

inline mpz_class binom(long n, long k) {
  if (k < 0 || n < 0 || k > n) return mpz_class(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

/// N(j) = dim_k R_j = prod_h C(n_h + j_h, j_h), exact.
inline mpz_class graded_dim(const MultiDegree& j, const SpaceShape& shape) {
  if (j.size() != shape.k()) throw std::invalid_argument("graded_dim: degree/shape dimension mismatch");
  mpz_class r = 1;
  for (int h = 0; h < shape.k(); ++h) r *= binom(shape.n(h) + j[h], j[h]);
  return r;
}

inline std::int64_t to_i64(const mpz_class& z, const char* what) {
  if (!z.fits_slong_p()) throw std::overflow_error(std::string(what) + ": value exceeds 64 bits");
  return static_cast<std::int64_t>(z.get_si());
}

inline std::int64_t graded_dim_i64(const MultiDegree& j, const SpaceShape& shape) {
  return to_i64(graded_dim(j, shape), "graded_dim");
}

namespace detail {

/// True when a precedes b in the block monomial order (both exponent
/// vectors of the same total degree): the last differing exponent is
/// smaller in a.  This lists x_0^d first and x_n^d last.
inline bool grevlex_precedes(const std::vector<int>& a, const std::vector<int>& b) {
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

struct BlockMonomials {
  std::vector<std::vector<int>> exps;   // exponent vectors, canonical order
  std::map<std::vector<int>, int> index;
};

inline void compositions(int vars, int deg, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (vars == 1) {
    cur.push_back(deg);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = 0; e <= deg; ++e) {
    cur.push_back(e);
    compositions(vars - 1, deg - e, cur, out);
    cur.pop_back();
  }
}

/// Monomials of one block: degree deg in `vars` variables, memoized.
inline const BlockMonomials& block_monomials(int vars, int deg) {
  static std::map<std::pair<int, int>, BlockMonomials> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(vars, deg);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  BlockMonomials bm;
  std::vector<int> cur;
  compositions(vars, deg, cur, bm.exps);
  std::sort(bm.exps.begin(), bm.exps.end(), grevlex_precedes);
  for (size_t i = 0; i < bm.exps.size(); ++i) bm.index[bm.exps[i]] = static_cast<int>(i);
  return cache.emplace(key, std::move(bm)).first->second;
}

/// Per-block monomial counts for degree j, as array sizes.
inline std::vector<size_t> block_sizes(const MultiDegree& j, const SpaceShape& shape) {
  std::vector<size_t> sizes(shape.k());
  for (int h = 0; h < shape.k(); ++h) sizes[h] = block_monomials(shape.block_vars(h), j[h]).exps.size();
  return sizes;
}

}  // namespace detail

inline size_t monomial_count(const MultiDegree& j, const SpaceShape& shape) {
  mpz_class n = graded_dim(j, shape);
  if (!n.fits_ulong_p()) throw std::overflow_error("monomial_count: graded dimension too large to enumerate");
  return static_cast<size_t>(n.get_ui());
}

/// All monomials of degree j as exponent tuples over the sum(n_h + 1)
/// variables, in the canonical order: per-block order as above, blocks
/// combined lexicographically with block 1 most significant.
inline std::vector<std::vector<int>> monomials_of_degree(const MultiDegree& j, const SpaceShape& shape) {
  if (j.size() != shape.k()) throw std::invalid_argument("monomials_of_degree: degree/shape dimension mismatch");
  const int k = shape.k();
  std::vector<const detail::BlockMonomials*> blocks(k);
  size_t count = 1;
  for (int h = 0; h < k; ++h) {
    blocks[h] = &detail::block_monomials(shape.block_vars(h), j[h]);
    count *= blocks[h]->exps.size();
  }
  std::vector<std::vector<int>> out;
  out.reserve(count);
  std::vector<size_t> idx(k, 0);
  while (true) {
    std::vector<int> tuple;
    tuple.reserve(shape.total_vars());
    for (int h = 0; h < k; ++h) {
      const auto& e = blocks[h]->exps[idx[h]];
      tuple.insert(tuple.end(), e.begin(), e.end());
    }
    out.push_back(std::move(tuple));
    int h = k - 1;
    while (h >= 0) {
      if (++idx[h] < blocks[h]->exps.size()) break;
      idx[h] = 0;
      --h;
    }
    if (h < 0) break;
  }
  return out;
}

/// Position of a full exponent tuple in the canonical order of degree j.
inline size_t monomial_index(const SpaceShape& shape, const MultiDegree& j, const std::vector<int>& exp) {
  size_t pos = 0;
  size_t off = 0;
  for (int h = 0; h < shape.k(); ++h) {
    const auto& bm = detail::block_monomials(shape.block_vars(h), j[h]);
    std::vector<int> be(exp.begin() + off, exp.begin() + off + shape.block_vars(h));
    auto it = bm.index.find(be);
    if (it == bm.index.end()) throw std::invalid_argument("monomial_index: exponent tuple has wrong block degree");
    pos = pos * bm.exps.size() + static_cast<size_t>(it->second);
    off += shape.block_vars(h);
  }
  return pos;
}

/// Column map of multiplication by variable m of block l: entry c is the
/// index in degree j + e_l of x_{l,m} times the c-th monomial of degree j.
inline std::vector<size_t> multiplication_shift(const SpaceShape& shape, const MultiDegree& j, int l, int m) {
  if (l < 0 || l >= shape.k()) throw std::invalid_argument("multiplication_shift: block index out of range");
  if (m < 0 || m >= shape.block_vars(l)) throw std::invalid_argument("multiplication_shift: variable index out of range");
  const int k = shape.k();
  auto src_sizes = detail::block_sizes(j, shape);
  MultiDegree tgt = j.plus_axis(l);
  auto tgt_sizes = detail::block_sizes(tgt, shape);
  const auto& src_block = detail::block_monomials(shape.block_vars(l), j[l]);
  const auto& tgt_block = detail::block_monomials(shape.block_vars(l), j[l] + 1);

  size_t count = 1;
  for (auto s : src_sizes) count *= s;
  std::vector<size_t> map(count);
  std::vector<size_t> ranks(k);
  for (size_t c = 0; c < count; ++c) {
    size_t rem = c;
    for (int h = k - 1; h >= 0; --h) {
      ranks[h] = rem % src_sizes[h];
      rem /= src_sizes[h];
    }
    std::vector<int> e = src_block.exps[ranks[l]];
    e[m] += 1;
    ranks[l] = static_cast<size_t>(tgt_block.index.at(e));
    size_t pos = 0;
    for (int h = 0; h < k; ++h) pos = pos * tgt_sizes[h] + ranks[h];
    map[c] = pos;
  }
  return map;
}

/// Visits every degree <= box in ascending lexicographic order (a linear
/// extension of the componentwise order).
inline void for_each_degree_leq(const MultiDegree& box, const std::function<void(const MultiDegree&)>& fn) {
  const int k = box.size();
  std::vector<int> cur(k, 0);
  while (true) {
    fn(MultiDegree(cur));
    int h = k - 1;
    while (h >= 0) {
      if (++cur[h] <= box[h]) break;
      cur[h] = 0;
      --h;
    }
    if (h < 0) break;
  }
}

/// Minimal elements of an upward-closed predicate inside [0, box].
/// Because lexicographic ascent is a linear extension of the product
/// order, a hit is minimal exactly when it dominates no earlier hit.
inline std::vector<MultiDegree> minimal_elements(const std::function<bool(const MultiDegree&)>& pred,
                                                 const MultiDegree& box) {
  std::vector<MultiDegree> out;
  for_each_degree_leq(box, [&](const MultiDegree& j) {
    for (const auto& m : out) {
      if (leq(m, j)) return;
    }
    if (pred(j)) out.push_back(j);
  });
  return out;
}

/// Smallest d with C(n + d, d) > s (strict) or >= s.
inline int axis_threshold(int n, std::int64_t s, bool strict) {
  for (int d = 0;; ++d) {
    mpz_class b = binom(n + d, d);
    if (strict ? (b > s) : (b >= s)) return d;
  }
}

/// Degree bookkeeping for s points with maximal Hilbert function:
///   minimal      -- antichain of minimal degrees with N(j) > s
///   open_shifts  -- one-step shifts of `minimal` that can still carry new
///                   generators (shifts excluded when j - e_{l1} - e_{l2}
///                   dominates a minimal degree)
///   shift_axes   -- for each open shift, the axes l with j - e_l minimal
///   closure      -- minimal together with every one-step shift; every
///                   generator degree lies here
struct DegreeSets {
  std::int64_t s = 0;
  SpaceShape shape;
  std::vector<MultiDegree> minimal;
  std::vector<MultiDegree> open_shifts;
  std::map<MultiDegree, std::vector<int>> shift_axes;
  std::vector<MultiDegree> closure;
};

/// Witness (l1, l2, i) with j - e_{l1} - e_{l2} >= i for some i in
/// `minimal`, if one exists.
inline std::optional<std::tuple<int, int, MultiDegree>> shift_exclusion_witness(
    const MultiDegree& j, const std::vector<MultiDegree>& minimal) {
  const int k = j.size();
  for (int l1 = 0; l1 < k; ++l1) {
    if (!j.can_minus_axis(l1)) continue;
    for (int l2 = l1; l2 < k; ++l2) {
      MultiDegree d = j.minus_axis(l1);
      if (!d.can_minus_axis(l2)) continue;
      d = d.minus_axis(l2);
      for (const auto& i : minimal) {
        if (leq(i, d)) return std::make_tuple(l1, l2, i);
      }
    }
  }
  return std::nullopt;
}

inline DegreeSets compute_degree_sets(std::int64_t s, const SpaceShape& shape) {
  if (s < 1) throw std::invalid_argument("compute_degree_sets: s >= 1 required");
  DegreeSets ds;
  ds.s = s;
  ds.shape = shape;

  // Per-axis bound: the minimal elements of {N > s} have h-th part at most
  // min{d : C(n_h + d, d) > s}, since lowering any larger part to that
  // value keeps the block factor > s.
  std::vector<int> bound(shape.k());
  for (int h = 0; h < shape.k(); ++h) bound[h] = axis_threshold(shape.n(h), s, /*strict=*/true);
  MultiDegree box(bound);

  ds.minimal = minimal_elements(
      [&](const MultiDegree& j) { return graded_dim(j, shape) > s; }, box);

  std::vector<MultiDegree> candidates;
  for (const auto& i : ds.minimal) {
    for (int l = 0; l < shape.k(); ++l) candidates.push_back(i.plus_axis(l));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (const auto& j : candidates) {
    if (shift_exclusion_witness(j, ds.minimal)) continue;
    std::vector<int> axes;
    for (int l = 0; l < shape.k(); ++l) {
      if (!j.can_minus_axis(l)) continue;
      MultiDegree below = j.minus_axis(l);
      if (std::find(ds.minimal.begin(), ds.minimal.end(), below) != ds.minimal.end()) axes.push_back(l);
    }
    ds.open_shifts.push_back(j);
    ds.shift_axes[j] = std::move(axes);
  }

  ds.closure = ds.minimal;
  ds.closure.insert(ds.closure.end(), candidates.begin(), candidates.end());
  std::sort(ds.closure.begin(), ds.closure.end());
  ds.closure.erase(std::unique(ds.closure.begin(), ds.closure.end()), ds.closure.end());
  return ds;
}

}  // namespace genpos

#endif  // GENPOS_MULTIDEGREE_HPP
