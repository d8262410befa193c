#ifndef GENPOS_GENANALYSIS_HPP
#define GENPOS_GENANALYSIS_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "genpos/field.hpp"
#include "genpos/matrix.hpp"
#include "genpos/multidegree.hpp"
#include "genpos/points.hpp"
#include "genpos/sparse.hpp"

namespace genpos {

// ---------------------------------------------------------------------------
// Combinatorial bounds: pure functions of (s, shape).
// ---------------------------------------------------------------------------

/// Lower bound for the minimal number of generators of the ideal of s
/// generic points: the count at the minimal degrees plus, per open shift,
/// the part of the slice that variable multiples from below cannot cover
/// even when they are as independent as possible.
inline std::int64_t v_bound(std::int64_t s, const SpaceShape& shape) {
  if (s <= shape.max_dim())
    throw DegenerateInputError("v_bound: s must exceed every factor dimension (got s=" + std::to_string(s) +
                               ", shape=" + shape.str() + ")");
  DegreeSets ds = compute_degree_sets(s, shape);
  mpz_class v = 0;
  for (const auto& i : ds.minimal) v += graded_dim(i, shape) - s;
  for (const auto& j : ds.open_shifts) {
    mpz_class term = graded_dim(j, shape) - s;
    for (int l : ds.shift_axes.at(j))
      term -= mpz_class(shape.n(l) + 1) * (graded_dim(j.minus_axis(l), shape) - s);
    if (term > 0) v += term;
  }
  return to_i64(v, "v_bound");
}

/// Upper bound: at each open shift the span from below has dimension at
/// least twice the slice one step down along the smallest admissible
/// axis.
inline std::int64_t upper_bound(std::int64_t s, const SpaceShape& shape) {
  if (s <= shape.max_dim())
    throw DegenerateInputError("upper_bound: s must exceed every factor dimension (got s=" + std::to_string(s) +
                               ", shape=" + shape.str() + ")");
  DegreeSets ds = compute_degree_sets(s, shape);
  mpz_class u = 0;
  for (const auto& i : ds.minimal) u += graded_dim(i, shape) - s;
  for (const auto& j : ds.open_shifts) {
    int l1 = ds.shift_axes.at(j).front();
    u += graded_dim(j, shape) - 2 * graded_dim(j.minus_axis(l1), shape) + s;
  }
  return to_i64(u, "upper_bound");
}

// ---------------------------------------------------------------------------
// Minimal generator count for certified-generic sets.
// ---------------------------------------------------------------------------

struct PerDegreeCount {
  std::int64_t slice_dim = 0;
  std::optional<std::int64_t> w_dim;  // absent at the minimal degrees
  std::int64_t new_generators = 0;
};

struct GeneratorReport {
  std::int64_t s = 0;
  SpaceShape shape;
  GenericityCertificate certificate;
  DegreeSets degree_sets;
  std::map<MultiDegree, PerDegreeCount> per_degree;
  std::int64_t nu = 0;
  std::int64_t v = 0;
  std::int64_t upper = 0;
};

/// nu(I_X) for a certified-generic, non-degenerate point set: the slice
/// dimensions at the minimal degrees plus, per open shift, the part of
/// the slice not spanned by variable multiples from below.  Refuses
/// non-generic or degenerate input.
template <class F>
GeneratorReport nu(const PointSet<F>& X) {
  const SpaceShape& shape = X.shape();
  const std::int64_t s = X.s();
  if (s < 2) throw DegenerateInputError("nu: at least two points required");
  if (s <= shape.max_dim())
    throw DegenerateInputError("nu: degenerate input, s=" + std::to_string(s) +
                               " does not exceed max factor dimension " + std::to_string(shape.max_dim()));
  GeneratorReport rep;
  rep.s = s;
  rep.shape = shape;
  rep.certificate = is_generic_position(X);
  if (!rep.certificate.generic) throw NotGenericError(rep.certificate);
  rep.degree_sets = compute_degree_sets(s, shape);

  for (const auto& i : rep.degree_sets.minimal) {
    std::int64_t dim = to_i64(graded_dim(i, shape) - s, "nu");
    rep.per_degree[i] = PerDegreeCount{dim, std::nullopt, dim};
    rep.nu += dim;
  }
  for (const auto& j : rep.degree_sets.open_shifts) {
    std::int64_t dim = to_i64(graded_dim(j, shape) - s, "nu");
    std::int64_t w = w_dim(X, j, rep.degree_sets.shift_axes.at(j));
    std::int64_t fresh = dim - w;
    if (fresh < 0) throw std::logic_error("nu: span from below exceeds the slice dimension");
    rep.per_degree[j] = PerDegreeCount{dim, w, fresh};
    rep.nu += fresh;
  }
  rep.v = v_bound(s, shape);
  rep.upper = upper_bound(s, shape);
  return rep;
}

// ---------------------------------------------------------------------------
// Generator degree bound for arbitrary (possibly non-generic) sets.
// ---------------------------------------------------------------------------

struct GeneratorDegreeBound {
  std::vector<std::int64_t> projection_counts;            // t_i
  MultiDegree box;                                        // (t_1, ..., t_k)
  std::map<std::pair<int, MultiDegree>, int> thresholds;  // (axis, complement) -> first repeat height
  std::vector<MultiDegree> nonzero_degrees;               // degrees in the box with a nonzero slice
  std::vector<MultiDegree> candidates;                    // every generator degree lies here
};

namespace detail {

inline MultiDegree remove_coord(const MultiDegree& j, int l) {
  std::vector<int> p;
  p.reserve(j.size() - 1);
  for (int h = 0; h < j.size(); ++h)
    if (h != l) p.push_back(j[h]);
  return MultiDegree(std::move(p));
}

inline MultiDegree insert_coord(const MultiDegree& c, int l, int v) {
  std::vector<int> p;
  p.reserve(c.size() + 1);
  for (int h = 0; h <= c.size(); ++h) {
    if (h == l) p.push_back(v);
    if (h < c.size()) p.push_back(c[h]);
  }
  return MultiDegree(std::move(p));
}

}  // namespace detail

/// Bounds every generator degree of I_X using only the Hilbert function:
/// along each axis the values stabilize at the first repeat (and stay
/// stable), so no generator lives strictly past that height; what
/// remains, intersected with the degrees where the slice is nonzero,
/// is the finite candidate set.
template <class F>
GeneratorDegreeBound general_generator_degrees(const PointSet<F>& X) {
  const SpaceShape& shape = X.shape();
  const int k = shape.k();
  GeneratorDegreeBound out;
  out.projection_counts = projection_sizes(X);
  std::vector<int> t(k);
  for (int h = 0; h < k; ++h) t[h] = static_cast<int>(out.projection_counts[h]);
  out.box = MultiDegree(t);

  for (int l = 0; l < k; ++l) {
    MultiDegree cbox = detail::remove_coord(out.box, l);
    for_each_degree_leq(cbox, [&](const MultiDegree& c) {
      int first_repeat = -1;
      std::int64_t prev = X.hilbert(detail::insert_coord(c, l, 0));
      for (int i = 1; i <= t[l]; ++i) {
        std::int64_t cur = X.hilbert(detail::insert_coord(c, l, i));
        if (cur == prev) {
          first_repeat = i;
          break;
        }
        prev = cur;
      }
      if (first_repeat < 0)
        throw std::logic_error("general_generator_degrees: no repeat within the projection bound");
      out.thresholds[{l, c}] = first_repeat;
    });
  }

  for_each_degree_leq(out.box, [&](const MultiDegree& j) {
    if (X.hilbert(j) >= graded_dim(j, shape)) return;
    out.nonzero_degrees.push_back(j);
    for (int l = 0; l < k; ++l) {
      if (j[l] > out.thresholds.at({l, detail::remove_coord(j, l)})) return;
    }
    out.candidates.push_back(j);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Brute-force generator count (independent of the generic-position
// machinery above): per degree, new generators = slice dimension minus
// the span of all variable multiples of the slices one step below.
// ---------------------------------------------------------------------------

struct BruteForceReport {
  MultiDegree box;
  std::map<MultiDegree, std::int64_t> new_generators;  // degrees with a positive count
  std::int64_t total = 0;
};

namespace detail {

/// Degrees with |j| = d inside [0, box], ascending lex.
inline void degrees_of_total(const MultiDegree& box, int d, std::vector<MultiDegree>& out) {
  std::vector<int> cur(box.size());
  std::vector<int> suffix_max(box.size() + 1, 0);
  for (int h = box.size(); h-- > 0;) suffix_max[h] = suffix_max[h + 1] + box[h];
  std::function<void(int, int)> rec = [&](int h, int rem) {
    if (h == box.size()) {
      if (rem == 0) out.push_back(MultiDegree(cur));
      return;
    }
    if (rem > suffix_max[h]) return;
    int hi = std::min(box[h], rem);
    for (int e = 0; e <= hi; ++e) {
      cur[h] = e;
      rec(h + 1, rem - e);
    }
    cur[h] = 0;
  };
  rec(0, d);
}

template <class F>
struct SparseSliceBasis {
  std::vector<size_t> pivot_cols;
  struct Row {
    size_t free_col;
    SparseRow<F> tail;  // support on the pivot columns
  };
  std::vector<Row> rows;
};

template <class F>
SparseSliceBasis<F> sparse_kernel(const F& f, const Echelon<F>& e, size_t ncols) {
  SparseSliceBasis<F> out;
  out.pivot_cols = e.pivot_cols;
  std::vector<bool> is_pivot(ncols, false);
  for (size_t c : e.pivot_cols) is_pivot[c] = true;
  for (size_t c = 0; c < ncols; ++c) {
    if (is_pivot[c]) continue;
    typename SparseSliceBasis<F>::Row row;
    row.free_col = c;
    for (size_t i = 0; i < e.pivot_cols.size(); ++i) {
      if (f.is_zero(e.mat.at(i, c))) continue;
      row.tail.emplace_back(e.pivot_cols[i], f.neg(e.mat.at(i, c)));
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace detail

/// Default scan box: the projection-count box, opened up one step past
/// the minimal nonzero degrees.
template <class F>
MultiDegree default_brute_force_box(const PointSet<F>& X) {
  const SpaceShape& shape = X.shape();
  auto t64 = projection_sizes(X);
  std::vector<int> b(shape.k());
  for (int h = 0; h < shape.k(); ++h) b[h] = static_cast<int>(t64[h]);
  MultiDegree tbox(b);
  auto minimal = minimal_elements(
      [&](const MultiDegree& j) { return X.hilbert(j) < graded_dim(j, shape); }, tbox);
  for (const auto& i : minimal)
    for (int h = 0; h < shape.k(); ++h) b[h] = std::max(b[h], i[h] + 1);
  return MultiDegree(b);
}

/// Counts minimal generators degree by degree over the whole box, making
/// no genericity assumption: at each degree the number of new generators
/// is the slice dimension minus the dimension of the span of x_{l,m} * G
/// over all axes l, variables m and basis elements G one step below.
template <class F>
BruteForceReport brute_force_nu(const PointSet<F>& X, std::optional<MultiDegree> box_opt = std::nullopt) {
  const F& f = X.field();
  const SpaceShape& shape = X.shape();
  MultiDegree box = box_opt ? *box_opt : default_brute_force_box(X);
  {
    auto t64 = projection_sizes(X);
    for (int h = 0; h < shape.k(); ++h)
      if (box[h] < static_cast<int>(t64[h]))
        throw std::invalid_argument("brute_force_nu: box must cover the projection-count box " +
                                    std::to_string(t64[h]) + " on axis " + std::to_string(h + 1));
  }

  BruteForceReport rep;
  rep.box = box;
  std::map<MultiDegree, detail::SparseSliceBasis<F>> prev_layer, cur_layer;

  for (int d = 0; d <= box.total(); ++d) {
    std::vector<MultiDegree> layer;
    detail::degrees_of_total(box, d, layer);
    for (const auto& j : layer) {
      size_t ncols = monomial_count(j, shape);
      Echelon<F> ech = rref(evaluation_matrix(X, j));
      std::int64_t slice_dim = static_cast<std::int64_t>(ncols - ech.pivot_cols.size());
      auto basis = detail::sparse_kernel(f, ech, ncols);

      if (slice_dim > 0) {
        std::vector<UnitRow<F>> rows;
        std::vector<size_t> s_cols;
        for (int l = 0; l < shape.k(); ++l) {
          if (!j.can_minus_axis(l)) continue;
          MultiDegree below = j.minus_axis(l);
          auto it = prev_layer.find(below);
          if (it == prev_layer.end()) throw std::logic_error("brute_force_nu: missing slice layer");
          const auto& src = it->second;
          if (src.rows.empty()) continue;
          for (int m = 0; m < shape.block_vars(l); ++m) {
            auto map = multiplication_shift(shape, below, l, m);
            for (size_t p : src.pivot_cols) s_cols.push_back(map[p]);
            for (const auto& kr : src.rows) {
              UnitRow<F> row;
              row.unit_col = map[kr.free_col];
              row.tail.reserve(kr.tail.size());
              for (const auto& [col, val] : kr.tail) row.tail.emplace_back(map[col], val);
              std::sort(row.tail.begin(), row.tail.end(),
                        [](const auto& a, const auto& b) { return a.first < b.first; });
              rows.push_back(std::move(row));
            }
          }
        }
        std::sort(s_cols.begin(), s_cols.end());
        s_cols.erase(std::unique(s_cols.begin(), s_cols.end()), s_cols.end());
        std::int64_t w = static_cast<std::int64_t>(unit_row_span_dim(f, rows, s_cols));
        std::int64_t fresh = slice_dim - w;
        if (fresh < 0) throw std::logic_error("brute_force_nu: span exceeds slice dimension");
        if (fresh > 0) {
          rep.new_generators[j] = fresh;
          rep.total += fresh;
        }
      }
      cur_layer.emplace(j, std::move(basis));
    }
    prev_layer = std::move(cur_layer);
    cur_layer.clear();
  }
  return rep;
}

// ---------------------------------------------------------------------------
// The three-point configuration in P^1 x P^1 x P^1.
// ---------------------------------------------------------------------------

struct TripleExcessReport {
  std::uint64_t base_seed = 0;
  std::uint64_t seed_used = 0;
  int attempts = 0;
  std::vector<mpq_class> a, b;  // affine coordinates of the sampled points
  std::int64_t w_dim_111 = 0;   // always 4
  std::int64_t nu = 0, v = 0, gap = 0;
  bool identities_hold = false;
  GenericityCertificate certificate;
};

namespace detail {

inline std::vector<mpq_class> shifted_coeffs(const SpaceShape& shape, const MultiDegree& src, int l, int m,
                                             const std::vector<mpq_class>& coeffs) {
  auto map = multiplication_shift(shape, src, l, m);
  std::vector<mpq_class> out(monomial_count(src.plus_axis(l), shape), mpq_class(0));
  for (size_t c = 0; c < coeffs.size(); ++c) out[map[c]] += coeffs[c];
  return out;
}

inline void axpy(std::vector<mpq_class>& acc, const mpq_class& c, const std::vector<mpq_class>& x) {
  for (size_t i = 0; i < acc.size(); ++i) acc[i] += c * x[i];
}

}  // namespace detail

/// Verifies, on a sampled certified-generic triple normalized to
/// P1 = [1:0]x[1:0]x[1:0], that the span from below in degree (1,1,1) has
/// dimension 4 (one short of the slice), that the two linear relations
/// forcing the drop hold exactly for the sampled coordinates, and that
/// the generator count exceeds the combinatorial lower bound by 1.
inline TripleExcessReport verify_triple_excess(std::uint64_t base_seed, std::int64_t coord_bound = 50,
                                               int retry_cap = 100) {
  RationalField f;
  SpaceShape shape(std::vector<int>{1, 1, 1});
  TripleExcessReport rep;
  rep.base_seed = base_seed;

  std::optional<PointSet<RationalField>> X;
  for (int attempt = 0; attempt < retry_cap; ++attempt) {
    std::uint64_t seed = detail::mix_seed(base_seed, static_cast<std::uint64_t>(attempt));
    detail::Rng rng(seed);
    std::vector<mpq_class> a(3), b(3);
    auto nonzero = [&]() {
      std::int64_t v = rng.uniform(1, 2 * coord_bound);
      return mpq_class(static_cast<long>(v <= coord_bound ? v : coord_bound - v));
    };
    for (int i = 0; i < 3; ++i) {
      a[i] = nonzero();
      b[i] = nonzero();
    }
    std::vector<MultiPoint<RationalField>> pts(3);
    for (int h = 0; h < 3; ++h) {
      pts[0].comps.push_back({mpq_class(1), mpq_class(0)});
      pts[1].comps.push_back({mpq_class(1), a[h]});
      pts[2].comps.push_back({mpq_class(1), b[h]});
    }
    bool distinct = true;
    for (int h = 0; h < 3; ++h)
      if (a[h] == b[h]) distinct = false;
    if (!distinct) continue;  // would fail certification anyway
    PointSet<RationalField> cand(f, shape, std::move(pts));
    GenericityCertificate cert = is_generic_position(cand);
    if (!cert.generic) continue;
    X = std::move(cand);
    rep.seed_used = seed;
    rep.attempts = attempt + 1;
    rep.a = std::move(a);
    rep.b = std::move(b);
    rep.certificate = std::move(cert);
    break;
  }
  if (!X)
    throw SamplingError("verify_triple_excess: no certified-generic triple within " + std::to_string(retry_cap) +
                        " attempts");

  const auto& a = rep.a;
  const auto& b = rep.b;
  // The three bilinear forms vanishing on the triple, one per coordinate
  // pair; each spans its slice.
  auto form = [&](const MultiDegree& deg, std::initializer_list<std::pair<std::vector<int>, mpq_class>> terms) {
    std::vector<mpq_class> c(monomial_count(deg, shape), mpq_class(0));
    for (const auto& [exp, val] : terms) c[monomial_index(shape, deg, exp)] = val;
    return c;
  };
  MultiDegree d110({1, 1, 0}), d101({1, 0, 1}), d011({0, 1, 1}), d111({1, 1, 1});
  // Variable layout: x0 x1 | y0 y1 | z0 z1.
  auto f1 = form(d110, {{{0, 1, 0, 1, 0, 0}, a[1] * b[0] - a[0] * b[1]},
                        {{0, 1, 1, 0, 0, 0}, a[1] * b[1] * (a[0] - b[0])},
                        {{1, 0, 0, 1, 0, 0}, a[0] * b[0] * (b[1] - a[1])}});
  auto f2 = form(d101, {{{0, 1, 0, 0, 0, 1}, a[2] * b[0] - a[0] * b[2]},
                        {{0, 1, 0, 0, 1, 0}, a[2] * b[2] * (a[0] - b[0])},
                        {{1, 0, 0, 0, 0, 1}, a[0] * b[0] * (b[2] - a[2])}});
  auto f3 = form(d011, {{{0, 0, 0, 1, 0, 1}, a[1] * b[2] - a[2] * b[1]},
                        {{0, 0, 0, 1, 1, 0}, a[2] * b[2] * (b[1] - a[1])},
                        {{0, 0, 1, 0, 0, 1}, a[1] * b[1] * (a[2] - b[2])}});

  // Each form must be the (1-dimensional) slice of its degree.
  for (const auto& [deg, coeffs] : {std::make_pair(d110, f1), std::make_pair(d101, f2), std::make_pair(d011, f3)}) {
    auto ev = evaluation_matrix(*X, deg);
    for (size_t r = 0; r < ev.rows(); ++r) {
      mpq_class acc = 0;
      for (size_t c = 0; c < ev.cols(); ++c) acc += ev.at(r, c) * coeffs[c];
      if (acc != 0) throw std::logic_error("verify_triple_excess: form does not vanish on the points");
    }
    if (X->hilbert(deg) != 3) throw std::logic_error("verify_triple_excess: unexpected Hilbert value");
  }

  rep.w_dim_111 = w_dim(*X, d111, std::vector<int>{0, 1, 2});

  auto z0f1 = detail::shifted_coeffs(shape, d110, 2, 0, f1);
  auto z1f1 = detail::shifted_coeffs(shape, d110, 2, 1, f1);
  auto y0f2 = detail::shifted_coeffs(shape, d101, 1, 0, f2);
  auto y1f2 = detail::shifted_coeffs(shape, d101, 1, 1, f2);
  auto x0f3 = detail::shifted_coeffs(shape, d011, 0, 0, f3);
  auto x1f3 = detail::shifted_coeffs(shape, d011, 0, 1, f3);

  // a0 b0 (a0-b0) x0 F3 = (a0-b0)[a2 b2 z0 F1 - a1 b1 y0 F2]
  //                       + (a2 b0 - a0 b2) z1 F1 - (a1 b0 - b1 a0) y1 F2
  std::vector<mpq_class> lhs1(x0f3.size(), mpq_class(0)), rhs1(x0f3.size(), mpq_class(0));
  detail::axpy(lhs1, a[0] * b[0] * (a[0] - b[0]), x0f3);
  detail::axpy(rhs1, (a[0] - b[0]) * (a[2] * b[2]), z0f1);
  detail::axpy(rhs1, -(a[0] - b[0]) * (a[1] * b[1]), y0f2);
  detail::axpy(rhs1, a[2] * b[0] - a[0] * b[2], z1f1);
  detail::axpy(rhs1, -(a[1] * b[0] - b[1] * a[0]), y1f2);

  // (a0-b0) x1 F3 = (b1-a1) y1 F2 + (a2-b2) z1 F1
  std::vector<mpq_class> lhs2(x1f3.size(), mpq_class(0)), rhs2(x1f3.size(), mpq_class(0));
  detail::axpy(lhs2, a[0] - b[0], x1f3);
  detail::axpy(rhs2, b[1] - a[1], y1f2);
  detail::axpy(rhs2, a[2] - b[2], z1f1);

  rep.identities_hold = (lhs1 == rhs1) && (lhs2 == rhs2);

  GeneratorReport full = nu(*X);
  rep.nu = full.nu;
  rep.v = full.v;
  rep.gap = full.nu - full.v;
  return rep;
}

// ---------------------------------------------------------------------------
// Scan harness.
// ---------------------------------------------------------------------------

struct ScanRow {
  std::int64_t s = 0;
  SpaceShape shape;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> nu, v;
  std::optional<bool> equal;
  std::string status;  // "ok" or "sampling_failed"
};

struct ScanOptions {
  std::vector<std::int64_t> s_values;
  std::vector<SpaceShape> shapes;
  int seeds_per_cell = 1;
  std::uint64_t base_seed = 1;
  std::int64_t coord_bound = 50;
  int retry_cap = 100;
  int jobs = 1;
};

namespace detail {

inline std::uint64_t cell_seed(std::uint64_t base, std::int64_t s, const SpaceShape& shape, int sample) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&](std::uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ull;
  };
  feed(static_cast<std::uint64_t>(s));
  for (int d : shape.dims()) feed(static_cast<std::uint64_t>(d));
  feed(static_cast<std::uint64_t>(sample) + 0x9e37ull);
  return mix_seed(base, h);
}

}  // namespace detail

/// One row per (s, shape, sample): sample a certified-generic set, count
/// generators, compare with the lower bound.  Rows come out in sorted
/// (s, shape, sample) order whatever the execution schedule; sampling
/// failures are recorded in the row, never dropped.
template <class F>
std::vector<ScanRow> scan(const F& f, const ScanOptions& opt) {
  if (opt.seeds_per_cell < 1) throw std::invalid_argument("scan: seeds_per_cell >= 1 required");
  std::vector<std::int64_t> svals = opt.s_values;
  std::sort(svals.begin(), svals.end());
  svals.erase(std::unique(svals.begin(), svals.end()), svals.end());
  std::vector<SpaceShape> shapes = opt.shapes;
  std::sort(shapes.begin(), shapes.end());
  shapes.erase(std::unique(shapes.begin(), shapes.end()), shapes.end());

  struct Task {
    std::int64_t s;
    SpaceShape shape;
    int sample;
  };
  std::vector<Task> tasks;
  for (std::int64_t s : svals)
    for (const auto& shape : shapes) {
      if (s < 2 || s <= shape.max_dim())
        throw DegenerateInputError("scan: degenerate cell s=" + std::to_string(s) + ", shape=" + shape.str());
      for (int q = 0; q < opt.seeds_per_cell; ++q) tasks.push_back({s, shape, q});
    }

  std::vector<ScanRow> rows(tasks.size());
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mtx;

  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      ScanRow row;
      row.s = t.s;
      row.shape = t.shape;
      row.seed = detail::cell_seed(opt.base_seed, t.s, t.shape, t.sample);
      try {
        auto sample = random_generic_point_set(f, t.s, t.shape, opt.coord_bound, row.seed, opt.retry_cap);
        GeneratorReport rep = nu(sample.points);
        row.nu = rep.nu;
        row.v = rep.v;
        row.equal = (rep.nu == rep.v);
        row.status = "ok";
      } catch (const SamplingError&) {
        row.status = "sampling_failed";
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mtx);
        if (!failure) failure = std::current_exception();
        row.status = "error";
      }
      rows[i] = std::move(row);
    }
  };

  int jobs = std::max(1, opt.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace genpos

#endif  // GENPOS_GENANALYSIS_HPP
