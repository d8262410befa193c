#ifndef GENPOS_POINTS_HPP
#define GENPOS_POINTS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "genpos/field.hpp"
#include "genpos/matrix.hpp"
#include "genpos/multidegree.hpp"

namespace genpos {

/// A point of P^{n_1} x ... x P^{n_k}: one coordinate vector per factor,
/// stored normalized (first nonzero coordinate scaled to 1) so that
/// componentwise equality is projective equality.
template <class F>
struct MultiPoint {
  std::vector<std::vector<typename F::Element>> comps;
};

template <class F>
void normalize_point(const F& f, MultiPoint<F>& p) {
  for (auto& comp : p.comps) {
    size_t lead = comp.size();
    for (size_t i = 0; i < comp.size(); ++i) {
      if (!f.is_zero(comp[i])) {
        lead = i;
        break;
      }
    }
    if (lead == comp.size()) throw std::invalid_argument("MultiPoint: component has all coordinates zero");
    typename F::Element inv = f.inv(comp[lead]);
    for (auto& c : comp) c = f.mul(c, inv);
  }
}

template <class F>
bool points_equal(const F& f, const MultiPoint<F>& a, const MultiPoint<F>& b) {
  if (a.comps.size() != b.comps.size()) return false;
  for (size_t h = 0; h < a.comps.size(); ++h) {
    if (a.comps[h].size() != b.comps[h].size()) return false;
    for (size_t i = 0; i < a.comps[h].size(); ++i)
      if (!f.eq(a.comps[h][i], b.comps[h][i])) return false;
  }
  return true;
}

/// A finite set of distinct points.  Hilbert values are memoized per
/// degree; the memo table is synchronized so concurrent queries on one
/// set are safe.
template <class F>
class PointSet {
 public:
  PointSet(const F& field, SpaceShape shape, std::vector<MultiPoint<F>> pts)
      : field_(field), shape_(std::move(shape)), pts_(std::move(pts)) {
    if (pts_.empty()) throw std::invalid_argument("PointSet: at least one point required");
    for (auto& p : pts_) {
      if (static_cast<int>(p.comps.size()) != shape_.k())
        throw std::invalid_argument("PointSet: point factor count does not match shape");
      for (int h = 0; h < shape_.k(); ++h)
        if (static_cast<int>(p.comps[h].size()) != shape_.block_vars(h))
          throw std::invalid_argument("PointSet: coordinate count does not match shape");
      normalize_point(field_, p);
    }
    for (size_t i = 0; i < pts_.size(); ++i)
      for (size_t j = i + 1; j < pts_.size(); ++j)
        if (points_equal(field_, pts_[i], pts_[j]))
          throw std::invalid_argument("PointSet: points " + std::to_string(i) + " and " + std::to_string(j) +
                                      " coincide");
  }

  PointSet(const PointSet& o) : field_(o.field_), shape_(o.shape_), pts_(o.pts_) {
    std::lock_guard<std::mutex> lock(o.mtx_);
    hcache_ = o.hcache_;
  }
  PointSet& operator=(const PointSet& o) {
    if (this == &o) return *this;
    std::scoped_lock lock(mtx_, o.mtx_);
    field_ = o.field_;
    shape_ = o.shape_;
    pts_ = o.pts_;
    hcache_ = o.hcache_;
    return *this;
  }
  PointSet(PointSet&& o) noexcept
      : field_(std::move(o.field_)), shape_(std::move(o.shape_)), pts_(std::move(o.pts_)) {
    std::lock_guard<std::mutex> lock(o.mtx_);
    hcache_ = std::move(o.hcache_);
  }
  PointSet& operator=(PointSet&& o) {
    if (this == &o) return *this;
    std::scoped_lock lock(mtx_, o.mtx_);
    field_ = std::move(o.field_);
    shape_ = std::move(o.shape_);
    pts_ = std::move(o.pts_);
    hcache_ = std::move(o.hcache_);
    return *this;
  }

  const F& field() const { return field_; }
  const SpaceShape& shape() const { return shape_; }
  std::int64_t s() const { return static_cast<std::int64_t>(pts_.size()); }
  const MultiPoint<F>& point(size_t i) const { return pts_.at(i); }
  const std::vector<MultiPoint<F>>& points() const { return pts_; }

  /// H_X(j): rank of the degree-j evaluation matrix; memoized.
  std::int64_t hilbert(const MultiDegree& j) const;

 private:
  F field_;
  SpaceShape shape_;
  std::vector<MultiPoint<F>> pts_;
  mutable std::map<MultiDegree, std::int64_t> hcache_;
  mutable std::mutex mtx_;
};

/// The s x N(j) matrix of monomial values at the points: entry (r, c) is
/// the c-th canonical monomial of degree j evaluated at point r.
template <class F>
Matrix<F> evaluation_matrix(const PointSet<F>& X, const MultiDegree& j) {
  const F& f = X.field();
  const SpaceShape& shape = X.shape();
  if (j.size() != shape.k()) throw std::invalid_argument("evaluation_matrix: degree/shape dimension mismatch");
  auto monos = monomials_of_degree(j, shape);
  Matrix<F> m(f, static_cast<size_t>(X.s()), monos.size());
  const int nvars = shape.total_vars();
  for (size_t r = 0; r < static_cast<size_t>(X.s()); ++r) {
    // Coordinate powers up to the block degree.
    std::vector<std::vector<typename F::Element>> pw(nvars);
    int v = 0;
    for (int h = 0; h < shape.k(); ++h) {
      for (int i = 0; i < shape.block_vars(h); ++i, ++v) {
        pw[v].resize(j[h] + 1);
        pw[v][0] = f.one();
        for (int e = 1; e <= j[h]; ++e) pw[v][e] = f.mul(pw[v][e - 1], X.point(r).comps[h][i]);
      }
    }
    for (size_t c = 0; c < monos.size(); ++c) {
      typename F::Element val = f.one();
      for (int t = 0; t < nvars; ++t) {
        if (monos[c][t] > 0) val = f.mul(val, pw[t][monos[c][t]]);
      }
      m.at(r, c) = std::move(val);
    }
  }
  return m;
}

template <class F>
std::int64_t PointSet<F>::hilbert(const MultiDegree& j) const {
  {
    std::lock_guard<std::mutex> lock(mtx_);
    auto it = hcache_.find(j);
    if (it != hcache_.end()) return it->second;
  }
  std::int64_t h = static_cast<std::int64_t>(rank(evaluation_matrix(*this, j)));
  std::lock_guard<std::mutex> lock(mtx_);
  hcache_.emplace(j, h);
  return h;
}

/// Basis of (I_X)_j: coefficient vectors in the canonical monomial order
/// that vanish at every point.  Row count is N(j) - H_X(j).
template <class F>
struct IdealSlice {
  MultiDegree degree;
  Matrix<F> basis;
};

template <class F>
IdealSlice<F> ideal_slice(const PointSet<F>& X, const MultiDegree& j) {
  return IdealSlice<F>{j, kernel_basis(evaluation_matrix(X, j))};
}

/// Coefficient vectors of x_{l,m} * G in degree (slice.degree + e_l), for
/// every variable m of block l and every basis row G (rows grouped per
/// basis row, variables in block order).  Every row vanishes on X.
template <class F>
Matrix<F> multiply_slice(const IdealSlice<F>& slice, int l, const PointSet<F>& X) {
  const F& f = X.field();
  const SpaceShape& shape = X.shape();
  if (l < 0 || l >= shape.k()) throw std::invalid_argument("multiply_slice: block index out of range");
  const int bvars = shape.block_vars(l);
  MultiDegree target = slice.degree.plus_axis(l);
  size_t tcols = monomial_count(target, shape);
  Matrix<F> out(f, slice.basis.rows() * static_cast<size_t>(bvars), tcols);
  for (int m = 0; m < bvars; ++m) {
    auto map = multiplication_shift(shape, slice.degree, l, m);
    for (size_t g = 0; g < slice.basis.rows(); ++g) {
      size_t row = g * static_cast<size_t>(bvars) + static_cast<size_t>(m);
      for (size_t c = 0; c < slice.basis.cols(); ++c) {
        if (f.is_zero(slice.basis.at(g, c))) continue;
        out.at(row, map[c]) = slice.basis.at(g, c);
      }
    }
  }
  return out;
}

/// dim_k of the subspace of (I_X)_j spanned by the variable multiples of
/// the slices one step below, over the axes in `axes` (0-based).
template <class F>
std::int64_t w_dim(const PointSet<F>& X, const MultiDegree& j, const std::vector<int>& axes) {
  const F& f = X.field();
  for (int l : axes) {
    if (!j.can_minus_axis(l))
      throw std::invalid_argument("w_dim: degree has no room along axis " + std::to_string(l + 1));
  }
  Matrix<F> total(f, 0, monomial_count(j, X.shape()));
  for (int l : axes) total.stack(multiply_slice(ideal_slice(X, j.minus_axis(l)), l, X));
  return static_cast<std::int64_t>(span_dim(total));
}

/// Number of distinct h-th components for each factor.
template <class F>
std::vector<std::int64_t> projection_sizes(const PointSet<F>& X) {
  std::vector<std::int64_t> t(X.shape().k());
  for (int h = 0; h < X.shape().k(); ++h) {
    std::set<std::vector<typename F::Element>> seen;
    for (size_t i = 0; i < static_cast<size_t>(X.s()); ++i) seen.insert(X.point(i).comps[h]);
    t[h] = static_cast<std::int64_t>(seen.size());
  }
  return t;
}

struct CheckedDegree {
  MultiDegree degree;
  std::int64_t hilbert = 0;
  std::int64_t expected = 0;
};

/// Outcome of the finite maximality check.  The degrees checked are the
/// ones that decide the whole Hilbert function: where N < s the value
/// must reach N, and on the minimal degrees with N >= s it must reach s
/// (monotonicity then pins every other degree).
struct GenericityCertificate {
  bool generic = false;
  std::vector<CheckedDegree> checked;
  std::optional<MultiDegree> failing;
  std::int64_t failing_hilbert = 0;
  std::int64_t failing_expected = 0;
};

struct NotGenericError : std::runtime_error {
  explicit NotGenericError(const GenericityCertificate& c)
      : std::runtime_error("point set is not in generic position: H = " + std::to_string(c.failing_hilbert) +
                           " < " + std::to_string(c.failing_expected) + " at degree " +
                           (c.failing ? c.failing->str() : std::string("?"))),
        certificate(c) {}
  GenericityCertificate certificate;
};

template <class F>
GenericityCertificate is_generic_position(const PointSet<F>& X) {
  const SpaceShape& shape = X.shape();
  const std::int64_t s = X.s();
  std::vector<int> bound(shape.k());
  bool low_region = true;
  for (int h = 0; h < shape.k(); ++h) {
    bound[h] = axis_threshold(shape.n(h), s, /*strict=*/false);
    if (bound[h] == 0) low_region = false;
  }

  std::vector<MultiDegree> to_check;
  if (low_region) {
    std::vector<int> low(bound);
    for (int& v : low) --v;
    for_each_degree_leq(MultiDegree(low), [&](const MultiDegree& j) {
      if (graded_dim(j, shape) < s) to_check.push_back(j);
    });
  }
  auto d2 = minimal_elements([&](const MultiDegree& j) { return graded_dim(j, shape) >= s; }, MultiDegree(bound));
  to_check.insert(to_check.end(), d2.begin(), d2.end());
  std::sort(to_check.begin(), to_check.end());
  to_check.erase(std::unique(to_check.begin(), to_check.end()), to_check.end());

  GenericityCertificate cert;
  cert.generic = true;
  for (const auto& j : to_check) {
    mpz_class n = graded_dim(j, shape);
    std::int64_t expected = n < s ? to_i64(n, "is_generic_position") : s;
    std::int64_t h = X.hilbert(j);
    cert.checked.push_back({j, h, expected});
    if (h != expected) {
      cert.generic = false;
      cert.failing = j;
      cert.failing_hilbert = h;
      cert.failing_expected = expected;
      break;
    }
  }
  return cert;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
  return splitmix64(base ^ splitmix64(salt + 0x51ed2701ab0dd095ull));
}

/// Deterministic bounded sampling on top of mt19937_64 (the standard
/// distributions are implementation-defined, so we do the rejection
/// ourselves).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(next());  // full 64-bit span
    std::uint64_t threshold = (-range) % range;  // 2^64 mod range
    for (;;) {
      std::uint64_t x = next();
      if (x >= threshold) return lo + static_cast<std::int64_t>((x - threshold) % range);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace detail

/// s distinct points, deterministic in the seed: every component gets a
/// leading 1 (so each x_{l,0} misses every point) and uniform integer
/// coordinates in [-coord_bound, coord_bound] elsewhere.
template <class F>
PointSet<F> random_point_set(const F& f, std::int64_t s, const SpaceShape& shape, std::int64_t coord_bound,
                             std::uint64_t seed) {
  if (s < 1) throw std::invalid_argument("random_point_set: s >= 1 required");
  if (coord_bound < 1) throw std::invalid_argument("random_point_set: coord_bound >= 1 required");
  detail::Rng rng(seed);
  std::vector<MultiPoint<F>> pts;
  pts.reserve(static_cast<size_t>(s));
  const int retry_cap = 100;
  while (static_cast<std::int64_t>(pts.size()) < s) {
    int attempts = 0;
    for (;;) {
      MultiPoint<F> p;
      p.comps.resize(shape.k());
      for (int h = 0; h < shape.k(); ++h) {
        auto& comp = p.comps[h];
        comp.resize(shape.block_vars(h));
        comp[0] = f.one();
        for (int i = 1; i < shape.block_vars(h); ++i) comp[i] = f.from_int(rng.uniform(-coord_bound, coord_bound));
      }
      bool dup = false;
      for (const auto& q : pts) {
        if (points_equal(f, q, p)) {
          dup = true;
          break;
        }
      }
      if (!dup) {
        pts.push_back(std::move(p));
        break;
      }
      if (++attempts >= retry_cap)
        throw SamplingError("random_point_set: could not draw " + std::to_string(s) +
                            " distinct points with coord_bound " + std::to_string(coord_bound));
    }
  }
  return PointSet<F>(f, shape, std::move(pts));
}

template <class F>
struct GenericSample {
  PointSet<F> points;
  std::uint64_t seed_used = 0;
  int attempts = 0;
  GenericityCertificate certificate;
};

/// Rejection sampling for a certified-generic set: tries retry_cap seeds
/// derived from the base seed and never returns an uncertified set.
template <class F>
GenericSample<F> random_generic_point_set(const F& f, std::int64_t s, const SpaceShape& shape,
                                          std::int64_t coord_bound, std::uint64_t base_seed, int retry_cap = 100) {
  for (int attempt = 0; attempt < retry_cap; ++attempt) {
    std::uint64_t seed = detail::mix_seed(base_seed, static_cast<std::uint64_t>(attempt));
    PointSet<F> X = random_point_set(f, s, shape, coord_bound, seed);
    GenericityCertificate cert = is_generic_position(X);
    if (cert.generic) return GenericSample<F>{std::move(X), seed, attempt + 1, std::move(cert)};
  }
  throw SamplingError("random_generic_point_set: no certified-generic sample within " + std::to_string(retry_cap) +
                      " attempts (s=" + std::to_string(s) + ", shape=" + shape.str() + ")");
}

}  // namespace genpos

#endif  // GENPOS_POINTS_HPP
