#ifndef GENPOS_IO_HPP
#define GENPOS_IO_HPP

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "genpos/genanalysis.hpp"
#include "genpos/points.hpp"

namespace genpos {

using Json = nlohmann::ordered_json;

inline Json degree_to_json(const MultiDegree& j) {
  Json a = Json::array();
  for (int h = 0; h < j.size(); ++h) a.push_back(j[h]);
  return a;
}

inline MultiDegree degree_from_json(const Json& a) {
  std::vector<int> p;
  for (const auto& v : a) p.push_back(v.get<int>());
  return MultiDegree(std::move(p));
}

namespace detail {

/// Exact integer representative of a rational component: clear
/// denominators, divide out the common factor, make the first nonzero
/// entry positive.
inline std::vector<std::string> component_strings(const RationalField&, const std::vector<mpq_class>& comp) {
  mpz_class den_lcm = 1;
  for (const auto& c : comp) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> ints(comp.size());
  mpz_class g = 0;
  for (size_t i = 0; i < comp.size(); ++i) {
    ints[i] = comp[i].get_num() * (den_lcm / comp[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  if (g == 0) g = 1;
  int sign = 0;
  for (const auto& z : ints) {
    if (z != 0) {
      sign = sgn(z);
      break;
    }
  }
  if (sign < 0) g = -g;
  std::vector<std::string> out(comp.size());
  for (size_t i = 0; i < comp.size(); ++i) out[i] = mpz_class(ints[i] / g).get_str();
  return out;
}

inline std::vector<std::string> component_strings(const PrimeField&, const std::vector<std::uint64_t>& comp) {
  std::vector<std::string> out(comp.size());
  for (size_t i = 0; i < comp.size(); ++i) out[i] = std::to_string(comp[i]);
  return out;
}

}  // namespace detail

/// { "shape": [n1,...,nk], "points": [ [ [c...], ... ] ... ] } with exact
/// decimal integer coordinate strings.
template <class F>
Json point_set_to_json(const PointSet<F>& X) {
  Json out;
  Json shape = Json::array();
  for (int n : X.shape().dims()) shape.push_back(n);
  out["shape"] = shape;
  Json pts = Json::array();
  for (size_t i = 0; i < static_cast<size_t>(X.s()); ++i) {
    Json p = Json::array();
    for (const auto& comp : X.point(i).comps) {
      Json c = Json::array();
      for (const auto& s : detail::component_strings(X.field(), comp)) c.push_back(s);
      p.push_back(c);
    }
    pts.push_back(p);
  }
  out["points"] = pts;
  return out;
}

template <class F>
PointSet<F> point_set_from_json(const F& f, const Json& j) {
  if (!j.contains("shape") || !j.contains("points"))
    throw std::invalid_argument("point set JSON: missing \"shape\" or \"points\"");
  std::vector<int> dims;
  for (const auto& v : j.at("shape")) dims.push_back(v.get<int>());
  SpaceShape shape(dims);
  std::vector<MultiPoint<F>> pts;
  for (const auto& pj : j.at("points")) {
    MultiPoint<F> p;
    for (const auto& cj : pj) {
      std::vector<typename F::Element> comp;
      for (const auto& v : cj) {
        if (v.is_string())
          comp.push_back(f.from_mpz(mpz_class(v.template get<std::string>())));
        else
          comp.push_back(f.from_int(v.template get<std::int64_t>()));
      }
      p.comps.push_back(std::move(comp));
    }
    pts.push_back(std::move(p));
  }
  return PointSet<F>(f, shape, std::move(pts));
}

inline Json certificate_to_json(const GenericityCertificate& c) {
  Json out;
  out["ok"] = c.generic;
  Json checked = Json::array();
  for (const auto& cd : c.checked) {
    Json e;
    e["degree"] = degree_to_json(cd.degree);
    e["hilbert"] = cd.hilbert;
    e["expected"] = cd.expected;
    checked.push_back(e);
  }
  out["checked"] = checked;
  if (c.failing) out["failing_degree"] = degree_to_json(*c.failing);
  return out;
}

inline Json generator_report_to_json(const GeneratorReport& r) {
  Json out;
  out["s"] = r.s;
  Json shape = Json::array();
  for (int n : r.shape.dims()) shape.push_back(n);
  out["shape"] = shape;
  out["generic"] = certificate_to_json(r.certificate);
  Json per = Json::array();
  for (const auto& [deg, entry] : r.per_degree) {
    Json e;
    e["degree"] = degree_to_json(deg);
    e["slice_dim"] = entry.slice_dim;
    if (entry.w_dim) e["w_dim"] = *entry.w_dim;
    e["new_generators"] = entry.new_generators;
    per.push_back(e);
  }
  out["per_degree"] = per;
  out["nu"] = r.nu;
  out["v"] = r.v;
  out["upper"] = r.upper;
  return out;
}

inline Json brute_report_to_json(const BruteForceReport& r) {
  Json out;
  out["box"] = degree_to_json(r.box);
  Json per = Json::array();
  for (const auto& [deg, n] : r.new_generators) {
    Json e;
    e["degree"] = degree_to_json(deg);
    e["new_generators"] = n;
    per.push_back(e);
  }
  out["per_degree"] = per;
  out["nu"] = r.total;
  return out;
}

inline Json degree_bound_to_json(const GeneratorDegreeBound& b) {
  Json out;
  Json t = Json::array();
  for (auto v : b.projection_counts) t.push_back(v);
  out["projection_counts"] = t;
  out["box"] = degree_to_json(b.box);
  Json th = Json::array();
  for (const auto& [key, height] : b.thresholds) {
    Json e;
    e["axis"] = key.first + 1;
    e["complement"] = degree_to_json(key.second);
    e["first_repeat"] = height;
    th.push_back(e);
  }
  out["thresholds"] = th;
  Json bz = Json::array();
  for (const auto& d : b.nonzero_degrees) bz.push_back(degree_to_json(d));
  out["nonzero_degrees"] = bz;
  Json cand = Json::array();
  for (const auto& d : b.candidates) cand.push_back(degree_to_json(d));
  out["candidates"] = cand;
  return out;
}

inline Json triple_excess_to_json(const TripleExcessReport& r) {
  Json out;
  out["base_seed"] = r.base_seed;
  out["seed_used"] = r.seed_used;
  out["attempts"] = r.attempts;
  Json a = Json::array(), b = Json::array();
  for (const auto& v : r.a) a.push_back(v.get_str());
  for (const auto& v : r.b) b.push_back(v.get_str());
  out["a"] = a;
  out["b"] = b;
  out["w_dim_111"] = r.w_dim_111;
  out["nu"] = r.nu;
  out["v"] = r.v;
  out["gap"] = r.gap;
  out["identities_hold"] = r.identities_hold;
  return out;
}

/// CSV with the fixed header s,shape,seed,nu,v,equal,status; shapes are
/// rendered 1x2x2 so the field needs no quoting.
inline std::string scan_to_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  os << "s,shape,seed,nu,v,equal,status\n";
  for (const auto& r : rows) {
    os << r.s << ',' << r.shape.str() << ',' << r.seed << ',';
    if (r.nu) os << *r.nu;
    os << ',';
    if (r.v) os << *r.v;
    os << ',';
    if (r.equal) os << (*r.equal ? "true" : "false");
    os << ',' << r.status << '\n';
  }
  return os.str();
}

inline Json scan_to_json(const std::vector<ScanRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json e;
    e["s"] = r.s;
    Json shape = Json::array();
    for (int n : r.shape.dims()) shape.push_back(n);
    e["shape"] = shape;
    e["seed"] = r.seed;
    if (r.nu) e["nu"] = *r.nu;
    if (r.v) e["v"] = *r.v;
    if (r.equal) e["equal"] = *r.equal;
    e["status"] = r.status;
    out.push_back(e);
  }
  return out;
}

}  // namespace genpos

#endif  // GENPOS_IO_HPP
