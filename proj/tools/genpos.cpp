// Command-line front end: generate point sets, print Hilbert tables,
// bound generator degrees, count minimal generators, evaluate the
// combinatorial bounds, run (s, shape) scans.
//
// Exit codes: 0 success, 2 configuration error, 3 sampling failure,
// 4 genericity-certification failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "genpos/genanalysis.hpp"
#include "genpos/io.hpp"
#include "genpos/points.hpp"

namespace {

using namespace genpos;

constexpr int kExitConfig = 2;
constexpr int kExitSampling = 3;
constexpr int kExitGenericity = 4;

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": cannot parse '" + item + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
  return out;
}

SpaceShape parse_shape(const std::string& text) { return SpaceShape(parse_int_list(text, "shape")); }
MultiDegree parse_degree(const std::string& text) { return MultiDegree(parse_int_list(text, "degree")); }

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  auto pos = text.find("..");
  try {
    if (pos == std::string::npos) {
      std::int64_t v = std::stoll(text);
      return {v, v};
    }
    std::int64_t lo = std::stoll(text.substr(0, pos));
    std::int64_t hi = std::stoll(text.substr(pos + 2));
    if (lo > hi) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::exception&) {
    throw std::invalid_argument("range: cannot parse '" + text + "' (expected a..b)");
  }
}

std::vector<SpaceShape> parse_shape_list(const std::string& text) {
  std::vector<SpaceShape> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (!item.empty()) out.push_back(parse_shape(item));
  }
  if (out.empty()) throw std::invalid_argument("shapes: empty list");
  return out;
}

struct FieldChoice {
  bool rational = true;
  std::uint64_t p = 0;
};

FieldChoice parse_field(const std::string& text, std::int64_t coord_bound) {
  if (text == "rational") return {};
  std::string digits;
  if (text.rfind("fp:", 0) == 0)
    digits = text.substr(3);
  else if (text.rfind("fp(", 0) == 0 && text.back() == ')')
    digits = text.substr(3, text.size() - 4);
  else
    throw std::invalid_argument("field: expected 'rational', 'fp:P' or 'fp(P)'");
  std::uint64_t p = 0;
  try {
    p = std::stoull(digits);
  } catch (const std::exception&) {
    throw std::invalid_argument("field: cannot parse modulus '" + digits + "'");
  }
  if (!is_prime_u64(p)) throw std::invalid_argument("field: modulus " + digits + " is not prime");
  if (p <= 2 * static_cast<std::uint64_t>(coord_bound))
    throw std::invalid_argument("field: modulus must exceed twice the coordinate bound");
  return {false, p};
}

struct CommonOpts {
  std::string shape_text;
  std::int64_t s = 0;
  std::uint64_t seed = 1;
  std::int64_t coord_bound = 50;
  int retries = 100;
  std::string field_text = "rational";
  std::string output = "text";
  std::string out_path;
  std::string points_path;
  bool raw = false;
};

void apply_env_seed(CommonOpts& o) {
  if (const char* env = std::getenv("GENPOS_SEED")) {
    try {
      o.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("GENPOS_SEED: cannot parse '" + std::string(env) + "'");
    }
  }
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file '" + o.out_path + "'");
  f << text;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

template <class F>
PointSet<F> obtain_points(const F& f, const CommonOpts& o, bool certify) {
  if (!o.points_path.empty()) {
    std::ifstream in(o.points_path);
    if (!in) throw std::invalid_argument("cannot open points file '" + o.points_path + "'");
    Json j = Json::parse(in);
    return point_set_from_json(f, j);
  }
  if (o.shape_text.empty() || o.s <= 0)
    throw std::invalid_argument("either --points or both --shape and --s are required");
  SpaceShape shape = parse_shape(o.shape_text);
  if (certify && !o.raw) return random_generic_point_set(f, o.s, shape, o.coord_bound, o.seed, o.retries).points;
  return random_point_set(f, o.s, shape, o.coord_bound, o.seed);
}

// ---- gen -------------------------------------------------------------

template <class F>
int run_gen(const F& f, const CommonOpts& o) {
  PointSet<F> X = obtain_points(f, o, /*certify=*/true);
  emit(o, dump_json(point_set_to_json(X)));
  return 0;
}

// ---- hilbert ---------------------------------------------------------

template <class F>
std::string hilbert_text(const PointSet<F>& X, const MultiDegree& box) {
  std::ostringstream os;
  if (box.size() == 2) {
    // Matrix layout: first axis indexes rows, second indexes columns.
    std::vector<std::vector<std::int64_t>> vals(box[0] + 1, std::vector<std::int64_t>(box[1] + 1));
    size_t width = 1;
    for (int i = 0; i <= box[0]; ++i)
      for (int j = 0; j <= box[1]; ++j) {
        vals[i][j] = X.hilbert(MultiDegree({i, j}));
        width = std::max(width, std::to_string(vals[i][j]).size());
      }
    for (int i = 0; i <= box[0]; ++i) {
      for (int j = 0; j <= box[1]; ++j) {
        std::string cell = std::to_string(vals[i][j]);
        os << std::string(width + 1 - cell.size(), ' ') << cell;
      }
      os << '\n';
    }
  } else {
    for_each_degree_leq(box, [&](const MultiDegree& j) { os << j.str() << " " << X.hilbert(j) << '\n'; });
  }
  return os.str();
}

template <class F>
int run_hilbert(const F& f, const CommonOpts& o, const std::string& box_text) {
  if (box_text.empty()) throw std::invalid_argument("hilbert: --box is required");
  MultiDegree box = parse_degree(box_text);
  PointSet<F> X = obtain_points(f, o, /*certify=*/true);
  if (box.size() != X.shape().k()) throw std::invalid_argument("hilbert: box length does not match shape");
  if (o.output == "json") {
    Json out;
    out["s"] = X.s();
    Json shape = Json::array();
    for (int n : X.shape().dims()) shape.push_back(n);
    out["shape"] = shape;
    out["box"] = degree_to_json(box);
    Json table = Json::array();
    for_each_degree_leq(box, [&](const MultiDegree& j) {
      Json e;
      e["degree"] = degree_to_json(j);
      e["value"] = X.hilbert(j);
      table.push_back(e);
    });
    out["table"] = table;
    emit(o, dump_json(out));
  } else if (o.output == "csv") {
    std::ostringstream os;
    os << "degree,value\n";
    for_each_degree_leq(box, [&](const MultiDegree& j) { os << j.str() << ',' << X.hilbert(j) << '\n'; });
    emit(o, os.str());
  } else {
    emit(o, hilbert_text(X, box));
  }
  return 0;
}

// ---- gens ------------------------------------------------------------

template <class F>
int run_gens(const F& f, const CommonOpts& o) {
  CommonOpts oo = o;
  oo.raw = true;  // works on arbitrary configurations
  PointSet<F> X = obtain_points(f, oo, /*certify=*/false);
  GeneratorDegreeBound b = general_generator_degrees(X);
  if (o.output == "json") {
    emit(o, dump_json(degree_bound_to_json(b)));
  } else {
    std::ostringstream os;
    os << "projection counts:";
    for (auto t : b.projection_counts) os << ' ' << t;
    os << "\ncandidate generator degrees (" << b.candidates.size() << "):\n";
    for (const auto& d : b.candidates) os << "  " << d.str() << '\n';
    emit(o, os.str());
  }
  return 0;
}

// ---- nu --------------------------------------------------------------

template <class F>
int run_nu(const F& f, const CommonOpts& o, bool brute, const std::string& box_text) {
  PointSet<F> X = obtain_points(f, o, /*certify=*/!brute);
  if (brute) {
    std::optional<MultiDegree> box;
    if (!box_text.empty()) box = parse_degree(box_text);
    BruteForceReport rep = brute_force_nu(X, box);
    if (o.output == "json") {
      emit(o, dump_json(brute_report_to_json(rep)));
    } else {
      std::ostringstream os;
      os << "nu = " << rep.total << " (degree-by-degree scan over box " << rep.box.str() << ")\n";
      for (const auto& [deg, n] : rep.new_generators) os << "  " << deg.str() << "  +" << n << '\n';
      emit(o, os.str());
    }
    return 0;
  }
  GeneratorReport rep = nu(X);
  if (o.output == "json") {
    emit(o, dump_json(generator_report_to_json(rep)));
  } else {
    std::ostringstream os;
    os << "nu = " << rep.nu << ", v = " << rep.v << ", upper = " << rep.upper << ", gap = " << (rep.nu - rep.v)
       << '\n';
    for (const auto& [deg, e] : rep.per_degree) {
      os << "  " << deg.str() << "  slice " << e.slice_dim;
      if (e.w_dim) os << ", from below " << *e.w_dim;
      os << ", new " << e.new_generators << '\n';
    }
    emit(o, os.str());
  }
  return 0;
}

// ---- vbound ----------------------------------------------------------

int run_vbound(const CommonOpts& o) {
  if (o.shape_text.empty() || o.s <= 0) throw std::invalid_argument("vbound: --shape and --s are required");
  SpaceShape shape = parse_shape(o.shape_text);
  std::int64_t v = v_bound(o.s, shape);
  std::int64_t u = upper_bound(o.s, shape);
  if (o.output == "json") {
    Json out;
    out["s"] = o.s;
    Json sj = Json::array();
    for (int n : shape.dims()) sj.push_back(n);
    out["shape"] = sj;
    out["v"] = v;
    out["upper"] = u;
    emit(o, dump_json(out));
  } else {
    std::ostringstream os;
    os << "v = " << v << ", upper = " << u << '\n';
    emit(o, os.str());
  }
  return 0;
}

// ---- scan ------------------------------------------------------------

template <class F>
int run_scan(const F& f, const CommonOpts& o, const std::string& range_text, const std::string& shapes_text,
             int seeds_per_cell, int jobs) {
  if (range_text.empty() || shapes_text.empty())
    throw std::invalid_argument("scan: --s-range and --shapes are required");
  auto [lo, hi] = parse_range(range_text);
  ScanOptions opt;
  for (std::int64_t s = lo; s <= hi; ++s) opt.s_values.push_back(s);
  opt.shapes = parse_shape_list(shapes_text);
  opt.seeds_per_cell = seeds_per_cell;
  opt.base_seed = o.seed;
  opt.coord_bound = o.coord_bound;
  opt.retry_cap = o.retries;
  opt.jobs = jobs;
  auto rows = scan(f, opt);
  if (o.output == "json")
    emit(o, dump_json(scan_to_json(rows)));
  else
    emit(o, scan_to_csv(rows));
  return 0;
}

// ---- verify-thm55 ----------------------------------------------------

int run_verify(const CommonOpts& o) {
  TripleExcessReport rep = verify_triple_excess(o.seed, o.coord_bound, o.retries);
  if (o.output == "json") {
    emit(o, dump_json(triple_excess_to_json(rep)));
  } else {
    std::ostringstream os;
    os << "three points in P1xP1xP1, seed " << rep.base_seed << ":\n"
       << "  dim W(1,1,1) = " << rep.w_dim_111 << "\n"
       << "  nu = " << rep.nu << ", v = " << rep.v << ", gap = " << rep.gap << "\n"
       << "  proof identities hold: " << (rep.identities_hold ? "yes" : "no") << '\n';
    emit(o, os.str());
  }
  return 0;
}

template <class Fn>
int dispatch_field(const FieldChoice& fc, Fn&& fn) {
  if (fc.rational) return fn(RationalField{});
  return fn(PrimeField(fc.p));
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_points = true) {
  cmd->add_option("--shape", o.shape_text, "factor dimensions, e.g. 1,2,2");
  cmd->add_option("--s", o.s, "number of points");
  cmd->add_option("--seed", o.seed, "base seed (GENPOS_SEED overrides)");
  cmd->add_option("--coord-bound", o.coord_bound, "coordinate bound for sampling (default 50)");
  cmd->add_option("--retries", o.retries, "seed retry cap for certified sampling (default 100)");
  cmd->add_option("--field", o.field_text, "rational (default) or fp:P");
  cmd->add_option("--output", o.output, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--out", o.out_path, "write output to a file instead of stdout");
  if (with_points) cmd->add_option("--points", o.points_path, "load a point-set JSON file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"point sets in products of projective spaces: Hilbert functions and minimal generators"};
  app.require_subcommand(1);

  CommonOpts gen_o, hil_o, gens_o, nu_o, vb_o, scan_o, ver_o;
  std::string hil_box, nu_box, scan_range, scan_shapes;
  bool gen_raw = false, nu_brute = false;
  int scan_seeds = 1, scan_jobs = 1;

  auto* gen = app.add_subcommand("gen", "sample a point set and write it as JSON");
  add_common(gen, gen_o, /*with_points=*/false);
  gen->add_flag("--raw", gen_raw, "skip the generic-position certification");

  auto* hil = app.add_subcommand("hilbert", "Hilbert function values over a box");
  add_common(hil, hil_o);
  hil->add_option("--box", hil_box, "degree box, e.g. 3,3")->required();
  hil->add_flag("--raw", hil_o.raw, "sample without certification");

  auto* gens = app.add_subcommand("gens", "candidate generator degrees for an arbitrary point set");
  add_common(gens, gens_o);

  auto* nu_cmd = app.add_subcommand("nu", "minimal generator count");
  add_common(nu_cmd, nu_o);
  nu_cmd->add_flag("--brute", nu_brute, "degree-by-degree scan without genericity assumptions");
  nu_cmd->add_option("--box", nu_box, "scan box for --brute");

  auto* vb = app.add_subcommand("vbound", "combinatorial lower and upper bounds");
  add_common(vb, vb_o, /*with_points=*/false);

  auto* sc = app.add_subcommand("scan", "nu vs v over a grid of (s, shape) cells; CSV by default");
  add_common(sc, scan_o, /*with_points=*/false);
  sc->add_option("--s-range", scan_range, "points range, e.g. 2..12")->required();
  sc->add_option("--shapes", scan_shapes, "semicolon-separated shapes, e.g. 1,1;1,2;2,2")->required();
  sc->add_option("--seeds", scan_seeds, "samples per cell (default 1)");
  sc->add_option("--jobs", scan_jobs, "worker threads (default 1)");

  auto* ver = app.add_subcommand("verify-thm55", "check the three-point configuration in P1xP1xP1");
  add_common(ver, ver_o, /*with_points=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (gen->parsed()) {
      apply_env_seed(gen_o);
      gen_o.raw = gen_raw;
      FieldChoice fc = parse_field(gen_o.field_text, gen_o.coord_bound);
      return dispatch_field(fc, [&](auto f) { return run_gen(f, gen_o); });
    }
    if (hil->parsed()) {
      apply_env_seed(hil_o);
      FieldChoice fc = parse_field(hil_o.field_text, hil_o.coord_bound);
      return dispatch_field(fc, [&](auto f) { return run_hilbert(f, hil_o, hil_box); });
    }
    if (gens->parsed()) {
      apply_env_seed(gens_o);
      FieldChoice fc = parse_field(gens_o.field_text, gens_o.coord_bound);
      return dispatch_field(fc, [&](auto f) { return run_gens(f, gens_o); });
    }
    if (nu_cmd->parsed()) {
      apply_env_seed(nu_o);
      FieldChoice fc = parse_field(nu_o.field_text, nu_o.coord_bound);
      return dispatch_field(fc, [&](auto f) { return run_nu(f, nu_o, nu_brute, nu_box); });
    }
    if (vb->parsed()) {
      return run_vbound(vb_o);
    }
    if (sc->parsed()) {
      apply_env_seed(scan_o);
      FieldChoice fc = parse_field(scan_o.field_text, scan_o.coord_bound);
      return dispatch_field(fc, [&](auto f) { return run_scan(f, scan_o, scan_range, scan_shapes, scan_seeds, scan_jobs); });
    }
    if (ver->parsed()) {
      apply_env_seed(ver_o);
      return run_verify(ver_o);
    }
  } catch (const NotGenericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGenericity;
  } catch (const SamplingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSampling;
  } catch (const DegenerateInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
