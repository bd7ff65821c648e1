// Command-line driver over the library: relation checks, normal forms,
// exact identities, Fock positivity, composites, orbit classification,
// joint spectra, fingerprints, and operator serialization. Reports are
// deterministic: the same flags on the same version produce identical
// bytes, so exported JSON can be diffed across runs.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmat/analysis.hpp"
#include "qmat/catalog.hpp"
#include "qmat/coaction.hpp"
#include "qmat/fock.hpp"
#include "qmat/orbit.hpp"
#include "qmat/parse.hpp"
#include "qmat/presentation.hpp"
#include "qmat/rep.hpp"
#include "qmat/spectra.hpp"

namespace {

using nlohmann::ordered_json;
using namespace qmat;

constexpr int kSchema = 1;
constexpr const char* kVersion = "1.0.0";

struct GlobalOpts {
  std::string algebra = "sym2";
  double q = 0.5;
  std::string q_exact;
  int trunc = 8;
  double tol = 0.0;  // 0 means the per-command default
  std::string format = "text";
  std::string out;
};

double tol_or(const GlobalOpts& g, double dflt) {
  return g.tol > 0 ? g.tol : dflt;
}

Algebra parse_algebra(const std::string& name) {
  if (name == "sym" || name == "sym2") return Algebra::sym2;
  if (name == "mat2") return Algebra::mat2;
  throw std::invalid_argument("unknown algebra '" + name +
                              "' (expected sym, sym2, or mat2)");
}

// Full precision: parses back to the same double.
std::string fnum(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string snum(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string enum_(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& t : split_list(s)) out.push_back(std::stoi(t));
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  for (const auto& t : split_list(s)) out.push_back(std::stod(t));
  return out;
}

struct Report {
  ordered_json j;
  std::string text;
  std::string csv;
  int exit_code = 0;
};

ordered_json report_head(const std::string& command) {
  ordered_json j;
  j["schema"] = kSchema;
  j["version"] = kVersion;
  j["command"] = command;
  return j;
}

int emit(const GlobalOpts& g, const Report& r) {
  std::string payload;
  if (g.format == "json")
    payload = r.j.dump(2) + "\n";
  else if (g.format == "csv")
    payload = r.csv;
  else
    payload = r.text;
  if (!g.out.empty()) {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open '" << g.out << "' for writing\n";
      return 2;
    }
    f << payload;
  } else {
    std::cout << payload;
  }
  return r.exit_code;
}

ordered_json phases_json(const RepInstance& rep) {
  ordered_json a = ordered_json::array();
  for (const auto& [name, angle] : rep.phases)
    a.push_back(ordered_json::array({name, angle}));
  return a;
}

ordered_json fingerprint_json(const Fingerprint& fp) {
  ordered_json j;
  j["class"] = orbit_class_name(fp.cls);
  j["class_residual"] = fp.class_residual;
  ordered_json ph = ordered_json::array();
  for (const auto& [name, angle] : fp.phases)
    ph.push_back(ordered_json::array({name, angle}));
  j["phases"] = ph;
  ordered_json tb = ordered_json::array();
  for (const auto& c : fp.table)
    tb.push_back(ordered_json::array({c.x1, c.x2, c.multiplicity}));
  j["table"] = tb;
  j["space"] = fp.space;
  return j;
}

void fingerprint_text(std::ostream& os, const Fingerprint& fp) {
  os << "class " << orbit_class_name(fp.cls) << "  residual "
     << enum_(fp.class_residual) << "\n";
  for (const auto& [name, angle] : fp.phases)
    os << "  phase " << name << " " << snum(angle) << "\n";
  for (const auto& c : fp.table)
    os << "  cluster (" << snum(c.x1) << ", " << snum(c.x2) << ") x"
       << c.multiplicity << "\n";
}

// -------- instance construction --------

std::vector<double> pad_phases(const std::string& name, int arity,
                               std::vector<double> phi) {
  if (static_cast<int>(phi.size()) > arity)
    throw std::invalid_argument(name + " takes at most " +
                                std::to_string(arity) + " phase value(s)");
  phi.resize(static_cast<std::size_t>(arity), 0.0);
  return phi;
}

RepInstance make_catalog_rep(Algebra alg, const std::string& name,
                             std::vector<double> phi, double q, int trunc) {
  if (!name.empty() && name[0] == 'f') {
    if (!phi.empty())
      throw std::invalid_argument("--phi applies to the pi series only");
    return build_simplest(alg, simplest_from_name(name), q, trunc);
  }
  if (alg != Algebra::sym2)
    throw std::invalid_argument("series " + name +
                                " lives on the symmetric algebra");
  SeriesId id = series_from_name(name);
  std::vector<int> dims(static_cast<std::size_t>(series_leg_arity(id)), trunc);
  return build_sym_series(id, pad_phases(name, series_phase_arity(id), std::move(phi)),
                          q, dims);
}

struct NamedRep {
  std::string name;
  RepInstance rep;
};

std::vector<NamedRep> battery(Algebra alg, double q, int trunc) {
  std::vector<NamedRep> out;
  if (alg == Algebra::sym2) {
    out.push_back({"pi1", make_catalog_rep(alg, "pi1", {0.7, 0.3}, q, trunc)});
    out.push_back({"pi2", make_catalog_rep(alg, "pi2", {0.7}, q, trunc)});
    out.push_back({"pi3", make_catalog_rep(alg, "pi3", {0.7}, q, trunc)});
    out.push_back({"pi4", make_catalog_rep(alg, "pi4", {0.7}, q, trunc)});
    out.push_back({"pi5", make_catalog_rep(alg, "pi5", {}, q, trunc)});
  }
  for (const char* f : {"f0", "f1", "f2"}) {
    // The full-algebra f2 is compressed from an exact Gram whose cost grows
    // steeply with the degree bound; the battery caps it. An explicit
    // --rep f2 still honors --trunc as given.
    int size = trunc;
    if (alg == Algebra::mat2 && std::string(f) == "f2") size = std::min(trunc, 6);
    out.push_back({f, make_catalog_rep(alg, f, {}, q, size)});
  }
  return out;
}

// Shared selector: a catalog instance (--rep) or a coaction composite
// (--base, --legs).
struct InstanceSel {
  std::string rep;
  std::vector<double> phi;
  std::string base;
  std::string legs;
  std::string dims;
  std::string angles;
};

void add_instance_options(CLI::App* sub, InstanceSel& sel,
                          const std::string& suffix = "") {
  sub->add_option("--rep" + suffix, sel.rep,
                  "catalog instance: pi1..pi5, f0, f1, f2");
  sub->add_option("--phi" + suffix, sel.phi, "series phase angles");
  sub->add_option("--base" + suffix, sel.base, "composite base: f0|f1|f2");
  sub->add_option("--legs" + suffix, sel.legs,
                  "composite coaction legs, comma list of pi|eps");
  sub->add_option("--dims" + suffix, sel.dims,
                  "composite truncations: base size, then one per pi leg");
  sub->add_option("--angles" + suffix, sel.angles,
                  "torus twist angles applied to the composite");
}

CompositeSpec make_composite_spec(const GlobalOpts& g, Algebra alg,
                                  const InstanceSel& sel) {
  CompositeSpec spec;
  spec.algebra = alg;
  spec.base = simplest_from_name(sel.base);
  for (const auto& t : split_list(sel.legs))
    spec.legs.push_back(su2_kind_from_name(t));
  spec.q = g.q;
  if (!sel.dims.empty()) {
    spec.dims = parse_ints(sel.dims);
  } else {
    int shift_legs = 0;
    for (auto k : spec.legs)
      if (k == Su2Kind::shift) ++shift_legs;
    spec.dims.assign(static_cast<std::size_t>(1 + shift_legs), g.trunc);
  }
  if (!sel.angles.empty()) spec.angles = parse_doubles(sel.angles);
  spec.validate();
  return spec;
}

// Returns the instance plus a display name.
NamedRep build_selected(const GlobalOpts& g, Algebra alg,
                        const InstanceSel& sel) {
  const bool has_rep = !sel.rep.empty();
  const bool has_base = !sel.base.empty();
  if (has_rep == has_base)
    throw std::invalid_argument(
        "select exactly one instance: --rep, or --base with --legs");
  if (has_rep)
    return {sel.rep, make_catalog_rep(alg, sel.rep, sel.phi, g.q, g.trunc)};
  CompositeSpec spec = make_composite_spec(g, alg, sel);
  std::string name = simplest_name(spec.base);
  for (auto k : spec.legs) name += "." + su2_kind_name(k);
  return {name, build_composite(spec)};
}

// -------- subcommands --------

struct VerifyOpts {
  std::string rep;
  std::vector<double> phi;
  bool all = false;
};

Report run_verify(const GlobalOpts& g, const VerifyOpts& v) {
  const double tol = tol_or(g, 1e-12);
  std::vector<Algebra> algs;
  if (v.all)
    algs = {Algebra::sym2, Algebra::mat2};
  else
    algs = {parse_algebra(g.algebra)};

  Report r;
  r.j = report_head("verify");
  r.j["q"] = g.q;
  r.j["trunc"] = g.trunc;
  r.j["tol"] = tol;
  ordered_json insts = ordered_json::array();
  std::ostringstream text, csv;
  csv << "algebra,instance,relation,residual\n";
  bool all_pass = true;

  for (Algebra alg : algs) {
    std::vector<NamedRep> reps;
    if (!v.rep.empty())
      reps.push_back({v.rep, make_catalog_rep(alg, v.rep, v.phi, g.q, g.trunc)});
    else
      reps = battery(alg, g.q, g.trunc);
    for (const auto& nr : reps) {
      auto suite = relation_residual_suite(nr.rep);
      double worst = 0.0;
      bool pass = true;
      ordered_json rows = ordered_json::array();
      text << nr.name << "  " << algebra_name(alg) << "  q=" << snum(g.q)
           << "  dim=" << nr.rep.dim() << "\n";
      for (const auto& rr : suite) {
        worst = std::max(worst, rr.residual);
        const bool ok = rr.residual < tol;
        pass = pass && ok;
        text << "  " << (ok ? "ok  " : "FAIL") << "  " << enum_(rr.residual)
             << "  " << rr.name << "\n";
        csv << algebra_name(alg) << "," << csv_field(nr.name) << ","
            << csv_field(rr.name) << "," << fnum(rr.residual) << "\n";
        rows.push_back({{"relation", rr.name}, {"residual", rr.residual}});
      }
      text << "  " << (pass ? "pass" : "FAIL") << "  max residual "
           << enum_(worst) << "\n\n";
      insts.push_back({{"name", nr.name},
                       {"algebra", algebra_name(alg)},
                       {"dim", static_cast<long long>(nr.rep.dim())},
                       {"phases", phases_json(nr.rep)},
                       {"residuals", rows},
                       {"max_residual", worst},
                       {"pass", pass}});
      all_pass = all_pass && pass;
    }
  }
  r.j["instances"] = insts;
  r.j["pass"] = all_pass;
  text << (all_pass ? "pass" : "FAIL") << "\n";
  r.text = text.str();
  r.csv = csv.str();
  r.exit_code = all_pass ? 0 : 1;
  return r;
}

Report run_normal_form(const GlobalOpts& g, const std::string& expr) {
  Algebra alg = parse_algebra(g.algebra);
  NCPoly nf = normal_form(parse_expression(expr, alg));
  Report r;
  r.j = report_head("normal-form");
  r.j["algebra"] = algebra_name(alg);
  r.j["input"] = expr;
  r.j["normal_form"] = nf.str();
  r.text = nf.str() + "\n";
  r.csv = "input,normal_form\n" + csv_field(expr) + "," + csv_field(nf.str()) +
          "\n";
  return r;
}

Report run_identity(const GlobalOpts& g, const std::string& lhs,
                    const std::string& rhs) {
  Algebra alg = parse_algebra(g.algebra);
  NCPoly l = parse_expression(lhs, alg);
  NCPoly rr = parse_expression(rhs, alg);
  const bool ok = check_identity(l, rr);
  Report r;
  r.j = report_head("identity");
  r.j["algebra"] = algebra_name(alg);
  r.j["lhs"] = lhs;
  r.j["rhs"] = rhs;
  r.j["verdict"] = ok;
  std::string diff = normal_form(l - rr).str();
  r.j["difference_normal_form"] = diff;
  r.text = ok ? "exact-true\n" : "exact-false\ndifference: " + diff + "\n";
  r.csv = "lhs,rhs,verdict\n" + csv_field(lhs) + "," + csv_field(rhs) + "," +
          (ok ? "exact-true" : "exact-false") + "\n";
  r.exit_code = ok ? 0 : 1;
  return r;
}

Report run_fock(const GlobalOpts& g, int degree) {
  Algebra alg = parse_algebra(g.algebra);
  Rational qr = g.q_exact.empty() ? Rational(g.q) : Rational(g.q_exact);
  qr.canonicalize();
  if (!(qr > 0 && qr < 1))
    throw std::invalid_argument("exact q must lie strictly between 0 and 1");
  const bool pd = fock_gram_positive_definite(alg, degree, qr);
  const auto words = normal_unstarred_words(alg, degree);
  FockCompression comp(alg, degree, g.q);
  const int letters = alg == Algebra::sym2 ? 3 : 4;

  Report r;
  r.j = report_head("fock");
  r.j["algebra"] = algebra_name(alg);
  r.j["degree"] = degree;
  r.j["q_exact"] = qr.get_str();
  r.j["basis"] = words.size();
  r.j["positive_definite"] = pd;
  ordered_json norms;
  std::ostringstream text, csv;
  text << "algebra " << algebra_name(alg) << "  degree " << degree
       << "  basis " << words.size() << "\n";
  text << "gram positive-definite at q = " << qr.get_str() << ": "
       << (pd ? "yes" : "NO") << "\n";
  csv << "letter,vacuum_norm\n";
  for (Letter l = 0; l < letters; ++l) {
    const double n = comp.letter_matrix(l).col(0).norm();
    const std::string name = letter_name(alg, l);
    norms[name] = n;
    text << "  |" << name << " vac| = " << snum(n) << "  (q = " << snum(g.q)
         << ")\n";
    csv << name << "," << fnum(n) << "\n";
  }
  r.j["vacuum_norms"] = norms;
  r.text = text.str();
  r.csv = csv.str();
  r.exit_code = pd ? 0 : 1;
  return r;
}

struct ComposeOpts {
  InstanceSel sel;
  bool null_dim = false;
};

Report run_compose(const GlobalOpts& g, const ComposeOpts& c) {
  const double tol = tol_or(g, 1e-10);
  Algebra alg = parse_algebra(g.algebra);
  if (c.sel.base.empty())
    throw std::invalid_argument("compose requires --base and --legs");
  CompositeSpec spec = make_composite_spec(g, alg, c.sel);
  RepInstance rep = build_composite(spec);
  auto suite = relation_residual_suite(rep);
  double worst = 0.0;
  for (const auto& rr : suite) worst = std::max(worst, rr.residual);
  const bool pass = worst < tol;

  Report r;
  r.j = report_head("compose");
  r.j["spec"] = ordered_json::parse(spec.to_json());
  r.j["dim"] = static_cast<long long>(rep.dim());
  r.j["tol"] = tol;
  ordered_json rows = ordered_json::array();
  std::ostringstream text, csv;
  std::string name = simplest_name(spec.base);
  for (auto k : spec.legs) name += "." + su2_kind_name(k);
  text << name << "  " << algebra_name(alg) << "  q=" << snum(g.q)
       << "  dim=" << rep.dim() << "\n";
  csv << "relation,residual\n";
  for (const auto& rr : suite) {
    text << "  " << (rr.residual < tol ? "ok  " : "FAIL") << "  "
         << enum_(rr.residual) << "  " << rr.name << "\n";
    csv << csv_field(rr.name) << "," << fnum(rr.residual) << "\n";
    rows.push_back({{"relation", rr.name}, {"residual", rr.residual}});
  }
  r.j["residuals"] = rows;
  r.j["max_residual"] = worst;
  try {
    Fingerprint fp = fingerprint(rep);
    r.j["fingerprint"] = fingerprint_json(fp);
    fingerprint_text(text, fp);
  } catch (const std::exception& e) {
    r.j["fingerprint_error"] = e.what();
    text << "fingerprint unavailable: " << e.what() << "\n";
  }
  if (c.null_dim) {
    const auto nullv = null_cyclic_vectors(rep);
    r.j["null_cyclic_dim"] = nullv.size();
    text << "null-cyclic dimension " << nullv.size() << "\n";
  }
  r.j["pass"] = pass;
  text << (pass ? "pass" : "FAIL") << "  max residual " << enum_(worst)
       << "\n";
  r.text = text.str();
  r.csv = csv.str();
  r.exit_code = pass ? 0 : 1;
  return r;
}

struct OrbitOpts {
  std::optional<double> x1, x2;
  std::vector<std::string> seeds;
  int window = 20;
  bool classify = false;
  std::optional<int> m, n;
};

Report run_orbit(const GlobalOpts& g, const OrbitOpts& o) {
  const double tol = tol_or(g, 1e-9);
  Report r;
  r.j = report_head("orbit");
  r.j["q"] = g.q;
  r.j["window"] = o.window;
  r.j["tol"] = tol;

  std::vector<OrbitPoint> pts;
  if (!o.seeds.empty()) {
    for (const auto& s : o.seeds) {
      auto v = parse_doubles(s);
      if (v.size() != 2)
        throw std::invalid_argument("--seed expects 'x1,x2', got '" + s + "'");
      pts.push_back({v[0], v[1]});
    }
  } else {
    if (!o.x1 || !o.x2)
      throw std::invalid_argument("orbit requires --x1 and --x2, or --seed");
    pts.push_back({*o.x1, *o.x2});
  }

  ordered_json rows = ordered_json::array();
  std::ostringstream text;
  for (const auto& p : pts) {
    Classification c = classify_seed(p, g.q, o.window, tol);
    rows.push_back({{"x1", p.x1},
                    {"x2", p.x2},
                    {"class", orbit_class_name(c.cls)},
                    {"m", c.m},
                    {"n", c.n},
                    {"distance", c.distance}});
    text << orbit_class_name(c.cls) << "  seed (" << snum(p.x1) << ", "
         << snum(p.x2) << ")  m=" << c.m << " n=" << c.n << "  distance "
         << enum_(c.distance) << "\n";
  }
  if (o.m && o.n && pts.size() == 1) {
    OrbitPoint w = orbit_point(pts[0], *o.m, *o.n, g.q);
    r.j["walked_point"] = ordered_json::array({w.x1, w.x2});
    text << "point at (m=" << *o.m << ", n=" << *o.n << "): (" << fnum(w.x1)
         << ", " << fnum(w.x2) << ")\n";
  }
  r.j["points"] = rows;
  r.csv = orbit_sweep_csv(pts, g.q, o.window, tol);
  r.text = text.str();
  return r;
}

struct SpectrumOpts {
  std::string rep;
  std::vector<double> phi;
  int window = 20;
};

Report run_spectrum(const GlobalOpts& g, const SpectrumOpts& s) {
  const double tol = tol_or(g, 1e-9);
  Algebra alg = parse_algebra(g.algebra);
  if (s.rep.empty()) throw std::invalid_argument("spectrum requires --rep");
  RepInstance rep = make_catalog_rep(alg, s.rep, s.phi, g.q, g.trunc);
  auto pair = diagonal_pair(rep);
  JointSpectrumOptions jopts;
  jopts.boundary_margins = pair_margins(rep);
  auto res = joint_spectrum(pair.first, pair.second, jopts);
  if (res.pairs.empty())
    throw std::invalid_argument(
        "no interior spectral points at this truncation; raise --trunc");
  auto clusters = cluster_pairs(res.pairs, 1e-6);
  SpectrumMatch match = match_spectrum(res.pairs, lattice_q(rep), s.window, tol);

  Report r;
  r.j = report_head("spectrum");
  r.j["instance"] = s.rep;
  r.j["algebra"] = algebra_name(alg);
  r.j["q"] = g.q;
  r.j["lattice_q"] = lattice_q(rep);
  r.j["trunc"] = g.trunc;
  ordered_json pj = ordered_json::array();
  std::ostringstream text, csv;
  csv << "x1,x2\n";
  for (const auto& [x1, x2] : res.pairs) {
    pj.push_back(ordered_json::array({x1, x2}));
    csv << fnum(x1) << "," << fnum(x2) << "\n";
  }
  r.j["points"] = pj;
  ordered_json cj = ordered_json::array();
  text << s.rep << "  " << algebra_name(alg) << "  dim=" << rep.dim() << "  "
       << res.pairs.size() << " interior spectral points\n";
  for (const auto& c : clusters) {
    cj.push_back(ordered_json::array({c.x1, c.x2, c.multiplicity}));
    text << "  (" << snum(c.x1) << ", " << snum(c.x2) << ") x"
         << c.multiplicity << "\n";
  }
  r.j["clusters"] = cj;
  r.j["class"] = orbit_class_name(match.cls);
  r.j["residual"] = match.residual;
  text << "class " << orbit_class_name(match.cls) << "  residual "
       << enum_(match.residual) << "\n";
  r.text = text.str();
  r.csv = csv.str();
  r.exit_code = match.cls != OrbitClass::Inadmissible ? 0 : 1;
  return r;
}

struct AnalyzeOpts {
  InstanceSel a;
  InstanceSel b;
  int window = 20;
  bool compare = false;
};

Report run_analyze(const GlobalOpts& g, const AnalyzeOpts& an) {
  Algebra alg = parse_algebra(g.algebra);
  NamedRep a = build_selected(g, alg, an.a);
  FingerprintOptions fopts;
  fopts.window = an.window;
  Fingerprint fa = fingerprint(a.rep, fopts);

  Report r;
  r.j = report_head("analyze");
  r.j["instance"] = a.name;
  r.j["algebra"] = algebra_name(alg);
  r.j["q"] = g.q;
  r.j["dim"] = static_cast<long long>(a.rep.dim());
  r.j["fingerprint"] = fingerprint_json(fa);
  std::ostringstream text, csv;
  text << a.name << "  " << algebra_name(alg) << "  dim=" << a.rep.dim()
       << "\n";
  fingerprint_text(text, fa);
  csv << "field,value\n";
  csv << "instance," << csv_field(a.name) << "\n";
  csv << "class," << orbit_class_name(fa.cls) << "\n";
  for (const auto& [name, angle] : fa.phases)
    csv << "phase " << name << "," << fnum(angle) << "\n";
  for (const auto& c : fa.table)
    csv << "cluster," << fnum(c.x1) << " " << fnum(c.x2) << " x"
        << c.multiplicity << "\n";

  if (an.compare) {
    NamedRep b = build_selected(g, alg, an.b);
    Fingerprint fb = fingerprint(b.rep, fopts);
    r.j["compare_instance"] = b.name;
    r.j["compare_fingerprint"] = fingerprint_json(fb);
    text << b.name << "  " << algebra_name(alg) << "  dim=" << b.rep.dim()
         << "\n";
    fingerprint_text(text, fb);
    const bool eq = equivalent(a.rep, b.rep, tol_or(g, 1e-6));
    r.j["equivalent"] = eq;
    text << (eq ? "equivalent" : "inequivalent") << "\n";
    csv << "equivalent," << (eq ? "true" : "false") << "\n";
    r.exit_code = eq ? 0 : 1;
  }
  r.text = text.str();
  r.csv = csv.str();
  return r;
}

struct ExportOpts {
  InstanceSel sel;
  bool roundtrip = false;
};

ordered_json letters_json(const RepInstance& rep) {
  ordered_json letters;
  for (const auto& [l, op] : rep.gens) {
    const SpMat& m = op.matrix();
    ordered_json entries = ordered_json::array();
    for (int col = 0; col < m.outerSize(); ++col)
      for (SpMat::InnerIterator it(m, col); it; ++it)
        entries.push_back(ordered_json::array(
            {static_cast<long long>(it.row()), static_cast<long long>(it.col()),
             it.value().real(), it.value().imag()}));
    letters[letter_name(rep.algebra, l)] = {
        {"dim", static_cast<long long>(op.dim())}, {"entries", entries}};
  }
  return letters;
}

Report run_export(const GlobalOpts& g, const ExportOpts& e) {
  Algebra alg = parse_algebra(g.algebra);
  NamedRep nr = build_selected(g, alg, e.sel);
  const RepInstance& rep = nr.rep;

  Report r;
  r.j = report_head("export");
  r.j["instance"] = nr.name;
  r.j["algebra"] = algebra_name(alg);
  r.j["q"] = rep.q;
  r.j["provenance"] = rep.provenance;
  r.j["space"] = rep.space;
  r.j["phases"] = phases_json(rep);
  ordered_json letters = letters_json(rep);
  r.j["letters"] = letters;

  std::ostringstream text, csv;
  csv << "letter,row,col,re,im\n";
  for (const auto& [l, op] : rep.gens) {
    const std::string name = letter_name(alg, l);
    text << "# " << name << "  dim " << op.dim() << "\n";
    text << export_coordinate_text(op);
    const SpMat& m = op.matrix();
    for (int col = 0; col < m.outerSize(); ++col)
      for (SpMat::InnerIterator it(m, col); it; ++it)
        csv << name << "," << it.row() << "," << it.col() << ","
            << fnum(it.value().real()) << "," << fnum(it.value().imag())
            << "\n";
  }

  if (e.roundtrip) {
    // Re-import from the serialized entries and re-serialize; identical
    // bytes demonstrate the operators survive the JSON round trip.
    RepInstance back;
    back.algebra = rep.algebra;
    back.q = rep.q;
    back.phases = rep.phases;
    back.space = rep.space;
    back.provenance = rep.provenance;
    const Eigen::Index dim = rep.dim();
    for (const auto& [l, op] : rep.gens) {
      const auto& entries = letters[letter_name(alg, l)]["entries"];
      std::vector<Eigen::Triplet<Complex>> trips;
      trips.reserve(entries.size());
      for (const auto& row : entries)
        trips.emplace_back(row[0].get<long long>(), row[1].get<long long>(),
                           Complex(row[2].get<double>(), row[3].get<double>()));
      SpMat m2(dim, dim);
      m2.setFromTriplets(trips.begin(), trips.end());
      back.gens.emplace(l, TruncOp::from_sparse(std::move(m2)));
    }
    const bool ok = letters_json(back).dump() == letters.dump();
    r.j["roundtrip"] = ok;
    text << "roundtrip " << (ok ? "bit-exact" : "MISMATCH") << "\n";
    r.exit_code = ok ? 0 : 1;
  }
  r.text = text.str();
  r.csv = csv.str();
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bounded *-representation toolkit for two q-deformed matrix algebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  GlobalOpts g;
  bool json_flag = false;
  app.add_option("--algebra", g.algebra, "algebra: sym|sym2|mat2")
      ->capture_default_str();
  app.add_option("--q", g.q, "deformation parameter in (0,1)")
      ->capture_default_str();
  app.add_option("--q-exact", g.q_exact,
                 "exact rational q as p/r for symbolic checks");
  app.add_option("--trunc", g.trunc, "per-leg truncation")
      ->capture_default_str();
  app.add_option("--tol", g.tol, "override the per-command tolerance");
  app.add_option("--format", g.format, "report format: text|json|csv")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_flag("--json", json_flag, "shorthand for --format json");
  app.add_option("--out", g.out, "write the report to this file");

  VerifyOpts vo;
  auto* c_verify =
      app.add_subcommand("verify", "defining-relation residuals on catalog instances");
  c_verify->fallthrough();
  c_verify->add_option("--rep", vo.rep, "single instance: pi1..pi5, f0, f1, f2");
  c_verify->add_option("--phi", vo.phi, "series phase angles");
  c_verify->add_flag("--all", vo.all, "run the battery over both algebras");

  std::string nf_expr;
  auto* c_nf = app.add_subcommand("normal-form", "normal form of an expression");
  c_nf->fallthrough();
  c_nf->add_option("expr", nf_expr, "expression to rewrite")->required();

  std::string id_lhs, id_rhs;
  auto* c_id = app.add_subcommand("identity", "exact identity check in the algebra");
  c_id->fallthrough();
  c_id->add_option("lhs", id_lhs, "left side")->required();
  c_id->add_option("rhs", id_rhs, "right side")->required();

  int fock_degree = 3;
  auto* c_fock =
      app.add_subcommand("fock", "vacuum-module Gram positivity and letter norms");
  c_fock->fallthrough();
  c_fock->add_option("--degree", fock_degree, "word degree bound")
      ->capture_default_str();

  ComposeOpts co;
  auto* c_comp = app.add_subcommand("compose", "build a coaction composite and check it");
  c_comp->fallthrough();
  add_instance_options(c_comp, co.sel);
  c_comp->add_flag("--null", co.null_dim, "also count null-cyclic vectors");

  OrbitOpts oo;
  auto* c_orbit = app.add_subcommand("orbit", "classify seeds of the spectral dynamics");
  c_orbit->fallthrough();
  double ox1 = 0, ox2 = 0;
  auto* ox1_opt = c_orbit->add_option("--x1", ox1, "seed first coordinate");
  auto* ox2_opt = c_orbit->add_option("--x2", ox2, "seed second coordinate");
  c_orbit->add_option("--seed", oo.seeds, "extra seeds as 'x1,x2' (repeatable)");
  c_orbit->add_option("--window", oo.window, "lattice search window")
      ->capture_default_str();
  c_orbit->add_flag("--classify", oo.classify, "report the orbit class (default)");
  int om = 0, on = 0;
  auto* om_opt = c_orbit->add_option("--m", om, "forward steps of the first map");
  auto* on_opt = c_orbit->add_option("--n", on, "forward steps of the second map");

  SpectrumOpts so;
  auto* c_spec = app.add_subcommand("spectrum", "joint spectrum of the diagonal pair");
  c_spec->fallthrough();
  c_spec->add_option("--rep", so.rep, "catalog instance")->required();
  c_spec->add_option("--phi", so.phi, "series phase angles");
  c_spec->add_option("--window", so.window, "lattice search window")
      ->capture_default_str();

  AnalyzeOpts ao;
  auto* c_an = app.add_subcommand("analyze", "fingerprint and equivalence verdicts");
  c_an->fallthrough();
  add_instance_options(c_an, ao.a);
  add_instance_options(c_an, ao.b, "2");
  c_an->add_option("--window", ao.window, "lattice search window")
      ->capture_default_str();

  ExportOpts eo;
  auto* c_exp = app.add_subcommand("export", "serialize generator matrices");
  c_exp->fallthrough();
  add_instance_options(c_exp, eo.sel);
  c_exp->add_flag("--roundtrip", eo.roundtrip,
                  "re-import the serialized operators and compare bytes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (json_flag) g.format = "json";

  try {
    if (!(g.q > 0 && g.q < 1))
      throw std::invalid_argument("--q must lie strictly between 0 and 1");
    if (g.trunc < 1)
      throw std::invalid_argument("--trunc must be at least 1");
    Report r;
    if (*c_verify) {
      r = run_verify(g, vo);
    } else if (*c_nf) {
      r = run_normal_form(g, nf_expr);
    } else if (*c_id) {
      r = run_identity(g, id_lhs, id_rhs);
    } else if (*c_fock) {
      r = run_fock(g, fock_degree);
    } else if (*c_comp) {
      r = run_compose(g, co);
    } else if (*c_orbit) {
      if (*ox1_opt) oo.x1 = ox1;
      if (*ox2_opt) oo.x2 = ox2;
      if (*om_opt) oo.m = om;
      if (*on_opt) oo.n = on;
      r = run_orbit(g, oo);
    } else if (*c_spec) {
      r = run_spectrum(g, so);
    } else if (*c_an) {
      ao.compare = !ao.b.rep.empty() || !ao.b.base.empty();
      r = run_analyze(g, ao);
    } else if (*c_exp) {
      r = run_export(g, eo);
    } else {
      std::cerr << "error: no subcommand\n";
      return 2;
    }
    return emit(g, r);
  } catch (const ParseError& e) {
    std::cerr << "parse error at position " << e.position() << ": " << e.what()
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
