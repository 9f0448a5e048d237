// affine-homog: command-line front end for the classification pipelines.
#include "affhom/catalog.hpp"
#include "affhom/discover.hpp"
#include "affhom/expand.hpp"
#include "affhom/normalize.hpp"
#include "affhom/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <iterator>

using namespace affhom;

namespace {

constexpr int kUsage = 2;

struct Options {
  std::string surface, basepoint, alpha, b, entry, case_name, real, format = "text", jet;
  int order = 6;
  int variant = 0;
  bool verify_all = false;
  bool replacement = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<Rational> opt_rational(const std::string& s, const char* flag) {
  if (s.empty()) return std::nullopt;
  try {
    return Rational::parse(s);
  } catch (const Error&) {
    throw UsageError(std::string(flag) + " expects a rational number, got '" + s + "'");
  }
}

Json read_json_input(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("invalid JSON jet: ") + e.what());
  }
}

// Accepts a bare jet object or any report carrying one under "jet".
Jet<Rational> jet_input(const std::string& path) {
  Json j = read_json_input(path);
  if (j.is_object() && !j.contains("terms") && j.contains("jet")) j = j["jet"];
  try {
    return jet_from_json(j);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

SurfaceSpec surface_input(const Options& o) {
  if (!o.entry.empty()) {
    const CatalogEntry* e = find_entry(o.entry);
    if (!e) throw UsageError("unknown catalog entry " + o.entry);
    return entry_spec(*e, opt_rational(o.alpha, "--alpha"));
  }
  if (o.basepoint.empty()) throw UsageError("--surface needs --basepoint");
  Bindings bind;
  bind.alpha = opt_rational(o.alpha, "--alpha");
  return parse_surface(o.surface, bind, parse_basepoint(o.basepoint));
}

// The jet named by --jet, --entry or --surface, known at least to `order`.
Jet<Rational> jet_source(const Options& o, int order) {
  if (!o.jet.empty()) return jet_input(o.jet);
  if (o.surface.empty() && o.entry.empty()) throw UsageError("give --surface, --entry or --jet");
  return expand_graph(surface_input(o), order);
}

std::string to_string_basepoint(const std::array<Rational, 4>& p) {
  return p[0].str() + "," + p[1].str() + "," + p[2].str() + "," + p[3].str();
}

Report expand_report(const Options& o) {
  if (o.surface.empty() && o.entry.empty()) throw UsageError("expand needs --surface or --entry");
  SurfaceSpec spec = surface_input(o);
  Jet<Rational> j = expand_graph(spec, o.order);
  Report r;
  r.name = "expand";
  r.pass = true;
  r.data["surface"] = spec.text;
  if (spec.bindings.alpha) r.data["alpha"] = spec.bindings.alpha->str();
  r.data["basepoint"] = o.basepoint.empty() ? Json(nullptr) : Json(o.basepoint);
  if (!o.entry.empty()) r.data["entry"] = o.entry;
  r.data["order"] = o.order;
  r.data["jet_text"] = j.poly().str();
  r.data["jet"] = jet_json(j);
  return r;
}

Report normalize_report(const Options& o) {
  Field field = Field::Complex;
  if (o.real == "hyperbolic" || o.real == "elliptic") field = Field::Real;
  else if (!o.real.empty()) throw UsageError("--real expects hyperbolic or elliptic");
  Jet<Rational> j = jet_source(o, o.order);
  auto n = normalize_quadratic(j, field);
  Report r;
  r.name = "normalize";
  r.data["input"] = j.poly().str();
  r.data["field"] = field == Field::Real ? "real" : "complex";
  r.data["signature"] = to_string(n.form.signature);
  r.data["extension"] = n.tower.basis_names();
  r.data["normal_form"] = n.jet.poly().str();
  Json map = Json::object();
  map["linear"] = matrix_json(n.map.linear);
  Json tr = Json::array();
  for (const auto& t : n.map.translation) tr.push_back(scalar_json(t));
  map["translation"] = tr;
  r.data["map"] = map;
  if (j.order() >= 3) {
    Poly<Rational> c = trace_free_cubic(j);
    Matrix3<Rational> h = gram_matrix(j.poly().homogeneous_part(2));
    r.data["trace_free_cubic"] = c.str();
    r.data["cubic_type"] = to_string(jet_cubic_type(j));
    r.data["partials_rank"] = partials_rank(c);
    r.data["pick_invariant"] = pick_invariant(c, h).str();
  }
  r.pass = true;
  if (!o.real.empty()) {
    Signature want = o.real == "elliptic" ? Signature::Elliptic : Signature::Hyperbolic;
    r.data["expected_signature"] = o.real;
    r.pass = n.form.signature == want;
  }
  return r;
}

Report symmetry_report(const Options& o) {
  Jet<Rational> j = jet_source(o, o.order);
  int order = std::min(o.order, j.order());
  auto alg = full_algebra(j.truncated(order));
  std::vector<std::vector<Rational>> tr;
  for (const auto& f : alg.basis) tr.push_back({f.v[0], f.v[1], f.v[2]});
  Report r;
  r.name = "symmetry";
  r.data["jet"] = j.truncated(order).poly().str();
  r.data["transitive"] = rank(tr) == 3;
  r.data["algebra"] = algebra_json(alg);
  if (!alg.failed_brackets.empty()) r.data["failed_brackets"] = alg.failed_brackets.size();
  r.pass = alg.closed && alg.isotropy_verified;
  return r;
}

Report verify_command(const Options& o) {
  if (o.variant > 0) {
    if (o.variant > int(catalog().variants.size())) throw UsageError("--variant is out of range");
    return reject_variant(std::size_t(o.variant - 1), o.order);
  }
  if (o.replacement) return replacement_check(o.order);
  if (!o.entry.empty()) {
    if (const NormalForm* nf = find_normal_form(o.entry)) {
      auto b = opt_rational(o.b, "--b");
      if (nf->parametric() && !b) throw UsageError("normal form " + nf->id + " needs --b");
      return confirm_isotropy(*nf, b, std::max(o.order, nf->order));
    }
    const CatalogEntry* e = find_entry(o.entry);
    if (!e) throw UsageError("unknown catalog entry or normal form " + o.entry);
    return verify_entry(*e, opt_rational(o.alpha, "--alpha"), o.order);
  }
  if (!o.jet.empty()) {
    Jet<Rational> j = jet_input(o.jet);
    auto a = analyze_jet(j, std::min(o.order, j.order() - 1));
    Report r;
    r.name = "verify";
    r.data = a.to_json();
    r.pass = a.homogeneous();
    return r;
  }
  if (o.surface.empty()) throw UsageError("verify needs --entry, --surface, --jet, --variant or --replacement");
  return verify_surface(surface_input(o), o.order);
}

Report discover_command(const Options& o) {
  if (o.case_name.empty()) throw UsageError("discover needs --case");
  CaseId c;
  try {
    c = parse_case(o.case_name);
  } catch (const Error&) {
    throw UsageError("unknown case " + o.case_name);
  }
  return discover(c).report();
}

Report catalog_command(const Options& o) {
  Report r;
  r.name = "catalog";
  if (!o.verify_all) {
    Json entries = Json::array();
    for (const auto& e : catalog().entries) {
      Json j{{"id", e.id}, {"surface", e.surface}, {"basepoint", to_string_basepoint(e.basepoint)},
             {"isotropy_dim", e.isotropy}, {"cubic_type", to_string(e.cubic_type)}, {"normal_forms", e.normal_forms}};
      if (e.alpha) j["alpha"] = e.alpha->str();
      entries.push_back(j);
    }
    r.data["entries"] = entries;
    r.data["normal_forms"] = normal_form_table();
    r.pass = true;
    return r;
  }
  // entries are independent; results are gathered in catalog order
  std::vector<std::future<Report>> jobs;
  for (const auto& e : catalog().entries)
    jobs.push_back(std::async(std::launch::async, [&e, &o] { return verify_entry(e, std::nullopt, o.order); }));
  Json rows = Json::array();
  std::size_t passed = 0;
  for (auto& job : jobs) {
    Report v = job.get();
    Json row{{"entry", v.data["entry"]}, {"pass", v.pass}};
    for (const char* k : {"alpha", "isotropy_dim", "expected_isotropy_dim", "full_dim", "cubic_type", "error"})
      if (v.data.contains(k)) row[k] = v.data[k];
    passed += v.pass;
    rows.push_back(row);
  }
  Report maps = check_overlaps_and_maps(o.order);
  r.data["order"] = o.order;
  r.data["entries_passed"] = passed;
  r.data["entries"] = rows;
  r.data["overlaps_and_maps"] = maps.to_json();
  r.pass = passed == catalog().entries.size() && maps.pass;
  return r;
}

void validate(const Options& o, const std::string& cmd) {
  if (o.format != "text" && o.format != "json") throw UsageError("--format expects text or json");
  if (o.order < 1) throw UsageError("--order must be positive");
  if (o.order > 10) std::cerr << "warning: order " << o.order << " may be slow in exact arithmetic\n";
  if (!o.surface.empty() && !o.entry.empty()) throw UsageError("--surface and --entry are exclusive");
  if (!o.jet.empty() && (!o.surface.empty() || !o.entry.empty()) && cmd != "verify")
    throw UsageError("--jet excludes --surface and --entry");
  opt_rational(o.alpha, "--alpha");
  opt_rational(o.b, "--b");
  if (!o.basepoint.empty()) {
    try {
      parse_basepoint(o.basepoint);
    } catch (const Error& e) {
      throw UsageError(std::string("--basepoint: ") + e.what());
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homogeneous affine hypersurfaces in four-space: expansion, symmetry and classification checks"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s) {
    s->add_option("--order", o.order, "jet / verification order (default 6)");
    s->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };
  auto surface = [&](CLI::App* s) {
    s->add_option("--surface", o.surface, "implicit equation, e.g. \"W = X*Y + Z^alpha\"");
    s->add_option("--basepoint", o.basepoint, "W,X,Y,Z coordinates of a point on the surface");
    s->add_option("--alpha", o.alpha, "value of the parameter alpha");
    s->add_option("--entry", o.entry, "catalog entry N1..N20");
  };

  auto* expand = app.add_subcommand("expand", "Taylor-expand a surface into a graph jet");
  surface(expand);
  common(expand);
  auto* normalize = app.add_subcommand("normalize", "bring a jet to normal form and classify its cubic");
  surface(normalize);
  normalize->add_option("--jet", o.jet, "JSON jet file, or - for stdin");
  normalize->add_option("--real", o.real, "work over the reals, expecting hyperbolic or elliptic")
      ->check(CLI::IsMember({"hyperbolic", "elliptic"}));
  common(normalize);
  auto* symmetry = app.add_subcommand("symmetry", "affine symmetry algebra of a jet");
  surface(symmetry);
  symmetry->add_option("--jet", o.jet, "JSON jet file, or - for stdin");
  common(symmetry);
  auto* verify = app.add_subcommand("verify", "check homogeneity of an entry, normal form or surface");
  surface(verify);
  verify->add_option("--b", o.b, "normal-form parameter b (with --entry <normal form>)");
  verify->add_option("--jet", o.jet, "JSON jet file, or - for stdin");
  verify->add_option("--variant", o.variant, "reject the k-th non-homogeneous variant (1..6)");
  verify->add_flag("--replacement", o.replacement, "check the homogeneous replacement surface");
  common(verify);
  auto* disc = app.add_subcommand("discover", "solve the closure system for a normal-form case");
  disc->add_option("--case", o.case_name, "no-cubic, I3, I2, I1, I0 or Inr");
  common(disc);
  auto* cat = app.add_subcommand("catalog", "list the catalog, or verify it");
  cat->add_flag("--verify-all", o.verify_all, "verify all entries, overlaps and parameter maps");
  common(cat);
  auto* real = app.add_subcommand("real", "real forms, signatures and complex substitutions");
  common(real);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  Report r;
  try {
    validate(o, sub->get_name());
    if (sub == expand) r = expand_report(o);
    else if (sub == normalize) r = normalize_report(o);
    else if (sub == symmetry) r = symmetry_report(o);
    else if (sub == verify) r = verify_command(o);
    else if (sub == disc) r = discover_command(o);
    else if (sub == cat) r = catalog_command(o);
    else r = real_catalog_checks(o.order);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    // bad basepoint or unsupported expansion centre
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    r = Report{};
    r.name = sub->get_name();
    r.data["error"] = e.what();
  }

  if (o.format == "json") std::cout << r.to_json().dump(2) << "\n";
  else std::cout << r.to_text();
  return r.pass ? 0 : 1;
}
