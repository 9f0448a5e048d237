#pragma once

#include "affhom/closure.hpp"
#include "affhom/expand.hpp"
#include "affhom/normalize.hpp"
#include "affhom/report.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace affhom {

struct RealVariant {
  Signature form = Signature::Hyperbolic;
  std::string surface;
  std::array<Rational, 4> basepoint{};
  std::optional<Rational> alpha;  // overrides the entry's default binding
};

struct CatalogEntry {
  std::string id;
  std::string surface;
  std::array<Rational, 4> basepoint{};
  std::size_t isotropy = 1;
  CubicType cubic_type = CubicType::Zero;
  std::optional<Rational> alpha;  // default binding; set iff the entry uses alpha
  std::vector<Rational> excluded_alpha;
  std::vector<std::string> normal_forms;
  std::string alpha_of_b;        // e.g. "(2*b - 2)/(b + 4)"
  std::optional<Rational> b;     // fixed normal-form parameter
  std::vector<RealVariant> real;

  bool parametric() const { return alpha.has_value(); }
  bool alpha_allowed(const Rational& a) const;
};

struct NormalForm {
  std::string id;
  CaseId case_id = CaseId::NoCubic;
  std::string jet_text;
  int order = 4;  // determining order
  std::size_t isotropy = 1;
  std::string closed_form;

  bool parametric() const;
  Jet<RatFunc> symbolic_jet() const;
  /// Base jet at a value of b; throws PreconditionError when b is missing.
  Jet<Rational> jet(const std::optional<Rational>& b) const;
};

struct Overlap {
  std::string first, second;
  Rational b;
};

struct SurfaceRef {
  std::string surface;
  std::array<Rational, 4> basepoint{};
  std::string equivalent;  // affinely equivalent form used for expansion, if any
};

struct Catalog {
  std::vector<CatalogEntry> entries;
  std::vector<NormalForm> normal_forms;
  std::vector<Overlap> overlaps;
  std::vector<SurfaceRef> variants;
  SurfaceRef replacement;
  std::size_t replacement_matches = 0;
  std::string replacement_entry;
};

/// The built-in catalog data.
const Catalog& catalog();
const CatalogEntry* find_entry(std::string_view id);
const NormalForm* find_normal_form(std::string_view id);

/// Parsed surface of an entry; alpha defaults to the entry's binding.
/// Throws PreconditionError for an excluded alpha.
SurfaceSpec entry_spec(const CatalogEntry& e, const std::optional<Rational>& alpha = std::nullopt);

/// Symmetry data of a jet at one truncation order.
struct OrderRow {
  int order = 0;
  std::size_t full_dim = 0;
  std::size_t isotropy_dim = 0;
  bool closed = false;
  bool transitive = false;                // translation parts span (x, y, z)
  std::optional<bool> invariant_next;     // tangent one order further
};

struct SurfaceAnalysis {
  Jet<Rational> jet;  // order N (+1 when available)
  int order = 0;
  std::vector<OrderRow> rows;  // orders 4..N
  SymmetryAlgebra<Rational> algebra;  // at order N
  CubicType cubic = CubicType::Zero;
  bool homogeneous() const;  // closed, transitive and invariant at N
  Json to_json() const;
};

/// Rows for orders 4..order from a jet known to order+1 (or to `order`, in
/// which case the next-order invariance is not available).
SurfaceAnalysis analyze_jet(const Jet<Rational>& jet, int order);
SurfaceAnalysis analyze_surface(const SurfaceSpec& spec, int order);

/// Homogeneity with isotropy of a catalog entry.
Report verify_entry(const CatalogEntry& e, const std::optional<Rational>& alpha, int order);
/// Homogeneity with isotropy of an arbitrary surface (expected isotropy optional).
Report verify_surface(const SurfaceSpec& spec, int order, std::optional<std::size_t> expected_isotropy = {});
/// Pass means the non-homogeneous variant was rejected.
Report reject_variant(std::size_t index, int order);
/// The replacement surface is homogeneous and shares the first variant's 4-jet only.
Report replacement_check(int order);
/// Completes a normal form and checks its algebra.
Report confirm_isotropy(const NormalForm& nf, const std::optional<Rational>& b, int order);
Report check_overlaps_and_maps(int order);
Report real_catalog_checks(int order);
/// The coordinate changes relating worked examples to entries N5, N6, N10.
Report coordinate_fixtures(int order);
Json normal_form_table();

/// Sample parameter values for the alpha <-> b rows.
const std::vector<Rational>& sample_b_values();

}  // namespace affhom
