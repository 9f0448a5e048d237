#pragma once

#include "affhom/serialize.hpp"
#include "affhom/symmetry.hpp"

#include <string>

namespace affhom {

/// Outcome of a pipeline run. `data` is the machine-readable body; the text
/// form is rendered from it.
struct Report {
  std::string name;
  bool pass = false;
  Json data = Json::object();

  Json to_json() const;
  std::string to_text() const;
};

/// Indented "key: value" rendering of a JSON value.
std::string render_text(const Json& j);

template <class T>
Json matrix_json(const Matrix4<T>& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(scalar_json(x));
    rows.push_back(r);
  }
  return rows;
}

template <Scalar S>
Json field_json(const AffineVectorField<S>& f) {
  Json v = Json::array();
  for (const auto& x : f.v) v.push_back(scalar_json(x));
  return Json{{"A", matrix_json(f.A)}, {"v", v}};
}

template <Scalar S>
Json algebra_json(const SymmetryAlgebra<S>& alg) {
  Json basis = Json::array();
  for (const auto& b : alg.basis) basis.push_back(field_json(b));
  Json iso = Json::array();
  for (const auto& g : alg.isotropy) iso.push_back(field_json(g));
  return Json{{"basis", basis},
              {"isotropy", iso},
              {"order", alg.order},
              {"truncation", alg.truncation},
              {"closed", alg.closed},
              {"isotropy_verified", alg.isotropy_verified},
              {"isotropy_dim", alg.isotropy_dim()},
              {"full_dim", alg.full_dim()}};
}

}  // namespace affhom
