#include "affhom/report.hpp"

#include <sstream>

namespace affhom {

Json Report::to_json() const {
  Json out = Json::object();
  out["report"] = name;
  out["pass"] = pass;
  for (const auto& [k, v] : data.items()) out[k] = v;
  return out;
}

namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

// arrays of scalars stay on one line
bool flat_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (!is_scalar(x)) return false;
  return true;
}

std::string flat_text(const Json& j) {
  std::string s = "[";
  bool first = true;
  for (const auto& x : j) {
    if (!first) s += ", ";
    s += scalar_text(x);
    first = false;
  }
  return s + "]";
}

void render(const Json& j, int indent, std::ostringstream& out) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_scalar(v)) {
        out << pad << k << ": " << scalar_text(v) << "\n";
      } else if (flat_array(v)) {
        out << pad << k << ": " << flat_text(v) << "\n";
      } else {
        out << pad << k << ":\n";
        render(v, indent + 2, out);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (is_scalar(v)) {
        out << pad << "- " << scalar_text(v) << "\n";
      } else if (flat_array(v)) {
        out << pad << "- " << flat_text(v) << "\n";
      } else {
        out << pad << "-\n";
        render(v, indent + 2, out);
      }
    }
  } else {
    out << pad << scalar_text(j) << "\n";
  }
}

}  // namespace

std::string render_text(const Json& j) {
  std::ostringstream out;
  render(j, 0, out);
  return out.str();
}

std::string Report::to_text() const { return render_text(to_json()); }

}  // namespace affhom
