#include "hopfkit/hopffile.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hopfkit {

namespace {

using nlohmann::json;

FieldSpec field_from_json(const json& jf) {
  if (!jf.is_object() || !jf.contains("kind") || !jf["kind"].is_string())
    throw HopfFileError("field: expected an object with a 'kind' string");
  std::string kind = jf["kind"].get<std::string>();
  if (kind == "Rational") return FieldSpec::rationals();
  if (kind == "Prime") {
    if (!jf.contains("p") || !jf["p"].is_number_unsigned())
      throw HopfFileError("field: Prime requires an unsigned 'p'");
    return FieldSpec::prime(jf["p"].get<unsigned long>());
  }
  if (kind == "Cyclotomic") {
    if (!jf.contains("N") || !jf["N"].is_number_unsigned())
      throw HopfFileError("field: Cyclotomic requires an unsigned 'N'");
    return FieldSpec::cyclotomic(jf["N"].get<unsigned long>());
  }
  throw HopfFileError("field: unknown kind '" + kind + "'");
}

json field_to_json(const FieldSpec& F) {
  switch (F.kind()) {
    case FieldKind::Rational:
      return json{{"kind", "Rational"}};
    case FieldKind::Prime:
      return json{{"kind", "Prime"}, {"p", F.p()}};
    case FieldKind::Cyclotomic:
      return json{{"kind", "Cyclotomic"}, {"N", F.N()}};
  }
  throw HopfFileError("field: unknown kind");
}

size_t get_index(const json& v, size_t n, const char* what) {
  if (!v.is_number_unsigned())
    throw HopfFileError(std::string(what) + ": index must be unsigned");
  size_t i = v.get<size_t>();
  if (i >= n)
    throw HopfFileError(std::string(what) + ": index " + std::to_string(i) +
                        " out of range (dim " + std::to_string(n) + ")");
  return i;
}

Scalar get_scalar(const FieldSpec& F, const json& v, const char* what) {
  if (!v.is_string())
    throw HopfFileError(std::string(what) + ": coefficient must be a string");
  return parse_scalar(F, v.get<std::string>());
}

Vec get_vec(const FieldSpec& F, const json& arr, size_t n, const char* what) {
  if (!arr.is_array() || arr.size() != n)
    throw HopfFileError(std::string(what) + ": expected an array of " +
                        std::to_string(n) + " scalar strings");
  Vec v = vec_zero(F, n);
  for (size_t i = 0; i < n; ++i) v[i] = get_scalar(F, arr[i], what);
  return v;
}

}  // namespace

HopfAlgebra read_hopf(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw HopfFileError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw HopfFileError("top level must be an object");
  for (const char* key :
       {"field", "dim", "basis", "unit", "mult", "coproduct", "counit",
        "antipode"})
    if (!doc.contains(key))
      throw HopfFileError(std::string("missing key '") + key + "'");

  FieldSpec F = field_from_json(doc["field"]);
  if (!doc["dim"].is_number_unsigned())
    throw HopfFileError("dim: must be unsigned");
  size_t n = doc["dim"].get<size_t>();
  if (n == 0) throw HopfFileError("dim: must be positive");

  if (!doc["basis"].is_array() || doc["basis"].size() != n)
    throw HopfFileError("basis: expected dim labels");
  std::vector<std::string> labels;
  for (const auto& l : doc["basis"]) {
    if (!l.is_string()) throw HopfFileError("basis: labels must be strings");
    labels.push_back(l.get<std::string>());
  }

  Vec unit = get_vec(F, doc["unit"], n, "unit");
  Vec counit = get_vec(F, doc["counit"], n, "counit");

  std::vector<std::vector<SparseVec>> mult(n, std::vector<SparseVec>(n));
  if (!doc["mult"].is_array()) throw HopfFileError("mult: expected an array");
  for (const auto& e : doc["mult"]) {
    if (!e.is_array() || e.size() != 4)
      throw HopfFileError("mult: entries must be [i, j, k, \"coeff\"]");
    size_t i = get_index(e[0], n, "mult"), j = get_index(e[1], n, "mult"),
           k = get_index(e[2], n, "mult");
    mult[i][j].emplace_back(k, get_scalar(F, e[3], "mult"));
  }

  std::vector<CoprodList> cop(n);
  if (!doc["coproduct"].is_array())
    throw HopfFileError("coproduct: expected an array");
  for (const auto& e : doc["coproduct"]) {
    if (!e.is_array() || e.size() != 4)
      throw HopfFileError("coproduct: entries must be [i, j, k, \"coeff\"]");
    size_t i = get_index(e[0], n, "coproduct"),
           j = get_index(e[1], n, "coproduct"),
           k = get_index(e[2], n, "coproduct");
    cop[i].push_back({static_cast<uint32_t>(j), static_cast<uint32_t>(k),
                      get_scalar(F, e[3], "coproduct")});
  }

  std::vector<SparseVec> anti(n);
  if (!doc["antipode"].is_array())
    throw HopfFileError("antipode: expected an array");
  for (const auto& e : doc["antipode"]) {
    if (!e.is_array() || e.size() != 3)
      throw HopfFileError("antipode: entries must be [i, j, \"coeff\"]");
    size_t i = get_index(e[0], n, "antipode"),
           j = get_index(e[1], n, "antipode");
    anti[j].emplace_back(i, get_scalar(F, e[2], "antipode"));
  }

  std::optional<Vec> pivot;
  HopfAlgebra H(F, std::move(labels), std::move(unit), std::move(mult),
                std::move(cop), std::move(counit), std::move(anti));
  if (doc.contains("pivot")) {
    if (!doc["pivot"].is_string())
      throw HopfFileError("pivot: expected an element expression string");
    Vec g = H.parse_element(doc["pivot"].get<std::string>());
    // Rebuild with the pivot attached.
    std::vector<std::vector<SparseVec>> m2(H.dim(),
                                           std::vector<SparseVec>(H.dim()));
    std::vector<CoprodList> c2(H.dim());
    std::vector<SparseVec> a2(H.dim());
    for (size_t i = 0; i < H.dim(); ++i) {
      c2[i] = H.coprod(i);
      a2[i] = H.antipode_col(i);
      for (size_t j = 0; j < H.dim(); ++j) m2[i][j] = H.mult(i, j);
    }
    return HopfAlgebra(H.field(), H.labels(), H.unit(), std::move(m2),
                       std::move(c2), H.counit_coeffs(), std::move(a2), g);
  }
  return H;
}

HopfAlgebra read_hopf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw HopfFileError("cannot open file: " + path);
  return read_hopf(in);
}

std::string write_hopf(const HopfAlgebra& H) {
  // Hand-assembled for compactness and a fixed, deterministic layout: one
  // sparse tensor entry per line.
  const size_t n = H.dim();
  std::ostringstream os;
  auto str = [](const std::string& s) { return json(s).dump(); };
  auto scalar_list = [&](const Vec& v) {
    std::string out;
    for (size_t i = 0; i < n; ++i)
      out += (i ? ", " : "") + str(v[i].str());
    return out;
  };
  os << "{\n";
  os << "  \"field\": " << field_to_json(H.field()).dump() << ",\n";
  os << "  \"dim\": " << n << ",\n";
  os << "  \"basis\": [";
  for (size_t i = 0; i < n; ++i) os << (i ? ", " : "") << str(H.labels()[i]);
  os << "],\n";
  os << "  \"unit\": [" << scalar_list(H.unit()) << "],\n";
  os << "  \"counit\": [" << scalar_list(H.counit_coeffs()) << "],\n";
  os << "  \"mult\": [\n";
  bool first = true;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : H.mult(i, j)) {
        os << (first ? "" : ",\n") << "    [" << i << ", " << j << ", " << k
           << ", " << str(c.str()) << "]";
        first = false;
      }
  os << "\n  ],\n";
  os << "  \"coproduct\": [\n";
  first = true;
  for (size_t i = 0; i < n; ++i) {
    CoprodList terms = H.coprod(i);
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
      return std::tie(a.j, a.k) < std::tie(b.j, b.k);
    });
    for (const auto& t : terms) {
      os << (first ? "" : ",\n") << "    [" << i << ", " << t.j << ", " << t.k
         << ", " << str(t.c.str()) << "]";
      first = false;
    }
  }
  os << "\n  ],\n";
  os << "  \"antipode\": [\n";
  first = true;
  for (size_t j = 0; j < n; ++j)
    for (const auto& [i, c] : H.antipode_col(j)) {
      os << (first ? "" : ",\n") << "    [" << i << ", " << j << ", "
         << str(c.str()) << "]";
      first = false;
    }
  os << "\n  ]";
  if (H.pivot())
    os << ",\n  \"pivot\": " << str(H.element_str(*H.pivot()));
  os << "\n}\n";
  return os.str();
}

void write_hopf_file(const HopfAlgebra& H, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw HopfFileError("cannot open file for writing: " + path);
  out << write_hopf(H);
}

}  // namespace hopfkit
