#pragma once

// JSON exchange format for states and gates:
//   {"kind": "state_vector" | "density" | "unitary",
//    "dims": [d1, d2, ...],
//    "data": [[re, im], ...]}          row-major, flat
// A state vector carries prod(dims) entries, a matrix prod(dims)^2.

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ctcsim/errors.hpp"
#include "ctcsim/quantum.hpp"

namespace ctcsim {

// Malformed document text or structure.
class DocumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class DocumentKind { state_vector, density, unitary };

inline std::string_view to_string(DocumentKind k) {
  switch (k) {
    case DocumentKind::state_vector: return "state_vector";
    case DocumentKind::density: return "density";
    case DocumentKind::unitary: return "unitary";
  }
  return "?";
}

inline DocumentKind parse_document_kind(std::string_view s) {
  for (auto k : {DocumentKind::state_vector, DocumentKind::density, DocumentKind::unitary})
    if (to_string(k) == s) return k;
  throw DocumentError("unknown document kind '" + std::string(s) + "'");
}

struct MatrixDocument {
  DocumentKind kind;
  SubsystemShape shape;
  std::vector<Complex> data;

  PureState state() const {
    require(DocumentKind::state_vector);
    return PureState(data, shape);
  }
  DensityOperator density() const {
    require(DocumentKind::density);
    return DensityOperator(matrix(), shape);
  }
  UnitaryGate unitary() const {
    require(DocumentKind::unitary);
    return UnitaryGate(matrix(), shape);
  }

  // A state vector is promoted to its projector.
  DensityOperator as_density() const {
    return kind == DocumentKind::state_vector ? DensityOperator::from_pure(state()) : density();
  }

 private:
  void require(DocumentKind k) const {
    if (kind != k)
      throw DocumentError("expected a " + std::string(to_string(k)) + " document, got " +
                          std::string(to_string(kind)));
  }
  Matrix matrix() const {
    const std::size_t n = shape.total();
    return Matrix(n, n, data);
  }
};

inline MatrixDocument to_document(const PureState& psi) {
  auto a = psi.amplitudes();
  return {DocumentKind::state_vector, psi.shape(), {a.begin(), a.end()}};
}

inline MatrixDocument to_document(const DensityOperator& rho) {
  auto e = rho.matrix().entries();
  return {DocumentKind::density, rho.shape(), {e.begin(), e.end()}};
}

inline MatrixDocument to_document(const UnitaryGate& u) {
  auto e = u.matrix().entries();
  return {DocumentKind::unitary, u.shape(), {e.begin(), e.end()}};
}

inline nlohmann::ordered_json to_json(const MatrixDocument& doc) {
  nlohmann::ordered_json data = nlohmann::ordered_json::array();
  for (const auto& z : doc.data) data.push_back({z.real(), z.imag()});
  return {{"kind", to_string(doc.kind)}, {"dims", doc.shape.dims}, {"data", std::move(data)}};
}

// Checks structure, then the kind's invariants by building the typed value.
inline MatrixDocument document_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DocumentError("document must be a JSON object");
  for (const char* key : {"kind", "dims", "data"})
    if (!j.contains(key)) throw DocumentError(std::string("document is missing \"") + key + "\"");
  if (!j["kind"].is_string()) throw DocumentError("\"kind\" must be a string");
  const DocumentKind kind = parse_document_kind(j["kind"].get<std::string>());

  const auto& jd = j["dims"];
  if (!jd.is_array() || jd.empty()) throw DocumentError("\"dims\" must be a non-empty array");
  std::vector<std::size_t> dims;
  for (const auto& d : jd) {
    if (!d.is_number_integer() || d.get<long long>() < 1)
      throw DocumentError("\"dims\" entries must be positive integers");
    dims.push_back(d.get<std::size_t>());
  }
  SubsystemShape shape(dims);

  const auto& data = j["data"];
  if (!data.is_array()) throw DocumentError("\"data\" must be an array of [re, im] pairs");
  const std::size_t n = shape.total();
  const std::size_t expected = kind == DocumentKind::state_vector ? n : n * n;
  if (data.size() != expected)
    throw DocumentError("\"data\" has " + std::to_string(data.size()) + " entries, dims call for " +
                        std::to_string(expected));
  std::vector<Complex> values;
  values.reserve(expected);
  for (const auto& z : data) {
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
      throw DocumentError("complex entries must be [re, im] number pairs");
    values.emplace_back(z[0].get<double>(), z[1].get<double>());
  }

  MatrixDocument doc{kind, std::move(shape), std::move(values)};
  switch (kind) {
    case DocumentKind::state_vector: (void)doc.state(); break;
    case DocumentKind::density: (void)doc.density(); break;
    case DocumentKind::unitary: (void)doc.unitary(); break;
  }
  return doc;
}

inline MatrixDocument parse_document(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError(std::string("invalid JSON: ") + e.what());
  }
  return document_from_json(j);
}

inline MatrixDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_document(text.str());
  } catch (const std::invalid_argument& e) {
    throw DocumentError(path + ": " + e.what());
  }
}

inline void save_document(const MatrixDocument& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DocumentError("cannot write " + path);
  out << to_json(doc).dump(2) << '\n';
}

}  // namespace ctcsim
