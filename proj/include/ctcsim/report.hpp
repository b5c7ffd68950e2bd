#pragma once

// Text, JSON and CSV renderings of a ScenarioResult. States in JSON use the
// matrix document schema, so an emitted state loads back as a document.

#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include "json.hpp"

#include "ctcsim/errors.hpp"
#include "ctcsim/matrix_document.hpp"
#include "ctcsim/scenarios.hpp"

namespace ctcsim {

enum class ReportFormat { text, json, csv };

inline ReportFormat parse_report_format(std::string_view s) {
  if (s == "text") return ReportFormat::text;
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  throw UnknownName("unknown format '" + std::string(s) + "'");
}

namespace detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline std::string fixed(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

inline std::string fixed(Complex z) {
  const double re = std::abs(z.real()) < 5e-13 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 5e-13 ? 0.0 : z.imag();
  if (im == 0.0) return fixed(re);
  return fixed(re) + (im < 0 ? "-" : "+") + fixed(std::abs(im)) + "i";
}

inline void text_matrix(std::ostream& os, const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << "    [";
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << fixed(m(r, c));
    os << "]\n";
  }
}

inline void text_table(std::ostream& os, const Table& t) {
  os << "    ";
  for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "  " : "") << t.columns[c];
  os << '\n';
  for (const auto& row : t.rows) {
    os << "    ";
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "  " : "") << fixed(row[c]);
    os << '\n';
  }
}

}  // namespace detail

inline std::string render_text(const ScenarioResult& r) {
  std::ostringstream os;
  os << "scenario: " << r.name << '\n';
  if (!r.params.empty()) {
    os << "params:\n";
    for (const auto& [k, v] : r.params) os << "  " << k << " = " << v << '\n';
  }
  os << "outputs:\n";
  for (const auto& [key, value] : r.outputs) {
    std::visit(detail::overloaded{
                   [&](const DensityOperator& rho) {
                     os << "  " << key << " (density, dims " << to_string(rho.shape()) << "):\n";
                     detail::text_matrix(os, rho.matrix());
                   },
                   [&](const PureState& psi) {
                     os << "  " << key << " (state, dims " << to_string(psi.shape()) << "): [";
                     for (std::size_t i = 0; i < psi.dim(); ++i) os << (i ? ", " : "") << detail::fixed(psi[i]);
                     os << "]\n";
                   },
                   [&](double x) { os << "  " << key << " = " << format_double(x) << '\n'; },
                   [&](bool b) { os << "  " << key << " = " << (b ? "true" : "false") << '\n'; },
                   [&](const Table& t) {
                     os << "  " << key << ":\n";
                     detail::text_table(os, t);
                   },
                   [&](const std::string& s) { os << "  " << key << " = " << s << '\n'; },
               },
               value);
  }
  if (!r.notes.empty()) {
    os << "notes:\n";
    for (const auto& n : r.notes) os << "  - " << n << '\n';
  }
  return os.str();
}

inline nlohmann::ordered_json to_json(const Output& value) {
  return std::visit(detail::overloaded{
                        [](const DensityOperator& rho) { return to_json(to_document(rho)); },
                        [](const PureState& psi) { return to_json(to_document(psi)); },
                        [](double x) { return nlohmann::ordered_json(x); },
                        [](bool b) { return nlohmann::ordered_json(b); },
                        [](const Table& t) {
                          return nlohmann::ordered_json{{"columns", t.columns}, {"rows", t.rows}};
                        },
                        [](const std::string& s) { return nlohmann::ordered_json(s); },
                    },
                    value);
}

inline nlohmann::ordered_json to_json(const ScenarioResult& r) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.outputs) outputs[k] = to_json(v);
  return {{"scenario", r.name}, {"params", params}, {"outputs", outputs}, {"notes", r.notes}};
}

inline std::string render_json(const ScenarioResult& r) { return to_json(r).dump(2) + "\n"; }

// Scalars as key,value; each table with its own header; states as
// name,row,col,re,im. Sections are separated by a blank line.
inline std::string render_csv(const ScenarioResult& r) {
  std::ostringstream scalars, states, tables;
  bool any_state = false;
  for (const auto& [key, value] : r.outputs) {
    std::visit(detail::overloaded{
                   [&](const DensityOperator& rho) {
                     any_state = true;
                     const Matrix& m = rho.matrix();
                     for (std::size_t i = 0; i < m.rows(); ++i)
                       for (std::size_t j = 0; j < m.cols(); ++j)
                         states << key << ',' << i << ',' << j << ',' << format_double(m(i, j).real()) << ','
                                << format_double(m(i, j).imag()) << '\n';
                   },
                   [&](const PureState& psi) {
                     any_state = true;
                     for (std::size_t i = 0; i < psi.dim(); ++i)
                       states << key << ',' << i << ",0," << format_double(psi[i].real()) << ','
                              << format_double(psi[i].imag()) << '\n';
                   },
                   [&](double x) { scalars << key << ',' << format_double(x) << '\n'; },
                   [&](bool b) { scalars << key << ',' << (b ? "true" : "false") << '\n'; },
                   [&](const Table& t) {
                     if (tables.tellp() > 0) tables << '\n';
                     for (std::size_t c = 0; c < t.columns.size(); ++c) tables << (c ? "," : "") << t.columns[c];
                     tables << '\n';
                     for (const auto& row : t.rows) {
                       for (std::size_t c = 0; c < row.size(); ++c) tables << (c ? "," : "") << format_double(row[c]);
                       tables << '\n';
                     }
                   },
                   [&](const std::string& s) { scalars << key << ',' << s << '\n'; },
               },
               value);
  }
  std::string out;
  const auto section = [&](const std::string& header, const std::string& body) {
    if (body.empty()) return;
    if (!out.empty()) out += '\n';
    out += header + body;
  };
  section("key,value\n", scalars.str());
  section(any_state ? "name,row,col,re,im\n" : "", states.str());
  section("", tables.str());
  return out;
}

inline std::string render(const ScenarioResult& r, ReportFormat f) {
  switch (f) {
    case ReportFormat::text: return render_text(r);
    case ReportFormat::json: return render_json(r);
    case ReportFormat::csv: return render_csv(r);
  }
  return {};
}

}  // namespace ctcsim
