#pragma once

//
// System files: JSON text with an explicit version field.
//
//   {
//     "version": 1,
//     "field": "real" | "complex",
//     "dim": n,
//     "subsystems": [
//       { "weight": v, "subspace": [[...], ...], "lambda": [[...], ...] }
//     ]
//   }
//
// Matrices are row-major lists of rows. "subspace" is n × k (its columns
// span W_j, k may be 0); "lambda" is m_j × n. Complex entries are written
// as [re, im] pairs; a bare number is accepted as a real entry.
//

#include <gfusion/system.hpp>

#include <json.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <variant>

namespace gfusion {

using AnySystem = std::variant<GFusionSystem<double>, GFusionSystem<Complex>>;

inline constexpr int kSystemFileVersion = 1;

/// Parse failure with a position in the text (JSON syntax) or a path to the
/// offending field (schema and shape errors).
class ParseError : public Error {
 public:
  ParseError(std::string message, std::string field = {}, std::size_t line = 0,
             std::size_t column = 0)
      : Error(format(message, field, line, column)),
        field_(std::move(field)),
        line_(line),
        column_(column) {}

  const std::string& field() const { return field_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& message, const std::string& field,
                            std::size_t line, std::size_t column) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ", column " + std::to_string(column) + ": ";
    if (!field.empty()) out += field + ": ";
    return out + message;
  }

  std::string field_;
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

template <Field S>
nlohmann::json scalar_to_json(const S& x) {
  if constexpr (is_complex_v<S>) {
    return nlohmann::json::array({x.real(), x.imag()});
  } else {
    return x;
  }
}

template <Field S>
nlohmann::json matrix_to_json(const Matrix<S>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json<S>(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline double number_at(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError("expected a number", path);
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ParseError("value is not finite", path);
  return x;
}

template <Field S>
S scalar_from_json(const nlohmann::json& j, const std::string& path) {
  if constexpr (is_complex_v<S>) {
    if (j.is_number()) return Complex(number_at(j, path), 0.0);
    if (!j.is_array() || j.size() != 2) throw ParseError("expected a [re, im] pair", path);
    return Complex(number_at(j[0], path + "[0]"), number_at(j[1], path + "[1]"));
  } else {
    if (j.is_array()) throw ParseError("complex entry in a real system", path);
    return number_at(j, path);
  }
}

/// Row-major matrix with an expected row count; columns are inferred and
/// must agree across rows (`expected_cols` < 0 means any).
template <Field S>
Matrix<S> matrix_from_json(const nlohmann::json& j, const std::string& path, Index expected_rows,
                           Index expected_cols) {
  if (!j.is_array()) throw ParseError("expected a list of rows", path);
  if (expected_rows >= 0 && static_cast<Index>(j.size()) != expected_rows) {
    throw ParseError("expected " + std::to_string(expected_rows) + " rows, got " +
                         std::to_string(j.size()),
                     path);
  }
  const Index rows = static_cast<Index>(j.size());
  Index cols = expected_cols;
  for (Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!row.is_array()) throw ParseError("expected a row (list of entries)", rp);
    if (cols < 0) cols = static_cast<Index>(row.size());
    if (static_cast<Index>(row.size()) != cols) {
      throw ParseError("expected " + std::to_string(cols) + " entries, got " +
                           std::to_string(row.size()),
                       rp);
    }
  }
  if (cols < 0) cols = 0;
  Matrix<S> m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      m(r, c) = scalar_from_json<S>(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                                    path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

inline const nlohmann::json& member(const nlohmann::json& obj, const char* key,
                                    const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(std::string("missing field \"") + key + "\"", path);
  }
  return *it;
}

template <Field S>
GFusionSystem<S> system_from_json(const nlohmann::json& doc, Index n, const Tolerances& tol) {
  const auto& subs = member(doc, "subsystems", "");
  if (!subs.is_array() || subs.empty()) {
    throw ParseError("expected a non-empty list", "subsystems");
  }
  std::vector<Subsystem<S>> parts;
  for (std::size_t j = 0; j < subs.size(); ++j) {
    const std::string base = "subsystems[" + std::to_string(j) + "]";
    const auto& s = subs[j];
    if (!s.is_object()) throw ParseError("expected an object", base);
    const double w = number_at(member(s, "weight", base), base + ".weight");
    if (!(w > 0.0)) throw ParseError("weight must be positive", base + ".weight");
    Matrix<S> span = matrix_from_json<S>(member(s, "subspace", base), base + ".subspace", n, -1);
    Matrix<S> op = matrix_from_json<S>(member(s, "lambda", base), base + ".lambda", -1, n);
    if (op.rows() < 1) throw ParseError("operator needs at least one row", base + ".lambda");
    parts.push_back({w, orthonormalize<S>(span, tol.rank, tol.ortho), std::move(op)});
  }
  try {
    return GFusionSystem<S>(n, std::move(parts));
  } catch (const InvalidSystem& e) {
    throw ParseError(e.what(), "subsystems");
  }
}

inline std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

template <Field S>
nlohmann::json to_json(const GFusionSystem<S>& sys) {
  nlohmann::json doc;
  doc["version"] = kSystemFileVersion;
  doc["field"] = field_name<S>();
  doc["dim"] = sys.ambient_dim();
  nlohmann::json subs = nlohmann::json::array();
  for (const auto& s : sys.subsystems()) {
    nlohmann::json item;
    item["weight"] = s.weight;
    item["subspace"] = detail::matrix_to_json<S>(s.subspace.basis());
    item["lambda"] = detail::matrix_to_json<S>(s.lambda);
    subs.push_back(std::move(item));
  }
  doc["subsystems"] = std::move(subs);
  return doc;
}

inline nlohmann::json to_json(const AnySystem& sys) {
  return std::visit([](const auto& s) { return to_json(s); }, sys);
}

template <Field S>
std::string serialize(const GFusionSystem<S>& sys) {
  return to_json(sys).dump(2) + "\n";
}

inline std::string serialize(const AnySystem& sys) {
  return to_json(sys).dump(2) + "\n";
}

inline AnySystem system_from_document(const nlohmann::json& doc, const Tolerances& tol = {}) {
  if (!doc.is_object()) throw ParseError("top level must be an object");
  const auto& version = detail::member(doc, "version", "");
  if (!version.is_number_integer() || version.get<int>() != kSystemFileVersion) {
    throw ParseError("unsupported version (expected " + std::to_string(kSystemFileVersion) + ")",
                     "version");
  }
  const auto& field = detail::member(doc, "field", "");
  if (!field.is_string()) throw ParseError("expected \"real\" or \"complex\"", "field");
  const auto& dim = detail::member(doc, "dim", "");
  if (!dim.is_number_integer() || dim.get<long long>() < 1) {
    throw ParseError("expected a positive integer", "dim");
  }
  const Index n = static_cast<Index>(dim.get<long long>());
  const std::string f = field.get<std::string>();
  if (f == "real") return detail::system_from_json<double>(doc, n, tol);
  if (f == "complex") return detail::system_from_json<Complex>(doc, n, tol);
  throw ParseError("expected \"real\" or \"complex\", got \"" + f + "\"", "field");
}

inline AnySystem parse_system(std::string_view text, const Tolerances& tol = {}) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = detail::line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string why = e.what();
    if (const auto at = why.find(": ", why.find("column")); at != std::string::npos) {
      why = why.substr(at + 2);
    }
    throw ParseError("invalid JSON: " + why, "", line, col);
  }
  return system_from_document(doc, tol);
}

}  // namespace gfusion
