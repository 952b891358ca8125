#ifndef TWISTOR_JSON_IO_HPP
#define TWISTOR_JSON_IO_HPP

#include <complex>
#include <fstream>
#include <string>

#include "json.hpp"

#include "twistor/connectivity.hpp"
#include "twistor/line.hpp"
#include "twistor/rep.hpp"

namespace twistor {

using nlohmann::json;

namespace detail {

inline json entry_to_json(const Rat& x) { return x.str(); }
inline json entry_to_json(const CRat& x) {
  return json::array({real(x).str(), imag(x).str()});
}
inline json entry_to_json(double x) { return x; }
inline json entry_to_json(const std::complex<double>& x) {
  return json::array({x.real(), x.imag()});
}

inline void entry_from_json(const json& j, Rat& out) {
  if (j.is_string()) {
    out = Rat::from_string(j.get<std::string>());
    return;
  }
  if (j.is_number_integer()) {
    out = Rat(j.get<long long>());
    return;
  }
  throw parse_error("matrix entry: expected a rational string");
}
inline void entry_from_json(const json& j, CRat& out) {
  if (j.is_array() && j.size() == 2) {
    Rat re, im;
    entry_from_json(j[0], re);
    entry_from_json(j[1], im);
    out = CRat(re, im);
    return;
  }
  Rat re;
  entry_from_json(j, re);
  out = CRat(re, Rat(0));
}
inline void entry_from_json(const json& j, double& out) {
  if (j.is_number()) {
    out = j.get<double>();
    return;
  }
  if (j.is_string()) {
    out = Rat::from_string(j.get<std::string>()).to_double();
    return;
  }
  throw parse_error("matrix entry: expected a number");
}
inline void entry_from_json(const json& j, std::complex<double>& out) {
  if (j.is_array() && j.size() == 2) {
    double re, im;
    entry_from_json(j[0], re);
    entry_from_json(j[1], im);
    out = {re, im};
    return;
  }
  double re;
  entry_from_json(j, re);
  out = {re, 0.0};
}

}  // namespace detail

template <typename T>
json matrix_to_json(const Mat<T>& m) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(detail::entry_to_json(m(r, c)));
    entries.push_back(row);
  }
  return json{{"rows", m.rows()},
              {"cols", m.cols()},
              {"domain", scalar_traits<T>::is_exact ? "exact" : "float"},
              {"entries", entries}};
}

template <typename T>
Mat<T> matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("domain") || !j.contains("entries"))
    throw parse_error("matrix: missing rows/cols/domain/entries");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw parse_error("matrix: rows/cols must be integers");
  const auto rows = j["rows"].get<Eigen::Index>();
  const auto cols = j["cols"].get<Eigen::Index>();
  if (rows < 0 || cols < 0) throw parse_error("matrix: negative dimensions");
  const std::string dom = j["domain"].get<std::string>();
  if (dom != "exact" && dom != "float")
    throw parse_error("matrix: domain must be \"exact\" or \"float\"");
  if (scalar_traits<T>::is_exact && dom == "float")
    throw parse_error("matrix: float payload requested in the exact domain");
  const json& entries = j["entries"];
  if (!entries.is_array() ||
      entries.size() != static_cast<std::size_t>(rows))
    throw parse_error("matrix: entries must have `rows` rows");
  Mat<T> m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = entries[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(cols))
      throw parse_error("matrix: each row must have `cols` entries");
    for (Eigen::Index c = 0; c < cols; ++c)
      detail::entry_from_json(row[static_cast<std::size_t>(c)], m(r, c));
  }
  return m;
}

template <typename T>
json rep_to_json(const AlgebraRep<T>& rep) {
  json j{{"epsilon", rep.epsilon},
         {"n", rep.n},
         {"I", matrix_to_json<T>(rep.I)},
         {"B", matrix_to_json<T>(rep.B)}};
  if (rep.epsilon == 0) j["k"] = rep.k;
  return j;
}

template <typename T>
AlgebraRep<T> rep_from_json(const json& j) {
  if (!j.is_object() || !j.contains("epsilon") || !j.contains("n") ||
      !j.contains("I") || !j.contains("B"))
    throw parse_error("rep: missing epsilon/n/I/B");
  AlgebraRep<T> rep;
  rep.epsilon = j["epsilon"].get<int>();
  rep.n = j["n"].get<int>();
  rep.k = j.contains("k") ? j["k"].get<int>() : 0;
  rep.I = matrix_from_json<T>(j["I"]);
  rep.B = matrix_from_json<T>(j["B"]);
  return rep;
}

template <typename T>
json line_to_json(const TwistorLine<T>& line) {
  AlgebraRep<T> rep{line.epsilon, line.n, 0, line.I, line.B};
  return json{{"rep", rep_to_json<T>(rep)},
              {"type", to_string(line.type())}};
}

template <typename T>
TwistorLine<T> line_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rep"))
    throw parse_error("line: missing rep");
  return line_from_rep<T>(rep_from_json<T>(j["rep"]));
}

template <typename T>
json point_to_json(const LinePoint<T>& p) {
  return json{{"coords",
               json::array({detail::entry_to_json(p.x),
                            detail::entry_to_json(p.y),
                            detail::entry_to_json(p.z)})},
              {"matrix", matrix_to_json<T>(p.matrix)}};
}

inline json path_to_json(const TwistorPath& path) {
  json segs = json::array();
  for (const auto& seg : path.segments) {
    segs.push_back(json{{"line", line_to_json<double>(seg.line)},
                        {"from", point_to_json<double>(seg.from_point)},
                        {"to", point_to_json<double>(seg.to_point)},
                        {"component", std::string(1, seg.component)}});
  }
  return json{{"segments", segs},
              {"junction_residuals", path.junction_residuals}};
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open input file: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw parse_error("invalid JSON in " + path);
  return j;
}

}  // namespace twistor

#endif  // TWISTOR_JSON_IO_HPP
