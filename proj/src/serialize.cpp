#include "padicsym/serialize.hpp"

namespace padicsym {

Json to_json(const BigRational& q) { return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

Json to_json(const Interval& iv) { return {{"lower", to_json(iv.lower)}, {"upper", to_json(iv.upper)}}; }

Json to_json(const SymClass& cls) {
  Json signs = Json::object();
  for (const auto& [k, s] : cls.signs) signs[std::to_string(k)] = s > 0 ? "+" : "-";
  return {{"label", cls.label()}, {"eldivs", cls.eldivs.exponents()}, {"signs", signs}};
}

Json to_json(const QpClass& c) { return {{"n", c.n}, {"disc", c.disc.tag()}, {"hasse", c.hasse}}; }

Json to_json(const TallyTable& t) {
  Json rows = Json::array();
  for (const auto& [label, c] : t.counts) rows.push_back({{"label", label}, {"count", c}});
  return {{"total", t.total}, {"counts", rows}};
}

Json to_json(const GofReport& r) {
  Json classes = Json::array();
  for (const auto& row : r.rows)
    classes.push_back({{"label", row.label}, {"observed", row.observed}, {"expected", row.expected}, {"z", row.z}});
  return {{"seed", r.seed}, {"samples", r.samples}, {"classes", classes},
          {"statistic", r.statistic}, {"df", r.df}, {"p_value", r.p_value}};
}

Json to_json(const DecimalInterval& iv) { return Json::array({iv.lower, iv.upper}); }

Json to_json(const EulerProductResult& r) {
  Json n = r.n == kInfiniteN ? Json("inf") : Json(r.n);
  return {{"n", n}, {"cutoff", r.prime_cutoff}, {"value", to_json(r.value)},
          {"assume_p2", r.assume_p2}, {"tail_bound", r.tail_bound}};
}

Json matrix_json(const ResidueMatrix& A) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < A.cols(); ++j) row.push_back(A(i, j));
    rows.push_back(row);
  }
  return rows;
}

ResidueMatrix parse_matrix(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(std::string("matrix is not valid JSON: ") + e.what());
  }
  if (j.is_object()) {
    if (!j.contains("matrix")) throw InvalidArgument("matrix object needs a \"matrix\" key");
    j = j["matrix"];
  }
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
    throw InvalidArgument("matrix must be a non-empty array of arrays");
  const auto rows = static_cast<Eigen::Index>(j.size()), cols = static_cast<Eigen::Index>(j[0].size());
  ResidueMatrix A(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols)
      throw InvalidArgument("matrix rows have different lengths");
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!j[i][c].is_number_integer()) throw InvalidArgument("matrix entries must be integers");
      A(i, c) = j[i][c].get<Int>();
    }
  }
  return A;
}

}  // namespace padicsym
