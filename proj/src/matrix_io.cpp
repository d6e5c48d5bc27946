#include "ssflab/matrix_io.hpp"

#include <fstream>
#include <sstream>

namespace ssflab {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InvalidInput(path + ": " + what);
}

Complex parse_entry(const nlohmann::json& e, const std::string& path) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  fail(path, "expected a number or [re, im]");
}

}  // namespace

ComplexMatrix parse_matrix(const nlohmann::json& doc, const std::string& path) {
  if (!doc.is_object()) fail(path, "matrix document must be an object");
  if (doc.contains("diag")) {
    const auto& d = doc["diag"];
    if (!d.is_array() || d.empty()) fail(path + ".diag", "expected a nonempty array");
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) {
      const std::string p = path + ".diag[" + std::to_string(i) + "]";
      if (!d[i].is_number()) fail(p, "expected a real number");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i].get<double>();
    }
    return m;
  }
  if (!doc.contains("entries")) fail(path, "expected \"entries\" or \"diag\"");
  const auto& rows = doc["entries"];
  if (!rows.is_array() || rows.empty()) fail(path + ".entries", "expected a nonempty array of rows");
  const std::size_t n = rows.size();
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer() || doc["n"].get<long long>() != static_cast<long long>(n)) {
      fail(path + ".n", "does not match the number of rows (" + std::to_string(n) + ")");
    }
  }
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string rp = path + ".entries[" + std::to_string(i) + "]";
    if (!rows[i].is_array() || rows[i].size() != n) fail(rp, "expected a row of length " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          parse_entry(rows[i][j], rp + "[" + std::to_string(j) + "]");
    }
  }
  return m;
}

HermitianOperator parse_hermitian(const nlohmann::json& doc, const std::string& path) {
  if (doc.is_object() && doc.contains("diag")) {
    const ComplexMatrix m = parse_matrix(doc, path);
    return HermitianOperator::diagonal(RealVector(m.diagonal().real()));
  }
  const ComplexMatrix m = parse_matrix(doc, path);
  try {
    return HermitianOperator(m);
  } catch (const InvalidInput& e) {
    fail(path, e.what());
  }
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return {{"n", m.rows()}, {"entries", std::move(rows)}};
}

nlohmann::json hermitian_to_json(const HermitianOperator& h) {
  if (h.is_diagonal()) {
    const RealVector& d = h.diagonal_entries();
    return {{"diag", std::vector<double>(d.data(), d.data() + d.size())}};
  }
  return matrix_to_json(h.matrix());
}

OperatorDocument parse_operator_document(const nlohmann::json& doc) {
  if (!doc.is_object()) fail("$", "operator document must be an object");
  if (!doc.contains("A")) fail("$", "missing \"A\"");
  if (!doc.contains("B")) fail("$", "missing \"B\"");
  OperatorDocument out{parse_hermitian(doc["A"], "$.A"), parse_hermitian(doc["B"], "$.B"), std::nullopt};
  if (doc.contains("C")) out.c = parse_hermitian(doc["C"], "$.C");
  if (out.a.dim() != out.b.dim() || (out.c && out.c->dim() != out.a.dim())) {
    fail("$", "operators have different dimensions");
  }
  return out;
}

nlohmann::json pair_to_json(const OperatorPair& pair) {
  return {{"A", hermitian_to_json(pair.a())}, {"B", hermitian_to_json(pair.b())}};
}

nlohmann::json read_json_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw InvalidInput(filename + ": cannot open file");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    std::ostringstream os;
    os << filename << ": JSON parse error at byte " << e.byte;
    throw InvalidInput(os.str());
  }
}

}  // namespace ssflab
