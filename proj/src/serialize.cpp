#include "jamesop/serialize.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace jamesop {
namespace {

Basis parse_basis(const std::string& s) {
  if (s == "E_BASIS" || s == "e" || s == "E") return Basis::kE;
  if (s == "F_BASIS" || s == "f" || s == "F") return Basis::kF;
  fail(ErrorCode::kInvalidArgument, "unknown basis '" + s + "'");
}

TailRule parse_tail_rule(const std::string& s) {
  if (s == "ZERO") return TailRule::kZero;
  if (s == "BAND_STATIONARY") return TailRule::kBandStationary;
  fail(ErrorCode::kInvalidArgument, "unknown tail rule '" + s + "'");
}

const Json& field(const Json& j, const char* name) {
  require(j.is_object(), std::string("expected an object holding '") + name + "'");
  auto it = j.find(name);
  require(it != j.end(), std::string("missing field '") + name + "'");
  return *it;
}

double number(const Json& j, const char* what) {
  require(j.is_number(), std::string(what) + " must be a number");
  const double v = j.get<double>();
  require(std::isfinite(v), std::string(what) + " must be finite");
  return v;
}

std::vector<double> numbers(const Json& j, const char* what) {
  require(j.is_array(), std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const Json& e : j) out.push_back(number(e, what));
  return out;
}

std::size_t count(const Json& j, const char* what) {
  require(j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0),
          std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

double optional_number(const Json& j, const char* name, double fallback) {
  auto it = j.find(name);
  return it == j.end() ? fallback : number(*it, name);
}

// Infinite values are written as null.
Json maybe_infinite(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double read_maybe_infinite(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : number(j, "bound");
}

template <class T>
T parse_as(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("malformed JSON: ") + e.what());
  }
  try {
    return j.get<T>();
  } catch (const Json::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("malformed document: ") + e.what());
  }
}

}  // namespace

void to_json(Json& j, const JamesVector& v) {
  j = Json{{"basis", basis_name(v.basis)}, {"p", v.p}, {"inner_dim", v.inner_dim}, {"coeffs", v.coeffs}};
}

void from_json(const Json& j, JamesVector& v) {
  v.basis = j.contains("basis") ? parse_basis(field(j, "basis").get<std::string>()) : Basis::kF;
  v.p = optional_number(j, "p", 2.0);
  v.inner_dim = j.contains("inner_dim") ? count(j["inner_dim"], "inner_dim") : 1;
  v.coeffs = numbers(field(j, "coeffs"), "coeffs");
  v.validate();
}

void to_json(Json& j, const BidualVector& v) { j = Json{{"body", v.body}, {"tail", v.tail}}; }

void from_json(const Json& j, BidualVector& v) {
  v.body = j.contains("body") ? j["body"].get<JamesVector>() : JamesVector(Basis::kE, {});
  v.tail = number(field(j, "tail"), "tail");
  v.validate();
}

void to_json(Json& j, const ConvexBlockSystem& b) {
  j = Json{{"boundaries", b.boundaries}, {"weights", b.weights}};
}

void from_json(const Json& j, ConvexBlockSystem& b) {
  const Json& bd = field(j, "boundaries");
  require(bd.is_array(), "boundaries must be an array");
  b.boundaries.clear();
  for (const Json& e : bd) b.boundaries.push_back(count(e, "boundary"));
  b.weights = numbers(field(j, "weights"), "weights");
  b.validate();
}

void to_json(Json& j, const FiniteOperatorOnJ& op) {
  Json band = Json::array();
  for (const BandEntry& e : op.band) band.push_back({{"offset", e.offset}, {"value", e.value}});
  j = Json{{"matrix", matrix_to_json(op.matrix)},
           {"tail_rule", tail_rule_name(op.tail_rule)},
           {"band", band},
           {"stationary", op.stationary},
           {"p", op.p}};
}

// Besides the explicit form, {"kind": "zero" | "shift_difference" |
// "rank_one", ...} builds the named factory operators.
void from_json(const Json& j, FiniteOperatorOnJ& op) {
  if (j.contains("kind")) {
    const std::string kind = field(j, "kind").get<std::string>();
    const double p = optional_number(j, "p", 2.0);
    const std::size_t m = count(field(j, "m"), "m");
    if (kind == "zero") {
      op = FiniteOperatorOnJ::zero(m, p);
    } else if (kind == "shift_difference") {
      op = FiniteOperatorOnJ::shift_difference(m, p);
    } else if (kind == "rank_one") {
      op = FiniteOperatorOnJ::rank_one(numbers(field(j, "functional"), "functional"),
                                       count(field(j, "target"), "target"), m, p);
    } else {
      fail(ErrorCode::kInvalidArgument, "unknown operator kind '" + kind + "'");
    }
    return;
  }
  op.matrix = matrix_from_json(field(j, "matrix"));
  op.tail_rule = j.contains("tail_rule") ? parse_tail_rule(j["tail_rule"].get<std::string>()) : TailRule::kZero;
  op.band.clear();
  if (j.contains("band")) {
    require(j["band"].is_array(), "band must be an array");
    for (const Json& e : j["band"]) {
      const Json& off = field(e, "offset");
      require(off.is_number_integer(), "band offset must be an integer");
      op.band.push_back({off.get<long>(), number(field(e, "value"), "band value")});
    }
  }
  op.stationary = j.contains("stationary") ? numbers(j["stationary"], "stationary") : std::vector<double>{};
  op.p = optional_number(j, "p", 2.0);
  op.validate();
}

void to_json(Json& j, const EmbeddingCertificate& c) {
  j = Json{{"vectors", c.vectors},
           {"lower_constant", c.lower_constant},
           {"upper_constant", c.upper_constant},
           {"worst_coefficients", c.worst_coefficients},
           {"points_checked", c.points_checked},
           {"evidence", c.evidence}};
}

void from_json(const Json& j, EmbeddingCertificate& c) {
  c.vectors = field(j, "vectors").get<std::vector<JamesVector>>();
  c.lower_constant = number(field(j, "lower_constant"), "lower_constant");
  c.upper_constant = number(field(j, "upper_constant"), "upper_constant");
  c.worst_coefficients = numbers(field(j, "worst_coefficients"), "worst_coefficients");
  c.points_checked = j.contains("points_checked") ? count(j["points_checked"], "points_checked") : 0;
  c.evidence = j.value("evidence", std::string());
}

void to_json(Json& j, const SquareSumVector& x) { j = Json{{"components", x.components}}; }

void from_json(const Json& j, SquareSumVector& x) {
  x.components = field(j, "components").get<std::vector<JamesVector>>();
  x.validate();
}

void to_json(Json& j, const OperatorMatrix& op) {
  Json compact = Json::array();
  for (const auto& row : op.compact_part) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(e ? Json(*e) : Json(nullptr));
    compact.push_back(std::move(r));
  }
  j = Json{{"scalar_part", matrix_to_json(op.scalar_part)}, {"compact_part", compact}};
}

void from_json(const Json& j, OperatorMatrix& op) {
  op.compact_part.clear();
  if (j.contains("compact_part") && !j["compact_part"].empty()) {
    const Json& cp = j["compact_part"];
    require(cp.is_array(), "compact_part must be an array of rows");
    for (const Json& row : cp) {
      require(row.is_array(), "compact_part rows must be arrays");
      std::vector<std::optional<FiniteOperatorOnJ>> r;
      for (const Json& e : row) r.push_back(e.is_null() ? std::nullopt : std::optional(e.get<FiniteOperatorOnJ>()));
      op.compact_part.push_back(std::move(r));
    }
  }
  if (j.contains("scalar_part")) {
    op.scalar_part = matrix_from_json(j["scalar_part"]);
  } else {
    const auto n = static_cast<Eigen::Index>(op.compact_part.size());
    require(n > 0, "operator matrix needs scalar_part or compact_part");
    op.scalar_part = Matrix::Zero(n, n);
  }
  op.validate();
}

void to_json(Json& j, const WitnessCertificate& c) {
  j = Json{{"s", matrix_to_json(c.s)},
           {"w", c.w},
           {"delta", c.delta},
           {"seed", c.seed},
           {"m", c.m},
           {"regular_norm", c.regular_norm},
           {"target", c.target},
           {"reported_bound", c.reported_bound},
           {"achieved_constant", c.achieved_constant},
           {"upper_estimate", maybe_infinite(c.upper_estimate)},
           {"meets_target", c.meets_target},
           {"embedding", c.embedding ? Json(*c.embedding) : Json(nullptr)},
           {"embedding_note", c.embedding_note},
           {"l", c.l},
           {"blocks", c.blocks},
           {"hump_bound", maybe_infinite(c.hump_bound)},
           {"witness", c.witness}};
}

void from_json(const Json& j, WitnessCertificate& c) {
  c.s = matrix_from_json(field(j, "s"));
  c.w = field(j, "w").get<OperatorMatrix>();
  c.delta = number(field(j, "delta"), "delta");
  c.seed = field(j, "seed").get<std::uint64_t>();
  c.m = count(field(j, "m"), "m");
  c.regular_norm = number(field(j, "regular_norm"), "regular_norm");
  c.target = number(field(j, "target"), "target");
  c.reported_bound = number(field(j, "reported_bound"), "reported_bound");
  c.achieved_constant = number(field(j, "achieved_constant"), "achieved_constant");
  c.upper_estimate = read_maybe_infinite(field(j, "upper_estimate"));
  c.meets_target = field(j, "meets_target").get<bool>();
  const Json& e = field(j, "embedding");
  c.embedding = e.is_null() ? std::nullopt : std::optional(e.get<EmbeddingCertificate>());
  c.embedding_note = j.value("embedding_note", std::string());
  c.l = count(field(j, "l"), "l");
  c.blocks = field(j, "blocks").get<ConvexBlockSystem>();
  c.hump_bound = read_maybe_infinite(field(j, "hump_bound"));
  c.witness = field(j, "witness").get<SquareSumVector>();
}

Json matrix_to_json(const Matrix& a) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < a.cols(); ++c) row.push_back(a(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  require(j.is_array() && !j.empty(), "matrix must be a nonempty array of rows");
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  require(cols > 0, "matrix rows must be nonempty arrays");
  Matrix a(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::vector<double> row = numbers(j[r], "matrix entry");
    require(row.size() == cols, "matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
  }
  validate_matrix(a);
  return a;
}

Matrix matrix_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool header = true;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        fail(ErrorCode::kInvalidArgument, "CSV cell '" + cell + "' is not a number");
      }
      require(cell.find_first_not_of(" \t", used) == std::string::npos, "CSV cell '" + cell + "' is not a number");
      row.push_back(v);
    }
    require(rows.empty() || row.size() == rows.front().size(), "CSV rows must have equal length");
    rows.push_back(std::move(row));
  }
  require(!rows.empty() && !rows.front().empty(), "CSV matrix has no data rows");
  Matrix a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  validate_matrix(a);
  return a;
}

std::string matrix_to_csv(const Matrix& a) {
  std::ostringstream out;
  out.precision(17);
  for (Eigen::Index c = 0; c < a.cols(); ++c) out << (c ? "," : "") << "c" << c + 1;
  out << "\n";
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) out << (c ? "," : "") << a(r, c);
    out << "\n";
  }
  return out.str();
}

Matrix parse_matrix(const std::string& text) {
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  require(first != std::string::npos, "empty matrix input");
  if (text[first] != '[' && text[first] != '{') return matrix_from_csv(text);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    fail(ErrorCode::kInvalidArgument, std::string("malformed JSON: ") + e.what());
  }
  return matrix_from_json(j.is_object() ? field(j, "matrix") : j);
}

OperatorMatrix parse_operator_matrix(const std::string& text) {
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  require(first != std::string::npos, "empty operator input");
  if (text[first] != '{') return OperatorMatrix::lift(parse_matrix(text));
  return parse_as<OperatorMatrix>(text);
}

JamesVector parse_vector(const std::string& text) { return parse_as<JamesVector>(text); }

WitnessCertificate parse_certificate(const std::string& text) { return parse_as<WitnessCertificate>(text); }

}  // namespace jamesop
