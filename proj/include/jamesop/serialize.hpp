#ifndef JAMESOP_SERIALIZE_HPP_
#define JAMESOP_SERIALIZE_HPP_

// JSON forms of the library types. Vectors are {basis, p, inner_dim, coeffs}
// and matrices are arrays of rows. Reading malformed input throws
// Error(kInvalidArgument).

#include <string>

#include <nlohmann/json.hpp>

#include "jamesop/blocks.hpp"
#include "jamesop/james.hpp"
#include "jamesop/lifted.hpp"
#include "jamesop/regular.hpp"

namespace jamesop {

using Json = nlohmann::json;

void to_json(Json& j, const JamesVector& v);
void from_json(const Json& j, JamesVector& v);
void to_json(Json& j, const BidualVector& v);
void from_json(const Json& j, BidualVector& v);
void to_json(Json& j, const ConvexBlockSystem& b);
void from_json(const Json& j, ConvexBlockSystem& b);
void to_json(Json& j, const FiniteOperatorOnJ& op);
void from_json(const Json& j, FiniteOperatorOnJ& op);
void to_json(Json& j, const EmbeddingCertificate& c);
void from_json(const Json& j, EmbeddingCertificate& c);
void to_json(Json& j, const SquareSumVector& x);
void from_json(const Json& j, SquareSumVector& x);
void to_json(Json& j, const OperatorMatrix& op);
void from_json(const Json& j, OperatorMatrix& op);
void to_json(Json& j, const WitnessCertificate& c);
void from_json(const Json& j, WitnessCertificate& c);

Json matrix_to_json(const Matrix& a);
Matrix matrix_from_json(const Json& j);

// CSV with one header row, then one row of numbers per matrix row.
Matrix matrix_from_csv(const std::string& text);
std::string matrix_to_csv(const Matrix& a);

// Accepts JSON (array of rows, or an object with a "matrix" field) or CSV.
Matrix parse_matrix(const std::string& text);
// JSON operator matrix; a plain matrix is taken as the scalar part.
OperatorMatrix parse_operator_matrix(const std::string& text);
JamesVector parse_vector(const std::string& text);
WitnessCertificate parse_certificate(const std::string& text);

}  // namespace jamesop

#endif  // JAMESOP_SERIALIZE_HPP_
