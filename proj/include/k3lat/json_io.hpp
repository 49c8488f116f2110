#pragma once

// JSON encodings. Integers become numbers when they fit in 64 bits and
// decimal strings otherwise; rationals are "p/q" strings.

#include <json.hpp>
#include <string>

#include "k3lat/discform.hpp"
#include "k3lat/mukai.hpp"
#include "k3lat/nikulin.hpp"

namespace k3lat::io {

using json = nlohmann::json;

// Carries the line and column of the offending byte.
class ParseError : public InvalidInput {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column);
    std::size_t line, column;
};

json parse_json(const std::string& text, const std::string& source_name);
// A path, "-" for stdin, or inline JSON starting with '[' or '{'.
json load_json_arg(const std::string& arg);

json to_json(const Integer& x);
json to_json(const Rational& x);
json to_json(const IntVector& v);
json to_json(const IntMatrix& m);
json to_json(const MukaiVector& v);
json to_json(const DiscriminantForm& a);
json to_json(const FiniteSubgroup& h);
json to_json(const GluingData& g);
json to_json(const ExtensionCertificate& c);
json columns_json(const SublatticeEmbedding& e);

Integer integer_from(const json& j, const std::string& what);
IntVector vector_from(const json& j, const std::string& what);
IntMatrix matrix_from(const json& j, const std::string& what);
// {"gram": [[...]]} or a bare matrix.
IntMatrix gram_from(const json& j);
// {"gram": ..., "h_index": k}; h_index may be omitted or null.
NeronSeveriData ns_from(const json& j);

// Comma-separated integers, e.g. "1,0,-1".
IntVector parse_int_list(const std::string& s);

} // namespace k3lat::io
