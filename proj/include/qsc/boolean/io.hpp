#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "qsc/boolean/function.hpp"

namespace qsc {

// {"n": .., "codomain": "pm1"|"01"|"real", "values": [...]}
nlohmann::json to_json(const BooleanFunction& f);
BooleanFunction function_from_json(const nlohmann::json& j);

// "BFN1", u32 n, then 2^n little-endian f64. The codomain is not stored;
// the reader picks pm1 if every entry is +-1, 01 if every entry is 0/1,
// real otherwise.
void write_bfn1(std::ostream& os, const BooleanFunction& f);
BooleanFunction read_bfn1(std::istream& is);
Codomain infer_codomain(const std::vector<double>& values);

// by extension: .json or .bfn
BooleanFunction load_function(const std::string& path);
void save_function(const std::string& path, const BooleanFunction& f);

} // namespace qsc
