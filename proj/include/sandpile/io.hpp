#ifndef SANDPILE_IO_HPP
#define SANDPILE_IO_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sandpile/divisor.hpp"
#include "sandpile/jacobian.hpp"
#include "sandpile/trees.hpp"

namespace sandpile::io {

using nlohmann::json;

// Big integers travel as decimal strings. Plain JSON integers are accepted on input.
json integer_to_json(const Integer& x);
Integer integer_from_json(const json& j);

// {"values": ["1", "-2", ...]}
json divisor_to_json(const Divisor& d);
Divisor divisor_from_json(const json& j);

json script_to_json(const FiringScript& x);

// {"edges": [0, 3, ...]}
json tree_to_json(const SpanningTree& t);
SpanningTree tree_from_json(const json& j);

// JSON array permutation of 0..m-1.
EdgeOrder order_from_json(const json& j, std::size_t m);

// {"order": "...", "invariant_factors": [...], "generators": [divisor, ...]}
json presentation_to_json(const JacobianPresentation& p);

json read_json_file(const std::string& path);

} // namespace sandpile::io

#endif
