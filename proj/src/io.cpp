#include "sandpile/io.hpp"

#include <algorithm>
#include <fstream>

#include "sandpile/error.hpp"

namespace sandpile::io {

json integer_to_json(const Integer& x) { return x.get_str(); }

Integer integer_from_json(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        Integer x;
        const std::string digits = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? s.substr(1) : s;
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || x.set_str(s[0] == '+' ? digits : s, 10) != 0)
            throw Error(ErrorKind::ParseError, "not a decimal integer: \"" + s + "\"");
        return x;
    }
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
        return Integer(std::to_string(j.get<std::int64_t>()));
    }
    throw Error(ErrorKind::ParseError, "expected an integer or decimal string, got " + j.dump());
}

json divisor_to_json(const Divisor& d) {
    json values = json::array();
    for (const auto& x : d.values) values.push_back(integer_to_json(x));
    return json{{"values", values}};
}

Divisor divisor_from_json(const json& j) {
    if (!j.is_object() || !j.contains("values") || !j["values"].is_array())
        throw Error(ErrorKind::ParseError, "divisor must be an object {\"values\": [...]}");
    Divisor d;
    for (const auto& x : j["values"]) d.values.push_back(integer_from_json(x));
    return d;
}

json script_to_json(const FiringScript& x) {
    json values = json::array();
    for (const auto& c : x.counts) values.push_back(integer_to_json(c));
    return json{{"values", values}};
}

json tree_to_json(const SpanningTree& t) { return json{{"edges", t.edges}}; }

SpanningTree tree_from_json(const json& j) {
    if (!j.is_object() || !j.contains("edges") || !j["edges"].is_array())
        throw Error(ErrorKind::ParseError, "tree must be an object {\"edges\": [...]}");
    SpanningTree t;
    for (const auto& e : j["edges"]) {
        if (!e.is_number_unsigned()) throw Error(ErrorKind::ParseError, "edge ids must be nonnegative integers");
        t.edges.push_back(e.get<EdgeId>());
    }
    std::sort(t.edges.begin(), t.edges.end());
    return t;
}

EdgeOrder order_from_json(const json& j, std::size_t m) {
    if (!j.is_array()) throw Error(ErrorKind::ParseError, "edge order must be a JSON array");
    std::vector<EdgeId> seq;
    for (const auto& e : j) {
        if (!e.is_number_unsigned()) throw Error(ErrorKind::ParseError, "edge order entries must be nonnegative integers");
        seq.push_back(e.get<EdgeId>());
    }
    return EdgeOrder(m, seq);
}

json presentation_to_json(const JacobianPresentation& p) {
    json factors = json::array();
    for (const auto& f : p.invariant_factors) factors.push_back(integer_to_json(f));
    json generators = json::array();
    for (const auto& g : p.generators) generators.push_back(divisor_to_json(g));
    return json{{"order", integer_to_json(p.order)}, {"invariant_factors", factors}, {"generators", generators}};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
}

} // namespace sandpile::io
