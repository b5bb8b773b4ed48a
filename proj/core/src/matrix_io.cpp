#include "cgauss/matrix_io.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace cgauss {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// "name(inner)" -> inner, or nullopt when the shape does not match.
std::optional<std::string_view> call_body(std::string_view s, std::string_view name) {
    if (s.size() < name.size() + 2) return std::nullopt;
    if (s.substr(0, name.size()) != name) return std::nullopt;
    std::string_view rest = trim(s.substr(name.size()));
    if (rest.empty() || rest.front() != '(' || rest.back() != ')') return std::nullopt;
    return trim(rest.substr(1, rest.size() - 2));
}

long parse_long(std::string_view s, const char* what) {
    try {
        std::size_t used = 0;
        long v = std::stol(std::string(s), &used);
        if (used != s.size()) throw ParseError(std::string("trailing characters in ") + what);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError(std::string("malformed ") + what + ": \"" + std::string(s) + "\"");
    }
}

} // namespace

ScalarSpec parse_scalar_expr(std::string_view text) {
    std::string_view s = trim(text);
    if (auto body = call_body(s, "pow2")) {
        long e = parse_long(*body, "pow2 exponent");
        if (e < -1000000 || e > 1000000) throw ParseError("pow2 exponent out of range");
        return ScalarSpec{pow2(static_cast<int>(e)), 1};
    }
    if (auto body = call_body(s, "delayed")) {
        auto comma = body->rfind(',');
        if (comma == std::string_view::npos) throw ParseError("delayed(p/q, c) needs a cost");
        Rational v = Rational::parse(trim(body->substr(0, comma)));
        long cost = parse_long(trim(body->substr(comma + 1)), "delayed cost");
        if (cost < 1) throw ParseError("delayed cost must be >= 1");
        return ScalarSpec{std::move(v), cost};
    }
    return ScalarSpec{Rational::parse(s), 1};
}

namespace {

ScalarSpec parse_entry(const json& e) {
    if (e.is_string()) return parse_scalar_expr(e.get<std::string>());
    if (e.is_number_integer()) return ScalarSpec{Rational(e.get<long>()), 1};
    if (e.is_object()) {
        if (!e.contains("value")) throw ParseError("entry object needs a \"value\" field");
        ScalarSpec spec = parse_entry(e.at("value"));
        if (e.contains("cost")) {
            long cost = e.at("cost").get<long>();
            if (cost < 1) throw ParseError("entry cost must be >= 1");
            spec.cost = cost;
        }
        return spec;
    }
    throw ParseError("matrix entry must be a string, an integer or {\"value\", \"cost\"}");
}

json parse_document(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ParseError("invalid JSON");
    return doc;
}

} // namespace

CMatrix MatrixSpec::to_cmatrix() const {
    std::vector<CReal> out;
    out.reserve(entries.size());
    for (const auto& s : entries) out.push_back(s.to_creal());
    return CMatrix(dim, std::move(out));
}

RationalMatrix MatrixSpec::to_rational_matrix() const {
    std::vector<Rational> out;
    out.reserve(entries.size());
    for (const auto& s : entries) out.push_back(s.value);
    return RationalMatrix(dim, std::move(out));
}

bool MatrixSpec::has_costs() const {
    for (const auto& s : entries)
        if (s.cost > 1) return true;
    return false;
}

MatrixSpec parse_matrix_json(const std::string& text) {
    json doc = parse_document(text);
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("entries"))
        throw ParseError("matrix file needs {\"dim\": n, \"entries\": [[...], ...]}");
    MatrixSpec spec;
    spec.dim = doc.at("dim").get<int>();
    if (spec.dim < 1) throw ParseError("matrix dimension must be >= 1");
    const json& rows = doc.at("entries");
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(spec.dim))
        throw ParseError("\"entries\" must hold exactly dim rows");
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(spec.dim))
            throw ParseError("every row must hold exactly dim entries");
        for (const auto& e : row) spec.entries.push_back(parse_entry(e));
    }
    return spec;
}

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

MatrixSpec load_matrix_file(const std::string& path) {
    return parse_matrix_json(slurp(path));
}

std::vector<ScalarSpec> parse_vector_json(const std::string& text) {
    json doc = parse_document(text);
    const json* arr = nullptr;
    if (doc.is_array()) arr = &doc;
    else if (doc.is_object() && doc.contains("entries") && doc.at("entries").is_array())
        arr = &doc.at("entries");
    else
        throw ParseError("vector file must be [e, ...] or {\"entries\": [e, ...]}");
    if (arr->empty()) throw ParseError("vector file holds no entries");
    std::vector<ScalarSpec> out;
    out.reserve(arr->size());
    for (const auto& e : *arr) out.push_back(parse_entry(e));
    return out;
}

std::vector<ScalarSpec> load_vector_file(const std::string& path) {
    return parse_vector_json(slurp(path));
}

std::vector<CReal> to_creals(const std::vector<ScalarSpec>& specs) {
    std::vector<CReal> out;
    out.reserve(specs.size());
    for (const auto& s : specs) out.push_back(s.to_creal());
    return out;
}

} // namespace cgauss
