#pragma once

// JSON forms of the library objects (schema "sidon-lattice/1"). Integers
// beyond 2^53 are written as decimal strings; readers accept both.

#include <numeric>
#include <string>
#include <vector>

#include "json.hpp"

#include "sidon/channel.hpp"
#include "sidon/codes.hpp"
#include "sidon/search.hpp"
#include "sidon/sets.hpp"
#include "sidon/verify.hpp"

namespace sidon::io {

using nlohmann::json;

inline constexpr const char* kSchema = "sidon-lattice/1";

inline json big_to_json(const BigInt& x) {
    static const BigInt safe = BigInt(1) << 53;
    if (abs(x) <= safe) return x.convert_to<std::int64_t>();
    return x.str();
}

inline BigInt big_from_json(const json& j) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return BigInt(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    fail(ErrorCode::ParseError, "expected an integer, got " + j.dump());
}

inline std::int64_t int_from_json(const json& j, const char* what) {
    if (!j.is_number_integer() && !j.is_string()) fail(ErrorCode::ParseError, std::string("expected integer for ") + what);
    return to_int64(big_from_json(j));
}

inline json rational_to_json(const Rational& q) {
    json out;
    out["num"] = big_to_json(numerator(q));
    out["den"] = big_to_json(denominator(q));
    out["text"] = q.str();
    out["approx"] = q.convert_to<double>();
    return out;
}

inline json to_json(const AbelianGroup& g) {
    return {{"invariant_factors", g.factors()}, {"order", g.order()}, {"cyclic", g.is_cyclic()}};
}

inline json element_to_json(const AbelianGroup& g, const GroupElement& e) {
    if (g.rank() == 1) return e.coords[0];
    return e.coords;
}

inline json elements_to_json(const AbelianGroup& g, const std::vector<GroupElement>& elems) {
    json arr = json::array();
    for (const auto& e : elems) arr.push_back(element_to_json(g, e));
    return arr;
}

inline AbelianGroup group_from_json(const json& j) {
    const json& f = j.is_object() ? j.at("invariant_factors") : j;
    if (!f.is_array()) fail(ErrorCode::ParseError, "group must be a list of invariant factors");
    std::vector<std::int64_t> factors;
    for (const auto& x : f) factors.push_back(int_from_json(x, "invariant factor"));
    return AbelianGroup::make(factors);
}

inline GroupElement element_from_json(const AbelianGroup& g, const json& j) {
    if (j.is_array()) {
        std::vector<std::int64_t> c;
        for (const auto& x : j) c.push_back(int_from_json(x, "element coordinate"));
        return g.element(c);
    }
    const std::int64_t x = int_from_json(j, "element");
    if (g.rank() == 0) {
        require(x == 0, ErrorCode::ParseError, "trivial group has only the zero element");
        return g.zero();
    }
    require(g.rank() == 1, ErrorCode::ParseError, "scalar elements are only allowed in cyclic groups");
    return g.element({x});
}

inline std::vector<GroupElement> elements_from_json(const AbelianGroup& g, const json& j) {
    if (!j.is_array()) fail(ErrorCode::ParseError, "elements must be an array");
    std::vector<GroupElement> out;
    for (const auto& x : j) out.push_back(element_from_json(g, x));
    return out;
}

inline json to_json(const DifferenceSet& d) {
    return {{"schema", kSchema},
            {"type", "difference-set"},
            {"group", to_json(d.group)},
            {"elements", elements_to_json(d.group, d.elements)},
            {"params", {{"v", d.params.v}, {"k", d.params.k}, {"lambda", d.params.lambda}}},
            {"order_n", d.order()}};
}

inline json to_json(const BhSet& b) {
    return {{"schema", kSchema},
            {"type", "bh-set"},
            {"group", to_json(b.group)},
            {"h", b.h},
            {"elements", elements_to_json(b.group, b.elements)}};
}

/// A set document: the group, its elements, and h for B_h sets.
struct SetDocument {
    std::string type;
    AbelianGroup group;
    std::vector<GroupElement> elements;
    std::int64_t h = 2;
};

inline SetDocument set_from_json(const json& j) {
    try {
        SetDocument doc;
        doc.type = j.value("type", std::string("difference-set"));
        doc.group = group_from_json(j.at("group"));
        doc.elements = elements_from_json(doc.group, j.at("elements"));
        if (j.contains("h")) doc.h = int_from_json(j.at("h"), "h");
        return doc;
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, std::string("malformed set document: ") + e.what());
    }
}

inline json matrix_to_json(const IntegerMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(big_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline IntegerMatrix matrix_from_json(const json& j) {
    if (!j.is_array()) fail(ErrorCode::ParseError, "matrix must be an array of rows");
    std::vector<std::vector<BigInt>> rows;
    for (const auto& r : j) {
        if (!r.is_array()) fail(ErrorCode::ParseError, "matrix row must be an array");
        std::vector<BigInt> row;
        for (const auto& x : r) row.push_back(big_from_json(x));
        rows.push_back(std::move(row));
    }
    return IntegerMatrix::from_rows(rows);
}

inline json rational_matrix_to_json(const RationalMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Parity row of a lattice code with cyclic quotient: for codes built from a
/// cyclic set it is the set itself (minus 0); otherwise the coset images of
/// the unit vectors.
inline std::optional<std::vector<std::int64_t>> parity_row(const LatticeCode& code) {
    const auto& src = code.source();
    if (src.group_factors.size() == 1 && !src.elements.empty() && code.det_abs() == src.group_factors[0]) {
        std::vector<std::int64_t> row;
        for (std::size_t i = 1; i < src.elements.size(); ++i) row.push_back(src.elements[i].coords[0]);
        return row;
    }
    const auto& g = code.quotient().group();
    if (g.rank() != 1) return std::nullopt;
    std::vector<std::int64_t> row;
    for (std::size_t j = 0; j < code.n(); ++j) row.push_back(code.quotient().unit_image(j).coords[0]);
    return row;
}

inline json to_json(const LatticeCode& code) {
    json src = {{"kind", code.source().kind}};
    if (!code.source().group_factors.empty() || !code.source().elements.empty()) {
        AbelianGroup g = AbelianGroup::make(code.source().group_factors);
        src["group"] = g.factors();
        src["elements"] = elements_to_json(g, code.source().elements);
    }
    if (code.source().h) src["h"] = *code.source().h;
    if (code.source().r) src["r"] = *code.source().r;
    json out = {{"schema", kSchema},
                {"type", "code"},
                {"v", big_to_json(code.det_abs())},
                {"n", code.n()},
                {"basis", matrix_to_json(code.basis())},
                {"quotient", code.quotient().group().factors()},
                {"source", std::move(src)}};
    if (auto row = parity_row(code))
        out["parity_row"] = *row;
    else
        out["parity_row"] = nullptr;
    return out;
}

inline LatticeCode code_from_json(const json& j) {
    try {
        IntegerMatrix basis = matrix_from_json(j.at("basis"));
        require(basis.square() && basis.rows() >= 1, ErrorCode::ParseError, "basis must be a nonempty square matrix");
        if (j.contains("n"))
            require(int_from_json(j.at("n"), "n") == static_cast<std::int64_t>(basis.rows()), ErrorCode::ParseError,
                    "n does not match the basis size");
        CodeSource src;
        if (j.contains("source")) {
            const json& s = j.at("source");
            src.kind = s.value("kind", std::string("explicit"));
            if (s.contains("group")) {
                AbelianGroup g = group_from_json(s.at("group"));
                src.group_factors = g.factors();
                if (s.contains("elements")) src.elements = elements_from_json(g, s.at("elements"));
            }
            if (s.contains("h")) src.h = int_from_json(s.at("h"), "h");
            if (s.contains("r")) src.r = int_from_json(s.at("r"), "r");
        }
        LatticeCode code(std::move(basis), std::move(src));
        if (j.contains("v"))
            require(big_from_json(j.at("v")) == code.det_abs(), ErrorCode::ParseError,
                    "v does not match |det(basis)|");
        return code;
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, std::string("malformed code document: ") + e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) throw;
        fail(ErrorCode::ParseError, std::string("invalid code document: ") + e.what());
    }
}

/// Finite code over Z_v for a code document with a parity row, kept in the
/// document's coordinate order. None when the row is absent or its first
/// entry is not a unit (systematic encoding needs to solve for x_1).
inline std::optional<FiniteCode> finite_code_from_json(const json& j) {
    if (!j.contains("parity_row") || j.at("parity_row").is_null()) return std::nullopt;
    FiniteCode c;
    c.v = int_from_json(j.at("v"), "v");
    if (c.v < 2 || !j.at("parity_row").is_array()) return std::nullopt;
    for (const auto& x : j.at("parity_row")) c.parity_row.push_back(floor_mod(int_from_json(x, "parity entry"), c.v));
    c.n = static_cast<std::int64_t>(c.parity_row.size());
    if (c.n == 0 || std::gcd(c.parity_row[0], c.v) != 1) return std::nullopt;
    c.d_elements.push_back(0);
    c.d_elements.insert(c.d_elements.end(), c.parity_row.begin(), c.parity_row.end());
    const IntegerMatrix basis = matrix_from_json(j.at("basis"));
    require(static_cast<std::int64_t>(basis.cols()) == c.n, ErrorCode::ParseError, "parity row length differs from n");
    for (std::size_t i = 0; i < basis.rows(); ++i) {
        BigInt s = 0;
        for (std::size_t t = 0; t < basis.cols(); ++t) s += basis(i, t) * c.parity_row[t];
        require(floor_mod(s, BigInt(c.v)) == 0, ErrorCode::ParseError, "basis row outside the parity-check kernel");
    }
    return c;
}

inline json to_json(const SearchReport& r) {
    json out = {{"schema", kSchema},
                {"type", "search-report"},
                {"kind", r.kind},
                {"parameters", r.parameters},
                {"nodes_explored", r.nodes_explored},
                {"exhaustive", r.exhaustive}};
    switch (r.status()) {
    case SearchStatus::Found: out["status"] = "found"; break;
    case SearchStatus::ExhaustiveAbsent: out["status"] = "exhaustive-absent"; break;
    case SearchStatus::BudgetExhausted: out["status"] = "budget-exhausted"; break;
    }
    if (r.found) {
        out["found"] = {{"group", to_json(r.found->group)}, {"elements", elements_to_json(r.found->group, r.found->elements)}};
    } else {
        out["found"] = nullptr;
    }
    if (r.phi) out["phi"] = *r.phi;
    return out;
}

inline json to_json(const CoverReport& c, const AbelianGroup& quotient) {
    json out = {{"type", "cover-report"}, {"r", c.r}, {"is_cover", c.is_cover}};
    out["i"] = c.i ? json(*c.i) : json("nonuniform");
    out["j"] = c.j ? json(*c.j) : json("nonuniform");
    out["witness"] = c.witness ? element_to_json(quotient, *c.witness) : json(nullptr);
    return out;
}

inline json to_json(const BoundReport& b) {
    json out = {{"type", "bound-report"},
                {"formula_id", b.formula_id},
                {"inputs", b.inputs},
                {"direction", b.is_lower_bound ? "lower" : "upper"},
                {"lower", rational_to_json(b.lower)},
                {"upper", rational_to_json(b.upper)}};
    out["exact"] = b.exact ? rational_to_json(*b.exact) : json(nullptr);
    if (b.precision_digits) out["precision_digits"] = b.precision_digits;
    return out;
}

inline json to_json(const TrialStats& s, const ChannelConfig& cfg) {
    json config = {{"r_plus", cfg.r_plus},
                   {"r_minus", cfg.r_minus},
                   {"mode", cfg.mode == ErrorMode::UniformInShape ? "uniform" : "overload"},
                   {"seed", cfg.seed},
                   {"trials", cfg.trials}};
    if (cfg.mode == ErrorMode::Overload) config["extra"] = cfg.extra;
    return {{"type", "trial-stats"},
            {"trials", s.trials},
            {"corrected", s.corrected},
            {"detected", s.detected},
            {"miscorrected", s.miscorrected},
            {"config", std::move(config)}};
}

inline json to_json(const PpcTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows)
        rows.push_back({{"n", r.n},
                        {"prime_power", r.prime_power},
                        {"found", r.found},
                        {"exhaustive", r.exhaustive},
                        {"agrees", r.agrees()},
                        {"nodes", r.nodes},
                        {"set", r.set}});
    return {{"type", "ppc-table"}, {"rows", std::move(rows)}, {"consistent", t.consistent()}};
}

inline json to_json(const std::vector<CyclicityRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"label", r.label},
                       {"n", r.n},
                       {"det", big_to_json(r.det)},
                       {"perfect", r.perfect},
                       {"in_scope", r.in_scope},
                       {"quotient", r.quotient_factors},
                       {"cyclic", r.cyclic},
                       {"max_period", r.max_period},
                       {"full_period", r.full_period}});
    return {{"type", "cyclicity-report"}, {"rows", std::move(arr)}};
}

} // namespace sidon::io
