#include "mldeg/system_io.hpp"

#include <json.hpp>

#include <sstream>

namespace mldeg {

namespace {

using nlohmann::json;

BigRat rational_from_json(const json& node, const std::string& where) {
    if (node.is_string()) return parse_rational(node.get<std::string>());
    if (node.is_number_integer()) return BigRat(BigInt(node.get<long long>()));
    if (node.is_number_float()) return rational_from_double(node.get<double>());
    throw InputError(where + ": expected a rational string or number");
}

std::string decimal_or_fraction(const BigRat& r) {
    // Doubles round-trip through their shortest decimal form; emit that when
    // it reparses exactly, otherwise fall back to "p/q".
    const double d = rational_to_double(r);
    json probe = d;
    std::string text = probe.dump();
    try {
        if (parse_rational(text) == r) return text;
    } catch (const InputError&) {
        // scientific notation or similar: fall through
    }
    return format_rational(r);
}

}  // namespace

ParsedSystem parse_system(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("top level must be a JSON object");
    if (!doc.contains("n") || !doc["n"].is_number_integer())
        throw InputError("missing integer field 'n'");
    const int n = doc["n"].get<int>();
    if (n <= 0) throw InputError("'n' must be positive");
    if (!doc.contains("polynomials") || !doc["polynomials"].is_array() ||
        doc["polynomials"].empty())
        throw InputError("missing nonempty array 'polynomials'");

    std::vector<SparsePolynomial> polynomials;
    int index = 0;
    for (const auto& pnode : doc["polynomials"]) {
        const std::string where = "polynomial " + std::to_string(index);
        if (!pnode.is_object() || !pnode.contains("terms") || !pnode["terms"].is_array())
            throw InputError(where + ": expected an object with a 'terms' array");
        if (pnode["terms"].empty()) throw InputError(where + ": empty support");

        SparsePolynomial poly(n);
        for (const auto& tnode : pnode["terms"]) {
            if (!tnode.is_object() || !tnode.contains("exponent") ||
                !tnode["exponent"].is_array())
                throw InputError(where + ": term without an 'exponent' array");
            Exponent e;
            for (const auto& v : tnode["exponent"]) {
                if (!v.is_number_integer())
                    throw InputError(where + ": exponent entries must be integers");
                const int64_t value = v.get<int64_t>();
                if (value < 0) throw InputError(where + ": negative exponent");
                e.push_back(value);
            }
            if (static_cast<int>(e.size()) != n)
                throw InputError(where + ": exponent length " + std::to_string(e.size()) +
                                 " does not match n=" + std::to_string(n));
            BigRat re(0), im(0);
            if (tnode.contains("re")) re = rational_from_json(tnode["re"], where);
            if (tnode.contains("im")) im = rational_from_json(tnode["im"], where);
            if (poly.find_term(e) != nullptr)
                throw InputError(where + ": duplicate exponent in term list");
            poly.add_term(e, Coefficient::from_exact(std::move(re), std::move(im)));
        }
        if (poly.is_zero()) throw InputError(where + ": all coefficients are zero");
        polynomials.push_back(std::move(poly));
        ++index;
    }

    ParsedSystem out{PolynomialSystem(n, std::move(polynomials)), std::nullopt, std::nullopt};

    if (doc.contains("u")) {
        if (!doc["u"].is_array() || static_cast<int>(doc["u"].size()) != n)
            throw InputError("'u' must be an array of length n");
        std::vector<BigRat> u;
        for (const auto& v : doc["u"]) u.push_back(rational_from_json(v, "data vector"));
        try {
            out.data = DataVector::from_exact(std::move(u));
        } catch (const InputError&) {
            throw InputError("'u' entries must be strictly positive");
        }
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer())
            throw InputError("'seed' must be an unsigned integer");
        out.seed = doc["seed"].get<uint64_t>();
    }
    return out;
}

std::string serialize_system(const PolynomialSystem& system,
                             const std::optional<DataVector>& data,
                             std::optional<uint64_t> seed) {
    json doc;
    doc["n"] = system.variable_count();
    json polys = json::array();
    for (const auto& poly : system.polynomials()) {
        json terms = json::array();
        for (const auto& [e, c] : poly.terms()) {  // map order == lexicographic
            json term;
            term["exponent"] = e;
            const BigRat re = c.has_exact ? c.exact_re : rational_from_double(c.value.real());
            const BigRat im = c.has_exact ? c.exact_im : rational_from_double(c.value.imag());
            term["re"] = format_rational(re);
            term["im"] = format_rational(im);
            terms.push_back(std::move(term));
        }
        polys.push_back(json{{"terms", std::move(terms)}});
    }
    doc["polynomials"] = std::move(polys);
    if (data) {
        json u = json::array();
        for (const BigRat& x : data->exact) u.push_back(decimal_or_fraction(x));
        doc["u"] = std::move(u);
    }
    if (seed) doc["seed"] = *seed;
    return doc.dump(2) + "\n";
}

}  // namespace mldeg
