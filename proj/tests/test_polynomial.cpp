#include "doctest.h"
#include "mldeg/polynomial.hpp"
#include "mldeg/system_io.hpp"

#include <sstream>

using namespace mldeg;

namespace {

// f = 2x^4 + 3y^3 - 5 in two variables.
PolynomialSystem curve_system() {
    SparsePolynomial f(2);
    f.add_term({4, 0}, Coefficient::from_int(2));
    f.add_term({0, 3}, Coefficient::from_int(3));
    f.add_term({0, 0}, Coefficient::from_int(-5));
    return PolynomialSystem(2, {f});
}

const char* kCurveJson = R"({
  "n": 2,
  "polynomials": [
    {"terms": [
      {"exponent": [4, 0], "re": "2", "im": "0"},
      {"exponent": [0, 3], "re": "3", "im": "0"},
      {"exponent": [0, 0], "re": "-5", "im": "0"}
    ]}
  ]
})";

}  // namespace

TEST_CASE("parse_system reads the plane curve document") {
    ParsedSystem parsed = parse_system(kCurveJson);
    const auto& sys = parsed.system;
    CHECK(sys.variable_count() == 2);
    CHECK(sys.equation_count() == 1);
    const auto& f = sys.polynomial(0);
    CHECK(f.term_count() == 3);
    REQUIRE(f.find_term({4, 0}) != nullptr);
    CHECK(f.find_term({4, 0})->exact_re == BigRat(2));
    CHECK(f.find_term({0, 3})->exact_re == BigRat(3));
    CHECK(f.find_term({0, 0})->exact_re == BigRat(-5));
}

TEST_CASE("parse_system rejects bad documents with the polynomial index") {
    const char* negative = R"({"n":2,"polynomials":[{"terms":[
        {"exponent":[-1,0],"re":"1","im":"0"}]}]})";
    CHECK_THROWS_WITH_AS(parse_system(negative),
                         doctest::Contains("polynomial 0"), InputError);
    CHECK_THROWS_WITH_AS(parse_system(negative),
                         doctest::Contains("negative exponent"), InputError);

    const char* mismatch = R"({"n":3,"polynomials":[{"terms":[
        {"exponent":[1,0],"re":"1","im":"0"}]}]})";
    CHECK_THROWS_AS(parse_system(mismatch), InputError);

    const char* empty = R"({"n":1,"polynomials":[{"terms":[]}]})";
    CHECK_THROWS_WITH_AS(parse_system(empty), doctest::Contains("empty support"),
                         InputError);

    CHECK_THROWS_AS(parse_system("{not json"), InputError);
}

TEST_CASE("parse_system accepts the smallest valid system") {
    ParsedSystem p = parse_system(R"({"n":1,"polynomials":[{"terms":[
        {"exponent":[1],"re":"1","im":"0"},
        {"exponent":[0],"re":"-1","im":"0"}]}]})");
    CHECK(p.system.polynomial(0).term_count() == 2);
    CHECK(p.system.polynomial(0).find_term({1})->exact_re == BigRat(1));
    CHECK(p.system.polynomial(0).find_term({0})->exact_re == BigRat(-1));
}

TEST_CASE("serialize then parse is the identity on exact coefficients") {
    SeededRng rng(314);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(1, 3));
        const int k = static_cast<int>(rng.uniform_int(1, 3));
        std::vector<SparsePolynomial> polys;
        for (int j = 0; j < k; ++j) {
            SparsePolynomial f(n);
            const int count = static_cast<int>(rng.uniform_int(1, 4));
            for (int t = 0; t < count; ++t) {
                Exponent e(n);
                for (auto& v : e) v = rng.uniform_int(0, 5);
                f.add_term(e, Coefficient::from_exact(
                                  BigRat(rng.uniform_int(-9, 9), rng.uniform_int(1, 7)),
                                  BigRat(rng.uniform_int(-9, 9), rng.uniform_int(1, 7))));
            }
            if (f.is_zero()) f.add_term(Exponent(n, 0), Coefficient::from_int(1));
            polys.push_back(std::move(f));
        }
        PolynomialSystem sys(n, polys);
        std::vector<double> uvals(n);
        for (auto& v : uvals) v = 0.5 + 0.25 * static_cast<double>(rng.uniform_int(1, 3));
        auto u = DataVector::from_doubles(uvals);

        const std::string text = serialize_system(sys, u, 77);
        ParsedSystem back = parse_system(text);
        CHECK(back.seed == 77);
        REQUIRE(back.system.equation_count() == sys.equation_count());
        for (int j = 0; j < k; ++j) {
            const auto& a = sys.polynomial(j).terms();
            const auto& b = back.system.polynomial(j).terms();
            REQUIRE(a.size() == b.size());
            auto ia = a.begin();
            auto ib = b.begin();
            for (; ia != a.end(); ++ia, ++ib) {
                CHECK(ia->first == ib->first);
                CHECK(ia->second.exact_re == ib->second.exact_re);
                CHECK(ia->second.exact_im == ib->second.exact_im);
            }
        }
        REQUIRE(back.data.has_value());
        for (int i = 0; i < n; ++i) CHECK(back.data->exact[i] == u.exact[i]);
    }
}

TEST_CASE("partial derivative follows the drop/scale rule") {
    const auto sys = curve_system();
    SparsePolynomial dx = partial_derivative(sys.polynomial(0), 0);
    CHECK(dx.term_count() == 1);
    REQUIRE(dx.find_term({3, 0}) != nullptr);
    CHECK(dx.find_term({3, 0})->exact_re == BigRat(8));

    SparsePolynomial cubic(2);
    cubic.add_term({0, 3}, Coefficient::from_int(3));
    CHECK(partial_derivative(cubic, 0).is_zero());

    SparsePolynomial xy(2);
    xy.add_term({1, 1}, Coefficient::from_int(1));
    SparsePolynomial dy = partial_derivative(xy, 1);
    CHECK(dy.term_count() == 1);
    CHECK(dy.find_term({1, 0})->exact_re == BigRat(1));
}

TEST_CASE("partial derivative support rule holds on random polynomials") {
    SeededRng rng(2718);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = static_cast<int>(rng.uniform_int(1, 4));
        SparsePolynomial f(n);
        const int count = static_cast<int>(rng.uniform_int(1, 6));
        for (int t = 0; t < count; ++t) {
            Exponent e(n);
            for (auto& v : e) v = rng.uniform_int(0, 4);
            f.add_term(e, Coefficient::from_value(rng.unit_circle()));
        }
        if (f.is_zero()) continue;
        const int i = static_cast<int>(rng.uniform_int(0, n - 1));
        SparsePolynomial df = partial_derivative(f, i);

        std::set<Exponent> expected;
        for (const auto& [e, c] : f.terms()) {
            if (e[i] == 0) continue;
            Exponent shifted = e;
            shifted[i] -= 1;
            expected.insert(shifted);
        }
        std::set<Exponent> actual;
        for (const auto& [e, c] : df.terms()) actual.insert(e);
        CHECK(expected == actual);
    }
}

TEST_CASE("evaluation fixtures") {
    const auto sys = curve_system();
    std::vector<Complex> ones = {Complex(1, 0), Complex(1, 0)};
    CHECK(std::abs(evaluate(sys.polynomial(0), ones)) == 0.0);

    SparsePolynomial line(1);
    line.add_term({1}, Coefficient::from_int(1));
    line.add_term({0}, Coefficient::from_int(-1));
    std::vector<Complex> one = {Complex(1, 0)};
    CHECK(std::abs(evaluate(line, one)) == 0.0);

    SparsePolynomial xy(2);
    xy.add_term({1, 1}, Coefficient::from_int(1));
    std::vector<Complex> pt = {Complex(2, 0), Complex(3, 0)};
    CHECK(std::abs(evaluate(xy, pt) - Complex(6, 0)) < 1e-14);
}

TEST_CASE("full-monomial multiplication shifts exponents only") {
    const auto sys = curve_system();
    PolynomialSystem hat = multiply_by_full_monomial(sys);
    const auto& g = hat.polynomial(0);
    CHECK(g.term_count() == 3);
    CHECK(g.find_term({5, 1})->exact_re == BigRat(2));
    CHECK(g.find_term({1, 4})->exact_re == BigRat(3));
    CHECK(g.find_term({1, 1})->exact_re == BigRat(-5));

    SparsePolynomial one(2);
    one.add_term({0, 0}, Coefficient::from_int(1));
    PolynomialSystem constant(2, {one});
    const auto& mono = multiply_by_full_monomial(constant).polynomial(0);
    CHECK(mono.term_count() == 1);
    CHECK(mono.find_term({1, 1}) != nullptr);

    SparsePolynomial x(1);
    x.add_term({1}, Coefficient::from_int(1));
    PolynomialSystem sx(1, {x});
    const auto twice = multiply_by_full_monomial(multiply_by_full_monomial(sx));
    CHECK(twice.polynomial(0).find_term({3}) != nullptr);
}

TEST_CASE("hat evaluation identity holds to machine precision") {
    const auto sys = curve_system();
    const auto hat = multiply_by_full_monomial(sys);
    SeededRng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Complex> p = {rng.unit_circle() * rng.uniform_real(0.5, 2.0),
                                  rng.unit_circle() * rng.uniform_real(0.5, 2.0)};
        Complex lhs = evaluate(hat.polynomial(0), p);
        Complex rhs = p[0] * p[1] * evaluate(sys.polynomial(0), p);
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
    }
}

TEST_CASE("generic sampling is deterministic with unit-circle coefficients") {
    MonomialSupport support({{4, 0}, {0, 3}, {0, 0}}, "f1");
    PolynomialSystem a = sample_generic_system({support}, RandomSeed{1});
    PolynomialSystem b = sample_generic_system({support}, RandomSeed{1});
    CHECK(a.polynomial(0).term_count() == 3);
    for (const auto& [e, c] : a.polynomial(0).terms()) {
        CHECK(std::abs(std::abs(c.value) - 1.0) < 1e-14);
        const Coefficient* other = b.polynomial(0).find_term(e);
        REQUIRE(other != nullptr);
        CHECK(c.value.real() == other->value.real());
        CHECK(c.value.imag() == other->value.imag());
    }

    MonomialSupport s1({{1, 0}, {0, 1}, {0, 0}}, "f1");
    MonomialSupport s2({{2, 0}, {0, 2}, {0, 0}}, "f2");
    PolynomialSystem two = sample_generic_system({s1, s2}, RandomSeed{7});
    CHECK(two.equation_count() == 2);
    CHECK(two.polynomial(0).term_count() == 3);
    CHECK(two.polynomial(1).term_count() == 3);

    CHECK_THROWS_AS(sample_generic_system({}, RandomSeed{1}), InputError);
}

TEST_CASE("system validation rejects zero polynomials and mismatches") {
    SparsePolynomial zero(2);
    CHECK_THROWS_WITH_AS(PolynomialSystem(2, {zero}), doctest::Contains("polynomial 0"),
                         InputError);

    SparsePolynomial wrong(3);
    wrong.add_term({1, 0, 0}, Coefficient::from_int(1));
    SparsePolynomial fine(2);
    fine.add_term({1, 0}, Coefficient::from_int(1));
    CHECK_THROWS_WITH_AS(PolynomialSystem(2, {fine, wrong}),
                         doctest::Contains("polynomial 1"), InputError);

    CHECK_THROWS_AS(PolynomialSystem(2, {}), InputError);
    CHECK_THROWS_AS(DataVector::from_doubles({1.0, 0.0}), InputError);
    CHECK_THROWS_AS(DataVector::from_doubles({-0.5}), InputError);
}
