#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mldeg/numeric.hpp"
#include "mldeg/rng.hpp"

namespace mldeg {

// Exponent vector of a monomial; entries are nonnegative machine integers
// with overflow-checked arithmetic wherever they are combined.
using Exponent = std::vector<int64_t>;

struct MonomialSupport {
    std::vector<Exponent> exponents;  // sorted, duplicate-free, equal length
    std::string label;

    MonomialSupport() = default;
    MonomialSupport(std::vector<Exponent> exps, std::string name);
    int dimension() const { return exponents.empty() ? 0 : static_cast<int>(exponents[0].size()); }
};

// Complex coefficient carrying an optional exact rational form. The exact
// form, when present, rounds to the stored double value.
struct Coefficient {
    Complex value{0.0, 0.0};
    bool has_exact = false;
    BigRat exact_re, exact_im;

    static Coefficient from_value(Complex v);
    static Coefficient from_exact(BigRat re, BigRat im);
    static Coefficient from_int(int64_t n) { return from_exact(BigRat(n), BigRat(0)); }

    bool is_zero() const;
    Coefficient scaled_by_int(int64_t factor) const;
    Coefficient negated() const { return scaled_by_int(-1); }
};

class SparsePolynomial {
public:
    explicit SparsePolynomial(int dimension);

    int dimension() const { return dimension_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exponent, Coefficient>& terms() const { return terms_; }

    // Accumulates into an existing term if the exponent is already present;
    // exact zeros are dropped.
    void add_term(const Exponent& exponent, const Coefficient& coefficient);
    const Coefficient* find_term(const Exponent& exponent) const;

    MonomialSupport support(std::string label = "") const;

private:
    int dimension_;
    std::map<Exponent, Coefficient> terms_;
};

// Strictly positive data vector; doubles plus exact forms.
struct DataVector {
    std::vector<double> values;
    std::vector<BigRat> exact;

    DataVector() = default;
    static DataVector from_doubles(const std::vector<double>& v);
    static DataVector from_exact(std::vector<BigRat> v);
    int size() const { return static_cast<int>(values.size()); }
};

class PolynomialSystem {
public:
    // Throws InputError naming the offending polynomial index on violation:
    // zero polynomials, dimension mismatches, empty list.
    PolynomialSystem(int variable_count, std::vector<SparsePolynomial> polynomials);

    int variable_count() const { return variable_count_; }
    int equation_count() const { return static_cast<int>(polynomials_.size()); }
    const SparsePolynomial& polynomial(int i) const { return polynomials_[i]; }
    const std::vector<SparsePolynomial>& polynomials() const { return polynomials_; }

    std::vector<MonomialSupport> supports(const std::string& prefix = "f") const;

private:
    int variable_count_;
    std::vector<SparsePolynomial> polynomials_;
};

SparsePolynomial partial_derivative(const SparsePolynomial& f, int variable);

Complex evaluate(const SparsePolynomial& f, std::span<const Complex> point);

// Multiplies every equation by the full product of the x-variables, i.e.
// shifts every exponent by the all-ones vector.
PolynomialSystem multiply_by_full_monomial(const PolynomialSystem& system);

// Independent coefficients uniform on the complex unit circle, deterministic
// per seed. Supports must share a dimension.
PolynomialSystem sample_generic_system(const std::vector<MonomialSupport>& supports,
                                       RandomSeed seed);

// True when the full monomial x_1...x_n divides every equation.
bool divisible_by_full_monomial(const PolynomialSystem& system);

// Data vectors for generic runs: entries uniform in (0.5, 1.5).
DataVector sample_data_vector(int n, RandomSeed seed);

Complex complex_pow(Complex base, int64_t exponent);

}  // namespace mldeg
