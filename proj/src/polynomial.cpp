#include "mldeg/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace mldeg {

MonomialSupport::MonomialSupport(std::vector<Exponent> exps, std::string name)
    : exponents(std::move(exps)), label(std::move(name)) {
    if (exponents.empty()) throw InputError("empty monomial support '" + label + "'");
    const std::size_t dim = exponents[0].size();
    for (const auto& e : exponents) {
        if (e.size() != dim)
            throw InputError("support '" + label + "' mixes exponent lengths");
        for (int64_t v : e)
            if (v < 0) throw InputError("negative exponent in support '" + label + "'");
    }
    std::sort(exponents.begin(), exponents.end());
    exponents.erase(std::unique(exponents.begin(), exponents.end()), exponents.end());
}

Coefficient Coefficient::from_value(Complex v) {
    Coefficient c;
    c.value = v;
    return c;
}

Coefficient Coefficient::from_exact(BigRat re, BigRat im) {
    Coefficient c;
    c.value = Complex(rational_to_double(re), rational_to_double(im));
    c.has_exact = true;
    c.exact_re = std::move(re);
    c.exact_im = std::move(im);
    return c;
}

bool Coefficient::is_zero() const {
    if (has_exact) return exact_re == 0 && exact_im == 0;
    return value == Complex(0.0, 0.0);
}

Coefficient Coefficient::scaled_by_int(int64_t factor) const {
    if (has_exact) return from_exact(exact_re * factor, exact_im * factor);
    return from_value(value * static_cast<double>(factor));
}

SparsePolynomial::SparsePolynomial(int dimension) : dimension_(dimension) {
    if (dimension <= 0) throw InputError("polynomial dimension must be positive");
}

void SparsePolynomial::add_term(const Exponent& exponent, const Coefficient& coefficient) {
    if (static_cast<int>(exponent.size()) != dimension_)
        throw InputError("exponent length does not match polynomial dimension");
    for (int64_t v : exponent)
        if (v < 0) throw InputError("negative exponent");
    if (coefficient.is_zero()) return;

    auto it = terms_.find(exponent);
    if (it == terms_.end()) {
        terms_.emplace(exponent, coefficient);
        return;
    }
    Coefficient& present = it->second;
    if (present.has_exact && coefficient.has_exact) {
        Coefficient sum = Coefficient::from_exact(present.exact_re + coefficient.exact_re,
                                                  present.exact_im + coefficient.exact_im);
        if (sum.is_zero())
            terms_.erase(it);
        else
            present = sum;
    } else {
        Coefficient sum = Coefficient::from_value(present.value + coefficient.value);
        if (sum.is_zero())
            terms_.erase(it);
        else
            present = sum;
    }
}

const Coefficient* SparsePolynomial::find_term(const Exponent& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? nullptr : &it->second;
}

MonomialSupport SparsePolynomial::support(std::string label) const {
    if (is_zero()) throw InputError("zero polynomial has no support");
    std::vector<Exponent> exps;
    exps.reserve(terms_.size());
    for (const auto& [e, c] : terms_) exps.push_back(e);
    return MonomialSupport(std::move(exps), std::move(label));
}

DataVector DataVector::from_doubles(const std::vector<double>& v) {
    DataVector u;
    u.values = v;
    u.exact.reserve(v.size());
    for (double x : v) {
        if (!(x > 0.0)) throw InputError("data vector entries must be strictly positive");
        u.exact.push_back(rational_from_double(x));
    }
    return u;
}

DataVector DataVector::from_exact(std::vector<BigRat> v) {
    DataVector u;
    u.exact = std::move(v);
    u.values.reserve(u.exact.size());
    for (const BigRat& x : u.exact) {
        if (!(x > 0)) throw InputError("data vector entries must be strictly positive");
        u.values.push_back(rational_to_double(x));
    }
    return u;
}

PolynomialSystem::PolynomialSystem(int variable_count,
                                   std::vector<SparsePolynomial> polynomials)
    : variable_count_(variable_count), polynomials_(std::move(polynomials)) {
    if (variable_count_ <= 0) throw InputError("variable count must be positive");
    if (polynomials_.empty()) throw InputError("a system needs at least one polynomial");
    for (std::size_t j = 0; j < polynomials_.size(); ++j) {
        if (polynomials_[j].dimension() != variable_count_)
            throw InputError("polynomial " + std::to_string(j) +
                             ": dimension mismatch with the system");
        if (polynomials_[j].is_zero())
            throw InputError("polynomial " + std::to_string(j) + ": zero polynomial");
    }
}

std::vector<MonomialSupport> PolynomialSystem::supports(const std::string& prefix) const {
    std::vector<MonomialSupport> out;
    out.reserve(polynomials_.size());
    for (std::size_t j = 0; j < polynomials_.size(); ++j)
        out.push_back(polynomials_[j].support(prefix + std::to_string(j + 1)));
    return out;
}

SparsePolynomial partial_derivative(const SparsePolynomial& f, int variable) {
    if (variable < 0 || variable >= f.dimension())
        throw InputError("derivative variable index out of range");
    SparsePolynomial df(f.dimension());
    for (const auto& [e, c] : f.terms()) {
        if (e[variable] == 0) continue;
        Exponent shifted = e;
        shifted[variable] -= 1;
        df.add_term(shifted, c.scaled_by_int(e[variable]));
    }
    return df;
}

Complex complex_pow(Complex base, int64_t exponent) {
    if (exponent < 0) return 1.0 / complex_pow(base, -exponent);
    Complex result(1.0, 0.0);
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        base *= base;
        exponent >>= 1;
    }
    return result;
}

Complex evaluate(const SparsePolynomial& f, std::span<const Complex> point) {
    MLDEG_CHECK(static_cast<int>(point.size()) == f.dimension(),
                "evaluate: point length does not match polynomial dimension");
    Complex acc(0.0, 0.0);
    for (const auto& [e, c] : f.terms()) {
        Complex monomial(1.0, 0.0);
        for (std::size_t i = 0; i < point.size(); ++i)
            if (e[i] != 0) monomial *= complex_pow(point[i], e[i]);
        acc += c.value * monomial;
    }
    return acc;
}

PolynomialSystem multiply_by_full_monomial(const PolynomialSystem& system) {
    std::vector<SparsePolynomial> lifted;
    lifted.reserve(system.equation_count());
    for (const auto& f : system.polynomials()) {
        SparsePolynomial g(f.dimension());
        for (const auto& [e, c] : f.terms()) {
            Exponent shifted = e;
            for (auto& v : shifted) v = checked_add(v, 1);
            g.add_term(shifted, c);
        }
        lifted.push_back(std::move(g));
    }
    return PolynomialSystem(system.variable_count(), std::move(lifted));
}

PolynomialSystem sample_generic_system(const std::vector<MonomialSupport>& supports,
                                       RandomSeed seed) {
    if (supports.empty()) throw InputError("no supports to sample from");
    const int dim = supports[0].dimension();
    for (const auto& s : supports)
        if (s.dimension() != dim)
            throw InputError("supports disagree on the ambient dimension");

    SeededRng rng = SeededRng(seed).derive("generic-coefficients");
    std::vector<SparsePolynomial> polynomials;
    polynomials.reserve(supports.size());
    for (const auto& s : supports) {
        SparsePolynomial f(dim);
        for (const auto& e : s.exponents)  // sorted order fixes the draw order
            f.add_term(e, Coefficient::from_value(rng.unit_circle()));
        polynomials.push_back(std::move(f));
    }
    return PolynomialSystem(dim, std::move(polynomials));
}

bool divisible_by_full_monomial(const PolynomialSystem& system) {
    for (const auto& f : system.polynomials())
        for (const auto& [e, c] : f.terms())
            for (int64_t v : e)
                if (v < 1) return false;
    return true;
}

DataVector sample_data_vector(int n, RandomSeed seed) {
    SeededRng rng = SeededRng(seed).derive("data-vector");
    std::vector<double> values(n);
    for (auto& v : values) v = rng.uniform_real(0.5, 1.5);
    return DataVector::from_doubles(values);
}

}  // namespace mldeg
