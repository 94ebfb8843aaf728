#include "mldeg/ml_system.hpp"

#include <cmath>

namespace mldeg {

std::vector<MonomialSupport> MLSystem::supports() const {
    std::vector<MonomialSupport> out;
    out.reserve(equations.size());
    for (std::size_t i = 0; i < equations.size(); ++i) {
        const bool is_multiplier_eq = static_cast<int>(i) < n;
        const std::string label = is_multiplier_eq ? "l" + std::to_string(i + 1)
                                                   : "f" + std::to_string(i - n + 1);
        out.push_back(equations[i].support(label));
    }
    return out;
}

MLSystem build_ml_system(const PolynomialSystem& model, const DataVector& u) {
    const int n = model.variable_count();
    const int k = model.equation_count();
    if (u.size() != n)
        throw InputError("data vector length " + std::to_string(u.size()) +
                         " does not match n=" + std::to_string(n));
    const int dim = n + k;

    std::vector<SparsePolynomial> equations;
    equations.reserve(dim);

    for (int i = 0; i < n; ++i) {
        SparsePolynomial li(dim);
        li.add_term(Exponent(dim, 0), Coefficient::from_exact(u.exact[i], BigRat(0)));
        for (int j = 0; j < k; ++j) {
            for (const auto& [alpha, c] : model.polynomial(j).terms()) {
                if (alpha[i] == 0) continue;
                // x_i * d/dx_i keeps the x-exponent; the multiplier adds one
                // lambda_j factor.
                Exponent e(dim, 0);
                for (int v = 0; v < n; ++v) e[v] = alpha[v];
                e[n + j] = 1;
                li.add_term(e, c.scaled_by_int(-alpha[i]));
            }
        }
        equations.push_back(std::move(li));
    }
    for (int j = 0; j < k; ++j) {
        SparsePolynomial fj(dim);
        for (const auto& [alpha, c] : model.polynomial(j).terms()) {
            Exponent e(dim, 0);
            for (int v = 0; v < n; ++v) e[v] = alpha[v];
            fj.add_term(e, c);
        }
        equations.push_back(std::move(fj));
    }

    return MLSystem{model, std::move(equations), n, k, u};
}

TorusPoint lambda_rescale(const TorusPoint& point, RescaleDirection direction) {
    for (const Complex& c : point.coordinates)
        if (c == Complex(0.0, 0.0))
            throw InputError("lambda rescale needs a point with all coordinates nonzero");

    Complex product(1.0, 0.0);
    for (int i = 0; i < point.n; ++i) product *= point.coordinates[i];

    TorusPoint out = point;
    for (std::size_t j = point.n; j < point.coordinates.size(); ++j) {
        if (direction == RescaleDirection::Forward)
            out.coordinates[j] /= product;
        else
            out.coordinates[j] *= product;
    }
    return out;
}

MLDegreeResult ml_degree_mixed_volume(const PolynomialSystem& model, const DataVector& u,
                                      RandomSeed seed) {
    MLDegreeResult result;
    result.lifting_seed = seed.value;
    const int n = model.variable_count();
    const int k = model.equation_count();
    if (k > n) {
        result.value = 0;
        result.model_generically_empty = true;
        result.warning = "more equations than variables: the model is generically empty";
        return result;
    }
    if (n + k > kDeskScaleDimension)
        result.warning = "dimension " + std::to_string(n + k) +
                         " exceeds the desk scale bound " +
                         std::to_string(kDeskScaleDimension) +
                         "; expect long running times";

    MLSystem ml = build_ml_system(model, u);
    result.value = mixed_volume_cross_check(ml.supports(), seed);
    return result;
}

LatticePoint shear_point(const LatticePoint& point, int n, int k) {
    MLDEG_CHECK(static_cast<int>(point.size()) == n + k, "shear: wrong point length");
    int64_t lambda_total = 0;
    for (int j = 0; j < k; ++j) lambda_total = checked_add(lambda_total, point[n + j]);
    LatticePoint out = point;
    for (int i = 0; i < n; ++i) out[i] = checked_add(out[i], lambda_total);
    return out;
}

std::vector<LatticePolytope> shear_polytopes(const MLSystem& system) {
    std::vector<LatticePolytope> out;
    out.reserve(system.equations.size());
    for (const auto& eq : system.equations) {
        LatticePolytope newt = newton_polytope(eq);
        std::vector<LatticePoint> image;
        image.reserve(newt.vertices().size());
        for (const auto& v : newt.vertices())
            image.push_back(shear_point(v, system.n, system.k));
        out.emplace_back(std::move(image));
    }
    return out;
}

PolynomialSystem rescale_for_simplex_constraint(const PolynomialSystem& model,
                                                RandomSeed seed) {
    const int n = model.variable_count();
    SeededRng rng = SeededRng(seed).derive("variable-rescale");
    std::vector<Complex> t(n);
    for (auto& v : t) v = rng.unit_circle();  // nonzero by construction

    std::vector<SparsePolynomial> rescaled;
    rescaled.reserve(model.equation_count());
    for (const auto& f : model.polynomials()) {
        SparsePolynomial g(n);
        for (const auto& [alpha, c] : f.terms()) {
            Complex scale(1.0, 0.0);
            for (int i = 0; i < n; ++i)
                if (alpha[i] != 0) scale *= complex_pow(t[i], alpha[i]);
            g.add_term(alpha, Coefficient::from_value(c.value * scale));
        }
        rescaled.push_back(std::move(g));
    }
    return PolynomialSystem(n, std::move(rescaled));
}

}  // namespace mldeg
