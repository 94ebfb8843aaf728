#include "mldeg/face_classifier.hpp"

#include <algorithm>

namespace mldeg {

namespace {

void require_hat_form(const MLSystem& system) {
    if (!divisible_by_full_monomial(system.source))
        throw InputError(
            "face classification needs the model in divisible form "
            "(apply the full-monomial transform first)");
}

void require_weight(const MLSystem& system, const WeightVector& w) {
    if (static_cast<int>(w.entries.size()) != system.total_dim())
        throw InputError("weight vector length must be n+k");
    if (w.is_zero()) throw InputError("zero weight vector");
}

// min over the support of f_j of <a, alpha>, the x-part of w acting on the
// model polynomial.
BigInt model_min_value(const SparsePolynomial& f, const WeightVector& w, int n) {
    bool first = true;
    BigInt best;
    for (const auto& [alpha, c] : f.terms()) {
        BigInt acc = 0;
        for (int i = 0; i < n; ++i) acc += BigInt(w.entries[i]) * BigInt(alpha[i]);
        if (first || acc < best) best = acc;
        first = false;
    }
    return best;
}

}  // namespace

FaceCase classify_face(const MLSystem& system, const WeightVector& w) {
    require_hat_form(system);
    require_weight(system, w);
    const int n = system.n;
    const int k = system.k;

    std::vector<BigInt> candidate(k);
    for (int j = 0; j < k; ++j)
        candidate[j] =
            BigInt(w.entries[n + j]) + model_min_value(system.source.polynomial(j), w, n);

    BigInt min_candidate = candidate[0];
    for (int j = 1; j < k; ++j) min_candidate = std::min(min_candidate, candidate[j]);

    FaceCase result;
    std::vector<LatticePoint> face_generators;
    if (min_candidate > 0) {
        result.tag = FaceTag::Origin;
        result.gamma = 0;
        result.value = 0;
        face_generators.push_back(LatticePoint(n + k, 0));
    } else {
        result.tag = min_candidate < 0 ? FaceTag::PureFaceMix : FaceTag::MixedWithOrigin;
        result.gamma = min_candidate;
        result.value = min_candidate;  // equals 0 in the mixed case
        for (int j = 0; j < k; ++j)
            if (candidate[j] == min_candidate) result.active.push_back(j);
        if (result.tag == FaceTag::MixedWithOrigin)
            face_generators.push_back(LatticePoint(n + k, 0));
        for (int j : result.active) {
            const BigInt val = model_min_value(system.source.polynomial(j), w, n);
            for (const auto& [alpha, c] : system.source.polynomial(j).terms()) {
                BigInt acc = 0;
                for (int i = 0; i < n; ++i) acc += BigInt(w.entries[i]) * BigInt(alpha[i]);
                if (acc != val) continue;
                LatticePoint p(n + k, 0);
                for (int i = 0; i < n; ++i) p[i] = alpha[i];
                p[n + j] = 1;
                face_generators.push_back(std::move(p));
            }
        }
    }
    result.face_vertices = LatticePolytope(std::move(face_generators)).vertices();
    return result;
}

std::vector<SparsePolynomial> initial_ml_system(const MLSystem& system,
                                                const WeightVector& w) {
    require_weight(system, w);
    std::vector<SparsePolynomial> out;
    out.reserve(system.equations.size());
    for (const auto& eq : system.equations) out.push_back(initial_polynomial(eq, w));
    return out;
}

KernelCertificate case3_kernel_certificate(const MLSystem& system, const WeightVector& w) {
    FaceCase face = classify_face(system, w);
    if (face.tag != FaceTag::MixedWithOrigin)
        throw InputError("kernel certificate applies to the mixed-with-origin case only");
    const int n = system.n;
    bool x_part_zero = true;
    for (int i = 0; i < n; ++i) x_part_zero = x_part_zero && w.entries[i] == 0;
    if (x_part_zero)
        throw InputError(
            "weight vectors with zero x-part are handled separately and admit "
            "no kernel certificate");

    KernelCertificate cert;
    cert.n = n;
    cert.t = face.t();
    cert.kernel_vector.reserve(n + cert.t);
    for (int i = 0; i < n; ++i) cert.kernel_vector.push_back(BigInt(w.entries[i]));

    // Columns: one per term of lambda_j * init(f_j) for each active j. The
    // top n rows carry the x-exponent, the bottom t rows the block indicator.
    std::vector<std::vector<int64_t>> columns;
    for (int pos = 0; pos < cert.t; ++pos) {
        const int j = face.active[pos];
        const SparsePolynomial& fj = system.source.polynomial(j);
        const BigInt val = model_min_value(fj, w, n);
        cert.kernel_vector.push_back(-val);
        for (const auto& [alpha, c] : fj.terms()) {
            BigInt acc = 0;
            for (int i = 0; i < n; ++i) acc += BigInt(w.entries[i]) * BigInt(alpha[i]);
            if (acc != val) continue;
            std::vector<int64_t> col(n + cert.t, 0);
            for (int i = 0; i < n; ++i) col[i] = alpha[i];
            col[n + pos] = 1;
            columns.push_back(std::move(col));
        }
    }

    cert.matrix.assign(n + cert.t, std::vector<int64_t>(columns.size(), 0));
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (int r = 0; r < n + cert.t; ++r) cert.matrix[r][c] = columns[c][r];

    bool nonzero = false;
    for (const auto& v : cert.kernel_vector) nonzero = nonzero || v != 0;
    MLDEG_CHECK(nonzero, "kernel certificate vector is zero");
    for (std::size_t c = 0; c < columns.size(); ++c) {
        BigInt acc = 0;
        for (int r = 0; r < n + cert.t; ++r)
            acc += cert.kernel_vector[r] * BigInt(cert.matrix[r][c]);
        MLDEG_CHECK(acc == 0, "kernel certificate failed exact verification");
    }
    return cert;
}

WeightScan scan_weight_vectors(const MLSystem& system, int radius) {
    require_hat_form(system);
    if (radius < 1) throw InputError("scan radius must be at least 1");
    const int dim = system.total_dim();

    WeightScan scan;
    scan.radius = radius;
    std::vector<int64_t> w(dim, -radius);
    for (;;) {
        bool zero = true;
        for (int64_t v : w) zero = zero && v == 0;
        if (!zero) {
            FaceCase face = classify_face(system, WeightVector{w});
            WeightClassRow row;
            row.w = w;
            row.case_number = face.case_number();
            row.t = face.t();
            row.gamma = face.gamma;
            scan.counts[row.case_number - 1] += 1;
            scan.rows.push_back(std::move(row));
        }
        int pos = dim - 1;
        while (pos >= 0 && w[pos] == radius) w[pos--] = -radius;
        if (pos < 0) break;
        ++w[pos];
    }
    return scan;
}

}  // namespace mldeg
