#pragma once
// Shared fixtures and independent oracles for the test suite.  The oracles
// deliberately avoid the library's own code paths: dimensions come from
// combinatorial counts, simplicity from exhaustive vector enumeration.

#include <vector>

#include "voak/assoc.hpp"
#include "voak/field.hpp"
#include "voak/matrix.hpp"
#include "voak/polynomial.hpp"

namespace voak_test {

using namespace voak;

// F[x]/(m) as a structure-constant algebra in the basis 1, x, ..., x^{d-1}.
inline SCAlgebra quotient_ring(const FieldPtr& F, const Poly& m) {
    size_t d = size_t(m.degree());
    std::vector<Scalar> sc(d * d * d, Scalar::zero(F));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            std::vector<Scalar> p(i + j + 1, Scalar::zero(F));
            p[i + j] = Scalar::one(F);
            Poly r = Poly(F, p).divmod(m).second;
            for (size_t k = 0; k < d; ++k) sc[(i * d + j) * d + k] = r.coeff(int(k));
        }
    std::vector<Scalar> id(d, Scalar::zero(F));
    id[0] = Scalar::one(F);
    return SCAlgebra(F, d, std::move(sc), std::move(id));
}

// 2x2 matrix algebra in the basis E11, E12, E21, E22.
inline SCAlgebra mat2(const FieldPtr& F) {
    size_t d = 4;
    std::vector<Scalar> sc(64, Scalar::zero(F));
    auto idx = [](size_t r, size_t c) { return r * 2 + c; };
    for (size_t a = 0; a < 2; ++a)
        for (size_t b = 0; b < 2; ++b)
            for (size_t c = 0; c < 2; ++c)
                for (size_t e = 0; e < 2; ++e)
                    if (b == c)
                        sc[(idx(a, b) * d + idx(c, e)) * d + idx(a, e)] = Scalar::one(F);
    std::vector<Scalar> id(d, Scalar::zero(F));
    id[idx(0, 0)] = id[idx(1, 1)] = Scalar::one(F);
    return SCAlgebra(F, d, std::move(sc), std::move(id));
}

// Independent binomial oracle for dimension targets.
inline long binom(long n, long k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Brute-force simplicity oracle over a finite prime field: a module is
// simple iff every nonzero vector generates the whole space under the
// action matrices.  Enumerates all q^d vectors, so q^d must stay small.
inline bool brute_force_simple(const MatrixModule& M) {
    const FieldPtr& F = M.spec;
    long q = F->characteristic();
    size_t d = M.dim;
    if (d == 0) return false;
    double total = 1;
    for (size_t i = 0; i < d; ++i) total *= double(q);
    if (total > 100000) throw std::runtime_error("brute_force_simple: space too large");
    long count = long(total);
    auto apply = [&](const Matrix& g, const std::vector<Scalar>& v) {
        std::vector<Scalar> out(d, Scalar::zero(F));
        for (size_t r = 0; r < d; ++r)
            for (size_t c = 0; c < d; ++c) out[r] = out[r] + g.at(r, c) * v[c];
        return out;
    };
    for (long code = 1; code < count; ++code) {
        // decode base-q digits into a vector
        std::vector<Scalar> v;
        long c = code;
        for (size_t i = 0; i < d; ++i) {
            v.push_back(Scalar::from_long(F, c % q));
            c /= q;
        }
        // grow the invariant span generated by v
        Subspace span(F, d);
        span.add(v);
        std::vector<std::vector<Scalar>> frontier = {v};
        while (!frontier.empty()) {
            std::vector<std::vector<Scalar>> next;
            for (const auto& w : frontier)
                for (const Matrix& g : M.action) {
                    std::vector<Scalar> img = apply(g, w);
                    if (span.add(img)) next.push_back(img);
                }
            frontier = std::move(next);
        }
        if (span.dim() != d) return false;
    }
    return true;
}

} // namespace voak_test
