#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "voak/errors.hpp"

namespace voak {

class Scalar;
struct FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

enum class FieldKind { rationals, prime, extension };

// An exactly represented base field: Q, F_p (p prime, p != 2), or a simple
// extension base[t]/(m(t)) with m monic and irreducible over base.
// Extension degree is capped at 8.
struct FieldSpec {
    FieldKind kind;
    long p = 0;                   // prime case
    FieldPtr base;                // extension case
    std::vector<Scalar> minpoly;  // monic, length deg+1, coefficients over base

    static FieldPtr rationals();
    static FieldPtr prime(long p);
    // Checks monicity and irreducibility; throws usage_error / unsupported_error.
    static FieldPtr extension(FieldPtr base, std::vector<Scalar> minpoly);

    long characteristic() const {
        if (kind == FieldKind::rationals) return 0;
        if (kind == FieldKind::prime) return p;
        return base->characteristic();
    }
    int ext_degree() const { return kind == FieldKind::extension ? int(minpoly.size()) - 1 : 1; }

    bool equals(const FieldSpec& other) const;
    // True when `other` appears in this field's base chain (or equals it).
    bool extends(const FieldSpec& other) const {
        if (equals(other)) return true;
        return kind == FieldKind::extension && base->extends(other);
    }
    // Number of elements, or 0 for infinite fields.
    mpz_class order() const {
        if (kind == FieldKind::rationals) return 0;
        if (kind == FieldKind::prime) return p;
        mpz_class b = base->order();
        if (b == 0) return 0;
        mpz_class r = 1;
        for (int i = 0; i < ext_degree(); ++i) r *= b;
        return r;
    }
    int nesting_depth() const { return kind == FieldKind::extension ? 1 + base->nesting_depth() : 0; }

    std::string name() const;
};

namespace detail {
inline bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}
inline long mod_pos(long long a, long p) {
    long long r = a % p;
    return long(r < 0 ? r + p : r);
}
} // namespace detail

// An exact field element.  Immutable value type; all arithmetic is exact.
class Scalar {
public:
    Scalar() = default;

    static Scalar zero(const FieldPtr& f) { return from_long(f, 0); }
    static Scalar one(const FieldPtr& f) { return from_long(f, 1); }

    static Scalar from_long(const FieldPtr& f, long v) { return from_mpz(f, mpz_class(v)); }

    static Scalar from_mpz(const FieldPtr& f, const mpz_class& v) {
        Scalar s;
        s.spec_ = f;
        switch (f->kind) {
            case FieldKind::rationals: s.rep_ = mpq_class(v); break;
            case FieldKind::prime: {
                mpz_class r = v % f->p;
                if (r < 0) r += f->p;
                s.rep_ = long(r.get_si());
                break;
            }
            case FieldKind::extension: {
                std::vector<Scalar> c(size_t(f->ext_degree()), Scalar::zero(f->base));
                c[0] = Scalar::from_mpz(f->base, v);
                s.rep_ = std::move(c);
                break;
            }
        }
        return s;
    }

    static Scalar from_mpq(const FieldPtr& f, const mpq_class& v) {
        if (f->kind == FieldKind::rationals) {
            Scalar s;
            s.spec_ = f;
            mpq_class c = v;
            c.canonicalize();
            s.rep_ = std::move(c);
            return s;
        }
        Scalar num = from_mpz(f, v.get_num());
        Scalar den = from_mpz(f, v.get_den());
        return num / den;
    }

    // Element t of base[t]/(m); only valid on extension fields.
    static Scalar generator(const FieldPtr& f) {
        if (f->kind != FieldKind::extension)
            throw usage_error("Scalar::generator: field is not an extension");
        std::vector<Scalar> c(size_t(f->ext_degree()), Scalar::zero(f->base));
        if (c.size() < 2) throw usage_error("Scalar::generator: degree-1 extension");
        c[1] = Scalar::one(f->base);
        Scalar s;
        s.spec_ = f;
        s.rep_ = std::move(c);
        return s;
    }

    static Scalar from_coeffs(const FieldPtr& f, std::vector<Scalar> coeffs) {
        if (f->kind != FieldKind::extension)
            throw usage_error("Scalar::from_coeffs: field is not an extension");
        coeffs.resize(size_t(f->ext_degree()), Scalar::zero(f->base));
        Scalar s;
        s.spec_ = f;
        s.rep_ = std::move(coeffs);
        return s;
    }

    const FieldPtr& spec() const { return spec_; }

    bool is_zero() const {
        switch (spec_->kind) {
            case FieldKind::rationals: return rat() == 0;
            case FieldKind::prime: return res() == 0;
            case FieldKind::extension:
                for (const auto& c : ext())
                    if (!c.is_zero()) return false;
                return true;
        }
        return true;
    }
    bool is_one() const { return *this == Scalar::one(spec_); }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        a.check_same(b);
        switch (a.spec_->kind) {
            case FieldKind::rationals: return a.rat() == b.rat();
            case FieldKind::prime: return a.res() == b.res();
            case FieldKind::extension: return a.ext() == b.ext();
        }
        return false;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Total order; used only for canonical sorting of reports.
    friend bool operator<(const Scalar& a, const Scalar& b) {
        a.check_same(b);
        switch (a.spec_->kind) {
            case FieldKind::rationals: return a.rat() < b.rat();
            case FieldKind::prime: return a.res() < b.res();
            case FieldKind::extension: return a.ext() < b.ext();
        }
        return false;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        a.check_same(b);
        Scalar s;
        s.spec_ = a.spec_;
        switch (a.spec_->kind) {
            case FieldKind::rationals: s.rep_ = mpq_class(a.rat() + b.rat()); break;
            case FieldKind::prime: {
                long r = a.res() + b.res();
                if (r >= a.spec_->p) r -= a.spec_->p;
                s.rep_ = r;
                break;
            }
            case FieldKind::extension: {
                std::vector<Scalar> c = a.ext();
                for (size_t i = 0; i < c.size(); ++i) c[i] = c[i] + b.ext()[i];
                s.rep_ = std::move(c);
                break;
            }
        }
        return s;
    }

    friend Scalar operator-(const Scalar& a) {
        Scalar s;
        s.spec_ = a.spec_;
        switch (a.spec_->kind) {
            case FieldKind::rationals: s.rep_ = mpq_class(-a.rat()); break;
            case FieldKind::prime: s.rep_ = a.res() == 0 ? 0L : a.spec_->p - a.res(); break;
            case FieldKind::extension: {
                std::vector<Scalar> c = a.ext();
                for (auto& x : c) x = -x;
                s.rep_ = std::move(c);
                break;
            }
        }
        return s;
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

    friend Scalar operator*(const Scalar& a, const Scalar& b);
    Scalar inv() const;
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }

    std::string to_string() const;

    // Accessors for the concrete representation.
    const mpq_class& rat() const { return std::get<mpq_class>(rep_); }
    long res() const { return std::get<long>(rep_); }
    const std::vector<Scalar>& ext() const { return std::get<std::vector<Scalar>>(rep_); }

    size_t hash() const {
        switch (spec_->kind) {
            case FieldKind::rationals: {
                return std::hash<std::string>()(rat().get_str());
            }
            case FieldKind::prime: return size_t(res());
            case FieldKind::extension: {
                size_t h = 0;
                for (const auto& c : ext()) h = h * 1000003u + c.hash();
                return h;
            }
        }
        return 0;
    }

private:
    void check_same(const Scalar& b) const {
        if (spec_.get() == b.spec_.get()) return;
        if (!spec_ || !b.spec_ || !spec_->equals(*b.spec_))
            throw usage_error("scalar arithmetic across mismatched fields");
    }

    FieldPtr spec_;
    std::variant<long, mpq_class, std::vector<Scalar>> rep_ = 0L;
};

namespace detail {

// Minimal dense polynomial helpers over Scalar coefficient vectors
// (ascending degree).  Used for the extension-field arithmetic and the
// irreducibility checks below; the public Poly type wraps these.
using PolyVec = std::vector<Scalar>;

inline void poly_trim(PolyVec& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}
inline int poly_deg(const PolyVec& a) { return int(a.size()) - 1; }

inline PolyVec poly_add(const PolyVec& a, const PolyVec& b, const FieldPtr& f) {
    PolyVec r(std::max(a.size(), b.size()), Scalar::zero(f));
    for (size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    poly_trim(r);
    return r;
}
inline PolyVec poly_neg(const PolyVec& a) {
    PolyVec r = a;
    for (auto& x : r) x = -x;
    return r;
}
inline PolyVec poly_sub(const PolyVec& a, const PolyVec& b, const FieldPtr& f) {
    return poly_add(a, poly_neg(b), f);
}
inline PolyVec poly_mul(const PolyVec& a, const PolyVec& b, const FieldPtr& f) {
    if (a.empty() || b.empty()) return {};
    PolyVec r(a.size() + b.size() - 1, Scalar::zero(f));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    poly_trim(r);
    return r;
}
// Euclidean division; b must be nonzero.
inline std::pair<PolyVec, PolyVec> poly_divmod(PolyVec a, const PolyVec& b, const FieldPtr& f) {
    poly_trim(a);
    if (b.empty()) throw usage_error("polynomial division by zero");
    PolyVec q;
    Scalar lead_inv = b.back().inv();
    while (poly_deg(a) >= poly_deg(b)) {
        int shift = poly_deg(a) - poly_deg(b);
        Scalar c = a.back() * lead_inv;
        if (int(q.size()) < shift + 1) q.resize(size_t(shift) + 1, Scalar::zero(f));
        q[size_t(shift)] = q[size_t(shift)] + c;
        for (size_t i = 0; i < b.size(); ++i)
            a[size_t(shift) + i] = a[size_t(shift) + i] - c * b[i];
        poly_trim(a);
    }
    poly_trim(q);
    return {q, a};
}
inline PolyVec poly_mod(const PolyVec& a, const PolyVec& b, const FieldPtr& f) {
    return poly_divmod(a, b, f).second;
}
inline PolyVec poly_monic(PolyVec a) {
    poly_trim(a);
    if (a.empty()) return a;
    Scalar li = a.back().inv();
    for (auto& x : a) x = x * li;
    return a;
}
inline PolyVec poly_gcd(PolyVec a, PolyVec b, const FieldPtr& f) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        PolyVec r = poly_mod(a, b, f);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(a);
}
// Extended gcd: returns (g, s) with s*a = g mod m, g = gcd(a, m).
inline std::pair<PolyVec, PolyVec> poly_half_xgcd(PolyVec a, PolyVec m, const FieldPtr& f) {
    PolyVec s0{Scalar::one(f)}, s1{};
    poly_trim(a);
    poly_trim(m);
    PolyVec r0 = a, r1 = m;
    while (!r1.empty()) {
        auto [q, r] = poly_divmod(r0, r1, f);
        PolyVec s2 = poly_sub(s0, poly_mul(q, s1, f), f);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.empty()) return {r0, s0};
    Scalar li = r0.back().inv();
    for (auto& x : r0) x = x * li;
    for (auto& x : s0) x = x * li;
    return {r0, s0};
}
// x^e mod m by repeated squaring.
inline PolyVec poly_xpow_mod(const mpz_class& e, const PolyVec& m, const FieldPtr& f) {
    PolyVec result{Scalar::one(f)};
    PolyVec base{Scalar::zero(f), Scalar::one(f)};
    base = poly_mod(base, m, f);
    mpz_class n = e;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) result = poly_mod(poly_mul(result, base, f), m, f);
        base = poly_mod(poly_mul(base, base, f), m, f);
        n >>= 1;
    }
    return result;
}

bool poly_irreducible(const PolyVec& m, const FieldPtr& f);

} // namespace detail

inline Scalar operator*(const Scalar& a, const Scalar& b) {
    a.check_same(b);
    Scalar s;
    s.spec_ = a.spec_;
    switch (a.spec_->kind) {
        case FieldKind::rationals: s.rep_ = mpq_class(a.rat() * b.rat()); break;
        case FieldKind::prime:
            s.rep_ = long((long long)(a.res()) * b.res() % a.spec_->p);
            break;
        case FieldKind::extension: {
            detail::PolyVec p = detail::poly_mul(a.ext(), b.ext(), a.spec_->base);
            p = detail::poly_mod(p, a.spec_->minpoly, a.spec_->base);
            p.resize(size_t(a.spec_->ext_degree()), Scalar::zero(a.spec_->base));
            s.rep_ = std::move(p);
            break;
        }
    }
    return s;
}

inline Scalar Scalar::inv() const {
    if (is_zero()) throw usage_error("division by zero");
    Scalar s;
    s.spec_ = spec_;
    switch (spec_->kind) {
        case FieldKind::rationals: s.rep_ = mpq_class(1 / rat()); break;
        case FieldKind::prime: {
            // Fermat: a^(p-2) mod p.
            long long r = 1, b = res(), e = spec_->p - 2;
            while (e > 0) {
                if (e & 1) r = r * b % spec_->p;
                b = b * b % spec_->p;
                e >>= 1;
            }
            s.rep_ = long(r);
            break;
        }
        case FieldKind::extension: {
            auto [g, t] = detail::poly_half_xgcd(ext(), spec_->minpoly, spec_->base);
            if (detail::poly_deg(g) != 0)
                throw usage_error("non-invertible element (minpoly not irreducible?)");
            detail::PolyVec p = detail::poly_mod(t, spec_->minpoly, spec_->base);
            p.resize(size_t(spec_->ext_degree()), Scalar::zero(spec_->base));
            s.rep_ = std::move(p);
            break;
        }
    }
    return s;
}

namespace detail {

inline const char* ext_var_name(int depth) {
    static const char* names[] = {"t", "u", "v", "w"};
    return names[depth < 4 ? depth : 3];
}

// Rational roots of a polynomial over Q (monic after scaling); used for the
// degree <= 4 irreducibility test over Q and for center splitting checks.
inline std::vector<mpq_class> rational_roots(const PolyVec& m) {
    std::vector<mpq_class> roots;
    PolyVec a = m;
    poly_trim(a);
    if (poly_deg(a) < 1) return roots;
    // Clear denominators to integer coefficients.
    mpz_class lcm = 1;
    for (const auto& c : a) lcm = lcm / gcd(lcm, c.rat().get_den()) * c.rat().get_den();
    std::vector<mpz_class> ic;
    for (const auto& c : a) ic.push_back(mpz_class(c.rat() * lcm));
    while (!ic.empty() && ic.front() == 0) {
        // x = 0 is a root
        if (roots.empty() || roots.back() != 0) roots.push_back(0);
        ic.erase(ic.begin());
    }
    if (ic.size() < 2) return roots;
    mpz_class a0 = abs(ic.front()), an = abs(ic.back());
    std::vector<mpz_class> num_divs, den_divs;
    for (mpz_class d = 1; d * d <= a0; ++d)
        if (a0 % d == 0) { num_divs.push_back(d); num_divs.push_back(a0 / d); }
    for (mpz_class d = 1; d * d <= an; ++d)
        if (an % d == 0) { den_divs.push_back(d); den_divs.push_back(an / d); }
    auto eval_zero = [&](const mpq_class& x) {
        mpq_class v = 0;
        for (auto it = ic.rbegin(); it != ic.rend(); ++it) v = v * x + mpq_class(*it);
        return v == 0;
    };
    for (const auto& n : num_divs)
        for (const auto& d : den_divs)
            for (int sgn : {1, -1}) {
                mpq_class x(sgn * n, d);
                x.canonicalize();
                if (eval_zero(x)) {
                    bool seen = false;
                    for (const auto& r : roots) seen = seen || r == x;
                    if (!seen) roots.push_back(x);
                }
            }
    return roots;
}

inline bool poly_irreducible(const PolyVec& m, const FieldPtr& f) {
    int d = poly_deg(m);
    if (d < 1) return false;
    if (d == 1) return true;
    if (f->kind == FieldKind::prime || f->kind == FieldKind::extension) {
        // gcd(x^(q^i) - x, m) detects factors of degree i.
        mpz_class q = f->order();
        if (f->kind == FieldKind::prime && f->p > 101)
            throw unsupported_error("irreducibility check supports p <= 101 only");
        PolyVec x{Scalar::zero(f), Scalar::one(f)};
        mpz_class qi = 1;
        for (int i = 1; 2 * i <= d; ++i) {
            qi *= q;
            PolyVec xq = poly_xpow_mod(qi, m, f);
            PolyVec g = poly_gcd(poly_sub(xq, x, f), m, f);
            if (poly_deg(g) > 0) return false;
        }
        return true;
    }
    // Over Q: rational root test, plus a quadratic-factor search for degree 4.
    if (d > 4)
        throw unsupported_error("irreducibility over Q implemented for degree <= 4 only");
    if (!rational_roots(m).empty()) return false;
    if (d <= 3) return true;
    // Monic integer quartic x^4+px^3+qx^2+rx+s: try (x^2+ax+b)(x^2+cx+e), b*e=s.
    for (const auto& c : m)
        if (c.rat().get_den() != 1)
            throw unsupported_error("quartic irreducibility over Q needs integer coefficients");
    mpz_class P = m[3].rat().get_num(), Q = m[2].rat().get_num(), R = m[1].rat().get_num(),
              S = m[0].rat().get_num();
    std::vector<mpz_class> divs;
    mpz_class as = abs(S);
    if (as == 0) return false; // would have a rational root 0
    for (mpz_class dd = 1; dd * dd <= as; ++dd)
        if (as % dd == 0) { divs.push_back(dd); divs.push_back(as / dd); }
    for (const auto& d0 : divs)
        for (int sgn : {1, -1}) {
            mpz_class b = sgn * d0;
            if (b == 0 || S % b != 0) continue;
            mpz_class e = S / b;
            // a+c = P, b+e+ac = Q, ae+bc = R
            // ac = Q-b-e; a,c are integer roots of y^2 - P y + (Q-b-e).
            mpz_class prod = Q - b - e;
            mpz_class disc = P * P - 4 * prod;
            if (disc < 0) continue;
            mpz_class sq = sqrt(disc);
            if (sq * sq != disc) continue;
            for (int s2 : {1, -1}) {
                mpz_class twice_a = P + s2 * sq;
                if (twice_a % 2 != 0) continue;
                mpz_class a = twice_a / 2, c = P - a;
                if (a * e + b * c == R) return false; // factored
            }
        }
    return true;
}

} // namespace detail

inline FieldPtr FieldSpec::rationals() {
    static FieldPtr q = [] {
        auto f = std::make_shared<FieldSpec>();
        f->kind = FieldKind::rationals;
        return f;
    }();
    return q;
}

inline FieldPtr FieldSpec::prime(long p) {
    if (!detail::is_prime_long(p)) throw usage_error("F_p requires a prime p");
    if (p == 2) throw unsupported_error("characteristic 2 is excluded");
    if (p >= (1L << 31)) throw unsupported_error("prime fields supported for p < 2^31");
    auto f = std::make_shared<FieldSpec>();
    f->kind = FieldKind::prime;
    f->p = p;
    return f;
}

inline FieldPtr FieldSpec::extension(FieldPtr base, std::vector<Scalar> minpoly) {
    detail::poly_trim(minpoly);
    int d = detail::poly_deg(minpoly);
    if (d < 1) throw usage_error("extension minpoly must have degree >= 1");
    if (d > 8) throw unsupported_error("extension degree > 8 not supported");
    if (!minpoly.back().is_one()) throw usage_error("extension minpoly must be monic");
    for (const auto& c : minpoly)
        if (!c.spec()->equals(*base)) throw usage_error("minpoly coefficients not over base field");
    if (!detail::poly_irreducible(minpoly, base))
        throw usage_error("extension minpoly is reducible over the base field");
    auto f = std::make_shared<FieldSpec>();
    f->kind = FieldKind::extension;
    f->base = std::move(base);
    f->minpoly = std::move(minpoly);
    return f;
}

inline bool FieldSpec::equals(const FieldSpec& other) const {
    if (this == &other) return true;
    if (kind != other.kind) return false;
    switch (kind) {
        case FieldKind::rationals: return true;
        case FieldKind::prime: return p == other.p;
        case FieldKind::extension:
            if (!base->equals(*other.base)) return false;
            if (minpoly.size() != other.minpoly.size()) return false;
            for (size_t i = 0; i < minpoly.size(); ++i)
                if (!(minpoly[i] == other.minpoly[i])) return false;
            return true;
    }
    return false;
}

inline std::string Scalar::to_string() const {
    switch (spec_->kind) {
        case FieldKind::rationals: return rat().get_str();
        case FieldKind::prime: return std::to_string(res());
        case FieldKind::extension: {
            const char* var = detail::ext_var_name(spec_->nesting_depth() - 1);
            std::ostringstream os;
            bool first = true;
            for (size_t i = 0; i < ext().size(); ++i) {
                const Scalar& c = ext()[i];
                if (c.is_zero()) continue;
                if (!first) os << "+";
                first = false;
                std::string cs = c.to_string();
                if (i == 0) {
                    os << cs;
                } else {
                    if (cs == "1") {
                        // drop unit coefficient
                    } else if (cs == "-1") {
                        os << "-";
                    } else if (cs.find('+') != std::string::npos || cs.find('-', 1) != std::string::npos) {
                        os << "(" << cs << ")*";
                    } else {
                        os << cs << "*";
                    }
                    os << var;
                    if (i > 1) os << "^" << i;
                }
            }
            if (first) return "0";
            return os.str();
        }
    }
    return "?";
}

inline std::string FieldSpec::name() const {
    switch (kind) {
        case FieldKind::rationals: return "Q";
        case FieldKind::prime: return "F" + std::to_string(p);
        case FieldKind::extension: {
            const char* var = detail::ext_var_name(nesting_depth() - 1);
            std::ostringstream os;
            os << base->name() << "[" << var << "]/(";
            bool first = true;
            for (int i = ext_degree(); i >= 0; --i) {
                const Scalar& c = minpoly[size_t(i)];
                if (c.is_zero()) continue;
                std::string cs = c.to_string();
                if (!first && cs[0] != '-') os << "+";
                first = false;
                if (i == 0) {
                    os << cs;
                } else {
                    if (cs == "1") {
                    } else if (cs == "-1") {
                        os << "-";
                    } else {
                        os << cs << "*";
                    }
                    os << var;
                    if (i > 1) os << "^" << i;
                }
            }
            os << ")";
            return os.str();
        }
    }
    return "?";
}

// Ring-homomorphic embedding of a into the given target field, which must
// contain a's field in its base chain.
inline Scalar embed(const Scalar& a, const FieldPtr& target) {
    if (a.spec()->equals(*target)) {
        Scalar s = a;
        return s;
    }
    if (target->kind != FieldKind::extension || !target->extends(*a.spec()))
        throw usage_error("embed: no embedding path from " + a.spec()->name() + " to " +
                          target->name());
    Scalar in_base = embed(a, target->base);
    std::vector<Scalar> c(size_t(target->ext_degree()), Scalar::zero(target->base));
    c[0] = in_base;
    return Scalar::from_coeffs(target, std::move(c));
}

} // namespace voak
