#pragma once

#include <string>
#include <vector>

#include "voak/field.hpp"

namespace voak {

// Dense univariate polynomial over a FieldSpec, coefficients ascending.
class Poly {
public:
    Poly() = default;
    Poly(FieldPtr f, std::vector<Scalar> coeffs) : spec_(std::move(f)), c_(std::move(coeffs)) {
        detail::poly_trim(c_);
    }
    static Poly zero(const FieldPtr& f) { return Poly(f, {}); }
    static Poly constant(const Scalar& s) { return Poly(s.spec(), {s}); }
    static Poly x(const FieldPtr& f) { return Poly(f, {Scalar::zero(f), Scalar::one(f)}); }

    const FieldPtr& spec() const { return spec_; }
    int degree() const { return detail::poly_deg(c_); }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
    const std::vector<Scalar>& coeffs() const { return c_; }
    Scalar coeff(int i) const {
        return i >= 0 && i < int(c_.size()) ? c_[size_t(i)] : Scalar::zero(spec_);
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        return Poly(a.spec_, detail::poly_add(a.c_, b.c_, a.spec_));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        return Poly(a.spec_, detail::poly_sub(a.c_, b.c_, a.spec_));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        return Poly(a.spec_, detail::poly_mul(a.c_, b.c_, a.spec_));
    }
    friend Poly operator*(const Scalar& s, const Poly& a) {
        std::vector<Scalar> c = a.c_;
        for (auto& x : c) x = s * x;
        return Poly(a.spec_, std::move(c));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    std::pair<Poly, Poly> divmod(const Poly& b) const {
        auto [q, r] = detail::poly_divmod(c_, b.c_, spec_);
        return {Poly(spec_, std::move(q)), Poly(spec_, std::move(r))};
    }
    Poly monic() const { return Poly(spec_, detail::poly_monic(c_)); }
    friend Poly gcd(const Poly& a, const Poly& b) {
        return Poly(a.spec_, detail::poly_gcd(a.c_, b.c_, a.spec_));
    }
    Poly derivative() const {
        std::vector<Scalar> d;
        for (size_t i = 1; i < c_.size(); ++i)
            d.push_back(Scalar::from_long(spec_, long(i)) * c_[i]);
        return Poly(spec_, std::move(d));
    }

    Scalar eval(const Scalar& x) const {
        Scalar v = Scalar::zero(spec_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
        return v;
    }

    bool is_irreducible() const { return detail::poly_irreducible(c_, spec_); }
    bool is_squarefree() const {
        if (is_zero()) return false;
        Poly d = derivative();
        if (d.is_zero()) return degree() == 0;
        return gcd(*this, d).degree() == 0;
    }

    std::string to_string(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            const Scalar& co = c_[size_t(i)];
            if (co.is_zero()) continue;
            std::string cs = co.to_string();
            if (!out.empty() && cs[0] != '-') out += "+";
            if (i == 0) {
                out += cs;
            } else {
                if (cs == "1") {
                } else if (cs == "-1") {
                    out += "-";
                } else {
                    out += cs + "*";
                }
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out.empty() ? "0" : out;
    }

private:
    FieldPtr spec_;
    std::vector<Scalar> c_;
};

} // namespace voak
