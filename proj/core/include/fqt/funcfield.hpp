#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fqt/polyring.hpp"

namespace fqt {

class RatFunc;
using RVec = std::vector<RatFunc>;
using PVec = std::vector<Poly>;

// Element of F_q(t) as a reduced fraction with monic denominator. Zero is 0/1.
// Equality is structural thanks to the normalization.
class RatFunc {
   public:
    RatFunc() = default;
    RatFunc(Poly num, Poly den);  // normalizes
    explicit RatFunc(Poly num);
    explicit RatFunc(Fq c);

    static RatFunc zero(const FieldPtr& F) { return RatFunc(Poly::zero(F)); }
    static RatFunc one(const FieldPtr& F) { return RatFunc(Poly::one(F)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const FieldPtr& field() const { return num_.field(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }

    RatFunc operator-() const;
    RatFunc inv() const;

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    friend bool operator==(const RatFunc& a, const RatFunc& b);
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
    RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
    RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
    RatFunc& operator/=(const RatFunc& b) { return *this = *this / b; }

    std::string to_string() const;  // "num/den", "/den" omitted when den = 1

   private:
    Poly num_, den_;
};

// A prime of F_q(t): a monic irreducible polynomial or the place at infinity.
struct Place {
    bool infinite = false;
    Poly f;  // monic irreducible when finite

    static Place infinity(const FieldPtr& F) {
        Place p;
        p.infinite = true;
        p.f = Poly::zero(F);
        return p;
    }
    static Place finite(Poly prime);

    std::string to_string() const { return infinite ? "infinity" : f.to_string(); }
};

// v_f as multiplicity difference, v_infinity = deg(den) - deg(num).
// nullopt encodes +infinity, i.e. x = 0.
std::optional<int64_t> valuation(const RatFunc& x, const Place& place);

// Membership in (F_q(t)^*)^2 via squarefree decomposition of numerator and
// denominator plus the scalar power test.
bool rf_is_square(const RatFunc& x);

// Exact square root with the same canonical sign convention as ff_sqrt.
RatFunc rf_sqrt(const RatFunc& x);

RatFunc parse_ratfunc(const FieldPtr& F, const std::string& text);

}  // namespace fqt
