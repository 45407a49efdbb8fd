#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fqt/ff.hpp"

namespace fqt {

// Dense univariate polynomial over F_q in the variable t. Zero is the empty
// coefficient vector; the top coefficient is always nonzero.
class Poly {
   public:
    Poly() = default;
    explicit Poly(Fq c);                       // constant
    Poly(FieldPtr F, std::vector<Fq> coeffs);  // trims trailing zeros

    static Poly zero(const FieldPtr& F) { return Poly(F, {}); }
    static Poly one(const FieldPtr& F) { return Poly(F, {F->one()}); }
    static Poly t(const FieldPtr& F) { return Poly(F, {F->zero(), F->one()}); }
    static Poly monomial(const FieldPtr& F, size_t e, const Fq& c);
    static Poly random(const FieldPtr& F, size_t deg, Rng& rng);        // degree exactly deg
    static Poly random_below(const FieldPtr& F, size_t bound, Rng& rng);  // degree < bound

    const FieldPtr& field() const { return F_; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

    // Degree of the zero polynomial is reported as -1; callers that care about
    // the -infinity convention must branch on is_zero() first.
    int64_t deg() const { return (int64_t)c_.size() - 1; }

    const Fq& lc() const;
    Fq coeff(size_t i) const;  // zero beyond the degree
    const std::vector<Fq>& coeffs() const { return c_; }

    Poly monic() const;
    Poly derivative() const;
    Fq eval(const Fq& x) const;
    Poly shift(size_t e) const;  // multiply by t^e
    Poly reverse() const;        // t^deg * f(1/t)

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator*(const Fq& s) const;
    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

    bool lex_less(const Poly& other) const;  // by (degree, coefficient vectors)

    std::string to_string() const;

   private:
    FieldPtr F_;
    std::vector<Fq> c_;
};

struct PolyDivMod {
    Poly quot, rem;
};
PolyDivMod divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);  // exact or truncating division
Poly operator%(const Poly& a, const Poly& b);
bool divides(const Poly& d, const Poly& a);

Poly gcd(const Poly& a, const Poly& b);  // monic

struct XgcdResult {
    Poly g, u, v;  // g = u*a + v*b, g monic
};
XgcdResult xgcd(const Poly& a, const Poly& b);

Poly mulmod(const Poly& a, const Poly& b, const Poly& f);
Poly pow_mod(const Poly& base, const BigUInt& e, const Poly& f);

// Number of times f divides a (a nonzero).
unsigned multiplicity(const Poly& f, const Poly& a);

// a = unit * u^2 * s with s squarefree, s and u monic.
struct SquarefreeDecomposition {
    Poly squarefree;   // s
    Poly square_root;  // u
    Fq unit;           // c
};
SquarefreeDecomposition squarefree_decompose(const Poly& a);

// Full squarefree factorization a = unit * prod part_i^i (Yun, with p-th root
// extraction in characteristic p).
std::vector<std::pair<Poly, unsigned>> squarefree_parts(const Poly& a);

struct Factorization {
    Fq unit;
    std::vector<std::pair<Poly, unsigned>> factors;  // monic irreducible, sorted by (deg, lex)

    Poly product() const;
};
Factorization factor(const Poly& a, Rng& rng);

// Deterministic: gcd ladder against t^{q^i} - t for i up to deg/2.
bool is_irreducible(const Poly& a);

Poly crt(const std::vector<Poly>& residues, const std::vector<Poly>& moduli);

// Square test in the residue field F_q[t]/(f); f monic irreducible, gcd(a,f)=1.
bool residue_is_square(const Poly& a, const Poly& f);

// Square root in F_q[t]/(f) by Tonelli-Shanks; canonical representative of the
// two roots (lexicographically smaller coefficient vector).
Poly residue_sqrt(const Poly& a, const Poly& f, Rng& rng);

// Monic irreducible of degree N congruent to b mod D. Each candidate is
// r*D + b with r random of degree N - deg(D) and leading coefficient
// lc(D)^{-1}. Throws after 64*N failed trials.
Poly sample_irreducible_in_class(const Poly& b, const Poly& D, unsigned N, Rng& rng,
                                 unsigned* trials_out = nullptr);

Poly parse_poly(const FieldPtr& F, const std::string& text);

}  // namespace fqt
