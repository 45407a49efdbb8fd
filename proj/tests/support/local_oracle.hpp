#pragma once

#include <map>
#include <vector>

#include "fqt/localtest.hpp"

namespace fqt::testsupport {

// Brute-force local isotropy oracle: searches for a primitive solution of
// sum a_i x_i^2 = 0 over F_q[t]/(f^3). For coefficients with v_f <= 1 this
// precision decides isotropy in the f-adic completion (solutions mod f^3 lift
// by Hensel's lemma in odd characteristic).
inline bool brute_local_solvable(const std::vector<Poly>& coeffs, const Poly& f) {
    const FieldPtr& F = f.field();
    Poly f3 = f * f * f;
    size_t m = (size_t)f3.deg();
    uint64_t p = F->p;
    unsigned k = F->k;
    size_t ring_size = 1;
    for (size_t i = 0; i < m * k; ++i) ring_size *= (size_t)p;

    // all residues and their squares, plus coefficient-scaled squares
    std::vector<Poly> residues;
    residues.reserve(ring_size);
    {
        std::vector<uint64_t> digits(m * k, 0);
        for (;;) {
            std::vector<Fq> c;
            c.reserve(m);
            for (size_t i = 0; i < m; ++i) {
                std::vector<uint64_t> ec(k);
                for (size_t j = 0; j < k; ++j) ec[j] = digits[i * k + j];
                c.push_back(F->from_coeffs(ec));
            }
            residues.push_back(Poly(F, std::move(c)));
            size_t pos = 0;
            while (pos < m * k && ++digits[pos] == p) digits[pos++] = 0;
            if (pos == m * k) break;
        }
    }
    std::vector<bool> primitive(ring_size);
    for (size_t i = 0; i < ring_size; ++i) primitive[i] = !(residues[i] % f).is_zero();

    std::vector<std::vector<Poly>> scaled(coeffs.size());
    for (size_t ci = 0; ci < coeffs.size(); ++ci) {
        scaled[ci].reserve(ring_size);
        for (size_t i = 0; i < ring_size; ++i) {
            scaled[ci].push_back(mulmod(coeffs[ci] * residues[i], residues[i], f3));
        }
    }

    // nested enumeration with early exit on the first primitive zero
    std::vector<size_t> idx(coeffs.size(), 0);
    for (;;) {
        bool prim = false;
        for (size_t ci = 0; ci < coeffs.size(); ++ci) prim = prim || primitive[idx[ci]];
        if (prim) {
            Poly acc = Poly::zero(F);
            for (size_t ci = 0; ci < coeffs.size(); ++ci) acc += scaled[ci][idx[ci]];
            if ((acc % f3).is_zero()) return true;
        }
        size_t pos = 0;
        while (pos < coeffs.size() && ++idx[pos] == ring_size) idx[pos++] = 0;
        if (pos == coeffs.size()) return false;
    }
}

// Memoizing wrapper keyed on the reduced coefficients; criterion sweeps hit
// the same local configurations over and over.
inline bool brute_local_solvable_cached(const std::vector<Poly>& coeffs, const Poly& f) {
    static std::map<std::string, bool> cache;
    Poly f3 = f * f * f;
    std::string key = f.to_string() + "|";
    for (const Poly& a : coeffs) key += (a % f3).to_string() + ",";
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    bool result = brute_local_solvable(coeffs, f);
    cache.emplace(std::move(key), result);
    return result;
}

// Infinity reduces to the finite oracle at u after rewriting each coefficient
// a(t) of degree d as u^{d mod 2} * t^d a(1/t).
inline std::vector<Poly> infinity_rewrite(const std::vector<Poly>& coeffs) {
    std::vector<Poly> out;
    for (const Poly& a : coeffs) {
        Poly rev = a.reverse();
        out.push_back((a.deg() % 2) ? rev.shift(1) : rev);
    }
    return out;
}

inline bool brute_local_solvable_infinity(const std::vector<Poly>& coeffs) {
    const FieldPtr& F = coeffs[0].field();
    return brute_local_solvable_cached(infinity_rewrite(coeffs), Poly::t(F));
}

}  // namespace fqt::testsupport
