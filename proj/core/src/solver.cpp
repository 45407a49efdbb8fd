#include "fqt/solver.hpp"

#include <algorithm>
#include <map>

namespace fqt {

namespace {

Poly exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    FQT_CHECK(r.is_zero(), "expected exact polynomial division");
    return q;
}

// canonical iteration order for prime sets
void sort_primes(PVec& primes) {
    std::sort(primes.begin(), primes.end(), [](const Poly& a, const Poly& b) { return a.lex_less(b); });
    primes.erase(std::unique(primes.begin(), primes.end(), [](const Poly& a, const Poly& b) { return a == b; }),
                 primes.end());
}

PVec prime_union(const PVec& coeffs, Rng& rng) {
    PVec primes;
    for (const Poly& a : coeffs) {
        if (a.is_constant()) continue;
        Rng frng = rng.split();
        for (auto& [f, m] : factor(a, frng).factors) primes.push_back(f);
    }
    sort_primes(primes);
    return primes;
}

}  // namespace

Poly SplitPlan::f_product() const {
    Poly p = Poly::one(b.field());
    for (const Poly& f : f_list) p = p * f;
    return p;
}

Poly SplitPlan::g_product() const {
    Poly p = Poly::one(b.field());
    for (const Poly& g : g_list) p = p * g;
    return p;
}

// --- constant forms -----------------------------------------------------------

std::optional<FVec> const_form_zero(const FMat& gram, const FieldPtr& F, Rng& rng) {
    const size_t m = gram.size();
    if (m == 0) return std::nullopt;
    auto ker = fmat_kernel(gram, F);
    if (!ker.empty()) return ker[0];
    if (m == 1) return std::nullopt;

    // congruent diagonalization, columns of C are the new basis
    FMat C(m, FVec(m, F->zero()));
    for (size_t i = 0; i < m; ++i) C[i][i] = F->one();
    auto col = [&](size_t j) {
        FVec v(m, F->zero());
        for (size_t i = 0; i < m; ++i) v[i] = C[i][j];
        return v;
    };
    auto bil = [&](const FVec& u, const FVec& v) {
        Fq acc = F->zero();
        for (size_t i = 0; i < m; ++i) {
            if (u[i].is_zero()) continue;
            for (size_t j = 0; j < m; ++j) {
                if (gram[i][j].is_zero() || v[j].is_zero()) continue;
                acc += u[i] * gram[i][j] * v[j];
            }
        }
        return acc;
    };
    for (size_t k = 0; k < m; ++k) {
        Fq qkk = bil(col(k), col(k));
        if (qkk.is_zero()) {
            bool fixed = false;
            for (size_t j = k + 1; j < m && !fixed; ++j) {
                if (!bil(col(j), col(j)).is_zero()) {
                    for (size_t i = 0; i < m; ++i) std::swap(C[i][k], C[i][j]);
                    fixed = true;
                }
            }
            for (size_t j = k + 1; j < m && !fixed; ++j) {
                if (!bil(col(k), col(j)).is_zero()) {
                    for (size_t i = 0; i < m; ++i) C[i][k] += C[i][j];
                    fixed = true;
                }
            }
            FQT_CHECK(fixed, "pivot search failed on a regular constant form");
            qkk = bil(col(k), col(k));
        }
        Fq inv = qkk.inv();
        for (size_t j = k + 1; j < m; ++j) {
            Fq c = bil(col(k), col(j)) * inv;
            if (c.is_zero()) continue;
            for (size_t i = 0; i < m; ++i) C[i][j] -= c * C[i][k];
        }
    }
    FVec alpha(m, F->zero());
    for (size_t k = 0; k < m; ++k) {
        alpha[k] = bil(col(k), col(k));
        FQT_CHECK(!alpha[k].is_zero(), "regular form diagonalized with a zero entry");
    }

    FVec w(m, F->zero());
    bool found = false;
    if (m == 2) {
        Fq s = -(alpha[1] / alpha[0]);
        if (!ff_is_square(s)) return std::nullopt;
        w[0] = ff_sqrt(s);
        w[1] = F->one();
        found = true;
    } else {
        for (int trial = 0; trial < 512 && !found; ++trial) {
            Fq x = F->random(rng), y = F->random(rng);
            if (x.is_zero() && y.is_zero()) continue;
            Fq s = -(alpha[0] * x * x + alpha[1] * y * y);
            Fq z2 = s / alpha[2];
            if (s.is_zero() || ff_is_square(z2)) {
                w[0] = x;
                w[1] = y;
                w[2] = s.is_zero() ? F->zero() : ff_sqrt(z2);
                found = true;
            }
        }
        if (!found) {
            // exhaustive sweep; a ternary constant form always has a zero
            std::vector<uint64_t> dx(F->k, 0);
            for (; !found;) {
                Fq x = F->from_coeffs(dx);
                std::vector<uint64_t> dy(F->k, 0);
                for (;;) {
                    Fq y = F->from_coeffs(dy);
                    if (!(x.is_zero() && y.is_zero())) {
                        Fq s = -(alpha[0] * x * x + alpha[1] * y * y);
                        Fq z2 = s / alpha[2];
                        if (s.is_zero() || ff_is_square(z2)) {
                            w[0] = x;
                            w[1] = y;
                            w[2] = s.is_zero() ? F->zero() : ff_sqrt(z2);
                            found = true;
                            break;
                        }
                    }
                    size_t pos = 0;
                    while (pos < F->k && ++dy[pos] == F->p) dy[pos++] = 0;
                    if (pos == F->k) break;
                }
                if (found) break;
                size_t pos = 0;
                while (pos < F->k && ++dx[pos] == F->p) dx[pos++] = 0;
                FQT_CHECK(pos < F->k, "no zero found for a ternary constant form");
            }
        }
    }
    FVec x(m, F->zero());
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < m; ++j) {
            if (C[i][j].is_zero() || w[j].is_zero()) continue;
            x[i] += C[i][j] * w[j];
        }
    }
    Fq val = bil(x, x);
    FQT_CHECK(val.is_zero(), "constant-form zero does not evaluate to zero");
    return x;
}

SolveOutcome solve_const_form(const std::vector<Fq>& coeffs, Rng& rng) {
    FQT_REQUIRE(coeffs.size() >= 2, "constant form solver needs n >= 2");
    const FieldPtr& F = coeffs[0].field();
    for (const Fq& c : coeffs) FQT_REQUIRE(!c.is_zero(), "constant form coefficients must be nonzero");
    FMat gram(coeffs.size(), FVec(coeffs.size(), F->zero()));
    for (size_t i = 0; i < coeffs.size(); ++i) gram[i][i] = coeffs[i];
    auto w = const_form_zero(gram, F, rng);
    if (!w) {
        FQT_CHECK(coeffs.size() == 2, "constant forms in >= 3 variables are isotropic");
        return SolveOutcome::of_certificate(
            make_binary_certificate(RatFunc(Poly(-(coeffs[1] / coeffs[0]))), F));
    }
    PVec v;
    v.reserve(w->size());
    for (const Fq& c : *w) v.push_back(Poly(c));
    return SolveOutcome::of_zero(std::move(v), Transform::identity(F, coeffs.size()));
}

// --- binary ----------------------------------------------------------------------

SolveOutcome solve_binary(const RatFunc& a1, const RatFunc& a2, Rng& rng) {
    (void)rng;
    FQT_REQUIRE(!a1.is_zero() && !a2.is_zero(), "binary solver needs nonzero coefficients");
    const FieldPtr& F = a1.field();
    RatFunc ratio = -(a2 / a1);
    if (!rf_is_square(ratio)) return SolveOutcome::of_certificate(make_binary_certificate(ratio, F));
    RatFunc r = rf_sqrt(ratio);
    PVec v = {r.num(), r.den()};
    FQT_CHECK((a1 * RatFunc(v[0] * v[0]) + a2 * RatFunc(v[1] * v[1])).is_zero(), "binary zero check failed");
    return SolveOutcome::of_zero(std::move(v), Transform::identity(F, 2));
}

// --- ternary ----------------------------------------------------------------------

namespace {

struct TernaryMin {
    std::array<Poly, 3> work;
    RMat pullback;  // diagonal matrix; zeros of the minimized form map through it
    PVec primes;    // all primes that can divide the minimized determinant
};

// Squarefree pairwise-coprime reduction. Every substitution scales the two
// complementary variables, which keeps the solution degree bounds aligned with
// the input coefficients.
TernaryMin ternary_minimize(const std::array<Poly, 3>& a, Rng& rng) {
    const FieldPtr& F = a[0].field();
    TernaryMin out{a, rmat_identity(F, 3), {}};
    PVec primes = prime_union({a[0], a[1], a[2]}, rng);
    for (const Poly& f : primes) {
        std::array<unsigned, 3> v;
        for (size_t i = 0; i < 3; ++i) {
            while ((v[i] = out.work[i].is_constant() ? 0 : multiplicity(f, out.work[i])) >= 2) {
                out.work[i] = exact_div(out.work[i], f * f);
                for (size_t j = 0; j < 3; ++j) {
                    if (j != i) out.pullback[j][j] *= RatFunc(f);
                }
            }
        }
        unsigned cnt = v[0] + v[1] + v[2];
        if (cnt == 3) {
            for (size_t i = 0; i < 3; ++i) out.work[i] = exact_div(out.work[i], f);
            cnt = 0;
        } else if (cnt == 2) {
            size_t k = !v[0] ? 0 : (!v[1] ? 1 : 2);
            for (size_t i = 0; i < 3; ++i) {
                if (i == k) {
                    out.work[i] = out.work[i] * f;
                    out.pullback[i][i] *= RatFunc(f);
                } else {
                    out.work[i] = exact_div(out.work[i], f);
                }
            }
        }
    }
    out.primes = std::move(primes);
    return out;
}

}  // namespace

SolveOutcome solve_ternary(const Poly& a1, const Poly& a2, const Poly& a3, Rng& rng) {
    const FieldPtr& F = a1.field();
    FQT_REQUIRE(!a1.is_zero() && !a2.is_zero() && !a3.is_zero(), "ternary solver needs nonzero coefficients");
    const std::array<Poly, 3> input = {a1, a2, a3};

    TernaryMin min = ternary_minimize(input, rng);
    const std::array<Poly, 3>& w = min.work;
    Transform trace(min.pullback);

    auto finish = [&](const PVec& min_zero) {
        RVec pulled = rmat_vec(min.pullback, to_ratfunc_vec(min_zero));
        PVec v = primitive_vector(pulled);
        Poly val = Poly::zero(F);
        for (size_t i = 0; i < 3; ++i) val += input[i] * v[i] * v[i];
        FQT_CHECK(val.is_zero(), "ternary zero does not evaluate to zero");
        bool nonzero = false;
        for (const Poly& x : v) nonzero = nonzero || !x.is_zero();
        FQT_CHECK(nonzero, "ternary solver produced the zero vector");
        for (size_t i = 0; i < 3; ++i) {
            if (v[i].is_zero()) continue;
            int64_t bound = input[(i + 1) % 3].deg() + input[(i + 2) % 3].deg();
            FQT_CHECK(2 * v[i].deg() <= bound, "ternary zero exceeds the contract degree bound");
        }
        return SolveOutcome::of_zero(std::move(v), trace);
    };

    // constant minimized form: a ternary form over F_q is isotropic
    if (w[0].is_constant() && w[1].is_constant() && w[2].is_constant()) {
        Rng crng = rng.split();
        auto out = solve_const_form({w[0].coeff(0), w[1].coeff(0), w[2].coeff(0)}, crng);
        FQT_CHECK(out.is_zero(), "constant ternary form must be isotropic");
        return finish(out.zero->v);
    }

    // local conditions at the primes of the squarefree determinant
    struct PrimeData {
        Poly f;
        size_t i, j;  // the two coefficients f does not divide
        Poly root;    // square root of -(w_i w_j) mod f
    };
    std::vector<PrimeData> conditions;
    for (const Poly& f : min.primes) {
        size_t k = 3;
        for (size_t i = 0; i < 3; ++i) {
            if (!w[i].is_constant() && divides(f, w[i])) {
                k = i;
                break;
            }
        }
        if (k == 3) continue;  // prime dropped out during minimization
        size_t i = (k + 1) % 3, j = (k + 2) % 3;
        if (i > j) std::swap(i, j);
        Poly target = -(w[i] * w[j]);
        if (!residue_is_square(target, f)) {
            AnisotropyCertificate cert;
            cert.place = Place::finite(f);
            cert.dim = 3;
            cert.condition = AnisoCondition::TernaryFiniteLemma;
            cert.coeffs = {w[0], w[1], w[2]};
            cert.witness = {RatFunc(target % f)};
            return SolveOutcome::of_certificate(std::move(cert));
        }
        Rng srng = rng.split();
        conditions.push_back({f, i, j, residue_sqrt(target, f, srng)});
    }
    // finite solvability everywhere forces solvability at infinity (the number
    // of anisotropic places of a ternary form is even)
    FQT_CHECK(ternary_local_infinity(w[0], w[1], w[2]), "product formula violated at infinity");

    std::array<int64_t, 3> dw = {w[0].deg(), w[1].deg(), w[2].deg()};
    int64_t d = dw[0] + dw[1] + dw[2];
    Poly D = w[0] * w[1] * w[2];

    // rank-3 module over F_q[t] of vectors meeting every local congruence
    // condition w_i x_i = root * x_j (mod f); built one prime at a time
    std::array<std::array<Poly, 3>, 3> rows;
    for (size_t r = 0; r < 3; ++r) {
        for (size_t i = 0; i < 3; ++i) rows[r][i] = r == i ? Poly::one(F) : Poly::zero(F);
    }
    int64_t det_deg = 0;
    for (const auto& pd : conditions) {
        std::array<Poly, 3> c;
        for (size_t r = 0; r < 3; ++r) c[r] = (w[pd.i] * rows[r][pd.i] - pd.root * rows[r][pd.j]) % pd.f;
        size_t pivot = 3;
        for (size_t r = 0; r < 3; ++r) {
            if (!c[r].is_zero()) {
                pivot = r;
                break;
            }
        }
        FQT_CHECK(pivot < 3, "module already satisfies a fresh prime condition");
        auto [g, cinv, cv] = xgcd(c[pivot], pd.f);
        (void)cv;
        FQT_CHECK(g.is_one(), "condition value not invertible modulo an irreducible");
        for (size_t r = 0; r < 3; ++r) {
            if (r == pivot || c[r].is_zero()) continue;
            Poly gamma = (c[r] * cinv) % pd.f;
            for (size_t i = 0; i < 3; ++i) rows[r][i] -= gamma * rows[pivot][i];
        }
        for (size_t i = 0; i < 3; ++i) rows[pivot][i] = rows[pivot][i] * pd.f;
        det_deg += pd.f.deg();
    }
    FQT_CHECK(det_deg == d, "lattice determinant degree mismatch");

    // weighted weak-Popov reduction: weight 2*deg(entry) + deg(w_i), pivot is
    // the rightmost entry attaining the row maximum
    auto wdeg = [&](const Poly& e, size_t i) -> int64_t {
        return e.is_zero() ? INT64_MIN : 2 * e.deg() + dw[i];
    };
    auto row_profile = [&](const std::array<Poly, 3>& r) {
        int64_t phi = INT64_MIN;
        size_t piv = 0;
        for (size_t i = 0; i < 3; ++i) {
            int64_t wd = wdeg(r[i], i);
            if (wd >= phi) {
                phi = wd;
                piv = i;
            }
        }
        return std::make_pair(phi, piv);
    };
    for (int64_t guard = 0;; ++guard) {
        FQT_CHECK(guard < 64 * (d + 3) * (d + 3) + 256, "weak-Popov reduction did not terminate");
        std::array<std::pair<int64_t, size_t>, 3> prof;
        for (size_t r = 0; r < 3; ++r) prof[r] = row_profile(rows[r]);
        size_t ra = 3, rb = 3;
        for (size_t r = 0; r < 3 && ra == 3; ++r) {
            for (size_t s = r + 1; s < 3; ++s) {
                if (prof[r].second == prof[s].second) {
                    ra = r;
                    rb = s;
                    break;
                }
            }
        }
        if (ra == 3) break;
        size_t piv = prof[ra].second;
        // reduce the row with the larger weighted degree at the shared pivot
        size_t hi = wdeg(rows[ra][piv], piv) >= wdeg(rows[rb][piv], piv) ? ra : rb;
        size_t lo = hi == ra ? rb : ra;
        int64_t shift = rows[hi][piv].deg() - rows[lo][piv].deg();
        Fq coef = rows[hi][piv].lc() / rows[lo][piv].lc();
        Poly scale = Poly::monomial(F, (size_t)shift, coef);
        for (size_t i = 0; i < 3; ++i) rows[hi][i] -= scale * rows[lo][i];
    }

    std::array<std::pair<int64_t, size_t>, 3> prof;
    int64_t phi_sum = 0;
    for (size_t r = 0; r < 3; ++r) {
        prof[r] = row_profile(rows[r]);
        phi_sum += prof[r].first;
    }
    FQT_CHECK(phi_sum == d + 2 * det_deg, "reduced basis violates the degree-sum identity");

    // a row below the determinant degree is a zero outright
    for (size_t r = 0; r < 3; ++r) {
        if (prof[r].first < d) {
            return finish({rows[r][0], rows[r][1], rows[r][2]});
        }
    }

    // otherwise all rows sit exactly at degree d and pair into a constant
    // ternary form; its zero combines the rows into a zero of the conic
    FMat lam(3, FVec(3, F->zero()));
    for (size_t r = 0; r < 3; ++r) {
        FQT_CHECK(prof[r].first == d, "unexpected row weight in the reduced basis");
        for (size_t s = r; s < 3; ++s) {
            Poly bl = Poly::zero(F);
            for (size_t i = 0; i < 3; ++i) bl += w[i] * rows[r][i] * rows[s][i];
            Poly quot = bl.is_zero() ? bl : exact_div(bl, D);
            FQT_CHECK(quot.is_constant(), "row pairing exceeded the determinant degree");
            lam[r][s] = quot.coeff(0);
            lam[s][r] = lam[r][s];
        }
    }

    Rng crng = rng.split();
    auto alpha = const_form_zero(lam, F, crng);
    FQT_CHECK(alpha.has_value(), "leading-coefficient form of a locally solvable conic must be isotropic");

    PVec min_zero(3, Poly::zero(F));
    for (size_t r = 0; r < 3; ++r) {
        if ((*alpha)[r].is_zero()) continue;
        for (size_t i = 0; i < 3; ++i) min_zero[i] += rows[r][i] * (*alpha)[r];
    }
    return finish(min_zero);
}

// --- represent a value ---------------------------------------------------------------

std::optional<RVec> represent_value(const DiagForm& form, const Poly& c, Rng& rng) {
    FQT_REQUIRE(form.n() >= 1 && form.n() <= 3, "represent_value expects at most three variables");
    FQT_REQUIRE(!c.is_zero(), "represent_value target must be nonzero");
    const FieldPtr& F = form.field();
    const size_t n = form.n();

    PVec base_zero;  // kept from an attempt where the auxiliary variable vanished
    for (int attempt = 0; attempt < 8; ++attempt) {
        Rng srng = rng.split();
        SolveOutcome out = n == 1   ? solve_binary(RatFunc(form.at(0)), RatFunc(-c), srng)
                           : n == 2 ? solve_ternary(form.at(0), form.at(1), -c, srng)
                                    : solve_quaternary({form.at(0), form.at(1), form.at(2), -c}, srng);
        if (!out.is_zero()) return std::nullopt;
        const PVec& v = out.zero->v;
        if (!v[n].is_zero()) {
            RVec rep;
            for (size_t i = 0; i < n; ++i) rep.push_back(RatFunc(v[i], v[n]));
            RatFunc val = evaluate(form, rep);
            FQT_CHECK(val == RatFunc(c), "represented value mismatch");
            return rep;
        }
        base_zero.assign(v.begin(), v.begin() + (int64_t)n);
    }

    // the base form itself is isotropic, hence universal: walk the hyperbolic
    // direction through the known zero
    RVec wv = to_ratfunc_vec(base_zero);
    size_t j = 0;
    while (j < n && wv[j].is_zero()) ++j;
    FQT_CHECK(j < n, "stored base zero is trivial");
    RatFunc bwu = RatFunc(form.at(j)) * wv[j];  // B(w, e_j)
    RatFunc alpha = (RatFunc(c) - RatFunc(form.at(j))) / (RatFunc(F->elem(2)) * bwu);
    RVec rep(n, RatFunc::zero(F));
    for (size_t i = 0; i < n; ++i) rep[i] = alpha * wv[i];
    rep[j] += RatFunc::one(F);
    RatFunc val = evaluate(form, rep);
    FQT_CHECK(val == RatFunc(c), "hyperbolic representation mismatch");
    return rep;
}

// --- quaternary minimization -----------------------------------------------------------

std::optional<Minimized> minimize_quaternary(const std::array<Poly, 4>& a, Rng& rng,
                                             AnisotropyCertificate* cert_out) {
    const FieldPtr& F = a[0].field();
    for (const Poly& x : a) FQT_REQUIRE(!x.is_zero(), "minimization needs nonzero coefficients");
    std::array<Poly, 4> work = a;
    RMat B = rmat_identity(F, 4);
    RatFunc sigma = RatFunc::one(F);
    PVec primes = prime_union({a[0], a[1], a[2], a[3]}, rng);

    // squarefree coefficients
    for (const Poly& f : primes) {
        for (size_t i = 0; i < 4; ++i) {
            while (!work[i].is_constant() && multiplicity(f, work[i]) >= 2) {
                work[i] = exact_div(work[i], f * f);
                B[i][i] = B[i][i] / RatFunc(f);
            }
        }
    }
    // cube-free determinant
    for (const Poly& f : primes) {
        std::array<bool, 4> div;
        unsigned cnt = 0;
        for (size_t i = 0; i < 4; ++i) {
            div[i] = !work[i].is_constant() && divides(f, work[i]);
            cnt += div[i] ? 1 : 0;
        }
        if (cnt == 4) {
            for (size_t i = 0; i < 4; ++i) work[i] = exact_div(work[i], f);
            sigma = sigma / RatFunc(f);
        } else if (cnt == 3) {
            for (size_t i = 0; i < 4; ++i) {
                if (div[i]) {
                    work[i] = exact_div(work[i], f);
                } else {
                    work[i] = work[i] * f;
                    B[i][i] = B[i][i] * RatFunc(f);
                }
            }
            sigma = sigma / RatFunc(f);
        }
    }
    // two-divisor square condition
    for (const Poly& f : primes) {
        std::vector<size_t> hit, freev;
        for (size_t i = 0; i < 4; ++i) {
            bool dv = !work[i].is_constant() && divides(f, work[i]);
            (dv ? hit : freev).push_back(i);
        }
        if (hit.size() != 2) continue;
        size_t i = hit[0], j = hit[1], k = freev[0], l = freev[1];
        if (residue_is_square(-(work[k] * work[l]), f)) continue;
        if (!residue_is_square(-(exact_div(work[i], f) * exact_div(work[j], f)), f)) {
            if (cert_out) {
                cert_out->place = Place::finite(f);
                cert_out->dim = 4;
                cert_out->condition = AnisoCondition::QuaternaryFiniteLemma;
                cert_out->coeffs = {work[0], work[1], work[2], work[3]};
                cert_out->witness = {RatFunc(-(work[k] * work[l]) % f),
                                     RatFunc(-(exact_div(work[i], f) * exact_div(work[j], f)) % f)};
            }
            return std::nullopt;
        }
        work[i] = exact_div(work[i], f);
        work[j] = exact_div(work[j], f);
        work[k] = work[k] * f;
        work[l] = work[l] * f;
        B[i][i] = B[i][i] / RatFunc(f);
        B[j][j] = B[j][j] / RatFunc(f);
        sigma = sigma * RatFunc(f);
    }
    // square-majority of leading coefficients
    unsigned squares = 0;
    for (const Poly& x : work) squares += ff_is_square(x.lc()) ? 1 : 0;
    if (squares < 2) {
        Fq nu = ff_nonsquare(F, rng);
        for (Poly& x : work) x = x * nu;
        sigma = sigma * RatFunc(Poly(nu));
    }
    return Minimized{DiagForm(F, {work[0], work[1], work[2], work[3]}), Transform(std::move(B), std::move(sigma))};
}

Minimized minimize_quinary(const std::array<Poly, 5>& a, Rng& rng) {
    const FieldPtr& F = a[0].field();
    for (const Poly& x : a) FQT_REQUIRE(!x.is_zero(), "minimization needs nonzero coefficients");
    std::array<Poly, 5> work = a;
    RMat B = rmat_identity(F, 5);
    RatFunc sigma = RatFunc::one(F);
    PVec primes = prime_union({a[0], a[1], a[2], a[3], a[4]}, rng);

    for (const Poly& f : primes) {
        for (size_t i = 0; i < 5; ++i) {
            while (!work[i].is_constant() && multiplicity(f, work[i]) >= 2) {
                work[i] = exact_div(work[i], f * f);
                B[i][i] = B[i][i] / RatFunc(f);
            }
        }
    }
    for (const Poly& f : primes) {
        std::array<bool, 5> div;
        unsigned cnt = 0;
        for (size_t i = 0; i < 5; ++i) {
            div[i] = !work[i].is_constant() && divides(f, work[i]);
            cnt += div[i] ? 1 : 0;
        }
        if (cnt < 3) continue;
        for (size_t i = 0; i < 5; ++i) {
            if (div[i]) {
                work[i] = exact_div(work[i], f);
            } else {
                work[i] = work[i] * f;
                B[i][i] = B[i][i] * RatFunc(f);
            }
        }
        sigma = sigma / RatFunc(f);
    }
    return Minimized{DiagForm(F, {work[0], work[1], work[2], work[3], work[4]}),
                     Transform(std::move(B), std::move(sigma))};
}

// --- splitting --------------------------------------------------------------------------

namespace {

struct ParityLc {
    int parity;
    Fq lc;
};

// ternary solvability at infinity from degree parities and leading coefficients
bool inf_ok3(const ParityLc& a, const ParityLc& b, const ParityLc& c) {
    if (a.parity == b.parity && b.parity == c.parity) return true;
    if (a.parity == b.parity) return ff_is_square(-(a.lc * b.lc));
    if (a.parity == c.parity) return ff_is_square(-(a.lc * c.lc));
    return ff_is_square(-(b.lc * c.lc));
}

bool inf_ok4(const std::array<ParityLc, 4>& a) {
    std::vector<size_t> even, odd;
    for (size_t i = 0; i < 4; ++i) (a[i].parity ? odd : even).push_back(i);
    if (even.size() != 2) return true;
    return ff_is_square(-(a[even[0]].lc * a[even[1]].lc)) || ff_is_square(-(a[odd[0]].lc * a[odd[1]].lc));
}

ParityLc plc(const Poly& p) { return {int(p.deg() & 1), p.lc()}; }

struct CongruenceSet {
    PVec residues, moduli;
};

Poly assemble_class(const CongruenceSet& cs) { return crt(cs.residues, cs.moduli); }

}  // namespace

SplitPlan split_quaternary(const DiagForm& minimized, Rng& rng) {
    FQT_REQUIRE(minimized.n() == 4, "quaternary split expects four coefficients");
    const FieldPtr& F = minimized.field();
    const PVec& a = minimized.coeffs();

    // choose the partition and degree parity making both halves solvable at
    // infinity; existence is guaranteed for minimized forms isotropic there
    static const std::array<std::array<size_t, 4>, 6> kSplits = {
        {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}, {1, 2, 0, 3}, {1, 3, 0, 2}, {2, 3, 0, 1}}};
    std::vector<size_t> sigma;
    int epsilon = -1;
    Poly Fprod = Poly::one(F), Gprod = Poly::one(F);
    for (const auto& split : kSplits) {
        Poly fp = gcd(a[split[0]], a[split[1]]);
        Poly gp = gcd(a[split[2]], a[split[3]]);
        if (fp.is_constant()) fp = Poly::one(F);
        if (gp.is_constant()) gp = Poly::one(F);
        for (int eps = 0; eps <= 1 && epsilon < 0; ++eps) {
            ParityLc third{int((fp.deg() + gp.deg() + eps) & 1), -F->one()};
            ParityLc n1 = plc(-a[split[2]]), n2 = plc(-a[split[3]]);
            if (inf_ok3(plc(a[split[0]]), plc(a[split[1]]), third) && inf_ok3(n1, n2, third)) {
                sigma.assign(split.begin(), split.end());
                epsilon = eps;
                Fprod = fp;
                Gprod = gp;
            }
        }
        if (epsilon >= 0) break;
    }
    FQT_CHECK(epsilon >= 0, "no split is solvable at infinity; caller must check isotropy there first");

    // congruence conditions on the auxiliary prime
    Poly D = minimized.determinant();
    Rng frng = rng.split();
    auto dfac = factor(D, frng);
    CongruenceSet cs;
    Poly FG = Fprod * Gprod;
    for (const auto& [g, mult] : dfac.factors) {
        unsigned div_p = 0, div_n = 0;
        bool p_first = !a[sigma[0]].is_constant() && divides(g, a[sigma[0]]);
        bool p_second = !a[sigma[1]].is_constant() && divides(g, a[sigma[1]]);
        bool n_first = !a[sigma[2]].is_constant() && divides(g, a[sigma[2]]);
        bool n_second = !a[sigma[3]].is_constant() && divides(g, a[sigma[3]]);
        div_p = (p_first ? 1 : 0) + (p_second ? 1 : 0);
        div_n = (n_first ? 1 : 0) + (n_second ? 1 : 0);
        FQT_CHECK(div_p + div_n == mult && mult <= 2, "determinant is not cube-free");
        Poly residue;
        if (div_p == 2 || div_n == 2) {
            residue = Poly::one(F);
        } else if (div_p == 1) {
            const Poly& other = p_first ? a[sigma[1]] : a[sigma[0]];
            residue = (other * FG) % g;
            if (div_n == 1) {
                const Poly& other_n = n_first ? a[sigma[3]] : a[sigma[2]];
                Poly rn = (-(other_n * FG)) % g;
                FQT_CHECK(residue_is_square((residue * rn) % g, g),
                          "conflicting congruence conditions on a minimized form");
            }
        } else {
            const Poly& other_n = n_first ? a[sigma[3]] : a[sigma[2]];
            residue = (-(other_n * FG)) % g;
        }
        Poly modulus = g;
        for (unsigned e = 1; e < mult; ++e) modulus = modulus * g;
        cs.residues.push_back(residue % modulus);
        cs.moduli.push_back(modulus);
    }
    SplitPlan plan;
    plan.sigma = std::move(sigma);
    plan.epsilon = epsilon;
    plan.D = D;
    plan.b = assemble_class(cs);
    FQT_CHECK(gcd(plan.b, plan.D).is_one(), "assembled residue class is not coprime to the determinant");
    Rng prng = rng.split();
    for (auto& [f, m] : factor(Fprod, prng).factors) plan.f_list.push_back(f);
    for (auto& [gpoly, m] : factor(Gprod, prng).factors) plan.g_list.push_back(gpoly);
    return plan;
}

SplitPlan split_quinary(const DiagForm& minimized, Rng& rng) {
    FQT_REQUIRE(minimized.n() == 5, "quinary split expects five coefficients");
    const FieldPtr& F = minimized.field();
    const PVec& a = minimized.coeffs();

    std::vector<size_t> sigma;
    int epsilon = -1;
    Poly Fprod = Poly::one(F);
    for (size_t p1 = 0; p1 < 5 && epsilon < 0; ++p1) {
        for (size_t p2 = p1 + 1; p2 < 5 && epsilon < 0; ++p2) {
            std::vector<size_t> others;
            for (size_t i = 0; i < 5; ++i) {
                if (i != p1 && i != p2) others.push_back(i);
            }
            Poly fp = gcd(a[p1], a[p2]);
            if (fp.is_constant()) fp = Poly::one(F);
            for (int eps = 0; eps <= 1 && epsilon < 0; ++eps) {
                ParityLc third{int((fp.deg() + eps) & 1), -F->one()};
                std::array<ParityLc, 4> quat = {plc(-a[others[0]]), plc(-a[others[1]]), plc(-a[others[2]]), third};
                if (inf_ok3(plc(a[p1]), plc(a[p2]), third) && inf_ok4(quat)) {
                    sigma = {p1, p2, others[0], others[1], others[2]};
                    epsilon = eps;
                    Fprod = fp;
                }
            }
        }
    }
    FQT_CHECK(epsilon >= 0, "quinary split found no parity assignment");

    Poly D = minimized.determinant();
    Rng frng = rng.split();
    auto dfac = factor(D, frng);
    CongruenceSet cs;
    for (const auto& [g, mult] : dfac.factors) {
        bool p_first = !a[sigma[0]].is_constant() && divides(g, a[sigma[0]]);
        bool p_second = !a[sigma[1]].is_constant() && divides(g, a[sigma[1]]);
        unsigned div_p = (p_first ? 1 : 0) + (p_second ? 1 : 0);
        std::vector<size_t> n_divided, n_free;
        for (size_t slot = 2; slot < 5; ++slot) {
            bool dv = !a[sigma[slot]].is_constant() && divides(g, a[sigma[slot]]);
            (dv ? n_divided : n_free).push_back(sigma[slot]);
        }
        FQT_CHECK(div_p + n_divided.size() == mult && mult <= 2, "determinant is not cube-free");
        Poly residue = Poly::one(F);
        if (div_p == 1) {
            const Poly& other = p_first ? a[sigma[1]] : a[sigma[0]];
            residue = (other * Fprod) % g;
        } else if (div_p == 0 && n_divided.size() == 2) {
            // g divides exactly two coefficients of the ternary half: the
            // remaining one, scaled by f_1...f_k, pins the square class
            residue = (-(a[n_free[0]] * Fprod)) % g;
        }
        Poly modulus = g;
        for (unsigned e = 1; e < mult; ++e) modulus = modulus * g;
        cs.residues.push_back(residue % modulus);
        cs.moduli.push_back(modulus);
    }
    SplitPlan plan;
    plan.sigma = std::move(sigma);
    plan.epsilon = epsilon;
    plan.D = D;
    plan.b = assemble_class(cs);
    FQT_CHECK(gcd(plan.b, plan.D).is_one(), "assembled residue class is not coprime to the determinant");
    Rng prng = rng.split();
    for (auto& [f, m] : factor(Fprod, prng).factors) plan.f_list.push_back(f);
    return plan;
}

// --- the main algorithms -----------------------------------------------------------------

SolveOutcome solve_quaternary(const std::array<Poly, 4>& a, Rng& rng) {
    const FieldPtr& F = a[0].field();
    AnisotropyCertificate cert;
    Rng mrng = rng.split();
    auto min = minimize_quaternary(a, mrng, &cert);
    if (!min) return SolveOutcome::of_certificate(std::move(cert));
    const PVec& w = min->form.coeffs();

    auto finish = [&](const PVec& min_zero) {
        RVec pulled = min->transform.apply(to_ratfunc_vec(min_zero));
        PVec v = primitive_vector(pulled);
        Poly val = Poly::zero(F);
        for (size_t i = 0; i < 4; ++i) val += a[i] * v[i] * v[i];
        FQT_CHECK(val.is_zero(), "quaternary zero does not evaluate to zero");
        return SolveOutcome::of_zero(std::move(v), min->transform);
    };

    bool all_const = true;
    for (const Poly& x : w) all_const = all_const && x.is_constant();
    if (all_const) {
        Rng crng = rng.split();
        auto out = solve_const_form({w[0].coeff(0), w[1].coeff(0), w[2].coeff(0), w[3].coeff(0)}, crng);
        FQT_CHECK(out.is_zero(), "constant quaternary form must be isotropic");
        return finish(out.zero->v);
    }

    if (!quaternary_local_infinity({w[0], w[1], w[2], w[3]})) {
        AnisotropyCertificate inf_cert;
        inf_cert.place = Place::infinity(F);
        inf_cert.dim = 4;
        inf_cert.condition = AnisoCondition::QuaternaryInfinityLemma;
        inf_cert.coeffs = w;
        for (const Poly& x : w) inf_cert.witness.push_back(RatFunc(Poly(x.lc())));
        return SolveOutcome::of_certificate(std::move(inf_cert));
    }

    // early exit: an isotropic binary subform solves the instance directly
    for (size_t i = 0; i < 4; ++i) {
        for (size_t j = i + 1; j < 4; ++j) {
            RatFunc ratio = -(RatFunc(w[j]) / RatFunc(w[i]));
            if (!rf_is_square(ratio)) continue;
            RatFunc r = rf_sqrt(ratio);
            PVec v(4, Poly::zero(F));
            v[i] = r.num();
            v[j] = r.den();
            return finish(v);
        }
    }

    Rng srng = rng.split();
    SplitPlan plan = split_quaternary(min->form, srng);
    int64_t dd = plan.D.deg();
    FQT_CHECK(dd >= 1, "non-constant minimized form has a constant determinant");
    unsigned N = (unsigned)(4 * dd) + (plan.epsilon ? 1u : 0u);
    Rng arng = rng.split();
    Poly aux = sample_irreducible_in_class(plan.b, plan.D, N, arng);
    Poly target = plan.f_product() * plan.g_product() * aux;

    Rng rng1 = rng.split(), rng2 = rng.split();
    SolveOutcome eq2 = solve_ternary(w[plan.sigma[0]], w[plan.sigma[1]], -target, rng1);
    FQT_CHECK(eq2.is_zero(), "positive half of the split is not isotropic");
    SolveOutcome eq3 = solve_ternary(-w[plan.sigma[2]], -w[plan.sigma[3]], -target, rng2);
    FQT_CHECK(eq3.is_zero(), "negative half of the split is not isotropic");
    const PVec& s1 = eq2.zero->v;
    const PVec& s2 = eq3.zero->v;
    FQT_CHECK(!s1[2].is_zero() && !s2[2].is_zero(),
              "split halves degenerated although binary subforms are anisotropic");

    PVec v(4, Poly::zero(F));
    v[plan.sigma[0]] = s1[0] * s2[2];
    v[plan.sigma[1]] = s1[1] * s2[2];
    v[plan.sigma[2]] = s2[0] * s1[2];
    v[plan.sigma[3]] = s2[1] * s1[2];
    return finish(v);
}

SolveOutcome solve_quinary(const std::array<Poly, 5>& a, Rng& rng) {
    const FieldPtr& F = a[0].field();
    Rng mrng = rng.split();
    Minimized min = minimize_quinary(a, mrng);
    const PVec& w = min.form.coeffs();

    auto finish = [&](const PVec& min_zero) {
        RVec pulled = min.transform.apply(to_ratfunc_vec(min_zero));
        PVec v = primitive_vector(pulled);
        Poly val = Poly::zero(F);
        for (size_t i = 0; i < 5; ++i) val += a[i] * v[i] * v[i];
        FQT_CHECK(val.is_zero(), "quinary zero does not evaluate to zero");
        return SolveOutcome::of_zero(std::move(v), min.transform);
    };

    bool all_const = true;
    for (const Poly& x : w) all_const = all_const && x.is_constant();
    if (all_const) {
        Rng crng = rng.split();
        auto out = solve_const_form({w[0].coeff(0), w[1].coeff(0), w[2].coeff(0), w[3].coeff(0), w[4].coeff(0)}, crng);
        FQT_CHECK(out.is_zero(), "constant quinary form must be isotropic");
        return finish(out.zero->v);
    }

    // an isotropic ternary subform already solves the instance
    for (size_t i = 0; i < 5; ++i) {
        for (size_t j = i + 1; j < 5; ++j) {
            for (size_t k = j + 1; k < 5; ++k) {
                Rng trng = rng.split();
                SolveOutcome sub = solve_ternary(w[i], w[j], w[k], trng);
                if (!sub.is_zero()) continue;
                PVec v(5, Poly::zero(F));
                v[i] = sub.zero->v[0];
                v[j] = sub.zero->v[1];
                v[k] = sub.zero->v[2];
                return finish(v);
            }
        }
    }

    Rng srng = rng.split();
    SplitPlan plan = split_quinary(min.form, srng);
    int64_t dd = plan.D.deg();
    FQT_CHECK(dd >= 1, "non-constant minimized form has a constant determinant");
    unsigned N = (unsigned)(4 * dd) + (plan.epsilon ? 1u : 0u);
    Rng arng = rng.split();
    Poly aux = sample_irreducible_in_class(plan.b, plan.D, N, arng);
    Poly target = plan.f_product() * aux;

    Rng rng1 = rng.split(), rng2 = rng.split();
    SolveOutcome eq6 = solve_ternary(w[plan.sigma[0]], w[plan.sigma[1]], -target, rng1);
    FQT_CHECK(eq6.is_zero(), "binary half of the quinary split is not isotropic");
    SolveOutcome eq7 =
        solve_quaternary({-w[plan.sigma[2]], -w[plan.sigma[3]], -w[plan.sigma[4]], -target}, rng2);
    FQT_CHECK(eq7.is_zero(), "ternary half of the quinary split is not isotropic");
    const PVec& s1 = eq6.zero->v;
    const PVec& s2 = eq7.zero->v;
    FQT_CHECK(!s1[2].is_zero() && !s2[3].is_zero(),
              "split halves degenerated although ternary subforms are anisotropic");

    PVec v(5, Poly::zero(F));
    v[plan.sigma[0]] = s1[0] * s2[3];
    v[plan.sigma[1]] = s1[1] * s2[3];
    v[plan.sigma[2]] = s2[0] * s1[2];
    v[plan.sigma[3]] = s2[1] * s1[2];
    v[plan.sigma[4]] = s2[2] * s1[2];
    return finish(v);
}

SolveOutcome solve_diag(const DiagForm& form, Rng& rng) {
    const FieldPtr& F = form.field();
    const size_t n = form.n();
    if (n == 1) {
        AnisotropyCertificate cert;
        cert.place = Place::infinity(F);
        cert.dim = 1;
        cert.condition = AnisoCondition::UnaryRegular;
        cert.coeffs = {form.at(0)};
        return SolveOutcome::of_certificate(std::move(cert));
    }
    if (n == 2) return solve_binary(RatFunc(form.at(0)), RatFunc(form.at(1)), rng);
    if (n == 3) return solve_ternary(form.at(0), form.at(1), form.at(2), rng);
    if (n == 4) return solve_quaternary({form.at(0), form.at(1), form.at(2), form.at(3)}, rng);
    if (n == 5) return solve_quinary({form.at(0), form.at(1), form.at(2), form.at(3), form.at(4)}, rng);
    // n >= 6: forms in five or more variables are isotropic; restrict to the
    // first five variables
    SolveOutcome five = solve_quinary({form.at(0), form.at(1), form.at(2), form.at(3), form.at(4)}, rng);
    FQT_CHECK(five.is_zero(), "quinary restriction must be isotropic");
    PVec v(n, Poly::zero(F));
    for (size_t i = 0; i < 5; ++i) v[i] = five.zero->v[i];
    return SolveOutcome::of_zero(std::move(v), Transform::identity(F, n));
}

SolveOutcome solve_any(const GramMatrix& A, Rng& rng) {
    const FieldPtr& F = A.field();
    auto rs = radical_split(A);
    if (!rs.radical.empty()) {
        PVec v = primitive_vector(rs.radical[0]);
        return SolveOutcome::of_zero(std::move(v), Transform::identity(F, A.n()));
    }
    if (A.n() == 1) {
        AnisotropyCertificate cert;
        cert.place = Place::infinity(F);
        cert.dim = 1;
        cert.condition = AnisoCondition::UnaryRegular;
        cert.coeffs = {A.at(0, 0).num()};
        return SolveOutcome::of_certificate(std::move(cert));
    }
    auto gs = gram_schmidt(A);
    auto cd = clear_denominators(gs.diagonal);
    SolveOutcome inner = solve_diag(cd.form, rng);
    if (!inner.is_zero()) return inner;
    RVec pulled = gs.transform.apply(cd.transform.apply(to_ratfunc_vec(inner.zero->v)));
    PVec v = primitive_vector(pulled);
    RatFunc val = evaluate(A, to_ratfunc_vec(v));
    FQT_CHECK(val.is_zero(), "pulled-back zero does not evaluate to zero");
    bool nonzero = false;
    for (const Poly& x : v) nonzero = nonzero || !x.is_zero();
    FQT_CHECK(nonzero, "pulled-back zero vanished");
    return SolveOutcome::of_zero(std::move(v), transform_compose(gs.transform, cd.transform));
}

}  // namespace fqt
