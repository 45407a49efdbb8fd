#include "fqt/qform.hpp"

#include <algorithm>

namespace fqt {

// --- linear algebra over F_q(t) -----------------------------------------------

RMat rmat_identity(const FieldPtr& F, size_t n) {
    RMat m(n, RVec(n, RatFunc::zero(F)));
    for (size_t i = 0; i < n; ++i) m[i][i] = RatFunc::one(F);
    return m;
}

RMat rmat_mul(const RMat& a, const RMat& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    FQT_REQUIRE(!a.empty() && a[0].size() == k, "matrix dimension mismatch");
    const FieldPtr& F = a[0][0].field();
    RMat r(n, RVec(m, RatFunc::zero(F)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (size_t j = 0; j < m; ++j) {
                if (b[l][j].is_zero()) continue;
                r[i][j] += a[i][l] * b[l][j];
            }
        }
    }
    return r;
}

RVec rmat_vec(const RMat& a, const RVec& v) {
    FQT_REQUIRE(!a.empty() && a[0].size() == v.size(), "matrix/vector dimension mismatch");
    const FieldPtr& F = v[0].field();
    RVec r(a.size(), RatFunc::zero(F));
    for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = 0; j < v.size(); ++j) {
            if (a[i][j].is_zero() || v[j].is_zero()) continue;
            r[i] += a[i][j] * v[j];
        }
    }
    return r;
}

RMat rmat_transpose(const RMat& a) {
    size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
    RMat r(m, RVec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) r[j][i] = a[i][j];
    return r;
}

namespace {

// Row echelon with partial structural pivoting; returns (echelon, pivot cols,
// det scale tracking optional).
struct Echelon {
    RMat rows;
    std::vector<size_t> pivot_cols;
    std::vector<size_t> pivot_rows;
};

Echelon echelonize(RMat m) {
    Echelon e;
    size_t nrows = m.size(), ncols = m.empty() ? 0 : m[0].size();
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < nrows; ++col) {
        size_t pr = row;
        while (pr < nrows && m[pr][col].is_zero()) ++pr;
        if (pr == nrows) continue;
        std::swap(m[row], m[pr]);
        RatFunc inv = m[row][col].inv();
        for (size_t j = col; j < ncols; ++j) m[row][j] = m[row][j] * inv;
        for (size_t i = 0; i < nrows; ++i) {
            if (i == row || m[i][col].is_zero()) continue;
            RatFunc c = m[i][col];
            for (size_t j = col; j < ncols; ++j) m[i][j] -= c * m[row][j];
        }
        e.pivot_cols.push_back(col);
        e.pivot_rows.push_back(row);
        ++row;
    }
    e.rows = std::move(m);
    return e;
}

}  // namespace

RatFunc rmat_det(const RMat& a) {
    size_t n = a.size();
    FQT_REQUIRE(n > 0 && a[0].size() == n, "determinant of a non-square matrix");
    const FieldPtr& F = a[0][0].field();
    RMat m = a;
    RatFunc det = RatFunc::one(F);
    for (size_t col = 0; col < n; ++col) {
        size_t pr = col;
        while (pr < n && m[pr][col].is_zero()) ++pr;
        if (pr == n) return RatFunc::zero(F);
        if (pr != col) {
            std::swap(m[pr], m[col]);
            det = -det;
        }
        det *= m[col][col];
        RatFunc inv = m[col][col].inv();
        for (size_t i = col + 1; i < n; ++i) {
            if (m[i][col].is_zero()) continue;
            RatFunc c = m[i][col] * inv;
            for (size_t j = col; j < n; ++j) m[i][j] -= c * m[col][j];
        }
    }
    return det;
}

RMat rmat_inverse(const RMat& a) {
    size_t n = a.size();
    FQT_REQUIRE(n > 0 && a[0].size() == n, "inverse of a non-square matrix");
    const FieldPtr& F = a[0][0].field();
    RMat m = a;
    RMat inv = rmat_identity(F, n);
    for (size_t col = 0; col < n; ++col) {
        size_t pr = col;
        while (pr < n && m[pr][col].is_zero()) ++pr;
        FQT_REQUIRE(pr < n, "matrix is singular");
        std::swap(m[pr], m[col]);
        std::swap(inv[pr], inv[col]);
        RatFunc c = m[col][col].inv();
        for (size_t j = 0; j < n; ++j) {
            m[col][j] *= c;
            inv[col][j] *= c;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col].is_zero()) continue;
            RatFunc f = m[i][col];
            for (size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[col][j];
                inv[i][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

std::vector<RVec> rmat_kernel(const RMat& a) {
    size_t ncols = a.empty() ? 0 : a[0].size();
    const FieldPtr& F = a[0][0].field();
    Echelon e = echelonize(a);
    std::vector<bool> is_pivot(ncols, false);
    for (size_t c : e.pivot_cols) is_pivot[c] = true;
    std::vector<RVec> basis;
    for (size_t free_col = 0; free_col < ncols; ++free_col) {
        if (is_pivot[free_col]) continue;
        RVec v(ncols, RatFunc::zero(F));
        v[free_col] = RatFunc::one(F);
        for (size_t pi = 0; pi < e.pivot_cols.size(); ++pi) {
            v[e.pivot_cols[pi]] = -e.rows[e.pivot_rows[pi]][free_col];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RVec> rmat_solve(const RMat& a, const RVec& b) {
    size_t nrows = a.size(), ncols = a[0].size();
    const FieldPtr& F = b[0].field();
    RMat aug = a;
    for (size_t i = 0; i < nrows; ++i) aug[i].push_back(b[i]);
    Echelon e = echelonize(std::move(aug));
    RVec x(ncols, RatFunc::zero(F));
    for (size_t pi = 0; pi < e.pivot_cols.size(); ++pi) {
        if (e.pivot_cols[pi] == ncols) return std::nullopt;  // pivot in the constant column
        x[e.pivot_cols[pi]] = e.rows[e.pivot_rows[pi]][ncols];
    }
    return x;
}

std::vector<FVec> fmat_kernel(const FMat& a, const FieldPtr& F) {
    size_t nrows = a.size(), ncols = a.empty() ? 0 : a[0].size();
    FMat m = a;
    std::vector<size_t> pivot_cols, pivot_rows;
    size_t row = 0;
    for (size_t col = 0; col < ncols && row < nrows; ++col) {
        size_t pr = row;
        while (pr < nrows && m[pr][col].is_zero()) ++pr;
        if (pr == nrows) continue;
        std::swap(m[row], m[pr]);
        Fq inv = m[row][col].inv();
        for (size_t j = col; j < ncols; ++j) m[row][j] *= inv;
        for (size_t i = 0; i < nrows; ++i) {
            if (i == row || m[i][col].is_zero()) continue;
            Fq c = m[i][col];
            for (size_t j = col; j < ncols; ++j) m[i][j] -= c * m[row][j];
        }
        pivot_cols.push_back(col);
        pivot_rows.push_back(row);
        ++row;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (size_t c : pivot_cols) is_pivot[c] = true;
    std::vector<FVec> basis;
    for (size_t free_col = 0; free_col < ncols; ++free_col) {
        if (is_pivot[free_col]) continue;
        FVec v(ncols, F->zero());
        v[free_col] = F->one();
        for (size_t pi = 0; pi < pivot_cols.size(); ++pi) v[pivot_cols[pi]] = -m[pivot_rows[pi]][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

// --- forms ----------------------------------------------------------------------

GramMatrix::GramMatrix(FieldPtr F, RMat entries) : F_(std::move(F)), entries_(std::move(entries)) {
    size_t n = entries_.size();
    FQT_REQUIRE(n >= 1, "Gram matrix must have dimension >= 1");
    for (const auto& row : entries_) FQT_REQUIRE(row.size() == n, "Gram matrix must be square");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            FQT_REQUIRE(entries_[i][j] == entries_[j][i], "Gram matrix must be symmetric");
}

GramMatrix GramMatrix::diagonal(const RVec& diag) {
    FQT_REQUIRE(!diag.empty(), "empty diagonal");
    const FieldPtr& F = diag[0].field();
    RMat m(diag.size(), RVec(diag.size(), RatFunc::zero(F)));
    for (size_t i = 0; i < diag.size(); ++i) m[i][i] = diag[i];
    return GramMatrix(F, std::move(m));
}

GramMatrix GramMatrix::diagonal(const PVec& diag) {
    RVec r;
    r.reserve(diag.size());
    for (const Poly& p : diag) r.push_back(RatFunc(p));
    return diagonal(r);
}

bool GramMatrix::is_diagonal() const {
    for (size_t i = 0; i < n(); ++i)
        for (size_t j = 0; j < n(); ++j)
            if (i != j && !entries_[i][j].is_zero()) return false;
    return true;
}

RatFunc GramMatrix::bilinear(const RVec& u, const RVec& v) const {
    FQT_REQUIRE(u.size() == n() && v.size() == n(), "dimension mismatch in bilinear form");
    RatFunc acc = RatFunc::zero(F_);
    for (size_t i = 0; i < n(); ++i) {
        if (u[i].is_zero()) continue;
        for (size_t j = 0; j < n(); ++j) {
            if (entries_[i][j].is_zero() || v[j].is_zero()) continue;
            acc += u[i] * entries_[i][j] * v[j];
        }
    }
    return acc;
}

DiagForm::DiagForm(FieldPtr F, PVec coeffs) : F_(std::move(F)), coeffs_(std::move(coeffs)) {
    FQT_REQUIRE(!coeffs_.empty(), "empty diagonal form");
    for (const Poly& c : coeffs_) FQT_REQUIRE(!c.is_zero(), "diagonal form coefficients must be nonzero");
}

Poly DiagForm::determinant() const {
    Poly d = Poly::one(F_);
    for (const Poly& c : coeffs_) d = d * c;
    return d;
}

RatFunc evaluate(const GramMatrix& Q, const RVec& v) { return Q.bilinear(v, v); }

Poly evaluate(const DiagForm& Q, const PVec& v) {
    FQT_REQUIRE(v.size() == Q.n(), "dimension mismatch in evaluation");
    Poly acc = Poly::zero(Q.field());
    for (size_t i = 0; i < Q.n(); ++i) acc += Q.at(i) * v[i] * v[i];
    return acc;
}

RatFunc evaluate(const DiagForm& Q, const RVec& v) {
    FQT_REQUIRE(v.size() == Q.n(), "dimension mismatch in evaluation");
    RatFunc acc = RatFunc::zero(Q.field());
    for (size_t i = 0; i < Q.n(); ++i) acc += RatFunc(Q.at(i)) * v[i] * v[i];
    return acc;
}

// --- transforms -------------------------------------------------------------------

Transform::Transform(RMat matrix) : matrix_(std::move(matrix)) {
    FQT_REQUIRE(!matrix_.empty() && matrix_[0].size() == matrix_.size(), "transform matrix must be square");
    scalar_ = RatFunc::one(matrix_[0][0].field());
}

Transform::Transform(RMat matrix, RatFunc scalar) : Transform(std::move(matrix)) {
    FQT_REQUIRE(!scalar.is_zero(), "transform scalar must be nonzero");
    scalar_ = std::move(scalar);
}

Transform Transform::identity(const FieldPtr& F, size_t n) { return Transform(rmat_identity(F, n)); }

const RMat& Transform::inverse_matrix() const {
    if (!inverse_) inverse_ = std::make_shared<const RMat>(rmat_inverse(matrix_));
    return *inverse_;
}

RVec Transform::apply(const RVec& v) const { return rmat_vec(matrix_, v); }
RVec Transform::unapply(const RVec& v) const { return rmat_vec(inverse_matrix(), v); }

Transform transform_compose(const Transform& t1, const Transform& t2) {
    return Transform(rmat_mul(t1.matrix(), t2.matrix()), t1.scalar() * t2.scalar());
}

RVec transform_apply(const Transform& t, const RVec& v) { return t.apply(v); }

RVec transform_pullback_zero(const Transform& t, const RVec& v) {
    bool nonzero = std::any_of(v.begin(), v.end(), [](const RatFunc& x) { return !x.is_zero(); });
    FQT_REQUIRE(nonzero, "cannot pull back the zero vector");
    RVec out = t.apply(v);
    nonzero = std::any_of(out.begin(), out.end(), [](const RatFunc& x) { return !x.is_zero(); });
    FQT_CHECK(nonzero, "transform annihilated a nonzero vector; matrix not invertible?");
    return out;
}

PVec primitive_vector(const RVec& v) {
    FQT_REQUIRE(!v.empty(), "empty vector");
    const FieldPtr& F = v[0].field();
    Poly common_den = Poly::one(F);
    for (const RatFunc& x : v) {
        if (x.is_zero()) continue;
        common_den = common_den * (x.den() / gcd(common_den, x.den()));
    }
    PVec w;
    w.reserve(v.size());
    for (const RatFunc& x : v) w.push_back(x.num() * (common_den / x.den()));
    Poly content = Poly::zero(F);
    for (const Poly& p : w) {
        if (p.is_zero()) continue;
        content = content.is_zero() ? p : gcd(content, p);
    }
    if (content.is_zero()) return w;  // all-zero vector stays as is
    Fq lead;
    bool found = false;
    for (Poly& p : w) p = p / content;
    for (const Poly& p : w) {
        if (!p.is_zero()) {
            lead = p.lc();
            found = true;
            break;
        }
    }
    if (found && !lead.is_one()) {
        Fq inv = lead.inv();
        for (Poly& p : w) p = p * inv;
    }
    return w;
}

RVec to_ratfunc_vec(const PVec& v) {
    RVec r;
    r.reserve(v.size());
    for (const Poly& p : v) r.push_back(RatFunc(p));
    return r;
}

// --- radical ------------------------------------------------------------------------

RadicalSplit radical_split(const GramMatrix& A) {
    RadicalSplit out;
    out.radical = rmat_kernel(A.entries());
    // pivot columns of the symmetric matrix index a regular principal submatrix
    Echelon e = echelonize(A.entries());
    out.complement = e.pivot_cols;
    return out;
}

// --- Gram-Schmidt ----------------------------------------------------------------------

GramSchmidtResult gram_schmidt(const GramMatrix& A) {
    const FieldPtr& F = A.field();
    const size_t n = A.n();
    {
        auto rad = rmat_kernel(A.entries());
        if (!rad.empty()) throw SingularFormError(std::move(rad));
    }

    // phase 1: basis v_1', ..., v_n' with all leading principal subforms regular.
    // Candidates are untouched standard vectors, repaired by adding one other
    // remaining standard vector when necessary.
    std::vector<RVec> chosen;
    std::vector<size_t> remaining(n);
    for (size_t i = 0; i < n; ++i) remaining[i] = i;

    auto basis_vec = [&](size_t i) {
        RVec v(n, RatFunc::zero(F));
        v[i] = RatFunc::one(F);
        return v;
    };
    auto add_vecs = [&](const RVec& a, const RVec& b) {
        RVec v = a;
        for (size_t i = 0; i < n; ++i) v[i] += b[i];
        return v;
    };
    auto regular_with = [&](const RVec& cand) {
        size_t k = chosen.size() + 1;
        RMat g(k, RVec(k));
        for (size_t i = 0; i < k; ++i) {
            const RVec& vi = i + 1 == k ? cand : chosen[i];
            for (size_t j = 0; j < k; ++j) {
                const RVec& vj = j + 1 == k ? cand : chosen[j];
                g[i][j] = A.bilinear(vi, vj);
            }
        }
        return !rmat_det(g).is_zero();
    };

    while (chosen.size() < n) {
        bool placed = false;
        for (size_t pos = 0; pos < remaining.size() && !placed; ++pos) {
            RVec cand = basis_vec(remaining[pos]);
            if (regular_with(cand)) {
                chosen.push_back(std::move(cand));
                remaining.erase(remaining.begin() + (int64_t)pos);
                placed = true;
            }
        }
        if (placed) continue;
        size_t head = remaining[0];
        for (size_t pos = 1; pos < remaining.size() && !placed; ++pos) {
            RVec cand = add_vecs(basis_vec(head), basis_vec(remaining[pos]));
            if (regular_with(cand)) {
                chosen.push_back(std::move(cand));
                remaining.erase(remaining.begin());
                placed = true;
            }
        }
        FQT_CHECK(placed, "basis repair failed on a regular form");
    }

    // phase 2: orthogonalize; w_k = v_k' - u_k where u_k solves the k-1
    // projection equations against the regular prefix.
    std::vector<RVec> ortho;
    for (size_t k = 0; k < n; ++k) {
        RVec w = chosen[k];
        if (k > 0) {
            RMat g(k, RVec(k));
            RVec rhs(k);
            for (size_t i = 0; i < k; ++i) {
                rhs[i] = A.bilinear(chosen[k], chosen[i]);
                for (size_t j = 0; j < k; ++j) g[i][j] = A.bilinear(chosen[j], chosen[i]);
            }
            auto sol = rmat_solve(g, rhs);
            FQT_CHECK(sol.has_value(), "projection system is singular on a regular prefix");
            for (size_t j = 0; j < k; ++j) {
                for (size_t i = 0; i < n; ++i) w[i] -= (*sol)[j] * chosen[j][i];
            }
        }
        ortho.push_back(std::move(w));
    }

    RMat T(n, RVec(n));
    for (size_t col = 0; col < n; ++col)
        for (size_t row = 0; row < n; ++row) T[row][col] = ortho[col][row];

    RMat D = rmat_mul(rmat_mul(rmat_transpose(T), A.entries()), T);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            if (i == j) {
                FQT_CHECK(!D[i][j].is_zero(), "orthogonalization produced a zero diagonal entry");
            } else {
                FQT_CHECK(D[i][j].is_zero(), "orthogonalization left an off-diagonal entry");
            }
        }
    }

    // degree control promised by the construction
    int64_t delta = 0, delta_prime = 0;
    for (const auto& row : A.entries()) {
        for (const RatFunc& x : row) {
            if (x.is_zero()) continue;
            delta = std::max(delta, x.num().deg());
            delta_prime = std::max(delta_prime, x.den().deg());
        }
    }
    int64_t bound = kGramSchmidtDegreeFactor * (int64_t)n * (delta + delta_prime);
    for (size_t i = 0; i < n; ++i) {
        FQT_CHECK(D[i][i].num().deg() <= std::max<int64_t>(bound, 0) &&
                      D[i][i].den().deg() <= std::max<int64_t>(bound, 0),
                  "orthogonal diagonal entries exceed the degree bound");
    }

    return {Transform(std::move(T)), GramMatrix(F, std::move(D))};
}

ClearDenominatorsResult clear_denominators(const GramMatrix& diag) {
    FQT_REQUIRE(diag.is_diagonal(), "clear_denominators expects a diagonal Gram matrix");
    const FieldPtr& F = diag.field();
    const size_t n = diag.n();
    PVec coeffs;
    RMat B = rmat_identity(F, n);
    for (size_t i = 0; i < n; ++i) {
        const RatFunc& q = diag.at(i, i);
        FQT_REQUIRE(!q.is_zero(), "clear_denominators expects nonzero diagonal entries");
        coeffs.push_back(q.num() * q.den());
        B[i][i] = RatFunc(q.den());
    }
    return {DiagForm(F, std::move(coeffs)), Transform(std::move(B))};
}

}  // namespace fqt
