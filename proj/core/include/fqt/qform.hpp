#pragma once

#include <vector>

#include "fqt/funcfield.hpp"

namespace fqt {

using RMat = std::vector<std::vector<RatFunc>>;

// --- exact linear algebra over F_q(t) ----------------------------------------

RMat rmat_identity(const FieldPtr& F, size_t n);
RMat rmat_mul(const RMat& a, const RMat& b);
RVec rmat_vec(const RMat& a, const RVec& v);
RMat rmat_transpose(const RMat& a);
RatFunc rmat_det(const RMat& a);
RMat rmat_inverse(const RMat& a);            // throws domain_error when singular
std::vector<RVec> rmat_kernel(const RMat& a);  // basis of the right kernel
// Solve a * x = b; nullopt when inconsistent.
std::optional<RVec> rmat_solve(const RMat& a, const RVec& b);

// --- exact linear algebra over F_q --------------------------------------------

using FVec = std::vector<Fq>;
using FMat = std::vector<std::vector<Fq>>;
std::vector<FVec> fmat_kernel(const FMat& a, const FieldPtr& F);

// --- forms ---------------------------------------------------------------------

// Symmetric Gram matrix of a quadratic form over F_q(t).
class GramMatrix {
   public:
    GramMatrix(FieldPtr F, RMat entries);  // validates symmetry
    static GramMatrix diagonal(const RVec& diag);
    static GramMatrix diagonal(const PVec& diag);

    size_t n() const { return entries_.size(); }
    const FieldPtr& field() const { return F_; }
    const RMat& entries() const { return entries_; }
    const RatFunc& at(size_t i, size_t j) const { return entries_[i][j]; }
    bool is_diagonal() const;

    RatFunc bilinear(const RVec& u, const RVec& v) const;  // u^T A v

   private:
    FieldPtr F_;
    RMat entries_;
};

// Diagonal quadratic form with polynomial coefficients.
class DiagForm {
   public:
    DiagForm(FieldPtr F, PVec coeffs);  // all entries nonzero

    size_t n() const { return coeffs_.size(); }
    const FieldPtr& field() const { return F_; }
    const PVec& coeffs() const { return coeffs_; }
    const Poly& at(size_t i) const { return coeffs_[i]; }

    Poly determinant() const;

   private:
    FieldPtr F_;
    PVec coeffs_;
};

RatFunc evaluate(const GramMatrix& Q, const RVec& v);
Poly evaluate(const DiagForm& Q, const PVec& v);
RatFunc evaluate(const DiagForm& Q, const RVec& v);

// Invertible change of variables x = B * y together with a projective scalar:
// the transformed form satisfies A_new = scalar * B^T * A_old * B, and a zero
// y of the new form pulls back to the zero B*y of the old one.
class Transform {
   public:
    Transform() = default;
    explicit Transform(RMat matrix);
    Transform(RMat matrix, RatFunc scalar);

    static Transform identity(const FieldPtr& F, size_t n);

    size_t n() const { return matrix_.size(); }
    const RMat& matrix() const { return matrix_; }
    const RatFunc& scalar() const { return scalar_; }
    const RMat& inverse_matrix() const;  // computed on demand, cached

    RVec apply(const RVec& v) const;    // B * v
    RVec unapply(const RVec& v) const;  // B^{-1} * v

   private:
    RMat matrix_;
    RatFunc scalar_;
    mutable std::shared_ptr<const RMat> inverse_;  // lazily filled
};

// T1 followed by T2 (matrices multiply, scalars multiply).
Transform transform_compose(const Transform& t1, const Transform& t2);
RVec transform_apply(const Transform& t, const RVec& v);
// Pull a nonzero zero of the transformed form back to the original form.
RVec transform_pullback_zero(const Transform& t, const RVec& v);

// Clear denominators and content: the primitive polynomial vector spanning the
// same projective point, leading nonzero entry made monic.
PVec primitive_vector(const RVec& v);
RVec to_ratfunc_vec(const PVec& v);

struct RadicalSplit {
    std::vector<RVec> radical;            // kernel basis of the Gram matrix
    std::vector<size_t> complement;       // indices of standard basis vectors spanning a regular complement
};
RadicalSplit radical_split(const GramMatrix& A);

// Thrown by gram_schmidt on singular input; carries the radical basis.
struct SingularFormError : domain_error {
    explicit SingularFormError(std::vector<RVec> rad)
        : domain_error("gram_schmidt requires a regular form"), radical(std::move(rad)) {}
    std::vector<RVec> radical;
};

// Orthogonalization with degree control: first rebuilds the basis (standard
// vectors, repaired by single pairwise additions) so every leading principal
// minor is nonzero, then orthogonalizes by exact linear solves. The returned
// transform T satisfies T^T A T = D with D diagonal and regular. Numerator and
// denominator degrees of the diagonal of D stay within kGramSchmidtDegreeFactor
// * n * (max numerator degree + max denominator degree of A).
inline constexpr int64_t kGramSchmidtDegreeFactor = 16;
struct GramSchmidtResult {
    Transform transform;
    GramMatrix diagonal;
};
GramSchmidtResult gram_schmidt(const GramMatrix& A);

// diag(num_i/den_i) -> polynomial coefficients num_i*den_i by scaling each
// variable; isotropy is preserved and zeros pull back through the transform.
struct ClearDenominatorsResult {
    DiagForm form;
    Transform transform;
};
ClearDenominatorsResult clear_denominators(const GramMatrix& diag);

}  // namespace fqt
