#pragma once

#include <map>
#include <optional>

#include "qpd/matrix.hpp"

namespace qpd {

enum class FormKind { symmetric, skew };

/// Square Gram matrix with symmetry flag.
struct BilinearSpace {
    RatMatrix gram;
    FormKind kind = FormKind::symmetric;

    std::size_t dim() const { return gram.rows(); }
    Rat eval(const RatVec& x, const RatVec& y) const;
};

void require_well_formed(const BilinearSpace& b);
bool is_degenerate(const BilinearSpace& b);

/// Quotient by the radical; returns the restricted form (same kind).
BilinearSpace radical_quotient(const BilinearSpace& b);

struct DiagonalizeResult {
    RatMatrix p;       // invertible, P^T * G * P = diag(entries)
    RatVec entries;    // zeros iff degenerate
};
DiagonalizeResult diagonalize(const BilinearSpace& b);

int signature(const BilinearSpace& b);

/// Place of Q: a finite prime or the infinite place.
struct Place {
    bool infinite = false;
    Int p = 0;
    static Place infinity() { return {true, 0}; }
    static Place prime(const Int& q) { return {false, q}; }
};

/// Hilbert symbol (a,b)_v in {+1,-1}.
int hilbert_symbol(const Rat& a, const Rat& b, const Place& v);

/// Complete Witt-class invariants over Q (Hasse-Minkowski).
struct WittInvariants {
    std::size_t rank = 0;
    int signature = 0;
    Int discriminant = 1;           // signed squarefree representative of Q*/Q*^2
    std::map<Int, int> hasse;       // prime -> epsilon_p over the relevant prime set
};

WittInvariants witt_invariants(const BilinearSpace& b);

/// Equality of classes in W(Q); radicals are quotiented out internally.
bool witt_equal(const BilinearSpace& b1, const BilinearSpace& b2);

/// Basis (a_1..a_m, a_1*..a_m*) with b(a_i,a_j)=b(a_i*,a_j*)=0, b(a_i,a_j*)=delta_ij
/// (skew convention: b(a_i*, a_i) = -1).
struct HyperbolicBasis {
    RatMatrix vectors;  // 2m columns: a-block then a*-block
    std::size_t m = 0;
};

/// Darboux basis of a nondegenerate skew form.
HyperbolicBasis symplectic_basis(const BilinearSpace& b);

/// Complete a half-rank isotropic basis V to a hyperbolic basis; the a_i are
/// exactly the given columns of V.
HyperbolicBasis hyperbolic_completion(const BilinearSpace& b, const RatMatrix& v);

/// Lagrangian subspace basis, when one exists.  Skew: always (Darboux).
/// Symmetric: iff the form is hyperbolic, detected by Witt invariants; the
/// construction splits off hyperbolic planes via bounded-height isotropic
/// search and throws undecided_error when the bound is exhausted even though
/// the invariants certify existence.
std::optional<RatMatrix> find_lagrangian(const BilinearSpace& b, long height_bound = 50);

/// True iff the (nondegenerate part of the) form is Witt-trivial.
bool witt_trivial(const BilinearSpace& b);

/// One isotropic vector of a nondegenerate symmetric form, if the search
/// finds one: diagonal shortcut first, then height-bounded integer search.
std::optional<RatVec> isotropic_vector(const BilinearSpace& b, long height_bound);

BilinearSpace orthogonal_sum(const BilinearSpace& b1, const BilinearSpace& b2);
BilinearSpace hyperbolic_plane(FormKind kind = FormKind::symmetric);

}  // namespace qpd
