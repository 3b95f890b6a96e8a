#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qpd/matrix.hpp"

namespace qpd {

/// Homogeneous element: coordinates in the chosen basis of one degree.
struct Element {
    int degree = 0;
    RatVec coords;
};

/// Per-degree subspace of a graded vector space, basis columns in ambient
/// coordinates.  Degrees run 0..top of the ambient algebra.
struct GradedSubspace {
    std::vector<RatMatrix> basis;  // basis[r]: dim(A^r) x k_r

    std::size_t dim(int r) const {
        return r >= 0 && r < (int)basis.size() ? basis[(std::size_t)r].cols() : 0;
    }
};

/// Finite-type graded-commutative differential algebra over Q.
///
/// A^r has the basis listed in names[r]; d[r] is the matrix of
/// d : A^r -> A^{r+1} (dim^{r+1} x dim^r).  Products are structure constants,
/// stored sparsely per basis pair; pairs whose product degree exceeds
/// top_degree are identically zero (inputs are assumed truncated at their
/// formal dimension; see README on acyclic corrections).
class Cdga {
  public:
    int top_degree = 0;
    std::vector<std::vector<std::string>> names;  // size top_degree+1
    std::vector<RatMatrix> d;                     // size top_degree+1
    RatVec unit;                                  // coordinates in A^0

    using ProdKey = std::tuple<int, std::size_t, int, std::size_t>;
    std::map<ProdKey, RatVec> prod;  // (deg_i, idx_i, deg_j, idx_j) -> coords in A^{i+j}

    std::size_t dim(int r) const {
        return r >= 0 && r <= top_degree ? names[(std::size_t)r].size() : 0;
    }
    std::size_t total_dim() const;

    /// Product of two basis elements (zero vector when absent/truncated).
    RatVec basis_product(int di, std::size_t i, int dj, std::size_t j) const;
    /// Bilinear extension; result lives in degree x.degree + y.degree.
    Element mul(const Element& x, const Element& y) const;
    Element apply_d(const Element& x) const;

    /// Set x_i * x_j and its graded-commutative mirror (Koszul sign).
    void set_product(int di, std::size_t i, int dj, std::size_t j, const RatVec& coords);

    Element unit_element() const { return {0, unit}; }
    int name_index(int degree, const std::string& name) const;  // -1 when absent
    std::optional<Element> element_by_name(const std::string& name) const;
};

using CdgaPtr = std::shared_ptr<const Cdga>;

/// Per-degree linear maps commuting with d, multiplicative, unit-preserving.
struct CdgaMorphism {
    CdgaPtr source;
    CdgaPtr target;
    std::vector<RatMatrix> maps;  // maps[r]: dim_target(r) x dim_source(r), r = 0..source.top

    RatMatrix map_at(int r) const;
    Element apply(const Element& x) const;
};

struct AxiomViolation {
    std::string axiom;    // "d_squared", "graded_commutativity", "leibniz", ...
    std::string detail;   // offending basis tuple
};

std::vector<AxiomViolation> validate(const Cdga& a);
void require_valid(const Cdga& a);

std::vector<AxiomViolation> validate_morphism(const CdgaMorphism& f);
void require_valid_morphism(const CdgaMorphism& f);

/// Cohomology with deterministic representatives: the coboundary space is
/// completed to the cocycle space by the first eligible kernel-basis vectors.
struct CohomologyResult {
    std::vector<std::size_t> betti;      // size top+1
    std::vector<RatMatrix> reps;         // reps[r]: dim(A^r) x betti[r], cocycle columns
    std::vector<RatMatrix> projection;   // projection[r]: betti[r] x dim(A^r); kills coboundaries

    std::size_t dim(int r) const {
        return r >= 0 && r < (int)betti.size() ? betti[(std::size_t)r] : 0;
    }
    /// Class coordinates of a cocycle.
    RatVec project(int r, const RatVec& cocycle) const;
};

CohomologyResult cohomology(const Cdga& a);

/// H(A) as a formal (zero-differential) CDGA; products are representative
/// products pushed through the projection.  Names follow the representatives'
/// leading basis labels.
Cdga cohomology_algebra(const Cdga& a, const CohomologyResult& h);

/// Smallest graded subspace containing the generators, closed under d and
/// under multiplication by all of A.  Canonical per-degree bases.
GradedSubspace differential_ideal(const Cdga& a, const std::vector<Element>& generators);

bool is_ideal(const Cdga& a, const GradedSubspace& s);

struct QuotientResult {
    Cdga algebra;
    CdgaMorphism projection;
};
QuotientResult quotient(const CdgaPtr& a, const GradedSubspace& ideal);

struct SubCdgaResult {
    Cdga algebra;
    CdgaMorphism inclusion;
};
/// The sub-CDGA Q*1 + I for an ideal with I^0 = 0.
SubCdgaResult unital_ideal(const CdgaPtr& a, const GradedSubspace& ideal);

/// Block direct sum (product algebra); names get "l<i>:" prefixes.
Cdga direct_sum(const std::vector<CdgaPtr>& parts);
/// Projection morphism direct_sum -> parts[i].
CdgaMorphism direct_sum_projection(const CdgaPtr& sum, const std::vector<CdgaPtr>& parts,
                                   std::size_t i);

enum class FiberSurjectivity { f_surjective, g_surjective, joint };

struct FiberProductResult {
    Cdga algebra;
    // Embedding of the fiber product into A (+) B, per degree.
    std::vector<RatMatrix> embedding;  // (dimA^r + dimB^r) x dimFP^r
    CdgaPtr a, b;
    FiberSurjectivity mode = FiberSurjectivity::joint;
};

/// {(x,y) : f(x) = g(y)} with componentwise operations.  Requires f or g
/// surjective in every degree, or joint surjectivity (which is what exactness
/// of 0 -> FP -> A(+)B -> C -> 0 needs); refuses otherwise.
FiberProductResult fiber_product(const CdgaMorphism& f, const CdgaMorphism& g);

struct KernelComplex {
    GradedSubspace space;             // ker f per degree, in A-coordinates
    std::vector<RatMatrix> d;         // induced differential in kernel coordinates
    CohomologyResult cohom;           // cohomology of the kernel complex
};

/// ker f with its differential; f must be surjective in every positive degree.
KernelComplex kernel_complex(const CdgaMorphism& f);

/// Matrices H^r(f) in the chosen representative bases.
std::vector<RatMatrix> induced_cohomology_map(const CdgaMorphism& f,
                                              const CohomologyResult& hsrc,
                                              const CohomologyResult& htgt);

/// Pairing H^r x H^{n-r} -> Q, (x,y) |-> fundamental(x*y), n = top degree.
/// `fundamental` is a functional on A^n cochains vanishing on coboundaries.
struct CupPairing {
    RatMatrix gram;  // betti_r x betti_{n-r}
    bool square = false;
    bool symmetric = true;  // meaningful when square and r = n-r
};
CupPairing cup_pairing(const Cdga& a, const CohomologyResult& h, const RatVec& fundamental,
                       int r);

/// Cohomology of a subcomplex given by ambient basis columns closed under d.
struct SubcomplexCohomology {
    std::vector<RatMatrix> d;   // induced differentials in subspace coordinates
    CohomologyResult cohom;
};
SubcomplexCohomology subcomplex_cohomology(const Cdga& a, const GradedSubspace& s);

/// Express an ambient vector known to lie in the subspace in its basis.
RatVec subspace_coords(const GradedSubspace& s, int r, const RatVec& ambient);

}  // namespace qpd
