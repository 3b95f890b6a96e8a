#pragma once

#include "qpd/cdga.hpp"

namespace qpd {

/// Degree-k truncation data: the chosen complement of ker d^{k-1} and the
/// differential ideal generated by coim^{k-1} together with A^{>=k}.
struct TruncationIdeal {
    int k = 0;
    RatMatrix coim;        // columns in A^{k-1} coordinates
    GradedSubspace ideal;  // I_{k-1}
};

TruncationIdeal truncation_ideal(const Cdga& a, int k);

struct TruncateResult {
    Cdga algebra;
    CdgaMorphism projection;
    TruncationIdeal ideal;
};

/// Model of the k-truncation: A / I_{k-1}.  Cohomology is H^r(A) below k and
/// zero from k on.  Requires A connected (H^0 = Q).
TruncateResult truncate(const CdgaPtr& a, int k);

struct CotruncateResult {
    Cdga algebra;
    CdgaMorphism inclusion;
    TruncationIdeal ideal;
};

/// Model of the k-cotruncation: Q + I_{k-1} inside A.  Requires k >= 1.
CotruncateResult cotruncate(const CdgaPtr& a, int k);

/// Lagrangian cotruncation of an even-dimensional link model of formal
/// dimension 2s: keeps one Lagrangian half of the middle cohomology.
/// `keep` lists degree-s cocycles whose classes must be independent and span
/// an isotropic half-dimensional subspace of the middle cup pairing.
CotruncateResult lagrangian_cotruncate(const CdgaPtr& a, int s, const std::vector<RatVec>& keep);

/// Cohomological effect of attaching the duality-restoring top cell to a
/// cotruncation: degrees <= n-2 unchanged, degree n-1 loses the span of the
/// link fundamental class, degree n becomes 0.  Bookkeeping only; the pair
/// carries a relative orientation class.
struct AttachResult {
    int n = 0;
    std::vector<std::size_t> betti;  // size n+1
    RatVec killed_class;             // coordinates in H^{n-1}(cotr)
    bool relative_class = true;
};

AttachResult attach_top_cell_effect(const Cdga& cotr, const CohomologyResult& h, int n,
                                    const RatVec& link_fundamental_class);

/// True iff the class lies in the span of all products H^i * H^{n-i}, 0<i<n.
bool top_class_decomposable(const Cdga& a, const CohomologyResult& h, int n, const RatVec& top);

}  // namespace qpd
