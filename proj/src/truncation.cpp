#include "qpd/truncation.hpp"

namespace qpd {

namespace {

void require_connected(const Cdga& a) {
    CohomologyResult h = cohomology(a);
    if (h.dim(0) != 1) throw input_error("algebra is not connected (H^0 != Q)");
}

std::vector<Element> degreewise_generators(const Cdga& a, int from_degree) {
    std::vector<Element> gens;
    for (int r = std::max(from_degree, 0); r <= a.top_degree; ++r)
        for (std::size_t i = 0; i < a.dim(r); ++i) {
            RatVec e(a.dim(r), Rat(0));
            e[i] = 1;
            gens.push_back({r, e});
        }
    return gens;
}

}  // namespace

TruncationIdeal truncation_ideal(const Cdga& a, int k) {
    if (k < 0) throw input_error("truncation degree must be nonnegative");
    TruncationIdeal t;
    t.k = k;
    std::vector<Element> gens;
    if (k >= 1 && k - 1 <= a.top_degree) {
        // coim^{k-1}: pivot basis of ker d^{k-1} extended by standard vectors,
        // the appended vectors are the chosen supplement
        RatMatrix ker = kernel_basis(a.d[(std::size_t)(k - 1)]);
        t.coim = standard_complement(ker, a.dim(k - 1));
        for (std::size_t c = 0; c < t.coim.cols(); ++c) gens.push_back({k - 1, t.coim.col(c)});
    } else {
        t.coim = RatMatrix(k >= 1 ? a.dim(k - 1) : 0, 0);
    }
    auto tail = degreewise_generators(a, k);
    gens.insert(gens.end(), tail.begin(), tail.end());
    t.ideal = differential_ideal(a, gens);
    return t;
}

TruncateResult truncate(const CdgaPtr& a, int k) {
    require_connected(*a);
    TruncationIdeal t = truncation_ideal(*a, k);
    QuotientResult q = quotient(a, t.ideal);
    return TruncateResult{std::move(q.algebra), std::move(q.projection), std::move(t)};
}

CotruncateResult cotruncate(const CdgaPtr& a, int k) {
    require_connected(*a);
    if (k < 1) throw input_error("cotruncation requires k >= 1");
    TruncationIdeal t = truncation_ideal(*a, k);
    SubCdgaResult s = unital_ideal(a, t.ideal);
    return CotruncateResult{std::move(s.algebra), std::move(s.inclusion), std::move(t)};
}

CotruncateResult lagrangian_cotruncate(const CdgaPtr& a, int s, const std::vector<RatVec>& keep) {
    require_connected(*a);
    if (a->top_degree != 2 * s)
        throw input_error("lagrangian_cotruncate: model must have formal dimension 2s");
    CohomologyResult h = cohomology(*a);
    if (h.dim(2 * s) != 1)
        throw input_error("lagrangian_cotruncate: H^{2s} must be one-dimensional");

    // classes of the kept cocycles
    std::vector<RatVec> classes;
    RatMatrix cls(h.dim(s), 0);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i].size() != a->dim(s))
            throw input_error("lagrangian_cotruncate: keep[" + std::to_string(i) +
                              "] has wrong degree");
        if (!vec_is_zero(a->apply_d({s, keep[i]}).coords))
            throw input_error("lagrangian_cotruncate: keep[" + std::to_string(i) +
                              "] is not a cocycle");
        RatVec c = h.project(s, keep[i]);
        cls = cls.hcat(RatMatrix::col_vector(c));
        classes.push_back(c);
    }
    if (rank(cls) != keep.size())
        throw theory_error("lagrangian_cotruncate: kept classes are linearly dependent");
    if (2 * keep.size() != h.dim(s))
        throw theory_error("lagrangian_cotruncate: kept subspace must be half-dimensional (got " +
                           std::to_string(keep.size()) + " of middle dimension " +
                           std::to_string(h.dim(s)) + ")");
    // isotropy for the cup pairing against the canonical top functional
    // dual functional of the canonical top representative (isotropy is
    // invariant under rescaling the fundamental class)
    RatVec fund(a->dim(2 * s), Rat(0));
    {
        RatMatrix P = h.projection[(std::size_t)(2 * s)];
        for (std::size_t j = 0; j < a->dim(2 * s); ++j) fund[j] = P.at(0, j);
    }
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = i; j < keep.size(); ++j) {
            Element p = a->mul({s, keep[i]}, {s, keep[j]});
            Rat v(0);
            for (std::size_t t = 0; t < p.coords.size(); ++t) v += fund[t] * p.coords[t];
            if (!is_zero(v))
                throw theory_error("lagrangian_cotruncate: kept pair (" + std::to_string(i) + "," +
                                   std::to_string(j) + ") is not isotropic");
        }

    std::vector<Element> gens;
    for (const auto& kv : keep) gens.push_back({s, kv});
    RatMatrix ker = kernel_basis(a->d[(std::size_t)s]);
    RatMatrix coim = standard_complement(ker, a->dim(s));
    for (std::size_t c = 0; c < coim.cols(); ++c) gens.push_back({s, coim.col(c)});
    auto tail = degreewise_generators(*a, s + 1);
    gens.insert(gens.end(), tail.begin(), tail.end());

    TruncationIdeal t;
    t.k = s;  // Lagrangian cut sits at the middle degree
    t.coim = coim;
    t.ideal = differential_ideal(*a, gens);
    if (t.ideal.dim(0) != 0)
        throw input_error("lagrangian_cotruncate: ideal meets degree 0");
    SubCdgaResult sub = unital_ideal(a, t.ideal);
    return CotruncateResult{std::move(sub.algebra), std::move(sub.inclusion), std::move(t)};
}

AttachResult attach_top_cell_effect(const Cdga& cotr, const CohomologyResult& h, int n,
                                    const RatVec& link_fundamental_class) {
    if (n < 1) throw input_error("attach_top_cell_effect: dimension must be positive");
    if (link_fundamental_class.size() != h.dim(n - 1) || vec_is_zero(link_fundamental_class))
        throw theory_error(
            "attach_top_cell_effect: link fundamental class vanishes in the cotruncation "
            "(no Poincaré pair exists)");
    AttachResult res;
    res.n = n;
    res.betti.assign((std::size_t)n + 1, 0);
    for (int r = 0; r <= n - 2; ++r) res.betti[(std::size_t)r] = h.dim(r);
    res.betti[(std::size_t)(n - 1)] = h.dim(n - 1) - 1;
    res.betti[(std::size_t)n] = 0;
    res.killed_class = link_fundamental_class;
    return res;
}

bool top_class_decomposable(const Cdga& a, const CohomologyResult& h, int n, const RatVec& top) {
    if (top.size() != h.dim(n) || vec_is_zero(top))
        throw input_error("top_class_decomposable: class must be a nonzero H^n class");
    RatMatrix span(h.dim(n), 0);
    for (int i = 1; i <= n - 1; ++i) {
        for (std::size_t p = 0; p < h.dim(i); ++p)
            for (std::size_t q = 0; q < h.dim(n - i); ++q) {
                Element prod = a.mul({i, h.reps[(std::size_t)i].col(p)},
                                     {n - i, h.reps[(std::size_t)(n - i)].col(q)});
                span = span.hcat(RatMatrix::col_vector(h.project(n, prod.coords)));
            }
    }
    return in_span(span, top);
}

}  // namespace qpd
