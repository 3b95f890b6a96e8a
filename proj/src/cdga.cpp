#include "qpd/cdga.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace qpd {

namespace {

int koszul_sign(int di, int dj) { return (di % 2 != 0 && dj % 2 != 0) ? -1 : 1; }

std::string fused_name(const std::string& base, std::set<std::string>& used) {
    std::string n = base;
    int k = 1;
    while (used.count(n)) n = base + "~" + std::to_string(k++);
    used.insert(n);
    return n;
}

std::string leading_name(const std::vector<std::string>& names, const RatVec& v,
                         const std::string& fallback) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!is_zero(v[i])) return names[i];
    return fallback;
}

}  // namespace

std::size_t Cdga::total_dim() const {
    std::size_t t = 0;
    for (int r = 0; r <= top_degree; ++r) t += dim(r);
    return t;
}

RatVec Cdga::basis_product(int di, std::size_t i, int dj, std::size_t j) const {
    int dk = di + dj;
    if (dk > top_degree) return {};
    auto it = prod.find(ProdKey{di, i, dj, j});
    if (it != prod.end()) return it->second;
    return RatVec(dim(dk), Rat(0));
}

Element Cdga::mul(const Element& x, const Element& y) const {
    int dk = x.degree + y.degree;
    Element out{dk, RatVec(dim(dk), Rat(0))};
    if (dk > top_degree) return out;
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        if (is_zero(x.coords[i])) continue;
        for (std::size_t j = 0; j < y.coords.size(); ++j) {
            if (is_zero(y.coords[j])) continue;
            RatVec p = basis_product(x.degree, i, y.degree, j);
            Rat c = x.coords[i] * y.coords[j];
            for (std::size_t k = 0; k < p.size(); ++k) out.coords[k] += c * p[k];
        }
    }
    return out;
}

Element Cdga::apply_d(const Element& x) const {
    if (x.degree < 0 || x.degree > top_degree)
        return {x.degree + 1, RatVec(dim(x.degree + 1), Rat(0))};
    return {x.degree + 1, d[(std::size_t)x.degree].mul_vec(x.coords)};
}

void Cdga::set_product(int di, std::size_t i, int dj, std::size_t j, const RatVec& coords) {
    if (di + dj > top_degree) return;
    if (coords.size() != dim(di + dj)) throw input_error("product coefficient vector has wrong size");
    prod[ProdKey{di, i, dj, j}] = coords;
    if (di != dj || i != j) {
        int s = koszul_sign(di, dj);
        prod[ProdKey{dj, j, di, i}] = s == 1 ? coords : scaled(coords, Rat(-1));
    }
}

int Cdga::name_index(int degree, const std::string& name) const {
    if (degree < 0 || degree > top_degree) return -1;
    const auto& ns = names[(std::size_t)degree];
    for (std::size_t i = 0; i < ns.size(); ++i)
        if (ns[i] == name) return (int)i;
    return -1;
}

std::optional<Element> Cdga::element_by_name(const std::string& name) const {
    for (int r = 0; r <= top_degree; ++r) {
        int i = name_index(r, name);
        if (i >= 0) {
            RatVec v(dim(r), Rat(0));
            v[(std::size_t)i] = 1;
            return Element{r, v};
        }
    }
    return std::nullopt;
}

RatMatrix CdgaMorphism::map_at(int r) const {
    if (r >= 0 && r < (int)maps.size()) return maps[(std::size_t)r];
    return RatMatrix(target->dim(r), source ? source->dim(r) : 0);
}

Element CdgaMorphism::apply(const Element& x) const {
    return {x.degree, map_at(x.degree).mul_vec(x.coords)};
}

// ---------------------------------------------------------------------------
// validation

std::vector<AxiomViolation> validate(const Cdga& a) {
    std::vector<AxiomViolation> out;
    auto fail = [&](const std::string& ax, const std::string& det) {
        out.push_back({ax, det});
    };

    if ((int)a.names.size() != a.top_degree + 1 || (int)a.d.size() != a.top_degree + 1) {
        fail("shape", "names/differential tables must have top_degree+1 entries");
        return out;
    }
    for (int r = 0; r <= a.top_degree; ++r) {
        std::size_t want_rows = a.dim(r + 1);
        if (a.d[(std::size_t)r].rows() != want_rows || a.d[(std::size_t)r].cols() != a.dim(r)) {
            fail("shape", "d^" + std::to_string(r) + " has wrong dimensions");
            return out;
        }
    }
    if (a.unit.size() != a.dim(0)) {
        fail("unit", "unit vector has wrong size");
        return out;
    }
    for (auto& [key, v] : a.prod) {
        auto [di, i, dj, j] = key;
        if (di < 0 || di > a.top_degree || dj < 0 || dj > a.top_degree || i >= a.dim(di) ||
            j >= a.dim(dj) || di + dj > a.top_degree || v.size() != a.dim(di + dj)) {
            fail("shape", "product table entry out of range");
            return out;
        }
    }

    for (int r = 0; r + 1 <= a.top_degree; ++r) {
        if (!(a.d[(std::size_t)(r + 1)] * a.d[(std::size_t)r]).is_zero())
            fail("d_squared", "d∘d ≠ 0 out of degree " + std::to_string(r));
    }

    if (a.dim(0) > 0 && vec_is_zero(a.unit)) fail("unit", "unit is the zero vector");
    for (int dj = 0; dj <= a.top_degree; ++dj)
        for (std::size_t j = 0; j < a.dim(dj); ++j) {
            RatVec ej(a.dim(dj), Rat(0));
            ej[j] = 1;
            Element x{dj, ej};
            if (a.mul(a.unit_element(), x).coords != ej)
                fail("unit", "1·" + a.names[(std::size_t)dj][j] + " ≠ " +
                                 a.names[(std::size_t)dj][j]);
            if (a.mul(x, a.unit_element()).coords != ej)
                fail("unit", a.names[(std::size_t)dj][j] + "·1 ≠ " +
                                 a.names[(std::size_t)dj][j]);
        }

    // graded commutativity and Leibniz on basis pairs
    for (int di = 0; di <= a.top_degree; ++di)
        for (std::size_t i = 0; i < a.dim(di); ++i)
            for (int dj = di; dj <= a.top_degree; ++dj)
                for (std::size_t j = (dj == di ? i : 0); j < a.dim(dj); ++j) {
                    const std::string pair =
                        "(" + a.names[(std::size_t)di][i] + ", " + a.names[(std::size_t)dj][j] + ")";
                    if (di + dj <= a.top_degree) {
                        RatVec xy = a.basis_product(di, i, dj, j);
                        RatVec yx = a.basis_product(dj, j, di, i);
                        RatVec expect = koszul_sign(di, dj) == 1 ? xy : scaled(xy, Rat(-1));
                        if (yx != expect) fail("graded_commutativity", pair);
                    }
                    // Leibniz: d(xy) = dx·y + (-1)^{|x|} x·dy
                    RatVec ei(a.dim(di), Rat(0)), ej(a.dim(dj), Rat(0));
                    ei[i] = 1;
                    ej[j] = 1;
                    Element x{di, ei}, y{dj, ej};
                    Element lhs = a.apply_d(a.mul(x, y));
                    Element rhs1 = a.mul(a.apply_d(x), y);
                    Element rhs2 = a.mul(x, a.apply_d(y));
                    RatVec rhs = rhs1.coords + (di % 2 == 0 ? rhs2.coords : scaled(rhs2.coords, Rat(-1)));
                    if (lhs.coords != rhs) fail("leibniz", pair);
                }

    // associativity on basis triples landing within the truncation
    for (int di = 0; di <= a.top_degree; ++di)
        for (std::size_t i = 0; i < a.dim(di); ++i)
            for (int dj = 0; dj + di <= a.top_degree; ++dj)
                for (std::size_t j = 0; j < a.dim(dj); ++j)
                    for (int dk = 0; dk + dj + di <= a.top_degree; ++dk)
                        for (std::size_t k = 0; k < a.dim(dk); ++k) {
                            RatVec ei(a.dim(di), Rat(0)), ej(a.dim(dj), Rat(0)),
                                ek(a.dim(dk), Rat(0));
                            ei[i] = 1;
                            ej[j] = 1;
                            ek[k] = 1;
                            Element x{di, ei}, y{dj, ej}, z{dk, ek};
                            if (a.mul(a.mul(x, y), z).coords != a.mul(x, a.mul(y, z)).coords)
                                fail("associativity",
                                     "(" + a.names[(std::size_t)di][i] + ", " +
                                         a.names[(std::size_t)dj][j] + ", " +
                                         a.names[(std::size_t)dk][k] + ")");
                        }
    return out;
}

void require_valid(const Cdga& a) {
    auto v = validate(a);
    if (!v.empty()) throw input_error("invalid CDGA: " + v.front().axiom + " " + v.front().detail);
}

std::vector<AxiomViolation> validate_morphism(const CdgaMorphism& f) {
    std::vector<AxiomViolation> out;
    const Cdga& A = *f.source;
    const Cdga& B = *f.target;
    if ((int)f.maps.size() != A.top_degree + 1) {
        out.push_back({"shape", "morphism must carry one matrix per source degree"});
        return out;
    }
    for (int r = 0; r <= A.top_degree; ++r) {
        const RatMatrix& m = f.maps[(std::size_t)r];
        if (m.rows() != B.dim(r) || m.cols() != A.dim(r)) {
            out.push_back({"shape", "morphism matrix at degree " + std::to_string(r)});
            return out;
        }
    }
    if (f.map_at(0).mul_vec(A.unit) != B.unit) out.push_back({"unit", "f(1) ≠ 1"});
    for (int r = 0; r <= A.top_degree; ++r) {
        RatMatrix lhs = f.map_at(r + 1) * A.d[(std::size_t)r];
        RatMatrix rhs = (r + 1 <= B.top_degree ? B.d[(std::size_t)r] * f.map_at(r)
                                               : RatMatrix(0, A.dim(r)));
        if (r + 1 <= B.top_degree) {
            if (lhs != rhs) out.push_back({"differential", "f∘d ≠ d∘f at degree " + std::to_string(r)});
        } else if (!lhs.is_zero()) {
            out.push_back({"differential", "f∘d ≠ 0 above target top degree " + std::to_string(r)});
        }
    }
    for (int di = 0; di <= A.top_degree; ++di)
        for (std::size_t i = 0; i < A.dim(di); ++i)
            for (int dj = di; dj <= A.top_degree; ++dj)
                for (std::size_t j = (dj == di ? i : 0); j < A.dim(dj); ++j) {
                    RatVec ei(A.dim(di), Rat(0)), ej(A.dim(dj), Rat(0));
                    ei[i] = 1;
                    ej[j] = 1;
                    Element fx = f.apply({di, ei}), fy = f.apply({dj, ej});
                    RatVec lhs = f.map_at(di + dj).mul_vec(A.mul({di, ei}, {dj, ej}).coords);
                    RatVec rhs = B.mul(fx, fy).coords;
                    if (di + dj > A.top_degree) lhs = RatVec(B.dim(di + dj), Rat(0));
                    if (lhs != rhs)
                        out.push_back({"multiplicative",
                                       "(" + A.names[(std::size_t)di][i] + ", " +
                                           A.names[(std::size_t)dj][j] + ")"});
                }
    return out;
}

void require_valid_morphism(const CdgaMorphism& f) {
    auto v = validate_morphism(f);
    if (!v.empty())
        throw input_error("invalid CDGA morphism: " + v.front().axiom + " " + v.front().detail);
}

// ---------------------------------------------------------------------------
// cohomology

static CohomologyResult complex_cohomology(const std::vector<RatMatrix>& d) {
    CohomologyResult h;
    int top = (int)d.size() - 1;
    h.betti.resize(d.size());
    h.reps.resize(d.size());
    h.projection.resize(d.size());
    for (int r = 0; r <= top; ++r) {
        std::size_t n = d[(std::size_t)r].cols();
        RatMatrix Z = kernel_basis(d[(std::size_t)r]);
        RatMatrix B = r > 0 ? canonical_column_space(d[(std::size_t)(r - 1)]) : RatMatrix(n, 0);
        // representatives: first kernel-basis columns completing the coboundaries
        RatMatrix picked(n, 0);
        RatMatrix span = B;
        std::size_t have = rank(span);
        for (std::size_t c = 0; c < Z.cols(); ++c) {
            RatMatrix cand = span.hcat(RatMatrix::col_vector(Z.col(c)));
            if (rank(cand) > have) {
                span = cand;
                picked = picked.hcat(RatMatrix::col_vector(Z.col(c)));
                ++have;
            }
        }
        h.betti[(std::size_t)r] = picked.cols();
        h.reps[(std::size_t)r] = picked;
        RatMatrix T = picked.hcat(B);
        T = T.hcat(standard_complement(T, n));
        auto Tinv = inverse(T);
        if (!Tinv) throw internal_error("cohomology basis change not invertible");
        RatMatrix P(picked.cols(), n);
        for (std::size_t i = 0; i < picked.cols(); ++i)
            for (std::size_t j = 0; j < n; ++j) P.at(i, j) = Tinv->at(i, j);
        h.projection[(std::size_t)r] = P;
    }
    return h;
}

RatVec CohomologyResult::project(int r, const RatVec& cocycle) const {
    if (r < 0 || r >= (int)projection.size()) return {};
    return projection[(std::size_t)r].mul_vec(cocycle);
}

CohomologyResult cohomology(const Cdga& a) { return complex_cohomology(a.d); }

Cdga cohomology_algebra(const Cdga& a, const CohomologyResult& h) {
    Cdga H;
    int top = 0;
    for (int r = 0; r <= a.top_degree; ++r)
        if (h.dim(r) > 0) top = r;
    H.top_degree = top;
    H.names.resize((std::size_t)top + 1);
    H.d.resize((std::size_t)top + 1);
    std::set<std::string> used;
    for (int r = 0; r <= top; ++r) {
        for (std::size_t k = 0; k < h.dim(r); ++k) {
            std::string base = leading_name(a.names[(std::size_t)r], h.reps[(std::size_t)r].col(k),
                                            "h" + std::to_string(r) + "_" + std::to_string(k));
            H.names[(std::size_t)r].push_back(fused_name(base, used));
        }
        H.d[(std::size_t)r] = RatMatrix(h.dim(r + 1) && r + 1 <= top ? h.dim(r + 1) : 0, h.dim(r));
    }
    H.unit = h.project(0, a.unit);
    for (int r1 = 0; r1 <= top; ++r1)
        for (std::size_t i = 0; i < h.dim(r1); ++i)
            for (int r2 = r1; r1 + r2 <= top; ++r2)
                for (std::size_t j = (r2 == r1 ? i : 0); j < h.dim(r2); ++j) {
                    Element p = a.mul({r1, h.reps[(std::size_t)r1].col(i)},
                                      {r2, h.reps[(std::size_t)r2].col(j)});
                    H.set_product(r1, i, r2, j, h.project(r1 + r2, p.coords));
                }
    return H;
}

// ---------------------------------------------------------------------------
// ideals, quotients, sub-CDGAs

namespace {

/// Growable per-degree span with rank-based membership.
struct Span {
    std::vector<RatMatrix> m;  // columns
    explicit Span(const Cdga& a) {
        m.reserve((std::size_t)a.top_degree + 1);
        for (int r = 0; r <= a.top_degree; ++r) m.emplace_back(a.dim(r), 0);
    }
    bool add(const Element& e) {
        if (e.degree < 0 || e.degree >= (int)m.size() || vec_is_zero(e.coords)) return false;
        RatMatrix& M = m[(std::size_t)e.degree];
        RatMatrix cand = M.hcat(RatMatrix::col_vector(e.coords));
        if (rank(cand) > M.cols()) {  // columns kept independent
            M = cand;
            return true;
        }
        return false;
    }
};

}  // namespace

GradedSubspace differential_ideal(const Cdga& a, const std::vector<Element>& generators) {
    for (const auto& g : generators) {
        if (g.degree < 0 || g.degree > a.top_degree || g.coords.size() != a.dim(g.degree))
            throw input_error("differential_ideal: generator is not homogeneous of a valid degree");
    }
    Span span(a);
    std::deque<Element> work;
    for (const auto& g : generators)
        if (span.add(g)) work.push_back(g);
    while (!work.empty()) {
        Element e = work.front();
        work.pop_front();
        Element de = a.apply_d(e);
        if (de.degree <= a.top_degree && span.add(de)) work.push_back(de);
        for (int db = 0; db <= a.top_degree - e.degree; ++db)
            for (std::size_t bi = 0; bi < a.dim(db); ++bi) {
                RatVec eb(a.dim(db), Rat(0));
                eb[bi] = 1;
                Element p = a.mul({db, eb}, e);
                if (span.add(p)) work.push_back(p);
            }
    }
    GradedSubspace out;
    out.basis.reserve(span.m.size());
    for (auto& M : span.m) out.basis.push_back(canonical_column_space(M));
    return out;
}

bool is_ideal(const Cdga& a, const GradedSubspace& s) {
    if ((int)s.basis.size() != a.top_degree + 1) return false;
    for (int r = 0; r <= a.top_degree; ++r) {
        const RatMatrix& M = s.basis[(std::size_t)r];
        if (M.rows() != a.dim(r)) return false;
        for (std::size_t c = 0; c < M.cols(); ++c) {
            Element v{r, M.col(c)};
            Element dv = a.apply_d(v);
            if (dv.degree <= a.top_degree && !vec_is_zero(dv.coords) &&
                !in_span(s.basis[(std::size_t)dv.degree], dv.coords))
                return false;
            for (int db = 0; db <= a.top_degree - r; ++db)
                for (std::size_t bi = 0; bi < a.dim(db); ++bi) {
                    RatVec eb(a.dim(db), Rat(0));
                    eb[bi] = 1;
                    Element p = a.mul({db, eb}, v);
                    if (!vec_is_zero(p.coords) &&
                        !in_span(s.basis[(std::size_t)p.degree], p.coords))
                        return false;
                }
        }
    }
    return true;
}

QuotientResult quotient(const CdgaPtr& a, const GradedSubspace& ideal) {
    if (!is_ideal(*a, ideal)) throw input_error("quotient: subspace is not a differential ideal");
    int top = a->top_degree;
    std::vector<RatMatrix> inj((std::size_t)top + 1);   // chosen complement columns
    std::vector<RatMatrix> proj((std::size_t)top + 1);  // A^r -> quotient coords
    Cdga Q;
    Q.top_degree = top;
    Q.names.resize((std::size_t)top + 1);
    Q.d.resize((std::size_t)top + 1);
    for (int r = 0; r <= top; ++r) {
        const RatMatrix& I = ideal.basis[(std::size_t)r];
        RatMatrix C = standard_complement(I, a->dim(r));
        inj[(std::size_t)r] = C;
        for (std::size_t c = 0; c < C.cols(); ++c) {
            // complement columns are standard basis vectors; reuse their names
            for (std::size_t i = 0; i < a->dim(r); ++i)
                if (!is_zero(C.at(i, c))) {
                    Q.names[(std::size_t)r].push_back(a->names[(std::size_t)r][i]);
                    break;
                }
        }
        RatMatrix T = I.hcat(C);
        if (T.cols() != a->dim(r)) throw internal_error("quotient basis assembly");
        if (a->dim(r) == 0) {
            proj[(std::size_t)r] = RatMatrix(0, 0);
            continue;
        }
        auto Tinv = inverse(T);
        if (!Tinv) throw internal_error("quotient basis not invertible");
        RatMatrix P(C.cols(), a->dim(r));
        for (std::size_t i = 0; i < C.cols(); ++i)
            for (std::size_t j = 0; j < a->dim(r); ++j) P.at(i, j) = Tinv->at(I.cols() + i, j);
        proj[(std::size_t)r] = P;
    }
    for (int r = 0; r <= top; ++r) {
        std::size_t rows = r + 1 <= top ? Q.names[(std::size_t)(r + 1)].size() : 0;
        RatMatrix dq(rows, Q.names[(std::size_t)r].size());
        if (r + 1 <= top) dq = proj[(std::size_t)(r + 1)] * a->d[(std::size_t)r] * inj[(std::size_t)r];
        Q.d[(std::size_t)r] = dq;
    }
    Q.unit = Q.dim(0) ? proj[0].mul_vec(a->unit) : RatVec{};
    for (int r1 = 0; r1 <= top; ++r1)
        for (std::size_t i = 0; i < Q.dim(r1); ++i)
            for (int r2 = r1; r1 + r2 <= top; ++r2)
                for (std::size_t j = (r2 == r1 ? i : 0); j < Q.dim(r2); ++j) {
                    Element p = a->mul({r1, inj[(std::size_t)r1].col(i)},
                                       {r2, inj[(std::size_t)r2].col(j)});
                    Q.set_product(r1, i, r2, j, proj[(std::size_t)(r1 + r2)].mul_vec(p.coords));
                }
    QuotientResult res;
    res.algebra = std::move(Q);
    res.projection = CdgaMorphism{a, std::make_shared<const Cdga>(res.algebra), proj};
    return res;
}

static SubCdgaResult sub_cdga(const CdgaPtr& a, const std::vector<RatMatrix>& cols,
                              const std::vector<std::string>& deg0_names) {
    int top = a->top_degree;
    Cdga S;
    S.top_degree = top;
    S.names.resize((std::size_t)top + 1);
    S.d.resize((std::size_t)top + 1);
    std::set<std::string> used;
    for (int r = 0; r <= top; ++r) {
        const RatMatrix& C = cols[(std::size_t)r];
        for (std::size_t c = 0; c < C.cols(); ++c) {
            std::string base = (r == 0 && c < deg0_names.size())
                                   ? deg0_names[c]
                                   : leading_name(a->names[(std::size_t)r], C.col(c),
                                                  "s" + std::to_string(r) + "_" + std::to_string(c));
            S.names[(std::size_t)r].push_back(fused_name(base, used));
        }
    }
    for (int r = 0; r <= top; ++r) {
        const RatMatrix& C = cols[(std::size_t)r];
        if (r + 1 <= top) {
            RatMatrix img = a->d[(std::size_t)r] * C;
            auto sol = solve_matrix(cols[(std::size_t)(r + 1)], img);
            if (!sol) throw input_error("subspace is not closed under the differential");
            S.d[(std::size_t)r] = *sol;
        } else {
            S.d[(std::size_t)r] = RatMatrix(0, C.cols());
        }
    }
    auto u = solve(cols[0], a->unit);
    if (!u) throw input_error("subspace does not contain the unit");
    S.unit = *u;
    for (int r1 = 0; r1 <= top; ++r1)
        for (std::size_t i = 0; i < S.dim(r1); ++i)
            for (int r2 = r1; r1 + r2 <= top; ++r2)
                for (std::size_t j = (r2 == r1 ? i : 0); j < S.dim(r2); ++j) {
                    Element p = a->mul({r1, cols[(std::size_t)r1].col(i)},
                                       {r2, cols[(std::size_t)r2].col(j)});
                    auto sol = solve(cols[(std::size_t)(r1 + r2)], p.coords);
                    if (!sol) throw input_error("subspace is not closed under products");
                    S.set_product(r1, i, r2, j, *sol);
                }
    SubCdgaResult res;
    res.algebra = std::move(S);
    res.inclusion = CdgaMorphism{std::make_shared<const Cdga>(res.algebra), a, cols};
    return res;
}

SubCdgaResult unital_ideal(const CdgaPtr& a, const GradedSubspace& ideal) {
    if (ideal.dim(0) != 0) throw input_error("unital_ideal: ideal meets degree 0");
    if (!is_ideal(*a, ideal)) throw input_error("unital_ideal: not a differential ideal");
    std::vector<RatMatrix> cols((std::size_t)a->top_degree + 1);
    cols[0] = RatMatrix::col_vector(a->unit);
    for (int r = 1; r <= a->top_degree; ++r) cols[(std::size_t)r] = ideal.basis[(std::size_t)r];
    return sub_cdga(a, cols, {"1"});
}

// ---------------------------------------------------------------------------
// direct sums and fiber products

Cdga direct_sum(const std::vector<CdgaPtr>& parts) {
    Cdga D;
    int top = 0;
    for (auto& p : parts) top = std::max(top, p->top_degree);
    D.top_degree = top;
    D.names.resize((std::size_t)top + 1);
    D.d.resize((std::size_t)top + 1);
    std::vector<std::vector<std::size_t>> offset(parts.size(),
                                                 std::vector<std::size_t>((std::size_t)top + 1, 0));
    for (int r = 0; r <= top; ++r) {
        std::size_t off = 0;
        for (std::size_t p = 0; p < parts.size(); ++p) {
            offset[p][(std::size_t)r] = off;
            for (std::size_t i = 0; i < parts[p]->dim(r); ++i)
                D.names[(std::size_t)r].push_back("l" + std::to_string(p) + ":" +
                                                  parts[p]->names[(std::size_t)r][i]);
            off += parts[p]->dim(r);
        }
    }
    for (int r = 0; r <= top; ++r) {
        RatMatrix dm(D.dim(r + 1), D.dim(r));
        for (std::size_t p = 0; p < parts.size(); ++p) {
            if (r > parts[p]->top_degree) continue;
            const RatMatrix& dp = parts[p]->d[(std::size_t)r];
            for (std::size_t i = 0; i < dp.rows(); ++i)
                for (std::size_t j = 0; j < dp.cols(); ++j)
                    dm.at(offset[p][(std::size_t)(r + 1)] + i, offset[p][(std::size_t)r] + j) =
                        dp.at(i, j);
        }
        D.d[(std::size_t)r] = dm;
    }
    D.unit = RatVec(D.dim(0), Rat(0));
    for (std::size_t p = 0; p < parts.size(); ++p)
        for (std::size_t i = 0; i < parts[p]->dim(0); ++i)
            D.unit[offset[p][0] + i] = parts[p]->unit[i];
    for (std::size_t p = 0; p < parts.size(); ++p)
        for (auto& [key, v] : parts[p]->prod) {
            auto [di, i, dj, j] = key;
            RatVec lifted(D.dim(di + dj), Rat(0));
            for (std::size_t k = 0; k < v.size(); ++k)
                lifted[offset[p][(std::size_t)(di + dj)] + k] = v[k];
            D.prod[Cdga::ProdKey{di, offset[p][(std::size_t)di] + i, dj,
                                 offset[p][(std::size_t)dj] + j}] = lifted;
        }
    return D;
}

CdgaMorphism direct_sum_projection(const CdgaPtr& sum, const std::vector<CdgaPtr>& parts,
                                   std::size_t which) {
    std::vector<RatMatrix> maps((std::size_t)sum->top_degree + 1);
    for (int r = 0; r <= sum->top_degree; ++r) {
        RatMatrix m(parts[which]->dim(r), sum->dim(r));
        std::size_t off = 0;
        for (std::size_t p = 0; p < which; ++p) off += parts[p]->dim(r);
        for (std::size_t i = 0; i < parts[which]->dim(r); ++i) m.at(i, off + i) = 1;
        maps[(std::size_t)r] = m;
    }
    return CdgaMorphism{sum, parts[which], maps};
}

FiberProductResult fiber_product(const CdgaMorphism& f, const CdgaMorphism& g) {
    const Cdga& A = *f.source;
    const Cdga& B = *g.source;
    const Cdga& C = *f.target;
    for (int r = 0; r <= std::max(f.target->top_degree, g.target->top_degree); ++r)
        if (f.target->dim(r) != g.target->dim(r))
            throw input_error("fiber_product: targets do not agree");

    int top = std::max(A.top_degree, B.top_degree);
    bool fs = true, gs = true, js = true;
    for (int r = 0; r <= C.top_degree; ++r) {
        std::size_t cd = C.dim(r);
        if (cd == 0) continue;
        RatMatrix fr = f.map_at(r), gr = g.map_at(r);
        if (rank(fr) < cd) fs = false;
        if (rank(gr) < cd) gs = false;
        if (rank(fr.hcat(gr)) < cd) js = false;
    }
    if (!js)
        throw theory_error(
            "fiber_product: neither map surjective and joint image proper "
            "(exactness of the defining sequence fails)");

    FiberProductResult res;
    res.a = f.source;
    res.b = g.source;
    res.mode = fs ? FiberSurjectivity::f_surjective
                  : (gs ? FiberSurjectivity::g_surjective : FiberSurjectivity::joint);
    std::vector<RatMatrix> emb((std::size_t)top + 1);
    Cdga& FP = res.algebra;
    FP.top_degree = top;
    FP.names.resize((std::size_t)top + 1);
    FP.d.resize((std::size_t)top + 1);
    std::set<std::string> used;
    for (int r = 0; r <= top; ++r) {
        RatMatrix fr = f.map_at(r), gr = g.map_at(r);
        RatMatrix S = fr.hcat(gr.scaled(Rat(-1)));
        RatMatrix K = kernel_basis(S);
        emb[(std::size_t)r] = K;
        // dimension formula dim FP = dim A + dim B - dim C under joint surjectivity
        if (K.cols() != A.dim(r) + B.dim(r) - rank(S))
            throw internal_error("fiber product kernel dimension");
        for (std::size_t c = 0; c < K.cols(); ++c) {
            RatVec v = K.col(c);
            std::string base;
            for (std::size_t i = 0; i < v.size() && base.empty(); ++i)
                if (!is_zero(v[i]))
                    base = i < A.dim(r) ? "x:" + A.names[(std::size_t)r][i]
                                        : "c:" + B.names[(std::size_t)r][i - A.dim(r)];
            if (base.empty()) base = "p" + std::to_string(r) + "_" + std::to_string(c);
            FP.names[(std::size_t)r].push_back(fused_name(base, used));
        }
    }
    auto split = [&](int r, const RatVec& v) {
        RatVec xa(A.dim(r)), xb(B.dim(r));
        for (std::size_t i = 0; i < xa.size(); ++i) xa[i] = v[i];
        for (std::size_t i = 0; i < xb.size(); ++i) xb[i] = v[A.dim(r) + i];
        return std::pair<Element, Element>{{r, xa}, {r, xb}};
    };
    auto join = [&](int r, const RatVec& va, const RatVec& vb) {
        RatVec v(A.dim(r) + B.dim(r), Rat(0));
        for (std::size_t i = 0; i < va.size(); ++i) v[i] = va[i];
        for (std::size_t i = 0; i < vb.size(); ++i) v[A.dim(r) + i] = vb[i];
        return v;
    };
    for (int r = 0; r <= top; ++r) {
        RatMatrix dm(r + 1 <= top ? emb[(std::size_t)(r + 1)].cols() : 0, emb[(std::size_t)r].cols());
        for (std::size_t c = 0; c < emb[(std::size_t)r].cols(); ++c) {
            auto [xa, xb] = split(r, emb[(std::size_t)r].col(c));
            Element da = A.apply_d(xa), db = B.apply_d(xb);
            if (r + 1 > top) continue;
            RatVec joined = join(r + 1, r + 1 <= A.top_degree ? da.coords : RatVec(A.dim(r + 1)),
                                 r + 1 <= B.top_degree ? db.coords : RatVec(B.dim(r + 1)));
            auto sol = solve(emb[(std::size_t)(r + 1)], joined);
            if (!sol) throw internal_error("fiber product not closed under d");
            dm.set_col(c, *sol);
        }
        FP.d[(std::size_t)r] = dm;
    }
    {
        auto u = solve(emb[0], join(0, A.unit, B.unit));
        if (!u) throw internal_error("fiber product misses the unit");
        FP.unit = *u;
    }
    for (int r1 = 0; r1 <= top; ++r1)
        for (std::size_t i = 0; i < FP.dim(r1); ++i)
            for (int r2 = r1; r1 + r2 <= top; ++r2)
                for (std::size_t j = (r2 == r1 ? i : 0); j < FP.dim(r2); ++j) {
                    auto [a1, b1] = split(r1, emb[(std::size_t)r1].col(i));
                    auto [a2, b2] = split(r2, emb[(std::size_t)r2].col(j));
                    Element pa = A.mul(a1, a2), pb = B.mul(b1, b2);
                    RatVec joined = join(r1 + r2, pa.coords.size() ? pa.coords : RatVec(A.dim(r1 + r2)),
                                         pb.coords.size() ? pb.coords : RatVec(B.dim(r1 + r2)));
                    auto sol = solve(emb[(std::size_t)(r1 + r2)], joined);
                    if (!sol) throw internal_error("fiber product not closed under products");
                    FP.set_product(r1, i, r2, j, *sol);
                }
    res.embedding = std::move(emb);
    return res;
}

KernelComplex kernel_complex(const CdgaMorphism& f) {
    const Cdga& A = *f.source;
    const Cdga& B = *f.target;
    for (int r = 1; r <= B.top_degree; ++r) {
        if (B.dim(r) == 0) continue;
        if (r > A.top_degree || rank(f.map_at(r)) < B.dim(r))
            throw input_error("kernel_complex: map not surjective in degree " + std::to_string(r));
    }
    KernelComplex K;
    K.space.basis.resize((std::size_t)A.top_degree + 1);
    for (int r = 0; r <= A.top_degree; ++r)
        K.space.basis[(std::size_t)r] = canonical_column_space(kernel_basis(f.map_at(r)));
    auto sub = subcomplex_cohomology(A, K.space);
    K.d = std::move(sub.d);
    K.cohom = std::move(sub.cohom);
    return K;
}

std::vector<RatMatrix> induced_cohomology_map(const CdgaMorphism& f, const CohomologyResult& hsrc,
                                              const CohomologyResult& htgt) {
    const Cdga& A = *f.source;
    std::vector<RatMatrix> out((std::size_t)A.top_degree + 1);
    for (int r = 0; r <= A.top_degree; ++r) {
        RatMatrix m(htgt.dim(r), hsrc.dim(r));
        if (htgt.dim(r) > 0 && hsrc.dim(r) > 0)
            m = htgt.projection[(std::size_t)r] * f.map_at(r) * hsrc.reps[(std::size_t)r];
        out[(std::size_t)r] = m;
    }
    return out;
}

CupPairing cup_pairing(const Cdga& a, const CohomologyResult& h, const RatVec& fundamental,
                       int r) {
    int n = a.top_degree;
    if (fundamental.size() != a.dim(n)) throw input_error("cup_pairing: functional has wrong size");
    if (r < 0 || r > n) throw input_error("cup_pairing: degree out of range");
    if (n > 0) {
        RatMatrix F(1, a.dim(n));
        for (std::size_t i = 0; i < fundamental.size(); ++i) F.at(0, i) = fundamental[i];
        if (!(F * a.d[(std::size_t)(n - 1)]).is_zero())
            throw input_error("cup_pairing: functional does not vanish on coboundaries");
    }
    CupPairing cp;
    cp.gram = RatMatrix(h.dim(r), h.dim(n - r));
    for (std::size_t i = 0; i < h.dim(r); ++i)
        for (std::size_t j = 0; j < h.dim(n - r); ++j) {
            Element p = a.mul({r, h.reps[(std::size_t)r].col(i)},
                              {n - r, h.reps[(std::size_t)(n - r)].col(j)});
            Rat v(0);
            for (std::size_t k = 0; k < p.coords.size(); ++k) v += fundamental[k] * p.coords[k];
            cp.gram.at(i, j) = v;
        }
    cp.square = h.dim(r) == h.dim(n - r);
    cp.symmetric = r % 2 == 0;
    return cp;
}

SubcomplexCohomology subcomplex_cohomology(const Cdga& a, const GradedSubspace& s) {
    SubcomplexCohomology out;
    out.d.resize((std::size_t)a.top_degree + 1);
    for (int r = 0; r <= a.top_degree; ++r) {
        const RatMatrix& C = s.basis[(std::size_t)r];
        if (r + 1 <= a.top_degree) {
            RatMatrix img = a.d[(std::size_t)r] * C;
            auto sol = solve_matrix(s.basis[(std::size_t)(r + 1)], img);
            if (!sol) throw input_error("subcomplex not closed under the differential");
            out.d[(std::size_t)r] = *sol;
        } else {
            out.d[(std::size_t)r] = RatMatrix(0, C.cols());
        }
    }
    out.cohom = complex_cohomology(out.d);
    return out;
}

RatVec subspace_coords(const GradedSubspace& s, int r, const RatVec& ambient) {
    auto sol = solve(s.basis[(std::size_t)r], ambient);
    if (!sol) throw internal_error("vector not in subspace");
    return *sol;
}

}  // namespace qpd
