#include "qpd/spaces.hpp"

#include <algorithm>

namespace qpd {

CdgaMorphism compose(const CdgaMorphism& outer, const CdgaMorphism& inner) {
    CdgaMorphism c;
    c.source = inner.source;
    c.target = outer.target;
    c.maps.resize((std::size_t)inner.source->top_degree + 1);
    for (int r = 0; r <= inner.source->top_degree; ++r)
        c.maps[(std::size_t)r] = outer.map_at(r) * inner.map_at(r);
    return c;
}

std::string to_string(SpaceClass c) {
    switch (c) {
        case SpaceClass::Witt: return "Witt";
        case SpaceClass::LSpace: return "LSpace";
        case SpaceClass::EvenDim: return "EvenDim";
        default: return "Neither";
    }
}

std::string to_string(ThomClass c) {
    switch (c) {
        case ThomClass::Witt: return "Witt";
        case ThomClass::LSpace: return "LSpace";
        default: return "Conditional";
    }
}

PseudomanifoldModel make_pseudomanifold(int n, CdgaPtr regular, std::vector<CdgaPtr> links,
                                        std::vector<std::vector<RatMatrix>> per_link_maps,
                                        std::vector<RatVec> link_fundamentals) {
    PseudomanifoldModel x;
    x.n = n;
    x.regular = std::move(regular);
    x.links = std::move(links);
    x.link_fundamentals = std::move(link_fundamentals);
    x.link_sum = std::make_shared<const Cdga>(direct_sum(x.links));
    if (per_link_maps.size() != x.links.size())
        throw input_error("make_pseudomanifold: one restriction block per link required");
    std::vector<RatMatrix> maps((std::size_t)x.regular->top_degree + 1);
    for (int r = 0; r <= x.regular->top_degree; ++r) {
        RatMatrix m(x.link_sum->dim(r), x.regular->dim(r));
        std::size_t off = 0;
        for (std::size_t i = 0; i < x.links.size(); ++i) {
            const RatMatrix& blk =
                r < (int)per_link_maps[i].size() ? per_link_maps[i][(std::size_t)r]
                                                 : RatMatrix(x.links[i]->dim(r), x.regular->dim(r));
            if (blk.rows() != x.links[i]->dim(r) || blk.cols() != x.regular->dim(r))
                throw input_error("make_pseudomanifold: restriction block shape at degree " +
                                  std::to_string(r));
            for (std::size_t a = 0; a < blk.rows(); ++a)
                for (std::size_t b = 0; b < blk.cols(); ++b) m.at(off + a, b) = blk.at(a, b);
            off += x.links[i]->dim(r);
        }
        maps[(std::size_t)r] = m;
    }
    x.restriction = CdgaMorphism{x.regular, x.link_sum, std::move(maps)};
    return x;
}

// ---------------------------------------------------------------------------
// validation

std::vector<std::string> validate_model(const PseudomanifoldModel& x) {
    std::vector<std::string> out;
    if (x.n < 2) out.push_back("dimension must be at least 2");
    if (!x.regular || !x.link_sum) {
        out.push_back("missing algebras");
        return out;
    }
    for (auto& v : validate(*x.regular)) out.push_back("regular: " + v.axiom + " " + v.detail);
    for (std::size_t i = 0; i < x.links.size(); ++i)
        for (auto& v : validate(*x.links[i]))
            out.push_back("link " + std::to_string(i) + ": " + v.axiom + " " + v.detail);
    if (!out.empty()) return out;
    for (auto& v : validate_morphism(x.restriction))
        out.push_back("restriction: " + v.axiom + " " + v.detail);
    if (!out.empty()) return out;

    CohomologyResult hreg = cohomology(*x.regular);
    if (hreg.dim(0) != 1) out.push_back("regular part is not connected");
    for (int r = 1; r <= x.link_sum->top_degree; ++r) {
        if (x.link_sum->dim(r) == 0) continue;
        if (rank(x.restriction.map_at(r)) < x.link_sum->dim(r))
            out.push_back("restriction not surjective in degree " + std::to_string(r));
    }
    if (x.link_fundamentals.size() != x.links.size())
        out.push_back("one fundamental functional per link required");
    for (std::size_t i = 0; i < x.links.size() && i < x.link_fundamentals.size(); ++i) {
        const Cdga& L = *x.links[i];
        if (L.top_degree != x.n - 1) {
            out.push_back("link " + std::to_string(i) + " must have top degree n-1");
            continue;
        }
        CohomologyResult h = cohomology(L);
        if (h.dim(0) != 1) out.push_back("link " + std::to_string(i) + " is not connected");
        if (x.n != 3 && h.dim(1) != 0)
            out.push_back("link " + std::to_string(i) + " is not simply connected (H^1 != 0)");
        if (h.dim(x.n - 1) != 1)
            out.push_back("link " + std::to_string(i) + " has H^{n-1} != Q");
        const RatVec& f = x.link_fundamentals[i];
        if (f.size() != L.dim(x.n - 1)) {
            out.push_back("link " + std::to_string(i) + " fundamental has wrong size");
            continue;
        }
        if (x.n >= 2 && L.dim(x.n - 1) > 0) {
            RatMatrix F(1, f.size());
            for (std::size_t j = 0; j < f.size(); ++j) F.at(0, j) = f[j];
            if (!(F * L.d[(std::size_t)(x.n - 2)]).is_zero())
                out.push_back("link " + std::to_string(i) +
                              " fundamental does not vanish on coboundaries");
        }
        if (h.dim(x.n - 1) == 1) {
            Rat v(0);
            RatVec rep = h.reps[(std::size_t)(x.n - 1)].col(0);
            for (std::size_t j = 0; j < f.size(); ++j) v += f[j] * rep[j];
            if (is_zero(v))
                out.push_back("link " + std::to_string(i) + " fundamental vanishes on H^{n-1}");
        }
        // closed-manifold link: nondegenerate cup pairing in every degree
        bool pairing_ok = true;
        for (int r = 0; 2 * r <= x.n - 1 && pairing_ok; ++r) {
            CupPairing cp = cup_pairing(L, h, f, r);
            if (!cp.square || rank(cp.gram) < cp.gram.rows()) {
                out.push_back("link " + std::to_string(i) + " cup pairing degenerate in degree " +
                              std::to_string(r));
                pairing_ok = false;
            }
        }
    }
    return out;
}

void require_valid_model(const PseudomanifoldModel& x) {
    auto v = validate_model(x);
    if (!v.empty()) throw input_error("invalid pseudomanifold model: " + v.front());
}

// ---------------------------------------------------------------------------
// classification

ClassifyResult classify(const PseudomanifoldModel& x) {
    require_valid_model(x);
    ClassifyResult res;
    if (x.n % 2 == 0) {
        res.cls = SpaceClass::EvenDim;
        return res;
    }
    int s = (x.n - 1) / 2;
    bool all_zero = true, all_lagrangian = true;
    for (std::size_t i = 0; i < x.links.size(); ++i) {
        const Cdga& L = *x.links[i];
        CohomologyResult h = cohomology(L);
        LinkClassification lc;
        lc.middle_dim = h.dim(s);
        lc.kind = s % 2 == 0 ? FormKind::symmetric : FormKind::skew;
        if (lc.middle_dim == 0) {
            lc.signature = 0;
            lc.lagrangian_exists = lc.lagrangian_constructed = true;
            res.links.push_back(lc);
            continue;
        }
        all_zero = false;
        CupPairing cp = cup_pairing(L, h, x.link_fundamentals[i], s);
        BilinearSpace b{cp.gram, lc.kind};
        if (lc.kind == FormKind::skew) {
            // n = 3 mod 4: nondegenerate symplectic forms always split
            lc.lagrangian_exists = true;
            lc.witt_zero = true;
            lc.signature_zero = true;
            try {
                symplectic_basis(b);
                lc.lagrangian_constructed = true;
            } catch (const std::exception&) {
                lc.lagrangian_constructed = false;
                lc.lagrangian_exists = false;
            }
        } else {
            lc.signature = signature(b);
            lc.signature_zero = *lc.signature == 0;
            lc.witt_zero = witt_trivial(b);
            lc.lagrangian_exists = lc.witt_zero;
            if (lc.lagrangian_exists) {
                try {
                    lc.lagrangian_constructed = find_lagrangian(b).has_value();
                } catch (const undecided_error&) {
                    lc.lagrangian_constructed = false;
                }
            }
        }
        if (!lc.lagrangian_exists) all_lagrangian = false;
        res.links.push_back(lc);
    }
    res.cls = all_zero ? SpaceClass::Witt
                       : (all_lagrangian ? SpaceClass::LSpace : SpaceClass::Neither);
    return res;
}

// ---------------------------------------------------------------------------
// intersection-space models

namespace {

std::vector<CotruncateResult> per_link_cotruncations(const PseudomanifoldModel& x, int k) {
    std::vector<CotruncateResult> out;
    for (auto& l : x.links) out.push_back(cotruncate(l, k));
    return out;
}

/// Fiber product of the restriction with the direct sum of given per-link
/// cotruncation inclusions.
Cdga glue_model(const PseudomanifoldModel& x, const std::vector<CotruncateResult>& cots) {
    std::vector<CdgaPtr> cot_algs;
    for (auto& c : cots) cot_algs.push_back(std::make_shared<const Cdga>(c.algebra));
    CdgaPtr csum = std::make_shared<const Cdga>(direct_sum(cot_algs));
    // inclusion direct_sum(cotr) -> direct_sum(links), blockwise
    std::vector<RatMatrix> maps((std::size_t)csum->top_degree + 1);
    for (int r = 0; r <= csum->top_degree; ++r) {
        RatMatrix m(x.link_sum->dim(r), csum->dim(r));
        std::size_t roff = 0, coff = 0;
        for (std::size_t i = 0; i < x.links.size(); ++i) {
            RatMatrix blk = cots[i].inclusion.map_at(r);
            for (std::size_t a = 0; a < blk.rows(); ++a)
                for (std::size_t b = 0; b < blk.cols(); ++b) m.at(roff + a, coff + b) = blk.at(a, b);
            roff += x.links[i]->dim(r);
            coff += cot_algs[i]->dim(r);
        }
        maps[(std::size_t)r] = m;
    }
    CdgaMorphism incl{csum, x.link_sum, std::move(maps)};
    return fiber_product(x.restriction, incl).algebra;
}

Cdga add_wedge_circles(Cdga m, std::size_t count) {
    if (count == 0) return m;
    if (m.top_degree < 1) {
        m.top_degree = 1;
        m.names.resize(2);
        m.d.resize(2);
        m.d[1] = RatMatrix(0, 0);
    }
    std::size_t old1 = m.dim(1);
    for (std::size_t i = 0; i < count; ++i)
        m.names[1].push_back("w" + std::to_string(i));
    // extend differentials with zero rows/columns
    RatMatrix d0(m.dim(1), m.dim(0));
    for (std::size_t i = 0; i < m.d[0].rows(); ++i)
        for (std::size_t j = 0; j < m.d[0].cols(); ++j) d0.at(i, j) = m.d[0].at(i, j);
    m.d[0] = d0;
    RatMatrix d1(m.dim(2), m.dim(1));
    for (std::size_t i = 0; i < m.d[1].rows(); ++i)
        for (std::size_t j = 0; j < m.d[1].cols(); ++j) d1.at(i, j) = m.d[1].at(i, j);
    m.d[1] = d1;
    // unit acts as identity on the new classes; all other products vanish
    if (m.dim(0) != 1) throw internal_error("wedge extension expects a connected degree 0");
    for (std::size_t i = 0; i < count; ++i) {
        RatVec self(m.dim(1), Rat(0));
        self[old1 + i] = 1;  // e0 = (1/unit[0]) * 1, so e0 * w = w / unit[0]
        RatVec val = scaled(self, 1 / m.unit[0]);
        m.prod[Cdga::ProdKey{0, 0, 1, old1 + i}] = val;
        m.prod[Cdga::ProdKey{1, old1 + i, 0, 0}] = val;
    }
    return m;
}

}  // namespace

Cdga normal_intersection_space_model(const PseudomanifoldModel& x, Perversity p) {
    require_valid_model(x);
    if (p.pbar < 0 || p.pbar > x.n - 2) throw input_error("perversity out of range 0..n-2");
    return glue_model(x, per_link_cotruncations(x, p.cut(x.n)));
}

Cdga intersection_space_model(const PseudomanifoldModel& x, Perversity p) {
    Cdga m = normal_intersection_space_model(x, p);
    // collapsing the cotruncation cone points to one adds beta_0 - 1 circles
    return add_wedge_circles(std::move(m), x.links.empty() ? 0 : x.links.size() - 1);
}

Cdga lagrangian_intersection_space_model(const PseudomanifoldModel& x,
                                         const std::vector<std::vector<RatVec>>& keeps) {
    require_valid_model(x);
    if (x.n % 2 == 0) throw input_error("Lagrangian intersection spaces need odd dimension");
    int s = (x.n - 1) / 2;
    if (keeps.size() != x.links.size())
        throw input_error("one keep-list per link required");
    ClassifyResult cls = classify(x);
    if (cls.cls == SpaceClass::Neither)
        throw theory_error("not an L-space: no Lagrangian truncation exists");
    if (cls.cls == SpaceClass::Witt) {
        for (auto& k : keeps)
            if (!k.empty())
                throw input_error("Witt space: middle cohomology vanishes, keeps must be empty");
    }
    std::vector<CotruncateResult> cots;
    for (std::size_t i = 0; i < x.links.size(); ++i)
        cots.push_back(lagrangian_cotruncate(x.links[i], s, keeps[i]));
    return glue_model(x, cots);
}

// ---------------------------------------------------------------------------
// relative fundamental class and the regular intersection form

namespace {

RatVec block_embed(const PseudomanifoldModel& x, std::size_t link, int degree, const RatVec& v) {
    RatVec out(x.link_sum->dim(degree), Rat(0));
    std::size_t off = 0;
    for (std::size_t i = 0; i < link; ++i) off += x.links[i]->dim(degree);
    for (std::size_t j = 0; j < v.size(); ++j) out[off + j] = v[j];
    return out;
}

struct RelativeData {
    KernelComplex K;
    RatVec F;  // functional on H^n(ker) class coordinates (may be empty)
};

RelativeData relative_fundamental(const PseudomanifoldModel& x,
                                  const std::vector<CohomologyResult>& h_link) {
    RelativeData rd{kernel_complex(x.restriction), {}};
    int n = x.n;
    std::size_t h = n <= x.regular->top_degree ? rd.K.cohom.dim(n) : 0;
    // delta of every H^{n-1}(L_i) class, and its required F-value
    std::vector<RatVec> deltas;
    RatVec vals;
    for (std::size_t i = 0; i < x.links.size(); ++i) {
        for (std::size_t j = 0; j < h_link[i].dim(n - 1); ++j) {
            RatVec rep = h_link[i].reps[(std::size_t)(n - 1)].col(j);
            Rat val(0);
            for (std::size_t t = 0; t < rep.size(); ++t) val += x.link_fundamentals[i][t] * rep[t];
            RatVec usum = block_embed(x, i, n - 1, rep);
            auto lift = solve(x.restriction.map_at(n - 1), usum);
            if (!lift) throw internal_error("relative_fundamental: lift failed");
            Element dx = x.regular->apply_d({n - 1, *lift});
            RatVec cls = h == 0 ? RatVec{}
                                : rd.K.cohom.project(n, subspace_coords(rd.K.space, n, dx.coords));
            if (h == 0) {
                if (!is_zero(val))
                    throw input_error(
                        "relative fundamental: regular part has no degree-n relative class "
                        "but a link fundamental is nonzero");
                continue;
            }
            deltas.push_back(cls);
            vals.push_back(val);
        }
    }
    if (h == 0) return rd;
    RatMatrix D(h, deltas.size());
    for (std::size_t c = 0; c < deltas.size(); ++c) D.set_col(c, deltas[c]);
    if (rank(D) == 0) {
        bool all_zero = true;
        for (const Rat& v : vals) all_zero = all_zero && is_zero(v);
        if (!all_zero)
            throw input_error("link fundamentals incompatible with the regular-part orientation");
        rd.F = RatVec(h, Rat(0));
        rd.F[0] = 1;  // closed case: canonical normalization
        return rd;
    }
    auto sol = solve(D.transpose(), vals);
    if (!sol)
        throw input_error("link fundamentals incompatible with the regular-part orientation");
    rd.F = *sol;
    return rd;
}

Rat evaluate_relative(const RelativeData& rd, const PseudomanifoldModel& x, const RatVec& cochain) {
    // cochain: degree-n cocycle of the regular part, automatically relative
    RatVec cls = rd.K.cohom.project(x.n, subspace_coords(rd.K.space, x.n, cochain));
    Rat v(0);
    for (std::size_t i = 0; i < cls.size(); ++i) v += rd.F[i] * cls[i];
    return v;
}

}  // namespace

BilinearSpace regular_intersection_form(const PseudomanifoldModel& x) {
    require_valid_model(x);
    if (x.n % 2 != 0) throw input_error("regular_intersection_form: even dimension required");
    int s = x.n / 2;
    std::vector<CohomologyResult> h_link;
    for (auto& l : x.links) h_link.push_back(cohomology(*l));
    RelativeData rd = relative_fundamental(x, h_link);
    CohomologyResult hreg = cohomology(*x.regular);

    // image of H^s(ker) in H^s(regular), with chosen relative cocycle lifts
    std::vector<RatVec> kappas;  // ambient degree-s cocycles in ker(restriction)
    RatMatrix classes(hreg.dim(s), 0);
    for (std::size_t j = 0; j < rd.K.cohom.dim(s); ++j) {
        RatVec amb = rd.K.space.basis[(std::size_t)s].mul_vec(rd.K.cohom.reps[(std::size_t)s].col(j));
        RatVec cls = hreg.project(s, amb);
        RatMatrix cand = classes.hcat(RatMatrix::col_vector(cls));
        if (rank(cand) > classes.cols()) {
            classes = cand;
            kappas.push_back(amb);
        }
    }
    RatMatrix gram(kappas.size(), kappas.size());
    if (!kappas.empty() && rd.F.empty())
        throw input_error("regular_intersection_form: relative fundamental class unavailable");
    for (std::size_t i = 0; i < kappas.size(); ++i)
        for (std::size_t j = 0; j < kappas.size(); ++j) {
            Element p = x.regular->mul({s, kappas[i]}, {s, kappas[j]});
            gram.at(i, j) = evaluate_relative(rd, x, p.coords);
        }
    BilinearSpace b{gram, s % 2 == 0 ? FormKind::symmetric : FormKind::skew};
    return radical_quotient(b);
}

// ---------------------------------------------------------------------------
// DP assembly

namespace {

struct SideBlock {
    std::vector<std::size_t> dims;      // 0..n
    std::vector<RatMatrix> maps;        // maps[r]: h_link_i(r) x dims[r]
};

struct DpAssembly {
    int n = 0;
    SpaceClass cls = SpaceClass::Neither;
    std::vector<std::size_t> v_dims, u_dims;  // 0..n
    std::vector<std::size_t> betti, xbar;     // 0..n
    std::vector<RatMatrix> rho_ker;           // kernel bases of rho' per degree
    std::vector<RatMatrix> rho;               // the stacked matrices [phi | -J]
    std::vector<std::size_t> rho_rank;        // 0..n
    std::vector<std::size_t> phi_rank;        // rank of V-projection of ker rho'
    std::vector<std::size_t> psi_rank;        // 0..n
    std::vector<std::size_t> w_dims;          // 0..n (cotr side after attach)
    // retained pieces for the middle form
    CohomologyResult h_reg;
    std::vector<CohomologyResult> h_link;
    std::vector<CotruncateResult> cots;
    std::vector<CohomologyResult> h_cot;
};

struct MvOut {
    std::vector<std::size_t> betti, rho_rank, ker_vproj_rank;
    std::vector<RatMatrix> ker;
    std::vector<RatMatrix> rho;  // stacked [phi | -J]
};

MvOut mv_assemble(int n, const std::vector<std::size_t>& v_dims,
                  const std::vector<RatMatrix>& phi_stacked,
                  const std::vector<std::size_t>& u_dims, const std::vector<SideBlock>& sides) {
    MvOut out;
    out.betti.assign((std::size_t)n + 1, 0);
    out.rho_rank.assign((std::size_t)n + 1, 0);
    out.ker_vproj_rank.assign((std::size_t)n + 1, 0);
    out.ker.resize((std::size_t)n + 1);
    out.rho.resize((std::size_t)n + 1);
    for (int r = 0; r <= n; ++r) {
        std::size_t w = 0;
        for (auto& blk : sides) w += blk.dims[(std::size_t)r];
        RatMatrix rho(u_dims[(std::size_t)r], v_dims[(std::size_t)r] + w);
        // phi block
        for (std::size_t i = 0; i < phi_stacked[(std::size_t)r].rows(); ++i)
            for (std::size_t j = 0; j < phi_stacked[(std::size_t)r].cols(); ++j)
                rho.at(i, j) = phi_stacked[(std::size_t)r].at(i, j);
        // -J blocks, block-diagonal over links
        std::size_t roff = 0, coff = v_dims[(std::size_t)r];
        for (auto& blk : sides) {
            const RatMatrix& J = blk.maps[(std::size_t)r];
            for (std::size_t a = 0; a < J.rows(); ++a)
                for (std::size_t b = 0; b < J.cols(); ++b) rho.at(roff + a, coff + b) = -J.at(a, b);
            roff += J.rows();
            coff += J.cols();
        }
        out.rho[(std::size_t)r] = rho;
        RatMatrix K = kernel_basis(rho);
        out.ker[(std::size_t)r] = K;
        out.rho_rank[(std::size_t)r] = rank(rho);
        RatMatrix vpart(v_dims[(std::size_t)r], K.cols());
        for (std::size_t i = 0; i < vpart.rows(); ++i)
            for (std::size_t j = 0; j < K.cols(); ++j) vpart.at(i, j) = K.at(i, j);
        out.ker_vproj_rank[(std::size_t)r] = rank(vpart);
    }
    for (int r = 0; r <= n; ++r) {
        std::size_t coker = r > 0 ? u_dims[(std::size_t)(r - 1)] - out.rho_rank[(std::size_t)(r - 1)]
                                  : 0;
        out.betti[(std::size_t)r] = out.ker[(std::size_t)r].cols() + coker;
    }
    return out;
}

DpAssembly assemble_dp(const PseudomanifoldModel& x, const std::vector<std::vector<RatVec>>& keeps) {
    require_valid_model(x);
    DpAssembly A;
    A.n = x.n;
    int n = x.n;
    for (auto& l : x.links) {
        CohomologyResult h = cohomology(*l);
        if (h.dim(1) != 0)
            throw theory_error(
                "dp_model: links must be simply connected for the duality construction");
        A.h_link.push_back(std::move(h));
    }
    A.h_reg = cohomology(*x.regular);

    // classification drives the cotruncation choice
    if (n % 2 == 0) {
        A.cls = SpaceClass::EvenDim;
        if (!keeps.empty()) throw input_error("keeps only apply to odd-dimensional L-spaces");
        A.cots = per_link_cotruncations(x, n / 2);
    } else {
        ClassifyResult cr = classify(x);
        A.cls = cr.cls;
        int s = (n - 1) / 2;
        if (cr.cls == SpaceClass::Neither)
            throw theory_error(
                "dp_model: odd dimension with neither Witt nor L-space structure is unsupported "
                "by the theory");
        if (cr.cls == SpaceClass::Witt) {
            for (auto& k : keeps)
                if (!k.empty()) throw input_error("Witt space: keeps must be empty");
            A.cots = per_link_cotruncations(x, s + 1);
        } else {
            if (keeps.size() != x.links.size())
                throw input_error("L-space: one keep-list per link required");
            for (std::size_t i = 0; i < x.links.size(); ++i)
                A.cots.push_back(lagrangian_cotruncate(x.links[i], s, keeps[i]));
        }
    }
    for (auto& c : A.cots) A.h_cot.push_back(cohomology(c.algebra));

    A.v_dims.assign((std::size_t)n + 1, 0);
    for (int r = 0; r <= n; ++r) A.v_dims[(std::size_t)r] = A.h_reg.dim(r);
    A.u_dims.assign((std::size_t)n + 1, 0);
    for (int r = 0; r <= n; ++r)
        for (auto& h : A.h_link) A.u_dims[(std::size_t)r] += h.dim(r);

    // stacked phi*: H(regular) -> (+) H(L_i)
    std::vector<RatMatrix> phi((std::size_t)n + 1);
    std::vector<std::vector<RatMatrix>> phi_blocks(x.links.size());
    for (std::size_t i = 0; i < x.links.size(); ++i) {
        CdgaMorphism pi = direct_sum_projection(x.link_sum, x.links, i);
        phi_blocks[i] = induced_cohomology_map(compose(pi, x.restriction), A.h_reg, A.h_link[i]);
    }
    for (int r = 0; r <= n; ++r) {
        RatMatrix m(A.u_dims[(std::size_t)r], A.v_dims[(std::size_t)r]);
        std::size_t off = 0;
        for (std::size_t i = 0; i < x.links.size(); ++i) {
            RatMatrix blk = r < (int)phi_blocks[i].size()
                                ? phi_blocks[i][(std::size_t)r]
                                : RatMatrix(A.h_link[i].dim(r), A.v_dims[(std::size_t)r]);
            for (std::size_t a = 0; a < blk.rows(); ++a)
                for (std::size_t b = 0; b < blk.cols(); ++b) m.at(off + a, b) = blk.at(a, b);
            off += A.h_link[i].dim(r);
        }
        phi[(std::size_t)r] = m;
    }

    // cotruncation-with-top-cell side blocks
    std::vector<SideBlock> dp_side;
    for (std::size_t i = 0; i < x.links.size(); ++i) {
        std::vector<RatMatrix> iota =
            induced_cohomology_map(A.cots[i].inclusion, A.h_cot[i], A.h_link[i]);
        SideBlock blk;
        blk.dims.assign((std::size_t)n + 1, 0);
        blk.maps.resize((std::size_t)n + 1);
        for (int r = 0; r <= n; ++r) {
            if (r <= n - 2 && r <= A.cots[i].algebra.top_degree) {
                blk.dims[(std::size_t)r] = A.h_cot[i].dim(r);
                blk.maps[(std::size_t)r] = r < (int)iota.size()
                                               ? iota[(std::size_t)r]
                                               : RatMatrix(A.h_link[i].dim(r), 0);
            } else if (r == n - 1) {
                // attach_top_cell_effect: the fundamental class dies; the
                // surviving sources are the kernel of f ( iota* . )
                RatMatrix J = iota[(std::size_t)r];
                RatMatrix f_row(1, A.h_link[i].dim(r));
                RatVec frep(A.h_link[i].dim(r));
                for (std::size_t j = 0; j < A.h_link[i].dim(r); ++j) {
                    RatVec rep = A.h_link[i].reps[(std::size_t)r].col(j);
                    Rat v(0);
                    for (std::size_t t = 0; t < rep.size(); ++t)
                        v += x.link_fundamentals[i][t] * rep[t];
                    f_row.at(0, j) = v;
                }
                RatMatrix row = f_row * J;
                RatMatrix KK = kernel_basis(row);
                // the fundamental class must be visible in the cotruncation
                if (rank(row) == 0 && J.cols() > 0)
                    throw theory_error("link fundamental class vanishes in the cotruncation");
                blk.dims[(std::size_t)r] = KK.cols();
                blk.maps[(std::size_t)r] = J * KK;
            } else {
                blk.dims[(std::size_t)r] = 0;
                blk.maps[(std::size_t)r] = RatMatrix(A.h_link[i].dim(r), 0);
            }
        }
        dp_side.push_back(std::move(blk));
    }
    MvOut dp = mv_assemble(n, A.v_dims, phi, A.u_dims, dp_side);
    A.betti = dp.betti;
    A.rho_rank = dp.rho_rank;
    A.phi_rank = dp.ker_vproj_rank;
    A.rho_ker = dp.ker;
    A.rho = dp.rho;
    A.w_dims.assign((std::size_t)n + 1, 0);
    for (int r = 0; r <= n; ++r)
        for (auto& blk : dp_side) A.w_dims[(std::size_t)r] += blk.dims[(std::size_t)r];

    // normalization Xbar: cone-point side (Q in degree 0 per link)
    std::vector<SideBlock> cone_side;
    for (std::size_t i = 0; i < x.links.size(); ++i) {
        SideBlock blk;
        blk.dims.assign((std::size_t)n + 1, 0);
        blk.maps.resize((std::size_t)n + 1);
        for (int r = 0; r <= n; ++r) blk.maps[(std::size_t)r] = RatMatrix(A.h_link[i].dim(r), 0);
        blk.dims[0] = 1;
        RatMatrix m(A.h_link[i].dim(0), 1);
        m.set_col(0, A.h_link[i].project(0, x.links[i]->unit));
        blk.maps[0] = m;
        cone_side.push_back(std::move(blk));
    }
    MvOut xb = mv_assemble(n, A.v_dims, phi, A.u_dims, cone_side);
    A.xbar = xb.betti;

    // rank of psi^r : H^r(Xbar) -> H^r(DP):
    // the coker part maps onto the DP coker part; the ker part injects.
    A.psi_rank.assign((std::size_t)n + 1, 0);
    for (int r = 0; r <= n; ++r) {
        std::size_t coker = r > 0 ? A.u_dims[(std::size_t)(r - 1)] - A.rho_rank[(std::size_t)(r - 1)]
                                  : 0;
        A.psi_rank[(std::size_t)r] = coker + xb.ker[(std::size_t)r].cols();
    }
    return A;
}

GoodnessReport goodness_from(const DpAssembly& A, const std::vector<std::size_t>& dp_betti) {
    GoodnessReport rep;
    int n = A.n;
    auto bt = [&](int r) { return r >= 0 && r <= n ? dp_betti[(std::size_t)r] : 0; };
    auto xb = [&](int r) { return r >= 0 && r <= n ? A.xbar[(std::size_t)r] : 0; };
    auto vd = [&](int r) { return r >= 0 && r <= n ? A.v_dims[(std::size_t)r] : 0; };
    auto phi_iso = [&](int r) {
        return A.phi_rank[(std::size_t)r] == vd(r) && bt(r) == vd(r);
    };
    auto phi_inj = [&](int r) { return A.phi_rank[(std::size_t)r] == vd(r); };
    auto psi_iso = [&](int r) {
        return A.psi_rank[(std::size_t)r] == xb(r) && bt(r) == xb(r);
    };
    auto psi_surj = [&](int r) { return A.psi_rank[(std::size_t)r] == xb(r); };
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        rep.conditions.push_back({name, pass, detail});
    };
    bool good = true;
    auto note = [&](int r, const char* what) {
        return std::string(what) + " at r=" + std::to_string(r);
    };
    if (n % 2 == 0) {
        int s = n / 2;
        for (int r = s + 1; r <= 2 * s - 2; ++r) {
            bool p = phi_iso(r);
            good = good && p;
            add("phi_" + std::to_string(r) + " iso", p, note(r, "H_r(X_reg) -> H_r(DP)"));
        }
        {
            bool p = phi_inj(s);
            good = good && p;
            add("phi_" + std::to_string(s) + " injective", p, note(s, "H_s(X_reg) -> H_s(DP)"));
        }
        for (int r = 0; r <= s - 1; ++r) {
            bool p = psi_iso(r);
            good = good && p;
            add("psi_" + std::to_string(r) + " iso", p, note(r, "H_r(DP) -> H_r(Xbar)"));
        }
        {
            bool p = psi_iso(2 * s);
            good = good && p;
            add("psi_" + std::to_string(2 * s) + " iso", p, note(2 * s, "H_n(DP) -> H_n(Xbar)"));
        }
        rep.good = good;
        rep.very_good = good && phi_iso(s);
        add("very good: phi_" + std::to_string(s) + " iso", phi_iso(s), "upgrade condition");
    } else {
        int s = (n - 1) / 2;
        for (int r = s + 2; r <= 2 * s - 1; ++r) {
            bool p = phi_iso(r);
            good = good && p;
            add("phi_" + std::to_string(r) + " iso", p, note(r, "H_r(X_reg) -> H_r(DP)"));
        }
        {
            bool p = phi_inj(s + 1);
            good = good && p;
            add("phi_" + std::to_string(s + 1) + " injective", p,
                note(s + 1, "H_{s+1}(X_reg) -> H_{s+1}(DP)"));
        }
        for (int r = 0; r <= s - 1; ++r) {
            bool p = psi_iso(r);
            good = good && p;
            add("psi_" + std::to_string(r) + " iso", p, note(r, "H_r(DP) -> H_r(Xbar)"));
        }
        {
            bool p = psi_iso(n);
            good = good && p;
            add("psi_" + std::to_string(n) + " iso", p, note(n, "H_n(DP) -> H_n(Xbar)"));
        }
        {
            bool p = psi_surj(s);
            good = good && p;
            add("psi_" + std::to_string(s) + " surjective", p, note(s, "H_s(DP) -> H_s(Xbar)"));
        }
        rep.good = good;
        bool vg = phi_iso(s + 1) && psi_iso(s);
        rep.very_good = good && vg;
        add("very good: phi_" + std::to_string(s + 1) + " iso", phi_iso(s + 1), "upgrade condition");
        add("very good: psi_" + std::to_string(s) + " iso", psi_iso(s), "upgrade condition");
    }
    return rep;
}

BilinearSpace dp_middle_form(const PseudomanifoldModel& x, const DpAssembly& A) {
    int n = x.n, mu = x.n / 2;
    RelativeData rd = relative_fundamental(x, A.h_link);
    // representatives of H^mu(DP): X_reg-side parts of the Mayer-Vietoris basis
    std::vector<RatVec> xparts;
    const RatMatrix& K = A.rho_ker[(std::size_t)mu];
    for (std::size_t c = 0; c < K.cols(); ++c) {
        RatVec v(A.v_dims[(std::size_t)mu]);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = K.at(i, c);
        RatVec xamb = A.h_reg.reps[(std::size_t)mu].mul_vec(v);
        // cotruncation component, pushed into the link algebras
        RatVec csum(x.link_sum->dim(mu), Rat(0));
        std::size_t off = A.v_dims[(std::size_t)mu];
        for (std::size_t i = 0; i < x.links.size(); ++i) {
            std::size_t wd = A.h_cot[i].dim(mu);
            // degree mu <= n-2, so the attach step did not touch this block
            RatVec w(wd, Rat(0));
            for (std::size_t t = 0; t < wd; ++t) w[t] = K.at(off + t, c);
            off += wd;
            RatVec cot_amb = A.h_cot[i].reps[(std::size_t)mu].mul_vec(w);
            RatVec link_amb = A.cots[i].inclusion.map_at(mu).mul_vec(cot_amb);
            csum = csum + block_embed(x, i, mu, link_amb);
        }
        RatVec mismatch = x.restriction.map_at(mu).mul_vec(xamb) - csum;
        if (!vec_is_zero(mismatch)) {
            auto u = solve(x.link_sum->d[(std::size_t)(mu - 1)], mismatch);
            if (!u) throw internal_error("dp middle form: mismatch not exact");
            auto ul = solve(x.restriction.map_at(mu - 1), *u);
            if (!ul) throw internal_error("dp middle form: boundary lift failed");
            xamb = xamb - x.regular->apply_d({mu - 1, *ul}).coords;
        }
        xparts.push_back(xamb);
    }
    // delta classes: complement of im(rho'^{mu-1}) in (+) H^{mu-1}(L_i);
    // their representatives restrict to d(lift) on the regular part
    {
        int r = mu - 1;
        RatMatrix image = canonical_column_space(A.rho[(std::size_t)r]);
        RatMatrix comp = standard_complement(image, A.u_dims[(std::size_t)r]);
        for (std::size_t c = 0; c < comp.cols(); ++c) {
            RatVec usum(x.link_sum->dim(r), Rat(0));
            std::size_t off = 0;
            for (std::size_t i = 0; i < x.links.size(); ++i) {
                RatVec w(A.h_link[i].dim(r));
                for (std::size_t t = 0; t < w.size(); ++t) w[t] = comp.at(off + t, c);
                off += A.h_link[i].dim(r);
                usum = usum + block_embed(x, i, r, A.h_link[i].reps[(std::size_t)r].mul_vec(w));
            }
            auto lift = solve(x.restriction.map_at(r), usum);
            if (!lift) throw internal_error("dp middle form: delta lift failed");
            xparts.push_back(x.regular->apply_d({r, *lift}).coords);
        }
    }
    if (xparts.size() != A.betti[(std::size_t)mu])
        throw internal_error("dp middle form: representative count mismatch");
    if (!xparts.empty() && rd.F.empty())
        throw input_error("dp middle form: relative fundamental class unavailable");
    RatMatrix gram(xparts.size(), xparts.size());
    for (std::size_t i = 0; i < xparts.size(); ++i)
        for (std::size_t j = 0; j < xparts.size(); ++j) {
            Element p = x.regular->mul({mu, xparts[i]}, {mu, xparts[j]});
            gram.at(i, j) = evaluate_relative(rd, x, p.coords);
        }
    BilinearSpace b{gram, mu % 2 == 0 ? FormKind::symmetric : FormKind::skew};
    return radical_quotient(b);
}

}  // namespace

DpResult dp_model(const PseudomanifoldModel& x, const std::vector<std::vector<RatVec>>& keeps) {
    DpAssembly A = assemble_dp(x, keeps);
    DpResult res;
    res.n = x.n;
    res.classification = A.cls;
    res.betti = A.betti;
    res.xbar_betti = A.xbar;
    // duality of the assembled table is a theorem; treat failure as internal
    if (res.betti[0] != 1 || res.betti[(std::size_t)x.n] != 1)
        throw internal_error("dp_model: betti[0] = betti[n] = 1 violated");
    for (int r = 0; r <= x.n; ++r)
        if (res.betti[(std::size_t)r] != res.betti[(std::size_t)(x.n - r)])
            throw internal_error("dp_model: Poincaré symmetry of the Betti table violated");
    if (x.n % 2 == 0) res.middle_form = dp_middle_form(x, A);
    res.goodness = goodness_from(A, res.betti);
    return res;
}

GoodnessReport verify_good_approximation(const PseudomanifoldModel& x, const DpResult& dp,
                                         const std::vector<std::vector<RatVec>>& keeps) {
    DpAssembly A = assemble_dp(x, keeps);
    if ((int)dp.betti.size() != x.n + 1)
        throw input_error("verify_good_approximation: betti table has wrong length");
    return goodness_from(A, dp.betti);
}

bool witt_class_check(const PseudomanifoldModel& x, const std::vector<std::vector<RatVec>>& keeps) {
    if (x.n % 4 != 0) throw input_error("witt_class_check requires dimension 0 mod 4");
    DpResult dp = dp_model(x, keeps);
    if (!dp.middle_form) throw internal_error("witt_class_check: missing middle form");
    return witt_equal(*dp.middle_form, regular_intersection_form(x));
}

// ---------------------------------------------------------------------------
// Thom spaces

PseudomanifoldModel thom_space(const CdgaPtr& h_base, const RatVec& euler, int bundle_rank,
                               const RatVec& base_fundamental) {
    const Cdga& H = *h_base;
    require_valid(H);
    for (auto& dm : H.d)
        if (!dm.is_zero()) throw input_error("thom_space: base ring must have zero differential");
    if (bundle_rank < 2 || bundle_rank % 2 != 0)
        throw theory_error("thom_space: only even rank >= 2 bundles have sphere-bundle models here");
    int m = H.top_degree;
    int n = m + bundle_rank;
    if (euler.size() != H.dim(bundle_rank))
        throw input_error("thom_space: euler class must have degree equal to the rank");
    if (base_fundamental.size() != H.dim(m) || vec_is_zero(base_fundamental))
        throw input_error("thom_space: base fundamental functional invalid");
    {
        CohomologyResult h = cohomology(H);
        for (int r = 0; 2 * r <= m; ++r) {
            CupPairing cp = cup_pairing(H, h, base_fundamental, r);
            if (!cp.square || rank(cp.gram) < cp.gram.rows())
                throw input_error("thom_space: base ring is not a Poincaré duality algebra");
        }
    }
    int adeg = bundle_rank - 1;

    // ----- sphere bundle: H(B) (x) (a), da = euler
    auto se = std::make_shared<Cdga>();
    Cdga& S = *se;
    S.top_degree = n - 1;
    S.names.resize((std::size_t)n);
    S.d.resize((std::size_t)n);
    // index maps: (eps, base_degree, base_index) -> position
    auto s_index = [&](int eps, int bdeg, std::size_t bi) {
        std::size_t pos = 0;
        int r = bdeg + eps * adeg;
        // block 0 first (pure base), then block 1 (base * a)
        if (eps == 1) pos += H.dim(r);
        return pos + bi;
    };
    for (int r = 0; r <= n - 1; ++r) {
        for (std::size_t i = 0; i < H.dim(r); ++i)
            S.names[(std::size_t)r].push_back(H.names[(std::size_t)r][i]);
        if (r - adeg >= 0)
            for (std::size_t i = 0; i < H.dim(r - adeg); ++i)
                S.names[(std::size_t)r].push_back(
                    (H.names[(std::size_t)(r - adeg)][i] == "1"
                         ? std::string("a")
                         : H.names[(std::size_t)(r - adeg)][i] + "a"));
    }
    for (int r = 0; r <= n - 1; ++r) {
        RatMatrix dm(S.dim(r + 1), S.dim(r));
        if (r - adeg >= 0) {
            for (std::size_t i = 0; i < H.dim(r - adeg); ++i) {
                // d(x a) = (-1)^{|x|} x * euler  (degree |x| + rank)
                int bdeg = r - adeg;
                Element xe = H.mul({bdeg, [&] {
                                        RatVec e(H.dim(bdeg), Rat(0));
                                        e[i] = 1;
                                        return e;
                                    }()},
                                   {bundle_rank, euler});
                int sgn_ = bdeg % 2 == 0 ? 1 : -1;
                if (r + 1 <= n - 1 && xe.degree <= H.top_degree)
                    for (std::size_t t = 0; t < xe.coords.size(); ++t)
                        dm.at(s_index(0, xe.degree, t), s_index(1, bdeg, i)) =
                            Rat(sgn_) * xe.coords[t];
            }
        }
        S.d[(std::size_t)r] = dm;
    }
    S.unit = RatVec(S.dim(0), Rat(0));
    for (std::size_t i = 0; i < H.dim(0); ++i) S.unit[i] = H.unit[i];
    // products
    for (int e1 = 0; e1 <= 1; ++e1)
        for (int b1 = 0; b1 <= m; ++b1)
            for (std::size_t i = 0; i < H.dim(b1); ++i)
                for (int e2 = 0; e2 <= 1; ++e2)
                    for (int b2 = 0; b2 <= m; ++b2)
                        for (std::size_t j = 0; j < H.dim(b2); ++j) {
                            int r1 = b1 + e1 * adeg, r2 = b2 + e2 * adeg;
                            if (r1 > n - 1 || r2 > n - 1 || r1 + r2 > n - 1) continue;
                            RatVec val(S.dim(r1 + r2), Rat(0));
                            if (!(e1 && e2)) {
                                RatVec xy = H.basis_product(b1, i, b2, j);
                                int sg = (e1 == 1 && b2 % 2 != 0) ? -1 : 1;
                                for (std::size_t t = 0; t < xy.size(); ++t)
                                    val[s_index(e1 + e2, b1 + b2, t)] = Rat(sg) * xy[t];
                            }
                            S.prod[Cdga::ProdKey{r1, s_index(e1, b1, i), r2, s_index(e2, b2, j)}] =
                                val;
                        }

    // ----- disk bundle: H(B) (x) (a, b), Da = euler - b, truncated at n+1
    int dtop = n + 1;
    auto de = std::make_shared<Cdga>();
    Cdga& D = *de;
    D.top_degree = dtop;
    D.names.resize((std::size_t)dtop + 1);
    D.d.resize((std::size_t)dtop + 1);
    // layout per degree: for k = 0,1,...: eps = 0 then eps = 1 (matching S_E for k=0)
    struct De {
        int eps, k, bdeg;
        std::size_t bi;
    };
    std::vector<std::vector<De>> layout((std::size_t)dtop + 1);
    for (int r = 0; r <= dtop; ++r) {
        for (int k = 0; k * bundle_rank <= r; ++k)
            for (int eps = 0; eps <= 1; ++eps) {
                int bdeg = r - k * bundle_rank - eps * adeg;
                if (bdeg < 0 || bdeg > m) continue;
                for (std::size_t i = 0; i < H.dim(bdeg); ++i)
                    layout[(std::size_t)r].push_back({eps, k, bdeg, i});
            }
        for (auto& it : layout[(std::size_t)r]) {
            std::string nm = H.names[(std::size_t)it.bdeg][it.bi];
            if (nm == "1") nm = "";
            if (it.eps) nm += "a";
            if (it.k == 1) nm += "b";
            if (it.k > 1) nm += "b" + std::to_string(it.k);
            if (nm.empty()) nm = "1";
            D.names[(std::size_t)r].push_back(nm);
        }
    }
    auto d_index = [&](int r, int eps, int k, int bdeg, std::size_t bi) -> int {
        const auto& lay = layout[(std::size_t)r];
        for (std::size_t p = 0; p < lay.size(); ++p)
            if (lay[p].eps == eps && lay[p].k == k && lay[p].bdeg == bdeg && lay[p].bi == bi)
                return (int)p;
        return -1;
    };
    for (int r = 0; r <= dtop; ++r) {
        RatMatrix dm(D.dim(r + 1), D.dim(r));
        if (r + 1 <= dtop) {
            const auto& lay = layout[(std::size_t)r];
            for (std::size_t p = 0; p < lay.size(); ++p) {
                if (lay[p].eps == 0) continue;
                // D(x a b^k) = (-1)^{|x|} ( x*eu b^k - x b^{k+1} )
                int sg = lay[p].bdeg % 2 == 0 ? 1 : -1;
                RatVec eb(H.dim(lay[p].bdeg), Rat(0));
                eb[lay[p].bi] = 1;
                Element xe = H.mul({lay[p].bdeg, eb}, {bundle_rank, euler});
                if (xe.degree <= H.top_degree)
                    for (std::size_t t = 0; t < xe.coords.size(); ++t) {
                        int q = d_index(r + 1, 0, lay[p].k, xe.degree, t);
                        if (q >= 0) dm.at((std::size_t)q, p) += Rat(sg) * xe.coords[t];
                    }
                int q2 = d_index(r + 1, 0, lay[p].k + 1, lay[p].bdeg, lay[p].bi);
                if (q2 >= 0) dm.at((std::size_t)q2, p) -= Rat(sg);
            }
        }
        D.d[(std::size_t)r] = dm;
    }
    D.unit = RatVec(D.dim(0), Rat(0));
    for (std::size_t i = 0; i < H.dim(0); ++i) D.unit[i] = H.unit[i];
    for (int r1 = 0; r1 <= dtop; ++r1)
        for (std::size_t p1 = 0; p1 < D.dim(r1); ++p1)
            for (int r2 = r1; r1 + r2 <= dtop; ++r2)
                for (std::size_t p2 = (r2 == r1 ? p1 : 0); p2 < D.dim(r2); ++p2) {
                    const De& u = layout[(std::size_t)r1][p1];
                    const De& v = layout[(std::size_t)r2][p2];
                    RatVec val(D.dim(r1 + r2), Rat(0));
                    if (!(u.eps && v.eps)) {
                        RatVec xy = H.basis_product(u.bdeg, u.bi, v.bdeg, v.bi);
                        int sg = (u.eps == 1 && v.bdeg % 2 != 0) ? -1 : 1;
                        for (std::size_t t = 0; t < xy.size(); ++t) {
                            int q = d_index(r1 + r2, u.eps + v.eps, u.k + v.k, u.bdeg + v.bdeg, t);
                            if (q >= 0) val[(std::size_t)q] = Rat(sg) * xy[t];
                        }
                    }
                    D.set_product(r1, p1, r2, p2, val);
                }

    // restriction: identity on the b-free part, b |-> 0
    std::vector<RatMatrix> phi((std::size_t)dtop + 1);
    for (int r = 0; r <= dtop; ++r) {
        RatMatrix mtx(S.dim(r), D.dim(r));
        const auto& lay = layout[(std::size_t)r];
        for (std::size_t p = 0; p < lay.size(); ++p)
            if (lay[p].k == 0 && r <= n - 1)
                mtx.at(s_index(lay[p].eps, lay[p].bdeg, lay[p].bi), p) = 1;
        phi[(std::size_t)r] = mtx;
    }

    // link fundamental: dual of (base top class) * a, weighted by the base functional
    RatVec f(S.dim(n - 1), Rat(0));
    for (std::size_t i = 0; i < H.dim(m); ++i)
        f[s_index(1, m, i)] = base_fundamental[i];

    PseudomanifoldModel x;
    x.n = n;
    x.regular = de;
    x.links = {se};
    x.link_sum = std::make_shared<const Cdga>(direct_sum(x.links));
    // re-target the restriction into the one-block direct sum
    std::vector<RatMatrix> maps((std::size_t)dtop + 1);
    for (int r = 0; r <= dtop; ++r) maps[(std::size_t)r] = phi[(std::size_t)r];
    x.restriction = CdgaMorphism{x.regular, x.link_sum, std::move(maps)};
    x.link_fundamentals = {f};
    return x;
}

ThomClass classify_thom(int base_dim, int bundle_rank, std::size_t middle_dim) {
    if (bundle_rank < 1) throw input_error("classify_thom: positive rank required");
    if ((base_dim + bundle_rank) % 2 == 0)
        throw input_error("classify_thom: case table covers odd-dimensional Thom spaces only");
    if (base_dim % 2 != 0) {
        int m = (base_dim - 1) / 2, mp = bundle_rank / 2;
        if (mp <= m + 1) return ThomClass::LSpace;
        return middle_dim == 0 ? ThomClass::Witt : ThomClass::Conditional;
    }
    int m = base_dim / 2, mp = (bundle_rank - 1) / 2;
    if (mp <= m) return ThomClass::LSpace;
    return middle_dim == 0 ? ThomClass::Witt : ThomClass::Conditional;
}

}  // namespace qpd
