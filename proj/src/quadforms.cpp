#include "qpd/quadforms.hpp"

#include <algorithm>

namespace qpd {

Rat BilinearSpace::eval(const RatVec& x, const RatVec& y) const {
    RatVec gy = gram.mul_vec(y);
    Rat v(0);
    for (std::size_t i = 0; i < x.size(); ++i) v += x[i] * gy[i];
    return v;
}

void require_well_formed(const BilinearSpace& b) {
    if (b.gram.rows() != b.gram.cols()) throw input_error("Gram matrix must be square");
    RatMatrix t = b.gram.transpose();
    if (b.kind == FormKind::symmetric) {
        if (!(t == b.gram)) throw input_error("Gram matrix is not symmetric");
    } else {
        if (!(t == b.gram.scaled(Rat(-1)))) throw input_error("Gram matrix is not skew-symmetric");
    }
}

bool is_degenerate(const BilinearSpace& b) { return rank(b.gram) < b.dim(); }

BilinearSpace radical_quotient(const BilinearSpace& b) {
    require_well_formed(b);
    RatMatrix K = kernel_basis(b.gram);
    if (K.cols() == 0) return b;
    RatMatrix C = standard_complement(K, b.dim());
    return BilinearSpace{C.transpose() * b.gram * C, b.kind};
}

namespace {

// symmetric congruence column/row operation: v_i += f * v_j
void congruence_add(RatMatrix& g, RatMatrix& p, std::size_t i, std::size_t j, const Rat& f) {
    for (std::size_t k = 0; k < g.cols(); ++k) g.at(i, k) += f * g.at(j, k);  // row
    for (std::size_t k = 0; k < g.rows(); ++k) g.at(k, i) += f * g.at(k, j);  // col
    for (std::size_t k = 0; k < p.rows(); ++k) p.at(k, i) += f * p.at(k, j);
}

void congruence_swap(RatMatrix& g, RatMatrix& p, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < g.cols(); ++k) std::swap(g.at(i, k), g.at(j, k));
    for (std::size_t k = 0; k < g.rows(); ++k) std::swap(g.at(k, i), g.at(k, j));
    for (std::size_t k = 0; k < p.rows(); ++k) std::swap(p.at(k, i), p.at(k, j));
}

long val_p(Int n, const Int& p) {
    if (sgn(n) == 0) throw internal_error("valuation of zero");
    long v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
        n /= p;
        ++v;
    }
    return v;
}

// Legendre symbol (u|p) for odd prime p, u a p-adic unit given as an integer.
int legendre(const Int& u, const Int& p) {
    Int e = (p - 1) / 2;
    Int r;
    mpz_powm(r.get_mpz_t(), Int(((u % p) + p) % p).get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r == 1 ? 1 : -1;
}

}  // namespace

DiagonalizeResult diagonalize(const BilinearSpace& b) {
    if (b.kind != FormKind::symmetric) throw input_error("diagonalize requires a symmetric form");
    require_well_formed(b);
    std::size_t n = b.dim();
    RatMatrix g = b.gram;
    RatMatrix p = RatMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t i = c; i < n && piv == n; ++i)
            if (!is_zero(g.at(i, i))) piv = i;
        if (piv == n) {
            // no nonzero diagonal: make one from an off-diagonal entry
            bool found = false;
            for (std::size_t i = c; i < n && !found; ++i)
                for (std::size_t j = i + 1; j < n && !found; ++j)
                    if (!is_zero(g.at(i, j))) {
                        congruence_add(g, p, i, j, Rat(1));  // now g(i,i) = 2 g(i,j) != 0
                        piv = i;
                        found = true;
                    }
            if (!found) break;  // remaining block is zero
        }
        congruence_swap(g, p, c, piv);
        for (std::size_t k = c + 1; k < n; ++k)
            if (!is_zero(g.at(k, c))) congruence_add(g, p, k, c, -g.at(k, c) / g.at(c, c));
    }
    DiagonalizeResult res;
    res.p = p;
    res.entries.resize(n);
    for (std::size_t i = 0; i < n; ++i) res.entries[i] = g.at(i, i);
    return res;
}

int signature(const BilinearSpace& b) {
    auto d = diagonalize(b);
    int s = 0;
    for (const Rat& e : d.entries) s += sgn(e);
    return s;
}

int hilbert_symbol(const Rat& a, const Rat& b, const Place& v) {
    if (is_zero(a) || is_zero(b)) throw input_error("hilbert_symbol: arguments must be nonzero");
    if (v.infinite) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
    const Int& p = v.p;
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
        throw input_error("hilbert_symbol: place must be a prime or infinity");
    // valuations and unit parts; a unit x/y has (x/y | p) = (x y | p)
    Int an = a.get_num(), ad = a.get_den();
    Int bn = b.get_num(), bd = b.get_den();
    long alpha = val_p(an, p) - val_p(ad, p);
    long beta = val_p(bn, p) - val_p(bd, p);
    auto unit_part = [&](Int n, Int d) {
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) n /= p;
        while (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) d /= p;
        return n * d;  // same square class as n/d, a p-adic unit
    };
    Int u = unit_part(an, ad);
    Int w = unit_part(bn, bd);
    if (p == 2) {
        auto eps = [](const Int& x) { return ((((x - 1) / 2) % 2) + 2) % 2; };
        auto omega = [](const Int& x) { return ((((x * x - 1) / 8) % 2) + 2) % 2; };
        long e = eps(u).get_si() * eps(w).get_si() + (alpha % 2 != 0 ? omega(w).get_si() : 0) +
                 (beta % 2 != 0 ? omega(u).get_si() : 0);
        return e % 2 == 0 ? 1 : -1;
    }
    int s = 1;
    if ((alpha % 2 != 0) && (beta % 2 != 0) && ((p - 1) / 2) % 2 != 0) s = -s;
    if (beta % 2 != 0 && legendre(u, p) == -1) s = -s;
    if (alpha % 2 != 0 && legendre(w, p) == -1) s = -s;
    return s;
}

namespace {

std::vector<Int> hasse_prime_set(const RatVec& entries) {
    std::vector<Int> primes{Int(2)};
    for (const Rat& e : entries) {
        for (const Int& q : prime_support(e.get_num())) primes.push_back(q);
        for (const Int& q : prime_support(e.get_den())) primes.push_back(q);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    return primes;
}

std::map<Int, int> hasse_symbols(const RatVec& entries, const std::vector<Int>& primes) {
    std::map<Int, int> out;
    for (const Int& p : primes) {
        int e = 1;
        for (std::size_t i = 0; i < entries.size(); ++i)
            for (std::size_t j = i + 1; j < entries.size(); ++j)
                e *= hilbert_symbol(entries[i], entries[j], Place::prime(p));
        out[p] = e;
    }
    return out;
}

}  // namespace

WittInvariants witt_invariants(const BilinearSpace& b) {
    if (b.kind != FormKind::symmetric) throw input_error("witt_invariants requires a symmetric form");
    auto d = diagonalize(b);
    for (const Rat& e : d.entries)
        if (is_zero(e)) throw input_error("witt_invariants: form is degenerate");
    WittInvariants w;
    w.rank = d.entries.size();
    w.signature = 0;
    Rat prod(1);
    for (const Rat& e : d.entries) {
        w.signature += sgn(e);
        prod *= e;
    }
    w.discriminant = w.rank ? square_class(prod) : Int(1);
    w.hasse = hasse_symbols(d.entries, hasse_prime_set(d.entries));
    return w;
}

BilinearSpace hyperbolic_plane(FormKind kind) {
    RatMatrix g(2, 2);
    g.at(0, 1) = 1;
    g.at(1, 0) = kind == FormKind::symmetric ? 1 : -1;
    return BilinearSpace{g, kind};
}

BilinearSpace orthogonal_sum(const BilinearSpace& b1, const BilinearSpace& b2) {
    if (b1.kind != b2.kind) throw input_error("orthogonal_sum: kind mismatch");
    std::size_t n1 = b1.dim(), n2 = b2.dim();
    RatMatrix g(n1 + n2, n1 + n2);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j) g.at(i, j) = b1.gram.at(i, j);
    for (std::size_t i = 0; i < n2; ++i)
        for (std::size_t j = 0; j < n2; ++j) g.at(n1 + i, n1 + j) = b2.gram.at(i, j);
    return BilinearSpace{g, b1.kind};
}

bool witt_equal(const BilinearSpace& b1_in, const BilinearSpace& b2_in) {
    if (b1_in.kind != FormKind::symmetric || b2_in.kind != FormKind::symmetric)
        throw input_error("witt_equal requires symmetric forms");
    BilinearSpace b1 = radical_quotient(b1_in);
    BilinearSpace b2 = radical_quotient(b2_in);
    if ((b1.dim() + b2.dim()) % 2 != 0) return false;
    while (b1.dim() < b2.dim()) b1 = orthogonal_sum(b1, hyperbolic_plane());
    while (b2.dim() < b1.dim()) b2 = orthogonal_sum(b2, hyperbolic_plane());
    if (b1.dim() == 0) return true;
    auto d1 = diagonalize(b1), d2 = diagonalize(b2);
    int s1 = 0, s2 = 0;
    Rat p1(1), p2(1);
    for (const Rat& e : d1.entries) {
        s1 += sgn(e);
        p1 *= e;
    }
    for (const Rat& e : d2.entries) {
        s2 += sgn(e);
        p2 *= e;
    }
    if (s1 != s2) return false;
    if (square_class(p1) != square_class(p2)) return false;
    std::vector<Int> primes = hasse_prime_set(d1.entries);
    for (const Int& q : hasse_prime_set(d2.entries)) primes.push_back(q);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    auto h1 = hasse_symbols(d1.entries, primes);
    auto h2 = hasse_symbols(d2.entries, primes);
    return h1 == h2;  // equal rank + signature + disc + Hasse: Hasse-Minkowski
}

HyperbolicBasis symplectic_basis(const BilinearSpace& b) {
    if (b.kind != FormKind::skew) throw input_error("symplectic_basis requires a skew form");
    require_well_formed(b);
    if (is_degenerate(b) || b.dim() % 2 != 0)
        throw input_error("symplectic_basis: form is degenerate or of odd rank");
    std::size_t n = b.dim();
    std::vector<RatVec> rest;
    for (std::size_t j = 0; j < n; ++j) {
        RatVec e(n, Rat(0));
        e[j] = 1;
        rest.push_back(e);
    }
    std::vector<RatVec> as, astars;
    while (!rest.empty()) {
        RatVec v = rest.front();
        std::size_t wi = rest.size();
        for (std::size_t i = 1; i < rest.size(); ++i)
            if (!is_zero(b.eval(v, rest[i]))) {
                wi = i;
                break;
            }
        if (wi == rest.size()) throw input_error("symplectic_basis: degenerate restriction");
        RatVec w = scaled(rest[wi], 1 / b.eval(v, rest[wi]));  // b(v,w) = 1
        std::vector<RatVec> next;
        for (std::size_t i = 1; i < rest.size(); ++i) {
            if (i == wi) continue;
            // kill pairings with v and w: u' = u - b(u,w) v + b(u,v) w
            RatVec u = rest[i];
            u = u - scaled(v, b.eval(u, w)) + scaled(w, b.eval(u, v));
            next.push_back(u);
        }
        as.push_back(v);
        astars.push_back(w);
        rest = std::move(next);
    }
    HyperbolicBasis hb;
    hb.m = as.size();
    hb.vectors = RatMatrix(n, 2 * hb.m);
    for (std::size_t i = 0; i < hb.m; ++i) {
        hb.vectors.set_col(i, as[i]);
        hb.vectors.set_col(hb.m + i, astars[i]);
    }
    return hb;
}

HyperbolicBasis hyperbolic_completion(const BilinearSpace& b, const RatMatrix& v) {
    require_well_formed(b);
    std::size_t n = b.dim();
    if (is_degenerate(b)) throw input_error("hyperbolic_completion: form is degenerate");
    if (2 * v.cols() != n)
        throw theory_error("hyperbolic_completion: basis is not half-dimensional (" +
                           std::to_string(v.cols()) + " of " + std::to_string(n) + ")");
    if (rank(v) != v.cols())
        throw theory_error("hyperbolic_completion: given vectors are linearly dependent");
    std::size_t m = v.cols();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j)
            if (!is_zero(b.eval(v.col(i), v.col(j))))
                throw theory_error("hyperbolic_completion: pair (" + std::to_string(i) + "," +
                                   std::to_string(j) + ") is not isotropic");
    // b(a_i, y_j) = delta_ij
    RatMatrix M = v.transpose() * b.gram;  // m x n
    auto Y = solve_matrix(M, RatMatrix::identity(m));
    if (!Y) throw internal_error("hyperbolic_completion: dual system unsolvable");
    // correct self-pairings: a_j* = y_j + sum_k C_{jk} a_k with C = -1/2 (b(y_j,y_l))
    RatMatrix My = Y->transpose() * b.gram * (*Y);
    RatMatrix Astar = *Y + v * My.transpose().scaled(Rat(-1, 2));
    HyperbolicBasis hb;
    hb.m = m;
    hb.vectors = v.hcat(Astar);
    // exact Gram relations, by construction; verify
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (!is_zero(b.eval(hb.vectors.col(i), hb.vectors.col(j))) ||
                !is_zero(b.eval(hb.vectors.col(m + i), hb.vectors.col(m + j))) ||
                b.eval(hb.vectors.col(i), hb.vectors.col(m + j)) != Rat(i == j ? 1 : 0))
                throw internal_error("hyperbolic_completion: Gram relations violated");
        }
    return hb;
}

std::optional<RatVec> isotropic_vector(const BilinearSpace& b, long height_bound) {
    std::size_t n = b.dim();
    if (n == 0) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) {
        if (is_zero(b.gram.at(i, i))) {
            RatVec e(n, Rat(0));
            e[i] = 1;
            return e;
        }
    }
    // diagonal shortcut: entries d_i, -d_i/d_j a rational square
    auto d = diagonalize(b);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (is_zero(d.entries[i]) || is_zero(d.entries[j])) continue;
            Rat q = -d.entries[i] / d.entries[j];
            if (sgn(q) < 0) continue;
            Int nr, dr;
            if (mpz_root(nr.get_mpz_t(), q.get_num().get_mpz_t(), 2) &&
                mpz_root(dr.get_mpz_t(), q.get_den().get_mpz_t(), 2)) {
                RatVec c(n, Rat(0));
                c[i] = 1;
                c[j] = Rat(nr) / Rat(dr);
                RatVec vec = d.p.mul_vec(c);
                if (is_zero(b.eval(vec, vec)) && !vec_is_zero(vec)) return vec;
            }
        }
    // bounded-height integer enumeration on the original coordinates
    std::vector<long> x(n, 0);
    for (long h = 1; h <= height_bound; ++h) {
        // enumerate vectors with max|x_i| == h
        std::fill(x.begin(), x.end(), -h);
        while (true) {
            bool on_shell = false;
            for (std::size_t i = 0; i < n; ++i)
                if (x[i] == h || x[i] == -h) on_shell = true;
            if (on_shell) {
                RatVec v(n);
                bool nz = false;
                for (std::size_t i = 0; i < n; ++i) {
                    v[i] = Rat(x[i]);
                    nz = nz || x[i] != 0;
                }
                if (nz && is_zero(b.eval(v, v))) return v;
            }
            std::size_t k = 0;
            while (k < n && x[k] == h) {
                x[k] = -h;
                ++k;
            }
            if (k == n) break;
            ++x[k];
        }
    }
    return std::nullopt;
}

bool witt_trivial(const BilinearSpace& b) {
    return witt_equal(b, BilinearSpace{RatMatrix(0, 0), FormKind::symmetric});
}

std::optional<RatMatrix> find_lagrangian(const BilinearSpace& b, long height_bound) {
    require_well_formed(b);
    if (is_degenerate(b)) throw input_error("find_lagrangian: form is degenerate");
    std::size_t n = b.dim();
    if (b.kind == FormKind::skew) {
        HyperbolicBasis hb = symplectic_basis(b);
        RatMatrix out(n, hb.m);
        for (std::size_t i = 0; i < hb.m; ++i) out.set_col(i, hb.vectors.col(i));
        return out;
    }
    if (!witt_trivial(b)) return std::nullopt;
    if (n == 0) return RatMatrix(0, 0);
    // split off hyperbolic planes along isotropic vectors
    auto v = isotropic_vector(b, height_bound);
    if (!v)
        throw undecided_error(
            "find_lagrangian: invariants certify a Lagrangian but the height-" +
            std::to_string(height_bound) + " isotropic search found none (undecided constructively)");
    // partner u with b(v,u) = 1, corrected to isotropic
    RatMatrix row(1, n);
    {
        RatVec gv = b.gram.mul_vec(*v);
        for (std::size_t i = 0; i < n; ++i) row.at(0, i) = gv[i];
    }
    auto u0 = solve(row, RatVec{Rat(1)});
    if (!u0) throw internal_error("find_lagrangian: no hyperbolic partner");
    RatVec u = *u0 - scaled(*v, b.eval(*u0, *u0) / 2);
    // orthogonal complement of span{v, u}
    RatMatrix rows(2, n);
    RatVec gv = b.gram.mul_vec(*v), gu = b.gram.mul_vec(u);
    for (std::size_t i = 0; i < n; ++i) {
        rows.at(0, i) = gv[i];
        rows.at(1, i) = gu[i];
    }
    RatMatrix K = kernel_basis(rows);
    BilinearSpace rest{K.transpose() * b.gram * K, FormKind::symmetric};
    auto sub = find_lagrangian(rest, height_bound);
    if (!sub) throw internal_error("find_lagrangian: recursion lost Witt triviality");
    RatMatrix out(n, 1 + sub->cols());
    out.set_col(0, *v);
    for (std::size_t c = 0; c < sub->cols(); ++c) out.set_col(1 + c, K.mul_vec(sub->col(c)));
    return out;
}

}  // namespace qpd
