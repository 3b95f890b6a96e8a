#include "qpd/examples.hpp"

namespace qpd {
namespace models {

CdgaPtr sphere(int k) {
    CdgaBuilder b(k);
    b.names(0, {"1"});
    b.names(k, {"x"});
    return b.build_ptr();
}

CdgaPtr torus() {
    CdgaBuilder b(2);
    b.names(0, {"1"}).names(1, {"a", "b"}).names(2, {"ab"});
    b.prod("a", "b", {{"ab", Rat(1)}});
    return b.build_ptr();
}

CdgaPtr cp(int m) {
    CdgaBuilder b(2 * m);
    b.names(0, {"1"});
    for (int j = 1; j <= m; ++j) b.names(2 * j, {"x" + std::to_string(j)});
    auto nm = [](int j) { return j == 0 ? std::string("1") : "x" + std::to_string(j); };
    for (int i = 1; i <= m; ++i)
        for (int j = i; i + j <= m; ++j) b.prod(nm(i), nm(j), {{nm(i + j), Rat(1)}});
    // powers beyond x^m vanish
    for (int i = 1; i <= m; ++i)
        for (int j = i; j <= m; ++j)
            if (i + j > m && 2 * (i + j) <= 2 * m) b.prod(nm(i), nm(j), {});
    return b.build_ptr();
}

CdgaPtr sphere_product(int a, int b) {
    if (a > b) std::swap(a, b);
    CdgaBuilder bd(a + b);
    bd.names(0, {"1"});
    if (a == b) {
        bd.names(a, {"p", "q"});
    } else {
        bd.names(a, {"p"});
        bd.names(b, {"q"});
    }
    bd.names(a + b, {"pq"});
    bd.prod("p", "q", {{"pq", Rat(1)}});
    if (2 * a <= a + b && a % 2 == 0) bd.prod("p", "p", {});
    if (2 * b <= a + b && b % 2 == 0) bd.prod("q", "q", {});
    return bd.build_ptr();
}

CdgaPtr s2s3_link() {
    // truncated at the formal dimension 5; the product x.y lies in the
    // discarded acyclic part and is therefore zero here
    CdgaBuilder b(5);
    b.names(0, {"1"}).names(2, {"x"}).names(3, {"y", "z"}).names(4, {"x2"}).names(5, {"xz"});
    b.d("y", {{"x2", Rat(1)}});
    b.prod("x", "x", {{"x2", Rat(1)}});
    b.prod("x", "z", {{"xz", Rat(1)}});
    b.prod("x", "y", {});
    return b.build_ptr();
}

CdgaPtr b9() {
    CdgaBuilder b(9);
    b.names(0, {"1"});
    b.names(3, {"s3"}).names(4, {"s4"}).names(5, {"s5"});
    b.names(6, {"s6", "b6"});
    b.names(7, {"s3s4", "b71", "b72"});
    b.names(8, {"s3s5", "s4s4", "b8"});
    b.names(9, {"s3s6", "s4s5"});
    b.d("b6", {{"s3s4", Rat(1)}});
    b.d("b71", {{"s4s4", Rat(1)}});
    b.d("b72", {{"s3s5", Rat(-1)}});  // d b72 = s5 s3 = -s3 s5
    b.d("b8", {{"s3s6", Rat(1)}, {"s4s5", Rat(-1)}});
    b.prod("s3", "s4", {{"s3s4", Rat(1)}});
    b.prod("s3", "s5", {{"s3s5", Rat(1)}});
    b.prod("s3", "s6", {{"s3s6", Rat(1)}});
    b.prod("s4", "s4", {{"s4s4", Rat(1)}});
    b.prod("s4", "s5", {{"s4s5", Rat(1)}});
    // products into the discarded acyclic part vanish
    b.prod("s3", "b6", {});
    return b.build_ptr();
}

namespace {

/// Cylinder model of a suspension over CP^m: free (x2, u2, xi3), du = xi,
/// truncated at n = 2m+1; x -> (x, x), u -> (x, -x), xi -> 0.
struct CpCylinder {
    CdgaPtr algebra;
    // monomial bookkeeping per degree: exponents (a, b, eps) of x^a u^b xi^eps
    std::vector<std::vector<std::array<int, 3>>> layout;
};

CpCylinder cp_cylinder(int m) {
    int top = 2 * m + 1;
    CpCylinder cyl;
    cyl.layout.resize((std::size_t)top + 1);
    CdgaBuilder b(top);
    auto name = [](int xa, int ub, int eps) {
        if (xa == 0 && ub == 0 && eps == 0) return std::string("1");
        std::string nm;
        if (xa) nm += "x" + std::to_string(xa);
        if (ub) nm += "u" + std::to_string(ub);
        if (eps) nm += "k";
        return nm;
    };
    std::vector<std::vector<std::string>> names((std::size_t)top + 1);
    for (int xa = 0; 2 * xa <= top; ++xa)
        for (int ub = 0; 2 * xa + 2 * ub <= top; ++ub)
            for (int eps = 0; eps <= 1; ++eps) {
                int deg = 2 * xa + 2 * ub + 3 * eps;
                if (deg > top) continue;
                cyl.layout[(std::size_t)deg].push_back({xa, ub, eps});
                names[(std::size_t)deg].push_back(name(xa, ub, eps));
            }
    for (int r = 0; r <= top; ++r) b.names(r, names[(std::size_t)r]);
    // d(x^a u^b) = b x^a u^{b-1} xi ; d(... xi) = 0
    for (int r = 0; r <= top; ++r)
        for (auto& mo : cyl.layout[(std::size_t)r]) {
            if (mo[2] == 1 || mo[1] == 0) continue;
            if (r + 1 > top) continue;
            b.d(name(mo[0], mo[1], 0), {{name(mo[0], mo[1] - 1, 1), Rat(mo[1])}});
        }
    // products: monomial sums (even-degree letters commute; xi^2 = 0)
    for (int r1 = 0; r1 <= top; ++r1)
        for (auto& m1 : cyl.layout[(std::size_t)r1])
            for (int r2 = r1; r1 + r2 <= top; ++r2)
                for (auto& m2 : cyl.layout[(std::size_t)r2]) {
                    if (m1[2] && m2[2]) {
                        b.prod(name(m1[0], m1[1], m1[2]), name(m2[0], m2[1], m2[2]), {});
                        continue;
                    }
                    int xa = m1[0] + m2[0], ub = m1[1] + m2[1], eps = m1[2] + m2[2];
                    if (2 * xa + 2 * ub + 3 * eps > top) continue;
                    // sign: xi (odd) crossing nothing odd in these monomials
                    b.prod(name(m1[0], m1[1], m1[2]), name(m2[0], m2[1], m2[2]),
                           {{name(xa, ub, eps), Rat(1)}});
                }
    cyl.algebra = b.build_ptr();
    return cyl;
}

}  // namespace

PseudomanifoldModel suspension_cp(int m) {
    int n = 2 * m + 1;
    CpCylinder cyl = cp_cylinder(m);
    CdgaPtr link = cp(m);
    // restriction blocks: x^a u^b -> (x^{a+b}, (-1)^b x^{a+b}), xi-terms -> 0
    std::vector<std::vector<RatMatrix>> blocks(2);
    for (int which = 0; which < 2; ++which) {
        std::vector<RatMatrix> maps((std::size_t)cyl.algebra->top_degree + 1);
        for (int r = 0; r <= cyl.algebra->top_degree; ++r) {
            RatMatrix mm(link->dim(r), cyl.algebra->dim(r));
            for (std::size_t c = 0; c < cyl.layout[(std::size_t)r].size(); ++c) {
                auto& mo = cyl.layout[(std::size_t)r][c];
                if (mo[2] == 1) continue;
                int pw = mo[0] + mo[1];
                if (pw > m) continue;  // x^{>m} = 0 in CP^m
                Rat v = (which == 1 && mo[1] % 2 != 0) ? Rat(-1) : Rat(1);
                mm.at(0, c) = v;  // each even link degree is one-dimensional
            }
            maps[(std::size_t)r] = mm;
        }
        blocks[(std::size_t)which] = std::move(maps);
    }
    RatVec f0(link->dim(n - 1), Rat(0)), f1 = f0;
    f0[0] = 1;
    f1[0] = -1;  // opposite boundary orientations
    return make_pseudomanifold(n, cyl.algebra, {link, link}, blocks, {f0, f1});
}

PseudomanifoldModel suspension_torus() {
    CdgaBuilder b(3);
    b.names(0, {"1"}).names(1, {"al", "be", "alp", "bep"});
    b.names(2, {"ka", "kb", "m", "mp"}).names(3, {"tau"});
    b.d("alp", {{"ka", Rat(1)}});
    b.d("bep", {{"kb", Rat(1)}});
    b.d("mp", {{"tau", Rat(1)}});
    b.prod("al", "be", {{"m", Rat(1)}});
    b.prod("alp", "be", {{"mp", Rat(1)}});
    b.prod("al", "bep", {{"mp", Rat(1)}});
    b.prod("alp", "bep", {{"m", Rat(1)}});  // maps to (ab, ab) under both restrictions
    b.prod("al", "alp", {});
    b.prod("be", "bep", {});
    b.prod("ka", "be", {{"tau", Rat(1)}});
    b.prod("al", "kb", {{"tau", Rat(-1)}});
    b.prod("al", "ka", {});
    b.prod("be", "kb", {});
    b.prod("ka", "bep", {});
    b.prod("alp", "kb", {});
    b.prod("al", "m", {});
    b.prod("al", "mp", {});
    b.prod("be", "m", {});
    b.prod("be", "mp", {});
    b.prod("alp", "m", {});
    b.prod("alp", "mp", {});
    b.prod("bep", "m", {});
    b.prod("bep", "mp", {});
    b.prod("al", "ka", {});
    b.prod("be", "ka", {{"tau", Rat(1)}});
    CdgaPtr reg = b.build_ptr();
    CdgaPtr link = torus();
    // al -> (a, a), be -> (b, b), alp -> (a, -a), bep -> (b, -b)
    std::vector<std::vector<RatMatrix>> blocks(2);
    for (int which = 0; which < 2; ++which) {
        std::vector<RatMatrix> maps(4);
        maps[0] = RatMatrix(1, 1);
        maps[0].at(0, 0) = 1;
        RatMatrix m1(2, 4);
        Rat s = which == 1 ? Rat(-1) : Rat(1);
        m1.at(0, 0) = 1;
        m1.at(1, 1) = 1;
        m1.at(0, 2) = s;
        m1.at(1, 3) = s;
        maps[1] = m1;
        RatMatrix m2(1, 4);
        m2.at(0, 2) = 1;        // m -> ab
        m2.at(0, 3) = s;        // mp -> +-ab
        maps[2] = m2;
        maps[3] = RatMatrix(0, 1);
        blocks[(std::size_t)which] = std::move(maps);
    }
    RatVec f0{Rat(1)}, f1{Rat(-1)};
    return make_pseudomanifold(3, reg, {link, link}, blocks, {f0, f1});
}

PseudomanifoldModel suspension_sphere_product(int a, int bdeg) {
    if (a > bdeg) std::swap(a, bdeg);
    int n = a + bdeg + 2;
    int top = a + bdeg + 1;
    CdgaBuilder b(top);
    std::vector<std::vector<std::string>> names((std::size_t)top + 1);
    auto push = [&](int deg, const std::string& nm) { names[(std::size_t)deg].push_back(nm); };
    push(0, "1");
    push(a, "p");
    push(a, "pp");
    push(bdeg, "q");
    push(bdeg, "qp");
    push(a + 1, "kp");
    push(bdeg + 1, "kq");
    push(a + bdeg, "m");
    push(a + bdeg, "mp");
    push(a + bdeg + 1, "tau");
    for (int r = 0; r <= top; ++r) b.names(r, names[(std::size_t)r]);
    b.d("pp", {{"kp", Rat(1)}});
    b.d("qp", {{"kq", Rat(1)}});
    b.d("mp", {{"tau", Rat(1)}});
    Rat sa = a % 2 == 0 ? Rat(1) : Rat(-1);
    b.prod("p", "q", {{"m", Rat(1)}});
    b.prod("pp", "q", {{"mp", Rat(1)}});
    b.prod("p", "qp", {{"mp", Rat(1)}});
    b.prod("pp", "qp", {{"m", Rat(1)}});
    b.prod("p", "pp", {});
    b.prod("q", "qp", {});
    b.prod("kp", "q", {{"tau", Rat(1)}});
    b.prod("p", "kq", {{"tau", sa}});
    b.prod("kp", "qp", {{"tau", Rat(1)}});
    b.prod("pp", "kq", {{"tau", -sa}});
    b.prod("p", "kp", {});
    b.prod("pp", "kp", {});
    if (2 * bdeg <= top) {
        b.prod("q", "q", {});
        b.prod("q", "kq", {});
        b.prod("qp", "kq", {});
    }
    if (bdeg == a + 1) b.prod("q", "qp", {});  // degree collision case already set
    if (2 * (a + 1) <= top) b.prod("kp", "kp", {});
    CdgaPtr reg = b.build_ptr();
    CdgaPtr link = sphere_product(a, bdeg);
    auto li = [&](const std::string& nm) { return link->element_by_name(nm)->degree; };
    (void)li;
    std::vector<std::vector<RatMatrix>> blocks(2);
    for (int which = 0; which < 2; ++which) {
        std::vector<RatMatrix> maps((std::size_t)top + 1);
        for (int r = 0; r <= top; ++r) maps[(std::size_t)r] = RatMatrix(link->dim(r), reg->dim(r));
        Rat s = which == 1 ? Rat(-1) : Rat(1);
        auto set = [&](const std::string& from, const std::string& to, const Rat& v) {
            auto ef = reg->element_by_name(from);
            auto et = link->element_by_name(to);
            if (!ef || !et || ef->degree != et->degree) throw internal_error("block map name");
            std::size_t col = 0, row = 0;
            for (std::size_t t = 0; t < ef->coords.size(); ++t)
                if (!is_zero(ef->coords[t])) col = t;
            for (std::size_t t = 0; t < et->coords.size(); ++t)
                if (!is_zero(et->coords[t])) row = t;
            maps[(std::size_t)ef->degree].at(row, col) = v;
        };
        set("p", "p", Rat(1));
        set("pp", "p", s);
        set("q", "q", Rat(1));
        set("qp", "q", s);
        set("m", "pq", Rat(1));
        set("mp", "pq", s);
        blocks[(std::size_t)which] = std::move(maps);
    }
    RatVec f0(link->dim(n - 1), Rat(0)), f1 = f0;
    f0[0] = 1;
    f1[0] = -1;
    return make_pseudomanifold(n, reg, {link, link}, blocks, {f0, f1});
}

PseudomanifoldModel closed_pd4() {
    CdgaBuilder b(4);
    b.names(0, {"1"}).names(2, {"e1", "e2"}).names(4, {"v"});
    b.prod("e1", "e1", {{"v", Rat(1)}});
    b.prod("e2", "e2", {{"v", Rat(-1)}});
    b.prod("e1", "e2", {});
    return make_pseudomanifold(4, b.build_ptr(), {}, {}, {});
}

PseudomanifoldModel nodal_cone() {
    CdgaPtr link = s2s3_link();
    std::vector<RatMatrix> maps((std::size_t)link->top_degree + 1);
    for (int r = 0; r <= link->top_degree; ++r) maps[(std::size_t)r] = RatMatrix::identity(link->dim(r));
    return make_pseudomanifold(6, link, {link}, {maps}, {[&] {
                                   RatVec f(link->dim(5), Rat(0));
                                   f[(std::size_t)link->name_index(5, "xz")] = 1;
                                   return f;
                               }()});
}

}  // namespace models

std::vector<std::string> example_names() {
    return {"sigma-cp2", "sigma-cp3", "sigma-t2",  "nodal-link",
            "nodal-cone", "b9-thom",  "sigma-s3s4", "closed-pd4"};
}

SpaceDocument example(const std::string& name_in) {
    std::string name = name_in == "thom-439" ? "b9-thom" : name_in;
    SpaceDocument doc;
    if (name == "sigma-cp2") {
        doc.kind = SpaceKind::pseudomanifold;
        doc.pm = models::suspension_cp(2);
    } else if (name == "sigma-cp3") {
        doc.kind = SpaceKind::pseudomanifold;
        doc.pm = models::suspension_cp(3);
    } else if (name == "sigma-t2") {
        doc.kind = SpaceKind::pseudomanifold;
        doc.pm = models::suspension_torus();
    } else if (name == "nodal-link") {
        doc.kind = SpaceKind::cdga;
        doc.algebra = models::s2s3_link();
    } else if (name == "nodal-cone") {
        doc.kind = SpaceKind::pseudomanifold;
        doc.pm = models::nodal_cone();
    } else if (name == "b9-thom") {
        doc.kind = SpaceKind::thom;
        doc.thom_base = models::b9();
        doc.thom_rank = 4;
        doc.thom_euler_name = "s4";
    } else if (name == "sigma-s3s4") {
        doc.kind = SpaceKind::pseudomanifold;
        doc.pm = models::suspension_sphere_product(3, 4);
    } else if (name == "closed-pd4") {
        doc.kind = SpaceKind::pseudomanifold;
        doc.pm = models::closed_pd4();
    } else {
        throw input_error("unknown example '" + name_in + "'");
    }
    return doc;
}

nlohmann::json example_json(const std::string& name) {
    SpaceDocument doc = example(name);
    switch (doc.kind) {
        case SpaceKind::cdga:
            return cdga_to_json(*doc.algebra);
        case SpaceKind::pseudomanifold:
            return pseudomanifold_to_json(*doc.pm);
        case SpaceKind::thom: {
            nlohmann::json j;
            j["kind"] = "thom";
            j["base"] = cdga_to_json(*doc.thom_base);
            j["rank"] = doc.thom_rank;
            j["euler"] = doc.thom_euler_name;
            return j;
        }
        default:
            return form_to_json(doc.form);
    }
}

}  // namespace qpd
