#include "qpd/json_io.hpp"

#include <map>

#include "json.hpp"

namespace qpd {

using nlohmann::json;

// ---------------------------------------------------------------------------
// CdgaBuilder

CdgaBuilder::CdgaBuilder(int top_degree) : top_(top_degree) {
    names_.resize((std::size_t)top_ + 1);
}

CdgaBuilder& CdgaBuilder::names(int degree, std::vector<std::string> ns) {
    if (degree < 0 || degree > top_) throw input_error("builder: degree out of range");
    names_[(std::size_t)degree] = std::move(ns);
    return *this;
}

CdgaBuilder& CdgaBuilder::d(const std::string& from,
                            std::vector<std::pair<std::string, Rat>> terms) {
    for (auto& [to, c] : terms) dterms_.emplace_back(from, to, c);
    return *this;
}

CdgaBuilder& CdgaBuilder::prod(const std::string& a, const std::string& b,
                               std::vector<std::pair<std::string, Rat>> terms) {
    for (auto& [to, c] : terms) pterms_.emplace_back(a, b, to, c);
    if (terms.empty()) pterms_.emplace_back(a, b, "", Rat(0));  // explicit zero product
    return *this;
}

Cdga CdgaBuilder::build() const {
    Cdga a;
    a.top_degree = top_;
    a.names = names_;
    a.d.resize((std::size_t)top_ + 1);
    for (int r = 0; r <= top_; ++r)
        a.d[(std::size_t)r] = RatMatrix(a.dim(r + 1), a.dim(r));
    auto find = [&](const std::string& nm) -> std::pair<int, std::size_t> {
        for (int r = 0; r <= top_; ++r) {
            int i = a.name_index(r, nm);
            if (i >= 0) return {r, (std::size_t)i};
        }
        throw input_error("builder: unknown basis name '" + nm + "'");
    };
    for (auto& [from, to, c] : dterms_) {
        auto [rf, jf] = find(from);
        auto [rt, it] = find(to);
        if (rt != rf + 1) throw input_error("builder: differential term not in degree+1: " + from);
        a.d[(std::size_t)rf].at(it, jf) = c;
    }
    // products, then graded-commutative mirrors for pairs not explicitly given
    std::map<Cdga::ProdKey, RatVec> given;
    for (auto& [na, nb, to, c] : pterms_) {
        auto [ra, ia] = find(na);
        auto [rb, ib] = find(nb);
        Cdga::ProdKey key{ra, ia, rb, ib};
        auto it = given.find(key);
        if (it == given.end())
            it = given.emplace(key, RatVec(a.dim(ra + rb), Rat(0))).first;
        if (!to.empty()) {
            auto [rt, jt] = find(to);
            if (rt != ra + rb) throw input_error("builder: product term in wrong degree");
            it->second[jt] += c;
        }
    }
    for (auto& [key, v] : given) a.prod[key] = v;
    for (auto& [key, v] : given) {
        auto [ra, ia, rb, ib] = key;
        Cdga::ProdKey mirror{rb, ib, ra, ia};
        if (!a.prod.count(mirror)) {
            int s = (ra % 2 != 0 && rb % 2 != 0) ? -1 : 1;
            a.prod[mirror] = s == 1 ? v : scaled(v, Rat(-1));
        }
    }
    // unit: basis element named "1"
    int u = a.name_index(0, "1");
    if (u < 0) throw input_error("builder: degree 0 must contain a basis element named '1'");
    a.unit = RatVec(a.dim(0), Rat(0));
    a.unit[(std::size_t)u] = 1;
    for (int r = 0; r <= top_; ++r)
        for (std::size_t i = 0; i < a.dim(r); ++i) {
            RatVec self(a.dim(r), Rat(0));
            self[i] = 1;
            Cdga::ProdKey lk{0, (std::size_t)u, r, i};
            Cdga::ProdKey rk{r, i, 0, (std::size_t)u};
            if (!a.prod.count(lk)) a.prod[lk] = self;
            if (!a.prod.count(rk)) a.prod[rk] = self;
        }
    return a;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Rat parse_rat_json(const json& j) {
    if (j.is_number_integer()) return Rat((long)j.get<long long>());
    if (j.is_string()) return parse_rat(j.get<std::string>());
    throw input_error("expected a rational literal (integer or \"p/q\" string)");
}

std::vector<std::pair<std::string, Rat>> parse_terms(const json& j) {
    std::vector<std::pair<std::string, Rat>> out;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2) throw input_error("expected [name, value] pairs");
        out.emplace_back(t[0].get<std::string>(), parse_rat_json(t[1]));
    }
    return out;
}

Cdga parse_cdga_payload(const json& j, bool formal) {
    if (!j.contains("top_degree") || !j.contains("basis"))
        throw input_error("cdga document needs top_degree and basis");
    int top = j["top_degree"].get<int>();
    if (top < 0) throw input_error("top_degree must be nonnegative");
    CdgaBuilder b(top);
    const json& basis = j["basis"];
    if (!basis.is_array() || (int)basis.size() != top + 1)
        throw input_error("basis must list names for degrees 0..top_degree");
    std::vector<std::vector<std::string>> names;
    for (int r = 0; r <= top; ++r) {
        std::vector<std::string> ns;
        for (const auto& nm : basis[(std::size_t)r]) ns.push_back(nm.get<std::string>());
        b.names(r, ns);
        names.push_back(std::move(ns));
    }
    auto locate = [&](const std::string& nm) {
        for (int r = 0; r <= top; ++r)
            for (std::size_t i = 0; i < names[(std::size_t)r].size(); ++i)
                if (names[(std::size_t)r][i] == nm) return std::pair<int, std::size_t>{r, i};
        throw input_error("unknown basis name '" + nm + "'");
    };
    if (!formal && j.contains("differential")) {
        for (const auto& e : j["differential"]) {
            int r = e["degree"].get<int>();
            std::size_t row = e["row"].get<std::size_t>();
            std::size_t col = e["col"].get<std::size_t>();
            Rat v = parse_rat_json(e["value"]);
            if (r < 0 || r >= top) throw input_error("differential entry degree out of range");
            if (col >= names[(std::size_t)r].size() || row >= names[(std::size_t)(r + 1)].size())
                throw input_error("differential entry index out of range");
            b.d(names[(std::size_t)r][col], {{names[(std::size_t)(r + 1)][row], v}});
        }
    }
    if (j.contains("products")) {
        for (const auto& e : j["products"]) {
            std::string ni = e["i"].get<std::string>();
            std::string nj = e["j"].get<std::string>();
            auto [ri, ii] = locate(ni);
            auto [rj, jj] = locate(nj);
            (void)ii;
            (void)jj;
            auto terms = parse_terms(e["coeffs"]);
            for (auto& [nm, c] : terms) {
                auto [rt, tt] = locate(nm);
                (void)tt;
                if (rt != ri + rj) throw input_error("product coefficient in wrong degree");
            }
            b.prod(ni, nj, terms);
        }
    }
    return b.build();
}

RatVec parse_functional(const json& j, const Cdga& a, int degree) {
    RatVec f(a.dim(degree), Rat(0));
    for (auto& [nm, c] : parse_terms(j)) {
        int i = a.name_index(degree, nm);
        if (i < 0) throw input_error("functional names a missing degree-" + std::to_string(degree) +
                                     " element '" + nm + "'");
        f[(std::size_t)i] = c;
    }
    return f;
}

}  // namespace

SpaceDocument parse_space(const json& j) {
    if (!j.contains("kind")) throw input_error("document needs a \"kind\"");
    std::string kind = j["kind"].get<std::string>();
    SpaceDocument doc;
    if (kind == "cdga" || kind == "formal") {
        doc.kind = SpaceKind::cdga;
        doc.algebra = std::make_shared<const Cdga>(parse_cdga_payload(j, kind == "formal"));
        return doc;
    }
    if (kind == "pseudomanifold") {
        doc.kind = SpaceKind::pseudomanifold;
        int n = j.at("n").get<int>();
        CdgaPtr reg = std::make_shared<const Cdga>(
            parse_cdga_payload(j.at("regular"), j.at("regular").value("kind", "cdga") == "formal"));
        std::vector<CdgaPtr> links;
        for (const auto& l : j.at("links"))
            links.push_back(std::make_shared<const Cdga>(
                parse_cdga_payload(l, l.value("kind", "cdga") == "formal")));
        const json& rj = j.at("restriction");
        if (!rj.is_array() || rj.size() != links.size())
            throw input_error("restriction: one entry list per link");
        std::vector<std::vector<RatMatrix>> blocks;
        for (std::size_t i = 0; i < links.size(); ++i) {
            std::vector<RatMatrix> per_degree((std::size_t)reg->top_degree + 1);
            for (int r = 0; r <= reg->top_degree; ++r)
                per_degree[(std::size_t)r] = RatMatrix(links[i]->dim(r), reg->dim(r));
            for (const auto& e : rj[(std::size_t)i]) {
                int r = e.at("degree").get<int>();
                std::size_t row = e.at("row").get<std::size_t>();
                std::size_t col = e.at("col").get<std::size_t>();
                if (r < 0 || r > reg->top_degree || row >= links[i]->dim(r) ||
                    col >= reg->dim(r))
                    throw input_error("restriction entry out of range");
                per_degree[(std::size_t)r].at(row, col) = parse_rat_json(e.at("value"));
            }
            blocks.push_back(std::move(per_degree));
        }
        std::vector<RatVec> fundamentals;
        const json& fj = j.at("fundamentals");
        if (!fj.is_array() || fj.size() != links.size())
            throw input_error("fundamentals: one functional per link");
        for (std::size_t i = 0; i < links.size(); ++i)
            fundamentals.push_back(parse_functional(fj[(std::size_t)i], *links[i], n - 1));
        doc.pm = make_pseudomanifold(n, reg, links, blocks, fundamentals);
        return doc;
    }
    if (kind == "thom") {
        doc.kind = SpaceKind::thom;
        doc.thom_base = std::make_shared<const Cdga>(
            parse_cdga_payload(j.at("base"), j.at("base").value("kind", "cdga") == "formal"));
        doc.thom_rank = j.at("rank").get<int>();
        if (j.at("euler").is_string()) {
            doc.thom_euler_name = j.at("euler").get<std::string>();
        } else {
            doc.thom_euler_cochain = parse_functional(j.at("euler"), *doc.thom_base,
                                                      doc.thom_rank);
        }
        return doc;
    }
    if (kind == "form") {
        doc.kind = SpaceKind::form;
        const json& g = j.at("gram");
        std::size_t nrows = g.size();
        RatMatrix m(nrows, nrows);
        for (std::size_t i = 0; i < nrows; ++i) {
            if (g[i].size() != nrows) throw input_error("form: gram must be square");
            for (std::size_t k = 0; k < nrows; ++k) m.at(i, k) = parse_rat_json(g[i][k]);
        }
        doc.form = BilinearSpace{m, j.value("sym", true) ? FormKind::symmetric : FormKind::skew};
        return doc;
    }
    throw input_error("unknown document kind '" + kind + "'");
}

SpaceDocument parse_space_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw input_error("malformed JSON");
    return parse_space(j);
}

json cdga_to_json(const Cdga& a) {
    json j;
    j["kind"] = "cdga";
    j["top_degree"] = a.top_degree;
    json basis = json::array();
    for (int r = 0; r <= a.top_degree; ++r) {
        json deg = json::array();
        for (auto& nm : a.names[(std::size_t)r]) deg.push_back(nm);
        basis.push_back(deg);
    }
    j["basis"] = basis;
    json diff = json::array();
    for (int r = 0; r < a.top_degree; ++r)
        for (std::size_t row = 0; row < a.dim(r + 1); ++row)
            for (std::size_t col = 0; col < a.dim(r); ++col)
                if (!is_zero(a.d[(std::size_t)r].at(row, col)))
                    diff.push_back({{"degree", r},
                                    {"row", row},
                                    {"col", col},
                                    {"value", rat_str(a.d[(std::size_t)r].at(row, col))}});
    j["differential"] = diff;
    json prods = json::array();
    for (auto& [key, v] : a.prod) {
        auto [di, i, dj, jdx] = key;
        if (vec_is_zero(v)) continue;
        // unit products are implicit in the schema
        bool unit_row = (di == 0 && a.dim(0) == 1 && a.names[0][0] == "1") ||
                        (dj == 0 && a.dim(0) == 1 && a.names[0][0] == "1");
        if (unit_row) continue;
        json coeffs = json::array();
        for (std::size_t t = 0; t < v.size(); ++t)
            if (!is_zero(v[t]))
                coeffs.push_back({a.names[(std::size_t)(di + dj)][t], rat_str(v[t])});
        prods.push_back(
            {{"i", a.names[(std::size_t)di][i]}, {"j", a.names[(std::size_t)dj][jdx]}, {"coeffs", coeffs}});
    }
    j["products"] = prods;
    return j;
}

json form_to_json(const BilinearSpace& b) {
    json j;
    j["kind"] = "form";
    j["sym"] = b.kind == FormKind::symmetric;
    json g = json::array();
    for (std::size_t i = 0; i < b.dim(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < b.dim(); ++k) row.push_back(rat_str(b.gram.at(i, k)));
        g.push_back(row);
    }
    j["gram"] = g;
    return j;
}

json pseudomanifold_to_json(const PseudomanifoldModel& x) {
    json j;
    j["kind"] = "pseudomanifold";
    j["n"] = x.n;
    j["regular"] = cdga_to_json(*x.regular);
    json links = json::array();
    for (auto& l : x.links) links.push_back(cdga_to_json(*l));
    j["links"] = links;
    json rj = json::array();
    for (std::size_t i = 0; i < x.links.size(); ++i) {
        json entries = json::array();
        std::size_t off = 0;
        for (std::size_t p = 0; p < i; ++p) off += 0;  // offsets handled per degree below
        for (int r = 0; r <= x.regular->top_degree; ++r) {
            std::size_t roff = 0;
            for (std::size_t p = 0; p < i; ++p) roff += x.links[p]->dim(r);
            RatMatrix m = x.restriction.map_at(r);
            for (std::size_t row = 0; row < x.links[i]->dim(r); ++row)
                for (std::size_t col = 0; col < x.regular->dim(r); ++col)
                    if (!is_zero(m.at(roff + row, col)))
                        entries.push_back({{"degree", r},
                                           {"row", row},
                                           {"col", col},
                                           {"value", rat_str(m.at(roff + row, col))}});
        }
        rj.push_back(entries);
    }
    j["restriction"] = rj;
    json fj = json::array();
    for (std::size_t i = 0; i < x.links.size(); ++i) {
        json f = json::array();
        for (std::size_t t = 0; t < x.link_fundamentals[i].size(); ++t)
            if (!is_zero(x.link_fundamentals[i][t]))
                f.push_back({x.links[i]->names[(std::size_t)(x.n - 1)][t],
                             rat_str(x.link_fundamentals[i][t])});
        fj.push_back(f);
    }
    j["fundamentals"] = fj;
    return j;
}

}  // namespace qpd
