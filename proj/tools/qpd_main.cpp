#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qpd/examples.hpp"

using namespace qpd;
using nlohmann::json;

namespace {

SpaceDocument load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_space_text(ss.str());
}

CdgaPtr need_algebra(const SpaceDocument& doc) {
    if (doc.kind != SpaceKind::cdga || !doc.algebra)
        throw input_error("this command expects a cdga/formal document");
    return doc.algebra;
}

PseudomanifoldModel need_space(const SpaceDocument& doc) {
    if (doc.kind == SpaceKind::pseudomanifold) return *doc.pm;
    if (doc.kind == SpaceKind::thom) {
        // resolve the euler class against the base's cohomology ring
        CohomologyResult h = cohomology(*doc.thom_base);
        CdgaPtr hb = std::make_shared<const Cdga>(cohomology_algebra(*doc.thom_base, h));
        RatVec euler(hb->dim(doc.thom_rank), Rat(0));
        if (!doc.thom_euler_name.empty()) {
            auto e = doc.thom_base->element_by_name(doc.thom_euler_name);
            if (!e || e->degree != doc.thom_rank)
                throw input_error("euler class '" + doc.thom_euler_name +
                                  "' is not a degree-rank element of the base");
            if (!vec_is_zero(doc.thom_base->apply_d(*e).coords))
                throw input_error("euler class is not a cocycle");
            euler = h.project(doc.thom_rank, e->coords);
        } else if (!doc.thom_euler_cochain.empty()) {
            euler = h.project(doc.thom_rank, doc.thom_euler_cochain);
        }
        RatVec fund(hb->dim(hb->top_degree), Rat(0));
        if (fund.empty()) throw input_error("base has trivial top cohomology");
        fund[0] = 1;
        return thom_space(hb, euler, doc.thom_rank, fund);
    }
    throw input_error("this command expects a pseudomanifold or thom document");
}

std::vector<std::size_t> betti_of(const Cdga& a) {
    return cohomology(a).betti;
}

void print_betti(const std::vector<std::size_t>& b, json* out, const std::string& key = "betti") {
    if (out) {
        (*out)[key] = b;
        return;
    }
    std::cout << "degree:";
    for (std::size_t r = 0; r < b.size(); ++r) std::cout << "  " << r;
    std::cout << "\nbetti: ";
    for (std::size_t r = 0; r < b.size(); ++r) std::cout << "  " << b[r];
    std::cout << "\n";
}

void print_gram(const RatMatrix& g, json* out, const std::string& key) {
    if (out) {
        json rows = json::array();
        for (std::size_t i = 0; i < g.rows(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < g.cols(); ++j) row.push_back(rat_str(g.at(i, j)));
            rows.push_back(row);
        }
        (*out)[key] = rows;
        return;
    }
    std::cout << key << ":\n";
    for (std::size_t i = 0; i < g.rows(); ++i) {
        std::cout << "  [";
        for (std::size_t j = 0; j < g.cols(); ++j)
            std::cout << (j ? ", " : " ") << rat_str(g.at(i, j));
        std::cout << " ]\n";
    }
}

void emit_model(const Cdga& a, bool as_json) {
    if (as_json) {
        json out;
        out["model"] = cdga_to_json(a);
        out["betti"] = betti_of(a);
        std::cout << out.dump(2) << "\n";
    } else {
        print_betti(betti_of(a), nullptr);
    }
}

std::vector<std::vector<RatVec>> parse_keeps(const std::string& spec,
                                             const PseudomanifoldModel& x) {
    // per-link lists separated by ';', names within a link by ','
    std::vector<std::vector<RatVec>> keeps;
    if (spec.empty()) return keeps;
    std::stringstream ss(spec);
    std::string linkpart;
    std::size_t link = 0;
    while (std::getline(ss, linkpart, ';')) {
        if (link >= x.links.size()) throw input_error("more keep-lists than links");
        std::vector<RatVec> ks;
        std::stringstream ls(linkpart);
        std::string nm;
        while (std::getline(ls, nm, ',')) {
            if (nm.empty()) continue;
            auto e = x.links[link]->element_by_name(nm);
            if (!e) throw input_error("keep name '" + nm + "' not in link " + std::to_string(link));
            ks.push_back(e->coords);
        }
        keeps.push_back(ks);
        ++link;
    }
    while (keeps.size() < x.links.size()) keeps.push_back({});
    return keeps;
}

void run_dp(const PseudomanifoldModel& x, const std::string& keep_spec, bool report, bool as_json) {
    auto keeps = parse_keeps(keep_spec, x);
    DpResult dp = dp_model(x, keeps);
    json out;
    json* jp = as_json ? &out : nullptr;
    if (jp) (*jp)["classification"] = to_string(dp.classification);
    else
        std::cout << "classification: " << to_string(dp.classification) << "\n";
    print_betti(dp.betti, jp);
    bool symmetric = true;
    for (int r = 0; r <= dp.n; ++r)
        symmetric = symmetric && dp.betti[(std::size_t)r] == dp.betti[(std::size_t)(dp.n - r)];
    if (jp) (*jp)["duality_symmetric"] = symmetric;
    else
        std::cout << "duality: betti[r] == betti[n-r] " << (symmetric ? "holds" : "FAILS") << "\n";
    if (dp.middle_form) {
        print_gram(dp.middle_form->gram, jp, "middle_form");
        if (dp.n % 4 == 0) {
            WittInvariants w = witt_invariants(*dp.middle_form);
            if (jp) {
                (*jp)["witt"] = {{"rank", w.rank},
                                 {"signature", w.signature},
                                 {"discriminant", w.discriminant.get_str()}};
            } else {
                std::cout << "witt: rank " << w.rank << ", signature " << w.signature
                          << ", discriminant " << w.discriminant.get_str() << "\n";
            }
        }
    }
    if (report) {
        if (jp) {
            json conds = json::array();
            for (auto& c : dp.goodness.conditions)
                conds.push_back({{"name", c.name}, {"pass", c.pass}});
            (*jp)["goodness"] = {{"good", dp.goodness.good},
                                 {"very_good", dp.goodness.very_good},
                                 {"conditions", conds}};
        } else {
            std::cout << "goodness: good=" << (dp.goodness.good ? "yes" : "no")
                      << " very_good=" << (dp.goodness.very_good ? "yes" : "no") << "\n";
            for (auto& c : dp.goodness.conditions)
                std::cout << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << "\n";
        }
    }
    if (jp) std::cout << out.dump(2) << "\n";
}

void run_example(const std::string& name, bool as_json) {
    SpaceDocument doc = example(name);
    if (doc.kind == SpaceKind::cdga) {
        CohomologyResult h = cohomology(*doc.algebra);
        json out;
        json* jp = as_json ? &out : nullptr;
        print_betti(h.betti, jp);
        if (jp) std::cout << out.dump(2) << "\n";
        return;
    }
    PseudomanifoldModel x = need_space(doc);
    json out;
    json* jp = as_json ? &out : nullptr;
    ClassifyResult cls = classify(x);
    if (jp) (*jp)["classification"] = to_string(cls.cls);
    else
        std::cout << "classification: " << to_string(cls.cls) << "\n";
    if (x.n % 2 != 0 && !x.links.empty()) {
        int s = (x.n - 1) / 2;
        CohomologyResult h = cohomology(*x.links[0]);
        if (h.dim(s) > 0) {
            CupPairing cp = cup_pairing(*x.links[0], h, x.link_fundamentals[0], s);
            print_gram(cp.gram, jp, "link_middle_gram");
        }
    }
    std::vector<std::vector<RatVec>> keeps;
    if (cls.cls == SpaceClass::LSpace && name != "sigma-t2") {
        // canonical keeps: first Lagrangian basis vector names are model data;
        // for the bundled Thom example this is the base top-half class
        for (std::size_t i = 0; i < x.links.size(); ++i) {
            CohomologyResult h = cohomology(*x.links[i]);
            int s = (x.n - 1) / 2;
            CupPairing cp = cup_pairing(*x.links[i], h, x.link_fundamentals[i], s);
            BilinearSpace b{cp.gram, s % 2 == 0 ? FormKind::symmetric : FormKind::skew};
            auto lag = find_lagrangian(b);
            if (!lag) throw theory_error("no Lagrangian found for link " + std::to_string(i));
            std::vector<RatVec> ks;
            for (std::size_t c = 0; c < lag->cols(); ++c)
                ks.push_back(h.reps[(std::size_t)s].mul_vec(lag->col(c)));
            keeps.push_back(ks);
        }
    }
    try {
        DpResult dp = dp_model(x, keeps);
        print_betti(dp.betti, jp, "dp_betti");
        if (jp) {
            (*jp)["good"] = dp.goodness.good;
            (*jp)["very_good"] = dp.goodness.very_good;
        } else {
            std::cout << "good approximation: " << (dp.goodness.good ? "yes" : "no")
                      << (dp.goodness.very_good ? " (very good)" : "") << "\n";
        }
    } catch (const theory_error& e) {
        if (jp) (*jp)["dp"] = std::string("unsupported: ") + e.what();
        else
            std::cout << "dp: unsupported by the theory: " << e.what() << "\n";
    }
    if (jp) std::cout << out.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rational models of pseudomanifolds: truncations, intersection spaces, duality"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    std::string file, file2, keep_spec, euler_name, base_file, out_dir, example_name;
    int k = 0, pbar = 0, bundle_rank = 0;
    bool normal = false, report = false;

    auto* c_validate = app.add_subcommand("validate", "check the axioms of a document");
    c_validate->add_option("file", file)->required();

    auto* c_cohom = app.add_subcommand("cohomology", "Betti table and ring of a cdga document");
    c_cohom->add_option("file", file)->required();

    auto* c_trunc = app.add_subcommand("truncate", "degree-k homology truncation model");
    c_trunc->add_option("file", file)->required();
    c_trunc->add_option("--k", k)->required();

    auto* c_cotr = app.add_subcommand("cotruncate", "degree-k cotruncation model");
    c_cotr->add_option("file", file)->required();
    c_cotr->add_option("--k", k)->required();

    auto* c_lag = app.add_subcommand("lag-cotruncate", "Lagrangian cotruncation");
    c_lag->add_option("file", file)->required();
    c_lag->add_option("--keep", keep_spec, "comma-separated cocycle names")->required();

    auto* c_isect = app.add_subcommand("isect", "intersection-space model");
    c_isect->add_option("file", file)->required();
    c_isect->add_option("--perversity", pbar)->required();
    c_isect->add_flag("--normal", normal);

    auto* c_classify = app.add_subcommand("classify", "Witt / L-space / even classification");
    c_classify->add_option("file", file)->required();

    auto* c_dp = app.add_subcommand("dp", "rational Poincaré duality approximation");
    c_dp->add_option("file", file)->required();
    c_dp->add_option("--keeps", keep_spec, "per-link keep lists, ';' between links");
    c_dp->add_flag("--report", report, "print the goodness report");

    auto* c_witt = app.add_subcommand("witt", "Witt-class operations");
    auto* c_witt_cmp = c_witt->add_subcommand("compare", "compare two forms in W(Q)");
    c_witt_cmp->add_option("file1", file)->required();
    c_witt_cmp->add_option("file2", file2)->required();

    auto* c_thom = app.add_subcommand("thom", "Thom-space pseudomanifold of a bundle");
    c_thom->add_option("--base", base_file)->required();
    c_thom->add_option("--euler", euler_name)->required();
    c_thom->add_option("--rank", bundle_rank)->required();

    auto* c_ex = app.add_subcommand("examples", "bundled example corpus");
    auto* c_ex_list = c_ex->add_subcommand("list", "list bundled examples");
    auto* c_ex_run = c_ex->add_subcommand("run", "run a bundled example end to end");
    c_ex_run->add_option("name", example_name)->required();
    auto* c_ex_show = c_ex->add_subcommand("show", "print the JSON of a bundled example");
    c_ex_show->add_option("name", example_name)->required();
    auto* c_ex_export = c_ex->add_subcommand("export", "write all bundled examples to a directory");
    c_ex_export->add_option("dir", out_dir)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_validate) {
            SpaceDocument doc = load(file);
            std::vector<std::string> problems;
            if (doc.kind == SpaceKind::cdga) {
                for (auto& v : validate(*doc.algebra)) problems.push_back(v.axiom + ": " + v.detail);
            } else if (doc.kind == SpaceKind::form) {
                try {
                    require_well_formed(doc.form);
                } catch (const input_error& e) {
                    problems.push_back(e.what());
                }
            } else {
                PseudomanifoldModel x = need_space(doc);
                problems = validate_model(x);
            }
            if (as_json) {
                json out;
                out["valid"] = problems.empty();
                out["violations"] = problems;
                std::cout << out.dump(2) << "\n";
            } else if (problems.empty()) {
                std::cout << "valid\n";
            } else {
                for (auto& p : problems) std::cout << "violation: " << p << "\n";
            }
            return problems.empty() ? 0 : 1;
        }
        if (*c_cohom) {
            CdgaPtr a = need_algebra(load(file));
            require_valid(*a);
            CohomologyResult h = cohomology(*a);
            if (as_json) {
                json out;
                out["betti"] = h.betti;
                out["model"] = cdga_to_json(cohomology_algebra(*a, h));
                std::cout << out.dump(2) << "\n";
            } else {
                print_betti(h.betti, nullptr);
                Cdga H = cohomology_algebra(*a, h);
                std::cout << "ring generators by degree:\n";
                for (int r = 0; r <= H.top_degree; ++r) {
                    if (H.dim(r) == 0) continue;
                    std::cout << "  H^" << r << ":";
                    for (auto& nm : H.names[(std::size_t)r]) std::cout << " " << nm;
                    std::cout << "\n";
                }
            }
            return 0;
        }
        if (*c_trunc) {
            CdgaPtr a = need_algebra(load(file));
            require_valid(*a);
            emit_model(truncate(a, k).algebra, as_json);
            return 0;
        }
        if (*c_cotr) {
            CdgaPtr a = need_algebra(load(file));
            require_valid(*a);
            emit_model(cotruncate(a, k).algebra, as_json);
            return 0;
        }
        if (*c_lag) {
            CdgaPtr a = need_algebra(load(file));
            require_valid(*a);
            if (a->top_degree % 2 != 0)
                throw input_error("Lagrangian cotruncation needs an even-dimensional link model");
            int s = a->top_degree / 2;
            std::vector<RatVec> keep;
            std::stringstream ss(keep_spec);
            std::string nm;
            while (std::getline(ss, nm, ',')) {
                if (nm.empty()) continue;
                auto e = a->element_by_name(nm);
                if (!e || e->degree != s)
                    throw input_error("keep '" + nm + "' is not a degree-s basis element");
                keep.push_back(e->coords);
            }
            emit_model(lagrangian_cotruncate(a, s, keep).algebra, as_json);
            return 0;
        }
        if (*c_isect) {
            PseudomanifoldModel x = need_space(load(file));
            require_valid_model(x);
            Perversity p{pbar};
            Cdga m = normal ? normal_intersection_space_model(x, p)
                            : intersection_space_model(x, p);
            emit_model(m, as_json);
            return 0;
        }
        if (*c_classify) {
            PseudomanifoldModel x = need_space(load(file));
            ClassifyResult res = classify(x);
            if (as_json) {
                json out;
                out["classification"] = to_string(res.cls);
                json links = json::array();
                for (auto& l : res.links) {
                    json lj = {{"middle_dim", l.middle_dim},
                               {"kind", l.kind == FormKind::symmetric ? "symmetric" : "skew"},
                               {"signature_zero", l.signature_zero},
                               {"witt_zero", l.witt_zero},
                               {"lagrangian_exists", l.lagrangian_exists}};
                    if (l.signature) lj["signature"] = *l.signature;
                    links.push_back(lj);
                }
                out["links"] = links;
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << to_string(res.cls);
                if (res.cls == SpaceClass::Neither) {
                    for (std::size_t i = 0; i < res.links.size(); ++i)
                        if (!res.links[i].lagrangian_exists)
                            std::cout << " (link " << i << ": no Lagrangian, rank "
                                      << res.links[i].middle_dim << ")";
                }
                std::cout << "\n";
                for (std::size_t i = 0; i < res.links.size(); ++i) {
                    auto& l = res.links[i];
                    std::cout << "  link " << i << ": middle dim " << l.middle_dim;
                    if (l.signature) std::cout << ", signature " << *l.signature;
                    std::cout << ", witt zero: " << (l.witt_zero ? "yes" : "no") << "\n";
                }
            }
            return 0;
        }
        if (*c_dp) {
            PseudomanifoldModel x = need_space(load(file));
            run_dp(x, keep_spec, report, as_json);
            return 0;
        }
        if (*c_witt_cmp) {
            SpaceDocument d1 = load(file), d2 = load(file2);
            if (d1.kind != SpaceKind::form || d2.kind != SpaceKind::form)
                throw input_error("witt compare expects form documents");
            bool eq = witt_equal(d1.form, d2.form);
            if (as_json) {
                json out;
                out["witt_equal"] = eq;
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << (eq ? "equal in W(Q)" : "different in W(Q)") << "\n";
            }
            return 0;
        }
        if (*c_thom) {
            SpaceDocument base = load(base_file);
            SpaceDocument doc;
            doc.kind = SpaceKind::thom;
            doc.thom_base = need_algebra(base);
            doc.thom_rank = bundle_rank;
            doc.thom_euler_name = euler_name;
            PseudomanifoldModel x = need_space(doc);
            if (as_json) {
                std::cout << pseudomanifold_to_json(x).dump(2) << "\n";
            } else {
                std::cout << "thom pseudomanifold of dimension " << x.n << "\n";
                print_betti(cohomology(*x.links[0]).betti, nullptr);
                ThomClass tc = classify_thom(doc.thom_base->top_degree, bundle_rank,
                                             cohomology(*doc.thom_base)
                                                 .dim((doc.thom_base->top_degree + bundle_rank) / 2));
                std::cout << "case table: " << to_string(tc) << "\n";
            }
            return 0;
        }
        if (*c_ex_list) {
            for (auto& nm : example_names()) std::cout << nm << "\n";
            return 0;
        }
        if (*c_ex_show) {
            std::cout << example_json(example_name).dump(2) << "\n";
            return 0;
        }
        if (*c_ex_export) {
            for (auto& nm : example_names()) {
                std::ofstream out(out_dir + "/" + nm + ".json");
                if (!out) throw input_error("cannot write to '" + out_dir + "'");
                out << example_json(nm).dump(2) << "\n";
            }
            std::cout << "wrote " << example_names().size() << " examples to " << out_dir << "\n";
            return 0;
        }
        if (*c_ex_run) {
            run_example(example_name, as_json);
            return 0;
        }
    } catch (const undecided_error& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return 2;
    } catch (const theory_error& e) {
        std::cerr << "unsupported by the theory: " << e.what() << "\n";
        return 2;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
