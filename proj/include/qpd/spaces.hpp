#pragma once

#include <optional>

#include "qpd/quadforms.hpp"
#include "qpd/truncation.hpp"

namespace qpd {

/// Finite model of a compact oriented pseudomanifold with isolated
/// singularities: regular part, per-singularity links, a model of the
/// boundary inclusion (surjective in positive degrees), and one fundamental
/// functional per link (on A^{n-1}(L_i) cochains, vanishing on coboundaries).
struct PseudomanifoldModel {
    int n = 0;
    CdgaPtr regular;
    std::vector<CdgaPtr> links;
    CdgaPtr link_sum;          // direct_sum(links); restriction target
    CdgaMorphism restriction;  // regular -> link_sum
    std::vector<RatVec> link_fundamentals;

    std::size_t singularities() const { return links.size(); }
};

/// per_link_maps[i][r]: dim(L_i^r) x dim(regular^r), r = 0..regular.top.
PseudomanifoldModel make_pseudomanifold(int n, CdgaPtr regular, std::vector<CdgaPtr> links,
                                        std::vector<std::vector<RatMatrix>> per_link_maps,
                                        std::vector<RatVec> link_fundamentals);

/// Structural invariants.  Surface links (n = 3) are exempt from the
/// simple-connectivity check; dp_model re-imposes it.
std::vector<std::string> validate_model(const PseudomanifoldModel& x);
void require_valid_model(const PseudomanifoldModel& x);

struct Perversity {
    int pbar = 0;
    static Perversity lower_middle(int n) { return {n / 2 - 1}; }
    static Perversity upper_middle(int n) { return {(n + 1) / 2 - 1}; }
    int cut(int n) const { return n - 1 - pbar; }  // k(pbar)
};

enum class SpaceClass { Witt, LSpace, EvenDim, Neither };
std::string to_string(SpaceClass c);

struct LinkClassification {
    std::size_t middle_dim = 0;
    FormKind kind = FormKind::symmetric;
    std::optional<int> signature;  // symmetric middle forms only
    bool signature_zero = true;
    bool witt_zero = true;  // full Witt triviality (reported separately from signature)
    bool lagrangian_exists = false;
    bool lagrangian_constructed = false;
};

struct ClassifyResult {
    SpaceClass cls = SpaceClass::Neither;
    std::vector<LinkClassification> links;
};

/// Witt / L-space / even-dimensional trichotomy from the link middle forms.
ClassifyResult classify(const PseudomanifoldModel& x);

/// Rational model of the perversity-p intersection space: fiber product of
/// the restriction with the per-link cotruncations, plus (for the non-normal
/// variant) one circle class per extra boundary component.
Cdga intersection_space_model(const PseudomanifoldModel& x, Perversity p);
Cdga normal_intersection_space_model(const PseudomanifoldModel& x, Perversity p);

/// keeps[i]: degree-s cocycles of link i spanning a Lagrangian.
Cdga lagrangian_intersection_space_model(const PseudomanifoldModel& x,
                                         const std::vector<std::vector<RatVec>>& keeps);

/// Middle intersection form of the regular part: the image form on
/// im(H^s(ker restriction) -> H^s(X_reg)), evaluated through the relative
/// fundamental functional; radical removed.
BilinearSpace regular_intersection_form(const PseudomanifoldModel& x);

struct GoodnessCondition {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct GoodnessReport {
    bool good = false;
    bool very_good = false;
    std::vector<GoodnessCondition> conditions;  // the Def-style rank conditions
};

struct DpResult {
    int n = 0;
    SpaceClass classification = SpaceClass::Neither;
    std::vector<std::size_t> betti;       // 0..n
    std::vector<std::size_t> xbar_betti;  // normalization, 0..n
    std::optional<BilinearSpace> middle_form;  // even n only
    GoodnessReport goodness;
};

/// Rational Poincaré duality approximation: Betti table assembled by
/// Mayer-Vietoris from the regular part and the per-link top-cell-completed
/// cotruncations, middle form for even n, goodness report.
DpResult dp_model(const PseudomanifoldModel& x,
                  const std::vector<std::vector<RatVec>>& keeps = {});

/// Rank conditions of a good (and very good) rational Poincaré approximation,
/// checked against the supplied DpResult's Betti table.
GoodnessReport verify_good_approximation(const PseudomanifoldModel& x, const DpResult& dp,
                                         const std::vector<std::vector<RatVec>>& keeps = {});

/// witt_equal(middle form of DP, regular middle image form); n = 0 mod 4.
bool witt_class_check(const PseudomanifoldModel& x,
                      const std::vector<std::vector<RatVec>>& keeps = {});

/// Thom-space pseudomanifold of an even-rank vector bundle: regular part the
/// disk-bundle model H(B) (x) (a,b), link the sphere-bundle model
/// H(B) (x) (a) with da = euler.
PseudomanifoldModel thom_space(const CdgaPtr& h_base, const RatVec& euler, int bundle_rank,
                               const RatVec& base_fundamental);

enum class ThomClass { Witt, LSpace, Conditional };
std::string to_string(ThomClass c);

/// Case table for odd-dimensional Thom spaces (odd base/even rank or even
/// base/odd rank); middle_dim = dim H^{m+m'}(B).
ThomClass classify_thom(int base_dim, int bundle_rank, std::size_t middle_dim);

CdgaMorphism compose(const CdgaMorphism& outer, const CdgaMorphism& inner);

}  // namespace qpd
