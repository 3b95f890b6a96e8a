#pragma once

#include "qpd/json_io.hpp"

namespace qpd {

/// Bundled example corpus (the worked examples the acceptance suite runs).
std::vector<std::string> example_names();
SpaceDocument example(const std::string& name);
nlohmann::json example_json(const std::string& name);

namespace models {

/// Formal sphere S^k.
CdgaPtr sphere(int k);
/// Formal torus: (1; a, b; ab).
CdgaPtr torus();
/// Formal CP^m (complex dimension m): Q[x]/x^{m+1}.
CdgaPtr cp(int m);
/// Formal S^a x S^b, a <= b: (1; p; q; pq).
CdgaPtr sphere_product(int a, int b);
/// Sullivan-style S^2 x S^3 link model: (x2, y3, z3), dy = x^2, truncated at 5.
CdgaPtr s2s3_link();
/// The 9-manifold (S^3 x S^6) # (S^4 x S^5): generators s3,s4,s5,s6 and the
/// bounding generators b6, b71, b72, b8, truncated at 9.
CdgaPtr b9();

/// Suspension of CP^m: cylinder regular part Lambda(x,u,xi) truncated at n,
/// two CP^m links with opposite fundamental classes.
PseudomanifoldModel suspension_cp(int m);
/// Suspension of the torus (n = 3).
PseudomanifoldModel suspension_torus();
/// Suspension of S^a x S^b (n = a+b+2).
PseudomanifoldModel suspension_sphere_product(int a, int b);
/// Closed oriented 4-dimensional input with intersection form diag(1,-1)
/// (no singularities; restriction to the zero algebra).
PseudomanifoldModel closed_pd4();
/// One-singularity cone over S^2 x S^3 with collar regular part (n = 6).
PseudomanifoldModel nodal_cone();

}  // namespace models

}  // namespace qpd
