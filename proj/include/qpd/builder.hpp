#pragma once

#include <initializer_list>
#include <utility>

#include "qpd/cdga.hpp"

namespace qpd {

/// Convenience constructor for hand-written models: name-based differentials
/// and products, automatic unit products and graded-commutative mirrors.
class CdgaBuilder {
  public:
    explicit CdgaBuilder(int top_degree);

    CdgaBuilder& names(int degree, std::vector<std::string> ns);
    CdgaBuilder& d(const std::string& from,
                   std::vector<std::pair<std::string, Rat>> terms);
    CdgaBuilder& prod(const std::string& a, const std::string& b,
                      std::vector<std::pair<std::string, Rat>> terms);

    /// Degree-0 basis must contain "1"; unit products are filled in, and each
    /// explicitly set product also sets its Koszul mirror unless already given.
    Cdga build() const;
    CdgaPtr build_ptr() const { return std::make_shared<const Cdga>(build()); }

  private:
    int top_;
    std::vector<std::vector<std::string>> names_;
    std::vector<std::tuple<std::string, std::string, Rat>> dterms_;
    std::vector<std::tuple<std::string, std::string, std::string, Rat>> pterms_;
};

}  // namespace qpd
