#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "qpd/builder.hpp"
#include "qpd/spaces.hpp"

namespace qpd {

enum class SpaceKind { cdga, pseudomanifold, thom, form };

/// Parsed interchange document.  The thom payload stays unresolved here (the
/// euler class may be named relative to a non-formal base); resolve with
/// resolve_thom().
struct SpaceDocument {
    SpaceKind kind = SpaceKind::cdga;
    CdgaPtr algebra;
    std::optional<PseudomanifoldModel> pm;
    CdgaPtr thom_base;
    int thom_rank = 0;
    std::string thom_euler_name;
    RatVec thom_euler_cochain;  // coords in A^{rank}(base) when no name given
    BilinearSpace form;
};

SpaceDocument parse_space(const nlohmann::json& j);
SpaceDocument parse_space_text(const std::string& text);

nlohmann::json cdga_to_json(const Cdga& a);
nlohmann::json form_to_json(const BilinearSpace& b);
nlohmann::json pseudomanifold_to_json(const PseudomanifoldModel& x);

}  // namespace qpd
