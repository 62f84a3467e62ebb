#pragma once

#include <string>

#include "hsm/scene/scene.hpp"
#include "hsm/solver/solver.hpp"

namespace hsm {

// Top-down debug plots: boundary, obstacles, solved footprints with
// facing arrows.
void write_layout_svg(const std::string& path, const SolveDomain& dom,
                      const std::vector<PlacementRequest>& reqs, const Layout& layout);

void write_scene_svg(const std::string& path, const Scene& scene);

}  // namespace hsm
