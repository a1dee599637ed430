#include "m1gmg/hierarchy.hpp"

#include <sstream>

#include "m1gmg/errors.hpp"

namespace m1gmg {

std::size_t Hierarchy::field_bytes() const {
    std::size_t total = 0;
    for (const auto& w : work) total += w.bytes();
    return total;
}

Hierarchy build_hierarchy(const GridLevel& fine, const BoundaryCondition& bc, int l_max,
                          const PhysicalConstants& pc) {
    if (l_max < 1) throw ConfigError("l_max must be at least 1");
    if (fine.nx < 2 || fine.ny < 1 || fine.h <= 0.0)
        throw ConfigError("fine grid must have nx >= 2, ny >= 1 and h > 0");

    Hierarchy H;
    H.pc = pc;
    H.bc = bc;
    GridLevel g = fine;
    g.level = 0;
    for (int l = 0; l < l_max; ++l) {
        if (l > 0) {
            const bool two_d = fine.ny > 1;
            if (g.nx % 2 != 0 || (two_d && g.ny % 2 != 0) || g.nx / 2 < 2 ||
                (two_d && g.ny / 2 < 2)) {
                std::ostringstream msg;
                msg << "grid " << fine.nx << "x" << fine.ny << " cannot coarsen to level "
                    << l << " (would be " << g.nx / 2 << "x" << (two_d ? g.ny / 2 : g.ny)
                    << ")";
                throw ConfigError(msg.str());
            }
            g.nx /= 2;
            if (two_d) g.ny /= 2;
            g.h *= 2.0;
            g.level = l;
        }
        H.levels.push_back(g);
        H.work.emplace_back(g, bc);
    }
    return H;
}

}  // namespace m1gmg
