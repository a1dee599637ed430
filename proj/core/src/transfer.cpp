#include "m1gmg/transfer.hpp"

namespace m1gmg {

void restrict_field(Field& fine, GhostMode mode, Field& coarse) {
    fill_ghosts(fine, mode);
    const GridLevel& gc = coarse.grid();

    if (fine.grid().dim() == 1) {
        for (int ic = 0; ic < gc.nx; ++ic) {
            const int i = 2 * ic;
            coarse.at(ic, 0) = 0.5 * fine.at(i, 0) +
                               0.25 * (fine.at(i - 1, 0) + fine.at(i + 1, 0));
        }
        return;
    }

#pragma omp parallel for schedule(static)
    for (int jc = 0; jc < gc.ny; ++jc)
        for (int ic = 0; ic < gc.nx; ++ic) {
            const int i = 2 * ic;
            const int j = 2 * jc;
            coarse.at(ic, jc) =
                0.25 * fine.at(i, j) +
                0.125 * (fine.at(i - 1, j) + fine.at(i + 1, j) + fine.at(i, j - 1) +
                         fine.at(i, j + 1)) +
                0.0625 * (fine.at(i - 1, j - 1) + fine.at(i + 1, j - 1) +
                          fine.at(i - 1, j + 1) + fine.at(i + 1, j + 1));
        }
}

void prolong_field(Field& coarse, GhostMode mode, Field& fine) {
    fill_ghosts(coarse, mode);
    const GridLevel& gf = fine.grid();

    if (gf.dim() == 1) {
        for (int i = 0; i < gf.nx; ++i) {
            const int ic = i / 2;
            fine.at(i, 0) = i % 2 == 0 ? coarse.at(ic, 0)
                                       : 0.5 * (coarse.at(ic, 0) + coarse.at(ic + 1, 0));
        }
        return;
    }

#pragma omp parallel for schedule(static)
    for (int j = 0; j < gf.ny; ++j)
        for (int i = 0; i < gf.nx; ++i) {
            const int ic = i / 2;
            const int jc = j / 2;
            const bool ei = i % 2 == 0;
            const bool ej = j % 2 == 0;
            if (ei && ej)
                fine.at(i, j) = coarse.at(ic, jc);
            else if (!ei && ej)
                fine.at(i, j) = 0.5 * (coarse.at(ic, jc) + coarse.at(ic + 1, jc));
            else if (ei && !ej)
                fine.at(i, j) = 0.5 * (coarse.at(ic, jc) + coarse.at(ic, jc + 1));
            else
                fine.at(i, j) = 0.25 * (coarse.at(ic, jc) + coarse.at(ic + 1, jc) +
                                        coarse.at(ic, jc + 1) + coarse.at(ic + 1, jc + 1));
        }
}

}  // namespace m1gmg
