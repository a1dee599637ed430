#pragma once

namespace m1gmg {

/// Physical constants, CGS by default (cm, s, K, erg).
struct PhysicalConstants {
    double c = 2.99792458e10;  ///< speed of light [cm/s]
    double a_r = 7.5657e-15;   ///< radiation constant [erg cm^-3 K^-4]
};

}  // namespace m1gmg
