// Synthetic comb profiles with prescribed spacing, finesse and depth.

#pragma once

#include "afc/spectral.hpp"

namespace afc {

/// Square teeth of width spacing/finesse and height tooth_od on a background, centered at
/// offset + n*spacing. Bin values are area-weighted so tooth edges need not fall on samples.
InhomogeneousProfile square_tooth_comb(const SpectralGrid& grid, double spacing, double finesse, double tooth_od,
                                       double background_od, double offset = 0.0, double length_m = 0.0);

/// Smooth periodic teeth |cos(pi x / spacing)|^(2p) scaled by contrast on a background.
/// p is chosen so the half-maximum width is exactly spacing/finesse.
InhomogeneousProfile shaped_comb(const SpectralGrid& grid, double spacing, double finesse, double contrast,
                                 double background_od, double offset = 0.0, double length_m = 0.0);

// Tooth exponent 2p for shaped_comb.
double shaped_comb_exponent(double finesse);

struct ShapedCombParameters {
  double finesse = 0.0;
  double contrast = 0.0;
  double background_od = 0.0;
};

/// Raw shaped_comb parameters whose observed absorption Re(complex_depth) at this spacing
/// shows the requested finesse, OD contrast and mean trough OD (as analyze_comb reports them
/// on [window_lo, window_hi]). Throws UnreachableTargetError when homogeneous broadening
/// makes the targets impossible.
ShapedCombParameters calibrate_shaped_comb(const SpectralGrid& grid, double spacing, const IonParameters& ions,
                                           double observed_finesse, double observed_contrast,
                                           double observed_background, double window_lo = -25e6,
                                           double window_hi = 25e6);

}  // namespace afc
