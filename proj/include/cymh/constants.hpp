#pragma once

// Constants that were measured once and then frozen.  The suites that
// consume them re-measure and assert the frozen value still covers the
// observation, so a drift in conventions shows up as a red test rather
// than a silently moving bound.

namespace cymh {

// Ceiling of the flat-to-cylinder leaf norm ratio for one-forms over the
// standard sampled window (|t| <= 3, r <= 6).  Only the floor of 1/8 is
// structural; the ratio grows without bound toward the null directions, so
// the ceiling is a recorded observation for this window, with margin.
inline constexpr double kNormEquivUpperC = 2000.0;

// Prefactor of the quartic-sector cone bound
//   ||phi||_{L2(cone)} <= C * sqrt(Eloc) * R^{3/4} * (1 + R^{1/4}),
// calibrated on the evolved reference lump with a three-fold margin.
inline constexpr double kL2ConeQuarticC = 0.5;

}  // namespace cymh
