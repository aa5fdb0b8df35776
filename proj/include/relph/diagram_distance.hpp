#pragma once

#include "relph/persistence.hpp"

namespace relph {

/// Bottleneck distance between two diagrams of the same homology dimension.
/// Unmatched points pay their L-infinity distance to the diagonal. Essential
/// (infinite-death) points are matched among themselves by birth; differing
/// essential counts give +infinity. Exact: the result is always one of the
/// candidate matching costs.
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b);

/// q-Wasserstein distance with L2 ground norm, solved exactly with the
/// Hungarian algorithm on the augmented square cost matrix. Essential points
/// are handled as in bottleneck (cost |birth difference|^q). Default q = 1.
double wasserstein(const PersistenceDiagram& a, const PersistenceDiagram& b,
                   double q = 1.0);

}  // namespace relph
