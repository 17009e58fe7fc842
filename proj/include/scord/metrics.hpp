// Graph comparison metrics.

#pragma once

#include "scord/dag.hpp"
#include "scord/order.hpp"

namespace scord {

/// Structural Hamming distance: insertions + deletions + reversals, with a
/// reversed edge counting once.
int shd(const CausalGraph& est, const Dag& truth);

}  // namespace scord
