#pragma once

#include "tlc/twolevel.hpp"

namespace tlc::twolevel::detail {

/// M0^-1 g following the coarse policy; recursive levels reuse cfg's schedule.
Vector coarse_solve(const TwoLevelComponents& comp, const CycleConfig& cfg, std::span<const Complex> g);

}  // namespace tlc::twolevel::detail
