#pragma once

#include <string>

#include "flapex/motion.hpp"

namespace flapex {

/// Deterministic 800x800 drawing of the base-plane projection of one sample
/// frame of the planar flapped pair: simplex edges, the inward and outward
/// reference flaps, and the current flap positions. Only d = 2 layouts are
/// supported; t must lie on the sample grid.
std::string svg_snapshot_string(const MotionSample& sample, double t);

void svg_snapshot(const MotionSample& sample, double t, const std::string& path);

}  // namespace flapex
