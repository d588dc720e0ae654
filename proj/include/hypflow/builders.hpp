#pragma once

#include <memory>
#include <vector>

#include "hypflow/graph_space.hpp"
#include "hypflow/half_plane.hpp"

namespace hypflow {

// Star graph: center vertex 0, leaves 1..3 at the given arm lengths.
std::shared_ptr<const GraphSpace> build_tripod(double a, double b, double c);

// Single edge [0, length] between vertices 0 and 1.
std::shared_ptr<const GraphSpace> build_path(double length);

// n-cycle with uniform edge weight w.
std::shared_ptr<const GraphSpace> build_cycle(int n, double w);

// Uniform random recursive tree on n vertices; weights drawn uniformly
// from [lo, hi] and quantized to multiples of 2^-10 so that tree distance
// arithmetic is exact in double precision.
std::shared_ptr<const GraphSpace> build_random_tree(int n, double lo, double hi,
                                                    std::uint64_t seed);

// One added handle: the host edge (u, v) is subdivided as
// u --a-- w1 --l_seg-- w2 --rest-- v and a parallel path w1 - m - w2 of
// length l_seg + 2 * delta_build is attached next to the kept original
// segment.
struct Detour {
    int u = 0, v = 0;
    double w = 0;        // original edge weight
    int w1 = 0, w2 = 0, m = 0;
    double a = 0;        // offset of w1 from u
    double l_seg = 0;    // bypassed segment length
};

// Tree with detour handles. The base tree embeds isometrically (detours
// are strictly longer than the segments they parallel); declared delta is
// 6 * delta_build.
struct PerturbedTree {
    std::shared_ptr<const GraphSpace> space;
    std::shared_ptr<const GraphSpace> base;
    double delta_build = 0;
    std::vector<Detour> detours;

    // The embedding of the base tree: maps a base-tree point to the same
    // geometric location in the perturbed space.
    Point embed(const Point& base_point) const;
};

// l_seg = min(delta_build, w/3) per chosen edge; eligible edges have
// w >= delta_build. Deterministic per seed.
PerturbedTree build_perturbed_tree(const std::shared_ptr<const GraphSpace>& base,
                                   double delta_build, int detour_count, std::uint64_t seed);

std::shared_ptr<const HalfPlaneSpace> build_half_plane();

}  // namespace hypflow
