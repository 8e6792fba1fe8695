#pragma once

#include <memory>

#include "skelss/distance_map.hpp"
#include "skelss/generators.hpp"
#include "skelss/run_io.hpp"
#include "skelss/skeleton.hpp"

namespace skelss {

inline Skeleton skeletonize(const BinaryImage& image, BackendKind backend) {
    const DistanceMap dm = distance_map(image);
    return backend == BackendKind::Exact ? exact_skeleton(image, dm)
                                         : thinned_skeleton(image, dm);
}

inline std::unique_ptr<PathGenerator> make_generator(const RunConfig& config) {
    switch (config.path) {
        case PathKind::Random:
            return std::make_unique<RandomPath>(config.seed, config.r);
        case PathKind::Compression:
            return std::make_unique<CompressionPath>(config.r);
        default:
            return std::make_unique<BranchPruningPath>();
    }
}

// Skeletonise per the configured backend and evolve to the empty steady
// state. Deterministic for a fixed config and input.
inline EvolveResult run_evolution(const BinaryImage& input,
                                  const RunConfig& config) {
    const Skeleton skel = skeletonize(input, config.backend);
    const std::unique_ptr<PathGenerator> generator = make_generator(config);
    return evolve(skel, *generator);
}

}  // namespace skelss
