#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "taskseq/mdp.hpp"

namespace taskseq {

/// How tiling k is shifted relative to tiling 0, in fractions of a tile.
enum class Displacement {
    Uniform,     // every dimension shifted by k/n
    Asymmetric,  // dimension d shifted by k*(2d+1)/n (mod 1)
};

/// Hashed tile coding over the two continuous observation coordinates. The
/// discrete observation context is folded into the hash.
struct TileCodingConfig {
    static constexpr int kStateDims = 2;

    int num_tilings = 8;
    int tiles_per_dimension = 8;  // tiles covering `extent` in each dimension
    std::size_t hash_table_size = 16384;
    double extent = 16.0;         // coordinate range shared by every task of a domain
    Displacement displacement = Displacement::Asymmetric;

    void validate() const;
    double tile_width() const { return extent / tiles_per_dimension; }
    bool operator==(const TileCodingConfig&) const = default;
};

/// Hash slot of one tile of one tiling.
std::size_t tile_index(const TileCodingConfig& cfg, int tiling, std::array<std::int64_t, 2> tile,
                       std::uint64_t context);

/// Exactly num_tilings active indices, one per tiling, in tiling order.
void tile_features(const Observation& obs, const TileCodingConfig& cfg,
                   std::vector<std::size_t>& out);
std::vector<std::size_t> tile_features(const Observation& obs, const TileCodingConfig& cfg);

}  // namespace taskseq
