#include "taskseq/tile_coding.hpp"

#include <cmath>

#include "taskseq/errors.hpp"

namespace taskseq {

void TileCodingConfig::validate() const {
    if (num_tilings < 1) throw ConfigError("tile coding: num_tilings must be >= 1");
    if (tiles_per_dimension < 1) throw ConfigError("tile coding: tiles_per_dimension must be >= 1");
    if (!(extent > 0.0)) throw ConfigError("tile coding: extent must be positive");
    const auto per_tiling = static_cast<std::size_t>(tiles_per_dimension) *
                            static_cast<std::size_t>(tiles_per_dimension);
    if (hash_table_size < static_cast<std::size_t>(num_tilings) * per_tiling)
        throw ConfigError("tile coding: hash_table_size must be >= num_tilings * tiles^dims");
}

std::size_t tile_index(const TileCodingConfig& cfg, int tiling, std::array<std::int64_t, 2> tile,
                       std::uint64_t context) {
    // each tiling owns its own slice of the table so tilings never collide
    const std::size_t slice = cfg.hash_table_size / static_cast<std::size_t>(cfg.num_tilings);
    std::uint64_t h = mix_seed(static_cast<std::uint64_t>(tiling), context);
    for (auto t : tile) h = mix_seed(h, static_cast<std::uint64_t>(t));
    return static_cast<std::size_t>(tiling) * slice + static_cast<std::size_t>(h % slice);
}

void tile_features(const Observation& obs, const TileCodingConfig& cfg,
                   std::vector<std::size_t>& out) {
    out.clear();
    const double width = cfg.tile_width();
    const int n = cfg.num_tilings;
    for (int k = 0; k < n; ++k) {
        std::array<std::int64_t, 2> tile{};
        for (int d = 0; d < TileCodingConfig::kStateDims; ++d) {
            const int step = cfg.displacement == Displacement::Uniform ? 1 : 2 * d + 1;
            const double offset = static_cast<double>((k * step) % n) / n;
            tile[static_cast<std::size_t>(d)] = static_cast<std::int64_t>(
                std::floor(obs.coords[static_cast<std::size_t>(d)] / width + offset));
        }
        out.push_back(tile_index(cfg, k, tile, obs.context));
    }
}

std::vector<std::size_t> tile_features(const Observation& obs, const TileCodingConfig& cfg) {
    std::vector<std::size_t> out;
    out.reserve(static_cast<std::size_t>(cfg.num_tilings));
    tile_features(obs, cfg, out);
    return out;
}

}  // namespace taskseq
