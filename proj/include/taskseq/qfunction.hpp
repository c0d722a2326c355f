#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "taskseq/mdp.hpp"
#include "taskseq/tile_coding.hpp"

namespace taskseq {

/// Linear action-value function over tile-coded features:
/// q(s,a) = sum of weights[f,a] over the active features f of s.
class QFunction {
public:
    QFunction(TileCodingConfig config, EnvKind kind);

    const TileCodingConfig& config() const { return config_; }
    EnvKind kind() const { return kind_; }
    int num_actions() const { return num_actions_; }

    double value(std::span<const std::size_t> features, int action) const;
    /// q for every action, written to `out` (resized to num_actions).
    void values(std::span<const std::size_t> features, std::vector<double>& out) const;

    double weight(std::size_t feature, int action) const { return weights_[slot(feature, action)]; }
    double& weight(std::size_t feature, int action) { return weights_[slot(feature, action)]; }
    std::size_t slot(std::size_t feature, int action) const {
        return feature * static_cast<std::size_t>(num_actions_) + static_cast<std::size_t>(action);
    }

    std::vector<double>& weights() { return weights_; }
    const std::vector<double>& weights() const { return weights_; }

    /// Config header followed by (feature, action, weight) triples for non-zero weights,
    /// little-endian.
    void save(std::ostream& out) const;
    static QFunction load(std::istream& in);

    bool operator==(const QFunction&) const = default;

private:
    TileCodingConfig config_;
    EnvKind kind_;
    int num_actions_;
    std::vector<double> weights_;
};

/// Initial weights for `target_task`: a copy of the source weights. Throws
/// TransferError when the action sets differ.
QFunction transfer_value_function(const QFunction& source, const TaskSpec& target_task);

}  // namespace taskseq
