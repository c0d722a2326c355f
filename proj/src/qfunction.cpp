#include "taskseq/qfunction.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

#include "taskseq/errors.hpp"

namespace taskseq {

namespace {

constexpr std::array<char, 4> kMagic{'T', 'S', 'Q', 'F'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put_le(std::ostream& out, T value) {
    std::uint64_t bits = 0;
    if constexpr (std::is_same_v<T, double>)
        bits = std::bit_cast<std::uint64_t>(value);
    else
        bits = static_cast<std::uint64_t>(value);
    for (std::size_t i = 0; i < sizeof(T); ++i) out.put(static_cast<char>((bits >> (8 * i)) & 0xff));
}

template <typename T>
T get_le(std::istream& in) {
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        const int c = in.get();
        if (c == std::char_traits<char>::eof()) throw ConfigError("q-function stream truncated");
        bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
    }
    if constexpr (std::is_same_v<T, double>)
        return std::bit_cast<double>(bits);
    else
        return static_cast<T>(bits);
}

int actions_for(EnvKind kind) { return kind == EnvKind::GridWorld ? kGridActions : kBlockDudeActions; }

}  // namespace

QFunction::QFunction(TileCodingConfig config, EnvKind kind)
    : config_(config), kind_(kind), num_actions_(actions_for(kind)) {
    config_.validate();
    weights_.assign(config_.hash_table_size * static_cast<std::size_t>(num_actions_), 0.0);
}

double QFunction::value(std::span<const std::size_t> features, int action) const {
    double q = 0.0;
    for (std::size_t f : features) q += weights_[slot(f, action)];
    return q;
}

void QFunction::values(std::span<const std::size_t> features, std::vector<double>& out) const {
    out.assign(static_cast<std::size_t>(num_actions_), 0.0);
    for (std::size_t f : features) {
        const double* row = &weights_[slot(f, 0)];
        for (int a = 0; a < num_actions_; ++a) out[static_cast<std::size_t>(a)] += row[a];
    }
}

void QFunction::save(std::ostream& out) const {
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, kVersion);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(config_.num_tilings));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(config_.tiles_per_dimension));
    put_le<std::uint64_t>(out, config_.hash_table_size);
    put_le<double>(out, config_.extent);
    put_le<std::uint8_t>(out, static_cast<std::uint8_t>(config_.displacement));
    put_le<std::uint8_t>(out, static_cast<std::uint8_t>(kind_));
    std::uint64_t nonzero = 0;
    for (double w : weights_) nonzero += w != 0.0 ? 1 : 0;
    put_le<std::uint64_t>(out, nonzero);
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (weights_[i] == 0.0) continue;
        put_le<std::uint64_t>(out, i / static_cast<std::size_t>(num_actions_));
        put_le<std::uint32_t>(out, static_cast<std::uint32_t>(i % static_cast<std::size_t>(num_actions_)));
        put_le<double>(out, weights_[i]);
    }
}

QFunction QFunction::load(std::istream& in) {
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) throw ConfigError("not a q-function stream");
    if (get_le<std::uint32_t>(in) != kVersion) throw ConfigError("unsupported q-function version");
    TileCodingConfig cfg;
    cfg.num_tilings = static_cast<int>(get_le<std::uint32_t>(in));
    cfg.tiles_per_dimension = static_cast<int>(get_le<std::uint32_t>(in));
    cfg.hash_table_size = get_le<std::uint64_t>(in);
    cfg.extent = get_le<double>(in);
    cfg.displacement = static_cast<Displacement>(get_le<std::uint8_t>(in));
    const auto kind = static_cast<EnvKind>(get_le<std::uint8_t>(in));
    QFunction q(cfg, kind);
    const auto count = get_le<std::uint64_t>(in);
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto feature = get_le<std::uint64_t>(in);
        const auto action = get_le<std::uint32_t>(in);
        const double w = get_le<double>(in);
        if (feature >= cfg.hash_table_size || action >= static_cast<std::uint32_t>(q.num_actions()))
            throw ConfigError("q-function stream has an out-of-range weight index");
        q.weight(feature, static_cast<int>(action)) = w;
    }
    return q;
}

QFunction transfer_value_function(const QFunction& source, const TaskSpec& target_task) {
    const EnvKind target = env_kind(target_task.env);
    if (target != source.kind() || num_actions(target_task.env) != source.num_actions())
        throw TransferError(std::string("cannot transfer a ") + env_kind_name(source.kind()) +
                            " value function to " + env_kind_name(target) + " task '" +
                            target_task.task_id + "'");
    return source;
}

}  // namespace taskseq
