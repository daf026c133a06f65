#pragma once

#include <cstdint>
#include <string>

#include "macc/rl/network.hpp"

namespace macc::rl {

/// Model file layout (all integers and doubles little-endian):
///   bytes 0..7   magic "MACCQNET"
///   u32          format version (1)
///   u32          agent id
///   u32          number of layer dims
///   u32[n]       layer dims
///   f64[...]     parameters in layer order: W row-major, then b
/// Round trips are bit-exact.
struct ModelFile {
    std::uint32_t agent_id = 0;
    QNetwork net;
};

void save_model(const QNetwork& net, std::uint32_t agent_id, const std::string& path);

/// Throws std::runtime_error on a missing or malformed file.
ModelFile load_model(const std::string& path);

/// Reload-or-initialize: loads `path` when it exists (malformed files
/// still throw — corruption must not pass as a fresh start), otherwise
/// returns a fresh glorot init.
QNetwork load_or_init(const std::string& path, const std::vector<int>& layer_dims,
                      std::uint32_t agent_id, sim::Rng& rng);

}  // namespace macc::rl
