#pragma once

#include <filesystem>

#include "tad/model/network.h"
#include "tad/preprocessing/contraction.h"

namespace tad {

// Network artifact: JSON with a "magic" and "version" header.
inline constexpr char const* kNetworkMagic = "tad-network";
inline constexpr int kNetworkVersion = 1;

void save_network(Network const& network, std::filesystem::path const& path);
// Throws Error on a wrong magic or version, or malformed content.
Network load_network(std::filesystem::path const& path);

// Binary hierarchy artifacts, each starting with an 8-byte magic.
void save_hierarchy(ContractionHierarchy const& ch,
                    std::filesystem::path const& path);
ContractionHierarchy load_hierarchy(std::filesystem::path const& path);

void save_core_ch(CoreCH const& core, std::filesystem::path const& path);
CoreCH load_core_ch(std::filesystem::path const& path);

// File names inside an artifact directory.
inline constexpr char const* kNetworkFile = "network.json";
inline constexpr char const* kChFile = "ch.bin";
inline constexpr char const* kCoreChFile = "core-ch.bin";

}  // namespace tad
