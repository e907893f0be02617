#pragma once

// Library version, reported by the CLI in JSON metadata.

#define LOSSPHASE_VERSION_MAJOR 1
#define LOSSPHASE_VERSION_MINOR 0
#define LOSSPHASE_VERSION_PATCH 0

namespace lossphase {

inline constexpr const char* version_string = "1.0.0";

} // namespace lossphase
