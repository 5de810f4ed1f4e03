#pragma once

namespace cbws {

inline constexpr const char* kArtifactName = "cbws";
inline constexpr const char* kArtifactVersion = "0.1.0";

} // namespace cbws
