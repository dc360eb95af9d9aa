#pragma once

namespace crowdsim {
inline constexpr const char* kVersion = "0.1.0";
}
