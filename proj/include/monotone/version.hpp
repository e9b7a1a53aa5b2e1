#pragma once

namespace monotone {

inline constexpr const char* kToolVersion = "0.1.0";

}
