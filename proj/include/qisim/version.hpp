#pragma once

namespace qisim {

inline constexpr const char* version = "0.1.0";

} // namespace qisim
