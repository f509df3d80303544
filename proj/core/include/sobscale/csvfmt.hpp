#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace sobscale {

/// Locale-independent shortest round-trip formatting (std::to_chars).
std::string format_double(double v);
std::string format_int(long long v);

/// FNV-1a 64-bit digest of a byte string; used to stamp configs and case
/// inputs in reports. Stable across platforms, not cryptographic.
std::uint64_t fnv1a(std::string_view bytes);
std::string fnv1a_hex(std::string_view bytes);

} // namespace sobscale
