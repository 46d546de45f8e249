#pragma once

#include <string>

#include "json_io.hpp"

namespace cara::io {

/// Planar drawing of an instance, optionally overlaid with its certificate
/// body. Throws CapabilityError unless the instance lives in R^2.
std::string render_svg(const json& instance, const json* certificate = nullptr);

}  // namespace cara::io
