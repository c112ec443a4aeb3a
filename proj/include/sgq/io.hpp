#pragma once

#include <string>

namespace sgq {

// %.17g rendering used by every CSV writer.
std::string fmt17(double v);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace sgq
