#include "bvass/log.hpp"

#include <cstdlib>
#include <string_view>

namespace bvass {

LogLevel log_threshold() {
  static const LogLevel level = [] {
    const char* raw = std::getenv("BVASS_LOG");
    const std::string_view value = raw ? raw : "";
    if (value == "error") return LogLevel::Error;
    if (value == "info") return LogLevel::Info;
    if (value == "debug") return LogLevel::Debug;
    return LogLevel::Warn;
  }();
  return level;
}

void log_line(LogLevel level, const std::string& message) {
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::cerr << "[bvass][" << names[static_cast<int>(level)] << "] " << message << '\n';
}

}  // namespace bvass
