#pragma once

#include <iostream>
#include <sstream>

namespace bvass {

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

/// Threshold from the BVASS_LOG environment variable (error, warn, info,
/// debug); defaults to warn. Diagnostics go to stderr only.
LogLevel log_threshold();

void log_line(LogLevel level, const std::string& message);

}  // namespace bvass

#define BVASS_LOG_AT(level, expr)                                  \
  do {                                                             \
    if (static_cast<int>(level) <= static_cast<int>(::bvass::log_threshold())) { \
      std::ostringstream bvass_log_stream;                         \
      bvass_log_stream << expr;                                    \
      ::bvass::log_line(level, bvass_log_stream.str());            \
    }                                                              \
  } while (0)

#define BVASS_LOG_ERROR(expr) BVASS_LOG_AT(::bvass::LogLevel::Error, expr)
#define BVASS_LOG_WARN(expr) BVASS_LOG_AT(::bvass::LogLevel::Warn, expr)
#define BVASS_LOG_INFO(expr) BVASS_LOG_AT(::bvass::LogLevel::Info, expr)
#define BVASS_LOG_DEBUG(expr) BVASS_LOG_AT(::bvass::LogLevel::Debug, expr)
