#pragma once

#include <string>

namespace ckmeans::log {

enum class Level { off = 0, error = 1, warn = 2, info = 3, debug = 4 };

/// Level parsed once from the CKMEANS_LOG environment variable
/// (off|error|warn|info|debug); defaults to warn.
Level threshold();

void write(Level level, const std::string& message);

inline void error(const std::string& m) { write(Level::error, m); }
inline void warn(const std::string& m) { write(Level::warn, m); }
inline void info(const std::string& m) { write(Level::info, m); }
inline void debug(const std::string& m) { write(Level::debug, m); }

}  // namespace ckmeans::log
