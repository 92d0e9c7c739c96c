#include "ckmeans/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <mutex>

namespace ckmeans::log {
namespace {

Level parse_level() {
  const char* env = std::getenv("CKMEANS_LOG");
  if (env == nullptr) return Level::warn;
  const std::string value(env);
  if (value == "off") return Level::off;
  if (value == "error") return Level::error;
  if (value == "warn") return Level::warn;
  if (value == "info") return Level::info;
  if (value == "debug") return Level::debug;
  return Level::warn;
}

const char* tag(Level level) {
  switch (level) {
    case Level::error: return "error";
    case Level::warn: return "warn";
    case Level::info: return "info";
    case Level::debug: return "debug";
    default: return "?";
  }
}

std::mutex io_mutex;

}  // namespace

Level threshold() {
  static const Level level = parse_level();
  return level;
}

void write(Level level, const std::string& message) {
  if (static_cast<int>(level) > static_cast<int>(threshold())) return;
  std::lock_guard<std::mutex> lock(io_mutex);
  std::fprintf(stderr, "[ckmeans %s] %s\n", tag(level), message.c_str());
}

}  // namespace ckmeans::log
