#include "sfctl/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace sfctl {

LogLevel log_level() {
  static LogLevel level = [] {
    const char* env = std::getenv("SFCTL_LOG_LEVEL");
    if (!env || !*env) return LogLevel::Info;
    if (std::strcmp(env, "error") == 0) return LogLevel::Error;
    if (std::strcmp(env, "info") == 0) return LogLevel::Info;
    if (std::strcmp(env, "debug") == 0) return LogLevel::Debug;
    std::fprintf(stderr, "[sfctl] unknown SFCTL_LOG_LEVEL '%s', using info\n", env);
    return LogLevel::Info;
  }();
  return level;
}

static void emit(LogLevel at, const std::string& msg) {
  if (log_level() >= at) std::fprintf(stderr, "[sfctl] %s\n", msg.c_str());
}

void log_error(const std::string& msg) { emit(LogLevel::Error, msg); }
void log_info(const std::string& msg) { emit(LogLevel::Info, msg); }
void log_debug(const std::string& msg) { emit(LogLevel::Debug, msg); }

}  // namespace sfctl
