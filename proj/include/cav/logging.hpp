#pragma once

#include <initializer_list>
#include <string>
#include <utility>

namespace cav::log {

enum class Level { kDebug = 0, kInfo = 1, kWarn = 2, kError = 3 };

// At kDebug the sink emits one JSON object per line on stderr; at other
// levels it emits human-readable lines. Thread-safe.
void set_level(Level level);
Level level();
Level parse_level(const std::string& name);  // "debug" | "info" | "warn" | "error"

using Field = std::pair<std::string, std::string>;

void emit(Level level, const std::string& event, std::initializer_list<Field> fields = {});

inline void debug(const std::string& event, std::initializer_list<Field> fields = {}) {
  emit(Level::kDebug, event, fields);
}
inline void info(const std::string& event, std::initializer_list<Field> fields = {}) {
  emit(Level::kInfo, event, fields);
}
inline void warn(const std::string& event, std::initializer_list<Field> fields = {}) {
  emit(Level::kWarn, event, fields);
}
inline void error(const std::string& event, std::initializer_list<Field> fields = {}) {
  emit(Level::kError, event, fields);
}

}  // namespace cav::log
