#include "cav/logging.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

#include "cav/errors.hpp"
#include "nlohmann/json.hpp"

namespace cav::log {

namespace {
std::atomic<Level> g_level{Level::kInfo};
std::mutex g_mutex;

const char* level_name(Level l) {
  switch (l) {
    case Level::kDebug: return "debug";
    case Level::kInfo: return "info";
    case Level::kWarn: return "warn";
    case Level::kError: return "error";
  }
  return "?";
}
}  // namespace

void set_level(Level level) { g_level.store(level); }
Level level() { return g_level.load(); }

Level parse_level(const std::string& name) {
  if (name == "debug") return Level::kDebug;
  if (name == "info") return Level::kInfo;
  if (name == "warn") return Level::kWarn;
  if (name == "error") return Level::kError;
  throw InputError("unknown log level: " + name);
}

void emit(Level lvl, const std::string& event, std::initializer_list<Field> fields) {
  if (lvl < g_level.load()) return;
  std::lock_guard<std::mutex> lock(g_mutex);
  if (g_level.load() == Level::kDebug) {
    nlohmann::json j;
    j["level"] = level_name(lvl);
    j["event"] = event;
    for (const auto& [k, v] : fields) j[k] = v;
    std::cerr << j.dump() << "\n";
  } else {
    std::cerr << "[" << level_name(lvl) << "] " << event;
    for (const auto& [k, v] : fields) std::cerr << " " << k << "=" << v;
    std::cerr << "\n";
  }
}

}  // namespace cav::log
