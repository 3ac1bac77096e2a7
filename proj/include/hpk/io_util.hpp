#pragma once

// Byte-stable formatting and atomic file writes (temp file + rename, so a
// crashed run never leaves a truncated report behind).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

namespace hpk {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

inline void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
  const fs::path tmp = dir / (target.filename().string() + ".tmp");
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("write_file_atomic: cannot open " + tmp.string());
    os << content;
    if (!os) throw std::runtime_error("write_file_atomic: short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace hpk
