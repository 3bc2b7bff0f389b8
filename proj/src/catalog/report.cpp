#include "circlesum/catalog/report.hpp"

#include "circlesum/error.hpp"

#include <cstdlib>
#include <fstream>

namespace circlesum {

std::optional<std::filesystem::path> report_dir(const std::optional<std::string>& explicit_dir) {
  if (explicit_dir && !explicit_dir->empty()) return std::filesystem::path(*explicit_dir);
  if (const char* env = std::getenv(kReportDirEnv); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::invalid_argument, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::invalid_argument, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::invalid_argument, "cannot move report into " + path.string());
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace circlesum
