#include "run_dir.hpp"

#include <fstream>
#include <stdexcept>

namespace okpp::cli {

RunDirectory::RunDirectory(std::filesystem::path root) : root_(std::move(root)) {
  std::filesystem::create_directories(root_);
}

void RunDirectory::write_json(const std::string& name, const nlohmann::json& j) const {
  write_text(name, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

void RunDirectory::write_text(const std::string& name,
                              const std::function<void(std::ostream&)>& fill) const {
  const auto file = root_ / name;
  std::ofstream os(file, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + file.string() + " for writing");
  fill(os);
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + file.string());
}

}  // namespace okpp::cli
