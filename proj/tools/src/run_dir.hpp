#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

namespace okpp::cli {

/// Output directory of one command. Files are written whole and checked.
class RunDirectory {
 public:
  /// Creates the directory (and parents) if needed.
  explicit RunDirectory(std::filesystem::path root);

  const std::filesystem::path& path() const { return root_; }

  /// Pretty-printed with a trailing newline.
  void write_json(const std::string& name, const nlohmann::json& j) const;
  void write_text(const std::string& name, const std::function<void(std::ostream&)>& fill) const;

 private:
  std::filesystem::path root_;
};

}  // namespace okpp::cli
