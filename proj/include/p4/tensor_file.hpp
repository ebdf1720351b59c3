#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "p4/multivec.hpp"

namespace p4 {

class FileFormatError : public Error {
 public:
  using Error::Error;
};

struct TensorFile {
  std::string name;
  std::array<std::string, 3> psi;
  std::array<std::string, 3> phi;
  std::optional<std::string> notes;
  std::optional<bool> paper_discrepancy;

  MV2 tensor() const;
  static TensorFile from_tensor(std::string name, const MV2& l);

  bool operator==(const TensorFile&) const = default;
};

// Canonical text: keys in field order, 2-space indent, trailing LF.
std::string to_json_text(const TensorFile& f);
// Rejects unknown keys, wrong shapes and expressions that do not parse.
TensorFile tensor_file_from_json(std::string_view text);

TensorFile load_tensor_file(const std::filesystem::path& path);
void save_tensor_file(const std::filesystem::path& path, const TensorFile& f);

}  // namespace p4
