#include "p4/tensor_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace p4 {

namespace {

using ordered_json = nlohmann::ordered_json;

std::array<std::string, 3> read_triple(const ordered_json& j, const char* key) {
  if (!j.contains(key)) throw FileFormatError(std::string("missing key: ") + key);
  const ordered_json& v = j.at(key);
  if (!v.is_array() || v.size() != 3) throw FileFormatError(std::string(key) + " must be an array of 3 strings");
  std::array<std::string, 3> out;
  for (int i = 0; i < 3; ++i) {
    if (!v[i].is_string()) throw FileFormatError(std::string(key) + " must be an array of 3 strings");
    out[i] = v[i].get<std::string>();
    try {
      parse(out[i]);
    } catch (const ParseError& e) {
      throw FileFormatError(std::string(key) + "[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return out;
}

}  // namespace

MV2 TensorFile::tensor() const {
  return make_mv2(parse_vec3(psi[0], psi[1], psi[2]), parse_vec3(phi[0], phi[1], phi[2]));
}

TensorFile TensorFile::from_tensor(std::string name, const MV2& l) {
  TensorFile f;
  f.name = std::move(name);
  f.psi = render(simplify(l.psi));
  f.phi = render(simplify(l.phi));
  return f;
}

std::string to_json_text(const TensorFile& f) {
  ordered_json j;
  j["name"] = f.name;
  j["psi"] = f.psi;
  j["phi"] = f.phi;
  if (f.notes) j["notes"] = *f.notes;
  if (f.paper_discrepancy) j["paper_discrepancy"] = *f.paper_discrepancy;
  return j.dump(2) + "\n";
}

TensorFile tensor_file_from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FileFormatError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FileFormatError("tensor file must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "name" && key != "psi" && key != "phi" && key != "notes" && key != "paper_discrepancy") {
      throw FileFormatError("unknown key: " + key);
    }
  }
  TensorFile f;
  if (!j.contains("name") || !j["name"].is_string()) throw FileFormatError("name must be a string");
  f.name = j["name"].get<std::string>();
  f.psi = read_triple(j, "psi");
  f.phi = read_triple(j, "phi");
  if (j.contains("notes")) {
    if (!j["notes"].is_string()) throw FileFormatError("notes must be a string");
    f.notes = j["notes"].get<std::string>();
  }
  if (j.contains("paper_discrepancy")) {
    if (!j["paper_discrepancy"].is_boolean()) throw FileFormatError("paper_discrepancy must be a boolean");
    f.paper_discrepancy = j["paper_discrepancy"].get<bool>();
  }
  return f;
}

TensorFile load_tensor_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileFormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return tensor_file_from_json(ss.str());
}

void save_tensor_file(const std::filesystem::path& path, const TensorFile& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileFormatError("cannot write " + path.string());
  out << to_json_text(f);
}

}  // namespace p4
