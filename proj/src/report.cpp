#include "betaot/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>
#include <sstream>

#include "betaot/errors.hpp"

namespace betaot {

RunReport::RunReport(std::string command) { fields_["command"] = std::move(command); }

void RunReport::set(const std::string& key, nlohmann::json value) { fields_[key] = std::move(value); }

std::string RunReport::to_text() const {
  std::ostringstream os;
  for (const auto& [key, value] : fields_.items()) {
    os << key << '=';
    if (value.is_string())
      os << value.get<std::string>();
    else
      os << value.dump();
    os << '\n';
  }
  return os.str();
}

std::string RunReport::to_json() const { return fields_.dump(2) + "\n"; }

void RunReport::write(const std::filesystem::path& path) const {
  std::ofstream text(path, std::ios::binary | std::ios::trunc);
  std::ofstream json(path.string() + ".json", std::ios::binary | std::ios::trunc);
  if (!text || !json) throw InputError("cannot write report " + path.string());
  text << to_text();
  json << to_json();
}

nlohmann::json RunReport::deterministic_fields() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [key, value] : fields_.items())
    if (key.rfind("timing.", 0) != 0) out[key] = value;
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string() + " for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw NumericalError("sha256: digest init failed");
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md;
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out.push_back(kHex[md[k] >> 4]);
    out.push_back(kHex[md[k] & 0xf]);
  }
  return out;
}

}  // namespace betaot
