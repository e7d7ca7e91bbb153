#include "anisoac/io.hpp"

#include <json.hpp>

#include <bit>
#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "anisoac/error.hpp"

namespace anisoac {

static_assert(std::endian::native == std::endian::little, "field dumps assume a little-endian host");

namespace {

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, mode);
  if (!out) throw Error(ErrorCode::ConfigError, "cannot write '" + path + "'");
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_field(const std::string& prefix, const ScalarField& field, double epsilon) {
  auto bin = open_out(prefix + ".bin", std::ios::out | std::ios::binary);
  bin.write(reinterpret_cast<const char*>(field.values.data()),
            static_cast<std::streamsize>(field.values.size() * sizeof(double)));
  nlohmann::json meta = {{"n", field.grid.n}, {"h", field.grid.h}, {"t", field.t}, {"epsilon", epsilon}};
  auto js = open_out(prefix + ".json");
  js << meta.dump(2) << "\n";
}

ScalarField read_field(const std::string& prefix) {
  std::ifstream js(prefix + ".json");
  if (!js) throw Error(ErrorCode::ConfigError, "cannot open '" + prefix + ".json'");
  const auto meta = nlohmann::json::parse(js);
  ScalarField f(Grid(meta.at("n").get<int>()));
  f.t = meta.at("t").get<double>();
  std::ifstream bin(prefix + ".bin", std::ios::binary);
  if (!bin) throw Error(ErrorCode::ConfigError, "cannot open '" + prefix + ".bin'");
  bin.read(reinterpret_cast<char*>(f.values.data()), static_cast<std::streamsize>(f.values.size() * sizeof(double)));
  if (bin.gcount() != static_cast<std::streamsize>(f.values.size() * sizeof(double)))
    throw Error(ErrorCode::ConfigError, "'" + prefix + ".bin' is truncated");
  return f;
}

void write_curve_csv(const std::string& path, const FrontCurve& curve) {
  auto out = open_out(path);
  out << "x,y\n";
  for (const auto& p : curve.vertices) out << format_number(p.x()) << "," << format_number(p.y()) << "\n";
}

void write_text(const std::string& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
}

}  // namespace anisoac
