#include "paratuck2/io.hpp"

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace paratuck2 {

namespace {

using nlohmann::json;

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::Io, "load", "cannot open " + path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, "load", path.string() + ": " + e.what());
  }
  return j;
}

void write_json(const json& j, const std::filesystem::path& path, const char* what) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::Io, "save", "cannot open " + path.string() + " for writing");
  }
  out << j.dump(2) << "\n";
  if (!out) {
    throw Error(ErrorKind::Io, "save", std::string("write failed for ") + what);
  }
}

std::vector<double> require_number_array(const json& j, const char* key, const std::string& ctx) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw Error(ErrorKind::Parse, "load", ctx + ": missing array \"" + key + "\"");
  }
  try {
    return j[key].get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, "load", ctx + ": \"" + key + "\": " + e.what());
  }
}

Matrix matrix_from_json(const json& j, const std::string& ctx) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols")) {
    throw Error(ErrorKind::Parse, "load", ctx + ": expected {rows, cols, re, im}");
  }
  const auto rows = j["rows"].get<Index>();
  const auto cols = j["cols"].get<Index>();
  if (rows <= 0 || cols <= 0) {
    throw Error(ErrorKind::Parse, "load", ctx + ": non-positive dims");
  }
  const auto re = require_number_array(j, "re", ctx);
  const auto im = require_number_array(j, "im", ctx);
  if (static_cast<Index>(re.size()) != rows * cols || im.size() != re.size()) {
    throw Error(ErrorKind::Parse, "load", ctx + ": array length does not match rows*cols");
  }
  Matrix M(rows, cols);
  for (Index n = 0; n < rows * cols; ++n) {
    M.data()[n] = Complex(re[static_cast<std::size_t>(n)], im[static_cast<std::size_t>(n)]);
  }
  return M;
}

json matrix_to_json(const Matrix& M) {
  std::vector<double> re(static_cast<std::size_t>(M.size()));
  std::vector<double> im(re.size());
  for (Index n = 0; n < M.size(); ++n) {
    re[static_cast<std::size_t>(n)] = M.data()[n].real();
    im[static_cast<std::size_t>(n)] = M.data()[n].imag();
  }
  return {{"rows", M.rows()}, {"cols", M.cols()}, {"re", re}, {"im", im}};
}

}  // namespace

Tensor3 load_tensor(const std::filesystem::path& path) {
  const json j = read_json(path);
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != 3) {
    throw Error(ErrorKind::Parse, "load", path.string() + ": missing 3-element \"dims\"");
  }
  Index dims[3];
  for (int d = 0; d < 3; ++d) {
    if (!j["dims"][d].is_number_integer() || j["dims"][d].get<Index>() <= 0) {
      throw Error(ErrorKind::Parse, "load", path.string() + ": dims must be positive integers");
    }
    dims[d] = j["dims"][d].get<Index>();
  }
  const auto re = require_number_array(j, "data_re", path.string());
  const auto im = require_number_array(j, "data_im", path.string());
  const auto expected = static_cast<std::size_t>(dims[0] * dims[1] * dims[2]);
  if (re.size() != expected || im.size() != expected) {
    throw Error(ErrorKind::Parse, "load",
                path.string() + ": data length " + std::to_string(re.size()) +
                    " does not match dims product " + std::to_string(expected));
  }
  std::vector<Complex> data(expected);
  for (std::size_t n = 0; n < expected; ++n) data[n] = Complex(re[n], im[n]);
  try {
    return Tensor3::from_data(dims[0], dims[1], dims[2], std::move(data));
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, "load", path.string() + ": " + e.what());
  }
}

void save_tensor(const Tensor3& T, const std::filesystem::path& path) {
  std::vector<double> re(static_cast<std::size_t>(T.size()));
  std::vector<double> im(re.size());
  for (Index n = 0; n < T.size(); ++n) {
    re[static_cast<std::size_t>(n)] = T.data()[n].real();
    im[static_cast<std::size_t>(n)] = T.data()[n].imag();
  }
  const json j = {{"dims", {T.dim1(), T.dim2(), T.dim3()}}, {"data_re", re}, {"data_im", im}};
  write_json(j, path, "tensor");
}

ParaTuck2Factors load_factors(const std::filesystem::path& path) {
  const json j = read_json(path);
  Matrix m[5];
  const char* keys[5] = {"A", "B", "F", "G", "H"};
  for (int n = 0; n < 5; ++n) {
    if (!j.contains(keys[n])) {
      throw Error(ErrorKind::Parse, "load", path.string() + ": missing factor \"" + keys[n] + "\"");
    }
    m[n] = matrix_from_json(j[keys[n]], path.string() + ":" + keys[n]);
  }
  try {
    return {std::move(m[0]), std::move(m[1]), std::move(m[2]), std::move(m[3]), std::move(m[4])};
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, "load", path.string() + ": " + e.what());
  }
}

void save_factors(const ParaTuck2Factors& f, const std::filesystem::path& path) {
  const json j = {{"A", matrix_to_json(f.A)},
                  {"B", matrix_to_json(f.B)},
                  {"F", matrix_to_json(f.F)},
                  {"G", matrix_to_json(f.G)},
                  {"H", matrix_to_json(f.H)}};
  write_json(j, path, "factors");
}

}  // namespace paratuck2
