#include "qdist/json_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qdist {

namespace {

constexpr const char* kModule = "cli";

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::InvalidInput, kModule, msg); }

double number(const json& v, const std::string& where) {
  if (!v.is_number()) bad(where + " must be a number");
  return v.get<double>();
}

Mat real_rows(const json& rows, int dim, const std::string& field) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
    bad("\"" + field + "\" must be an array of " + std::to_string(dim) + " rows");
  }
  Mat m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      bad("\"" + field + "\" row " + std::to_string(i) + " must have " + std::to_string(dim) + " entries");
    }
    for (int k = 0; k < dim; ++k) m(i, k) = number(row[k], field + " entry");
  }
  return m;
}

Vec real_list(const json& v, const std::string& field) {
  if (!v.is_array()) bad("\"" + field + "\" must be an array");
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = number(v[i], field + " entry");
  return out;
}

}  // namespace

CMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) bad("matrix must be a JSON object");
  if (!j.contains("re")) bad("matrix needs a \"re\" field");
  int dim = j.contains("dim") ? static_cast<int>(number(j.at("dim"), "dim")) : static_cast<int>(j.at("re").size());
  if (dim < 1) bad("matrix dimension must be >= 1");
  const Mat re = real_rows(j.at("re"), dim, "re");
  const Mat im = j.contains("im") ? real_rows(j.at("im"), dim, "im") : Mat::Zero(dim, dim);
  CMatrix m(dim, dim);
  m.real() = re;
  m.imag() = im;
  return m;
}

json matrix_to_json(const CMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json rr = json::array();
    json ir = json::array();
    for (int k = 0; k < m.cols(); ++k) {
      rr.push_back(m(i, k).real());
      ir.push_back(m(i, k).imag());
    }
    re.push_back(rr);
    im.push_back(ir);
  }
  return {{"dim", m.rows()}, {"re", re}, {"im", im}};
}

json real_matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int k = 0; k < m.cols(); ++k) r.push_back(m(i, k));
    rows.push_back(r);
  }
  return rows;
}

AmplitudeState state_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re")) bad("state must be an object with a \"re\" array");
  const Vec re = real_list(j.at("re"), "re");
  const Vec im = j.contains("im") ? real_list(j.at("im"), "im") : Vec::Zero(re.size());
  if (im.size() != re.size()) bad("\"re\" and \"im\" must have equal length");
  CVec c(re.size());
  c.real() = re;
  c.imag() = im;
  std::vector<int> labels;
  if (j.contains("labels")) {
    if (!j.at("labels").is_array()) bad("\"labels\" must be an array");
    for (const json& l : j.at("labels")) {
      if (!l.is_number_integer()) bad("labels must be integers");
      labels.push_back(l.get<int>());
    }
  }
  return AmplitudeState::make(c, labels);
}

json state_to_json(const AmplitudeState& s) {
  json re = json::array();
  json im = json::array();
  for (int i = 0; i < s.size(); ++i) {
    re.push_back(s.coeffs[i].real());
    im.push_back(s.coeffs[i].imag());
  }
  return {{"re", re}, {"im", im}, {"labels", s.labels}};
}

Constants constants_from_json(const json& j) {
  if (!j.is_object()) bad("constants must be a JSON object");
  Constants k;
  if (j.contains("preset")) {
    const std::string p = j.at("preset").get<std::string>();
    if (p == "si") {
      k = Constants::si();
    } else if (p != "natural") {
      bad("unknown constants preset \"" + p + "\"");
    }
  }
  auto take = [&](const char* key, double& dst) {
    if (!j.contains(key)) return;
    const double v = number(j.at(key), key);
    if (!(v > 0.0) || !std::isfinite(v)) bad(std::string("constant ") + key + " must be positive");
    dst = v;
  };
  take("hbar", k.hbar);
  take("c", k.c);
  take("k_B", k.k_B);
  take("G", k.G);
  for (const auto& [key, _] : j.items()) {
    if (key != "preset" && key != "hbar" && key != "c" && key != "k_B" && key != "G") {
      bad("unknown constants field \"" + key + "\"");
    }
  }
  return k;
}

Constants constants_from_env() {
  const char* path = std::getenv("QDIST_CONSTANTS");
  if (path == nullptr || *path == '\0') return Constants::natural();
  return constants_from_json(read_json_file(path));
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad(path + ": " + e.what());
  }
}

json error_to_json(const Error& e) {
  return {{"error", std::string(to_string(e.kind()))},
          {"module", e.module()},
          {"message", e.what()},
          {"category", is_numerical(e.kind()) ? "numerical" : "validation"}};
}

}  // namespace qdist
