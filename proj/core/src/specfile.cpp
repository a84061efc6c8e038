#include "caidgeo/specfile.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace caidgeo {

namespace {

using nlohmann::json;

double number_of(const json& j, bool precise, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (precise && j.is_string()) {
    try {
      std::size_t used = 0;
      double v = std::stod(j.get<std::string>(), &used);
      if (used == j.get<std::string>().size()) return v;
    } catch (...) {
    }
  }
  throw std::invalid_argument("spec file: bad number at " + where);
}

Mat matrix_of(const json& j, bool precise, const std::string& where) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw std::invalid_argument("spec file: " + where + " must be an array of rows");
  Mat m(static_cast<Index>(j.size()), static_cast<Index>(j[0].size()));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (j[r].size() != j[0].size())
      throw std::invalid_argument("spec file: ragged rows in " + where);
    for (std::size_t c = 0; c < j[r].size(); ++c)
      m(static_cast<Index>(r), static_cast<Index>(c)) =
          number_of(j[r][c], precise,
                    where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

Vec vector_of(const json& j, bool precise, const std::string& where) {
  if (!j.is_array())
    throw std::invalid_argument("spec file: " + where + " must be an array");
  Vec v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[static_cast<Index>(i)] =
        number_of(j[i], precise, where + "[" + std::to_string(i) + "]");
  return v;
}

CMat operator_of(const json& j, bool precise, const std::string& where) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("spec file: " + where + " must be a matrix");
  const auto d = j.size();
  CMat m(static_cast<Index>(d), static_cast<Index>(d));
  for (std::size_t r = 0; r < d; ++r) {
    if (!j[r].is_array() || j[r].size() != d)
      throw std::invalid_argument("spec file: " + where + " must be square");
    for (std::size_t c = 0; c < d; ++c) {
      const json& e = j[r][c];
      std::string at = where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
      if (e.is_array()) {  // [re, im]
        if (e.size() != 2)
          throw std::invalid_argument("spec file: complex entry needs [re, im] at " + at);
        m(static_cast<Index>(r), static_cast<Index>(c)) = {
            number_of(e[0], precise, at), number_of(e[1], precise, at)};
      } else {
        m(static_cast<Index>(r), static_cast<Index>(c)) = {number_of(e, precise, at), 0.0};
      }
    }
  }
  return m;
}

}  // namespace

SpecFile parse_spec_text(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(origin + ": JSON parse error at byte " +
                                std::to_string(e.byte) + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("version") || j["version"] != 1)
    throw std::invalid_argument(origin + ": missing or unsupported \"version\" (expected 1)");
  const bool precise = j.value("precise", false);
  const std::string kind = j.value("kind", "classical");

  SpecFile out;
  out.name = j.value("name", origin);
  Index inputs = 0;
  if (kind == "classical") {
    if (!j.contains("matrix"))
      throw std::invalid_argument(origin + ": classical spec needs \"matrix\"");
    Mat m = matrix_of(j["matrix"], precise, "matrix");
    std::vector<std::string> il, ol;
    if (j.contains("input_labels"))
      il = j["input_labels"].get<std::vector<std::string>>();
    if (j.contains("output_labels"))
      ol = j["output_labels"].get<std::vector<std::string>>();
    inputs = m.rows();
    out.classical = Channel(std::move(m), std::move(il), std::move(ol));
  } else if (kind == "classical-quantum") {
    if (!j.contains("operators"))
      throw std::invalid_argument(origin + ": quantum spec needs \"operators\"");
    std::vector<DensityOperator> outs;
    for (std::size_t x = 0; x < j["operators"].size(); ++x)
      outs.emplace_back(
          operator_of(j["operators"][x], precise, "operators[" + std::to_string(x) + "]"));
    inputs = static_cast<Index>(outs.size());
    out.quantum = CQChannel(std::move(outs));
  } else {
    throw std::invalid_argument(origin + ": unknown kind \"" + kind + "\"");
  }

  Polyhedron lam = Polyhedron::simplex(inputs);
  if (j.contains("constraints")) {
    const json& c = j["constraints"];
    if (c.contains("A") != c.contains("b"))
      throw std::invalid_argument(origin + ": constraints need both A and b");
    if (c.contains("A")) {
      Mat a = matrix_of(c["A"], precise, "constraints.A");
      Vec b = vector_of(c["b"], precise, "constraints.b");
      if (a.cols() != inputs || a.rows() != b.size())
        throw std::invalid_argument(origin + ": constraint block shape mismatch");
      lam = lam.with_inequalities(a, b);
    }
    if (c.contains("Aeq") != c.contains("beq"))
      throw std::invalid_argument(origin + ": constraints need both Aeq and beq");
    if (c.contains("Aeq")) {
      Mat a = matrix_of(c["Aeq"], precise, "constraints.Aeq");
      Vec b = vector_of(c["beq"], precise, "constraints.beq");
      if (a.cols() != inputs || a.rows() != b.size())
        throw std::invalid_argument(origin + ": equality block shape mismatch");
      lam = lam.with_equalities(a, b);
    }
  }
  out.lam = std::move(lam);
  return out;
}

SpecFile parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str(), path);
}

}  // namespace caidgeo
