#include "holocalc/json_io.hpp"

#include <fstream>

namespace holocalc {

namespace {

void expect(bool cond, const std::string& why) {
  if (!cond) throw JsonError("json: " + why);
}

std::vector<std::vector<double>> real_grid(const Json& j, std::size_t n,
                                           const char* field) {
  expect(j.is_array() && j.size() == n, std::string(field) + " must be an n x n array");
  std::vector<std::vector<double>> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    expect(j[i].is_array() && j[i].size() == n,
           std::string(field) + " row has wrong length");
    for (const auto& v : j[i]) {
      expect(v.is_number(), std::string(field) + " entries must be numbers");
      grid[i].push_back(v.get<double>());
    }
  }
  return grid;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json re = Json::array(), im = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json rrow = Json::array(), irow = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      rrow.push_back(m(i, j).real());
      irow.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return Json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const Json& j) {
  expect(j.is_object(), "operator must be an object");
  expect(j.contains("dim") && j["dim"].is_number_unsigned(), "operator needs a dim");
  const std::size_t n = j["dim"].get<std::size_t>();
  expect(n >= 1, "operator dim must be >= 1");
  expect(j.contains("re"), "operator needs a re array");
  const auto re = real_grid(j["re"], n, "re");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) m(i, k) = Complex(re[i][k], 0.0);
  if (j.contains("im")) {
    const auto im = real_grid(j["im"], n, "im");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) m(i, k) += Complex(0.0, im[i][k]);
  }
  expect(m.all_finite(), "operator entries must be finite");
  return m;
}

Json calibration_to_json(const Calibration& p) {
  Json members = Json::array();
  for (const auto& s : p.members()) {
    if (s.kind() == Seminorm::Kind::WeightedSup) {
      members.push_back(Json{{"kind", "weighted_sup"}, {"weights", s.weights()}});
    } else {
      members.push_back(Json{{"kind", "derived"},
                             {"base_weights", s.weights()},
                             {"mu", s.mu()},
                             {"stack_depth", s.stack_depth()}});
    }
  }
  return Json{{"dim", p.dim()}, {"seminorms", std::move(members)}};
}

Calibration calibration_from_json(const Json& j) {
  expect(j.is_object(), "calibration must be an object");
  expect(j.contains("dim") && j["dim"].is_number_unsigned(), "calibration needs a dim");
  const std::size_t n = j["dim"].get<std::size_t>();
  expect(j.contains("seminorms") && j["seminorms"].is_array() && !j["seminorms"].empty(),
         "calibration needs a nonempty seminorms array");
  std::vector<Seminorm> members;
  for (const auto& s : j["seminorms"]) {
    expect(s.is_object() && s.contains("kind"), "seminorm needs a kind");
    expect(s["kind"] == "weighted_sup",
           "only weighted_sup seminorms are accepted as input");
    expect(s.contains("weights") && s["weights"].is_array() && s["weights"].size() == n,
           "seminorm weights must match dim");
    std::vector<double> w;
    for (const auto& v : s["weights"]) {
      expect(v.is_number(), "weights must be numbers");
      w.push_back(v.get<double>());
    }
    members.push_back(Seminorm::weighted_sup(std::move(w)));
  }
  try {
    return Calibration(std::move(members));
  } catch (const Error& e) {
    throw JsonError(std::string("calibration: ") + e.what());
  }
}

Json domain_to_json(const Domain& d) {
  Json disks = Json::array();
  for (const auto& disk : d.disks)
    disks.push_back(Json{{"c", {disk.center.real(), disk.center.imag()}},
                         {"r", disk.radius}});
  return Json{{"disks", std::move(disks)}};
}

Domain domain_from_json(const Json& j) {
  expect(j.is_object() && j.contains("disks") && j["disks"].is_array() &&
             !j["disks"].empty(),
         "domain needs a nonempty disks array");
  Domain d;
  for (const auto& disk : j["disks"]) {
    expect(disk.contains("c") && disk["c"].is_array() && disk["c"].size() == 2,
           "disk needs c = [re, im]");
    expect(disk.contains("r") && disk["r"].is_number(), "disk needs a radius");
    const double r = disk["r"].get<double>();
    expect(r > 0.0, "disk radius must be positive");
    d.disks.push_back(
        {Complex(disk["c"][0].get<double>(), disk["c"][1].get<double>()), r});
  }
  return d;
}

Json contour_to_json(const Contour& gamma) {
  Json circles = Json::array();
  for (const auto& c : gamma.circles)
    circles.push_back(Json{{"c", {c.center.real(), c.center.imag()}},
                           {"r", c.radius},
                           {"orient", c.orientation},
                           {"nodes", c.nodes}});
  return Json{{"circles", std::move(circles)}, {"separation", gamma.separation}};
}

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  expect(j.is_object() && j.contains("re"), "complex value needs re (and optional im)");
  return Complex(j["re"].get<double>(),
                 j.contains("im") ? j["im"].get<double>() : 0.0);
}

Json cvector_to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(complex_to_json(z));
  return out;
}

Vector cvector_from_json(const Json& j) {
  expect(j.is_array(), "expected an array of complex values");
  Vector v;
  for (const auto& e : j) v.push_back(complex_from_json(e));
  return v;
}

Json renormed_to_json(const RenormedCalibration& r) {
  Json members = Json::array();
  for (const auto& m : r.members) {
    Json entry{{"lower_const", m.lower_const}};
    if (m.upper_available) {
      entry["upper_const"] = m.upper_const;
      entry["upper_partner"] = m.upper_partner;
    } else {
      entry["upper_const"] = nullptr;
    }
    members.push_back(std::move(entry));
  }
  Json out{{"mode", r.mode},
           {"members", std::move(members)},
           {"operator_bound", r.operator_bound},
           {"bound_exact", r.bound_exact},
           {"bound_claim", r.bound_claim},
           {"renormed", calibration_to_json(r.renormed)}};
  if (r.mu_a > 0.0) out["mu_a"] = r.mu_a;
  if (r.mu_b > 0.0) out["mu_b"] = r.mu_b;
  if (r.n_sup > 0) out["n_sup"] = r.n_sup;
  if (r.mode == "joint_commuting") out["operator_bound_b"] = r.operator_bound_b;
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JsonError("cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw JsonError("parse error in " + path + ": " + e.what());
  }
}

}  // namespace holocalc
