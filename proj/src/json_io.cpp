#include "sepalg/json_io.hpp"

#include <filesystem>
#include <fstream>

namespace sepalg {

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  check_usage(in.good(), "cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("bad JSON in " + path + ": " + e.what());
  }
  return j;
}

FieldRef field_from_json(const Json& j) {
  check_usage(j.is_object() && j.contains("kind"), "field spec needs a kind");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "rationals") return Field::rationals();
  if (kind == "prime") {
    check_usage(j.contains("p"), "prime field needs p");
    return Field::prime(j.at("p").get<uint64_t>());
  }
  if (kind == "extension") {
    check_usage(j.contains("p") && j.contains("deg") && j.contains("modulus"),
                "extension field needs p, deg and modulus");
    std::vector<uint64_t> mod;
    for (const auto& c : j.at("modulus")) mod.push_back(c.get<uint64_t>());
    return Field::extension(j.at("p").get<uint64_t>(), j.at("deg").get<int>(), std::move(mod));
  }
  throw UsageError("unknown field kind: " + kind);
}

Json field_to_json(const FieldRef& f) {
  Json j;
  switch (f->kind()) {
    case Field::Kind::Rationals:
      j["kind"] = "rationals";
      break;
    case Field::Kind::Prime:
      j["kind"] = "prime";
      j["p"] = f->p();
      break;
    case Field::Kind::Extension:
      j["kind"] = "extension";
      j["p"] = f->p();
      j["deg"] = f->degree();
      j["modulus"] = f->modulus();
      break;
  }
  return j;
}

Perm perm_from_json(const Json& j, uint32_t degree) {
  if (j.is_string()) return perm_from_cycles(j.get<std::string>(), degree);
  check_usage(j.is_array(), "permutation must be an array or cycle string");
  Perm p;
  for (const auto& v : j) p.push_back(v.get<uint32_t>());
  check_usage(p.size() == degree, "permutation length must equal the degree");
  check_usage(perm_is_bijection(p), "not a permutation");
  return p;
}

GroupRef group_from_json(const Json& j, size_t capacity) {
  check_usage(j.is_object() && j.contains("degree") && j.contains("generators"),
              "group needs degree and generators");
  uint32_t degree = j.at("degree").get<uint32_t>();
  std::vector<Perm> gens;
  for (const auto& g : j.at("generators")) gens.push_back(perm_from_json(g, degree));
  std::string name = j.value("name", std::string());
  return PermGroup::from_generators(degree, std::move(gens), std::move(name), capacity);
}

Json group_to_json(const GroupRef& g) {
  Json j;
  j["degree"] = g->degree();
  Json gens = Json::array();
  for (const Perm& p : g->generators()) gens.push_back(p);
  j["generators"] = std::move(gens);
  if (!g->name().empty()) j["name"] = g->name();
  return j;
}

GroupRef group_from_ref(const Json& j, const std::string& base_dir, size_t capacity) {
  if (j.is_string()) {
    std::filesystem::path p(j.get<std::string>());
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    return group_from_json(load_json_file(p.string()), capacity);
  }
  return group_from_json(j, capacity);
}

Scalar scalar_from_json(const FieldRef& f, const Json& j) {
  if (j.is_number_integer()) return Scalar::of_int(f, j.get<long>());
  check_usage(j.is_string(), "coefficients must be decimal strings or integers");
  return scalar_from_string(f, j.get<std::string>());
}

Json scalar_to_json(const Scalar& s) { return s.str(); }

StructureAlgebra algebra_from_json(const Json& j, const std::string& base_dir) {
  check_usage(j.is_object() && j.contains("field") && j.contains("dim"),
              "algebra needs field and dim");
  FieldRef f = field_from_json(j.at("field"));
  size_t dim = j.at("dim").get<size_t>();
  std::vector<std::string> labels;
  if (j.contains("basis"))
    for (const auto& l : j.at("basis")) labels.push_back(l.get<std::string>());
  Vec unit = vec_zero(f, dim);
  if (dim > 0) {
    check_usage(j.contains("unit"), "algebra needs a unit vector");
    const Json& u = j.at("unit");
    check_usage(u.is_array() && u.size() == dim, "unit length must equal dim");
    for (size_t i = 0; i < dim; ++i) unit[i] = scalar_from_json(f, u[i]);
  }
  StructureAlgebra a(f, dim, std::move(labels), std::move(unit));
  if (j.contains("structure"))
    for (const auto& entry : j.at("structure")) {
      check_usage(entry.is_array() && entry.size() == 4, "structure entries are [i,j,k,coeff]");
      a.add_structure_entry(entry[0].get<uint32_t>(), entry[1].get<uint32_t>(),
                            entry[2].get<uint32_t>(), scalar_from_json(f, entry[3]));
    }
  if (j.contains("grading")) {
    std::vector<uint8_t> par;
    for (const auto& p : j.at("grading")) par.push_back(p.get<uint8_t>());
    a.set_grading(std::move(par));
  }
  if (j.contains("action")) {
    const Json& act = j.at("action");
    check_usage(act.contains("group") && act.contains("generators"),
                "action needs a group and generator matrices");
    GroupAction ga;
    ga.group = group_from_ref(act.at("group"), base_dir);
    for (const auto& mj : act.at("generators")) {
      check_usage(mj.is_array() && mj.size() == dim, "action matrix must be dim x dim");
      Matrix m(f, dim, dim);
      for (size_t r = 0; r < dim; ++r) {
        check_usage(mj[r].is_array() && mj[r].size() == dim, "action matrix must be dim x dim");
        for (size_t c = 0; c < dim; ++c) m.at(r, c) = scalar_from_json(f, mj[r][c]);
      }
      ga.generator_matrices.push_back(std::move(m));
    }
    a.set_action(std::move(ga));
  }
  return a;
}

Json algebra_to_json(const StructureAlgebra& a) {
  Json j;
  j["field"] = field_to_json(a.field());
  j["dim"] = a.dim();
  j["basis"] = a.basis_labels();
  Json unit = Json::array();
  for (const Scalar& c : a.unit()) unit.push_back(scalar_to_json(c));
  j["unit"] = std::move(unit);
  Json structure = Json::array();
  for (uint32_t i = 0; i < a.dim(); ++i)
    for (uint32_t jj = 0; jj < a.dim(); ++jj)
      for (const auto& [k, c] : a.basis_product(i, jj))
        structure.push_back(Json::array({i, jj, k, scalar_to_json(c)}));
  j["structure"] = std::move(structure);
  if (a.grading().has_value()) j["grading"] = *a.grading();
  if (a.action().has_value()) {
    Json act;
    act["group"] = group_to_json(a.action()->group);
    Json gens = Json::array();
    for (const Matrix& m : a.action()->generator_matrices) {
      Json rows = Json::array();
      for (size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m.at(r, c)));
        rows.push_back(std::move(row));
      }
      gens.push_back(std::move(rows));
    }
    act["generators"] = std::move(gens);
    j["action"] = std::move(act);
  }
  return j;
}

GSet gset_from_json(const Json& j, const std::string& base_dir) {
  check_usage(j.is_object() && j.contains("group") && j.contains("points") && j.contains("action"),
              "G-set needs group, points and action");
  GSet x;
  x.group = group_from_ref(j.at("group"), base_dir);
  for (const auto& p : j.at("points")) x.points.push_back(p.get<std::string>());
  size_t ngen = x.group->generators().size();
  x.generator_action.assign(ngen, perm_identity(static_cast<uint32_t>(x.points.size())));
  const Json& act = j.at("action");
  if (act.is_array()) {
    check_usage(act.size() == ngen, "one action permutation per generator");
    for (size_t t = 0; t < ngen; ++t)
      x.generator_action[t] = perm_from_json(act[t], static_cast<uint32_t>(x.points.size()));
  } else {
    check_usage(act.is_object(), "action must be an object or array");
    for (const auto& [key, val] : act.items()) {
      size_t t = std::stoul(key);
      check_usage(t < ngen, "action key out of range");
      x.generator_action[t] = perm_from_json(val, static_cast<uint32_t>(x.points.size()));
    }
  }
  return x;
}

Json gset_to_json(const GSet& x) {
  Json j;
  j["group"] = group_to_json(x.group);
  j["points"] = x.points;
  Json act;
  for (size_t t = 0; t < x.generator_action.size(); ++t)
    act[std::to_string(t)] = x.generator_action[t];
  j["action"] = std::move(act);
  return j;
}

}  // namespace sepalg
