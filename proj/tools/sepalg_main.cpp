// Command-line surface: exact separability, splitting towers, group data and
// stable-module reports over JSON files.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "sepalg/json_io.hpp"
#include "sepalg/permalg.hpp"
#include "sepalg/random_algebras.hpp"

namespace sepalg {
namespace {

struct RunConfig {
  uint64_t seed = 1;
  size_t max_group_order = 200000;
  size_t oracle_cutoff = 16;
  bool json = false;
};

std::string base_dir_of(const std::string& path) {
  return std::filesystem::path(path).parent_path().string();
}

void render_human(const Json& j, std::ostream& os, int indent = 0) {
  std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_object() || (v.is_array() && !v.empty() && (v[0].is_object() || v[0].is_array()))) {
        os << pad << k << ":\n";
        render_human(v, os, indent + 2);
      } else {
        os << pad << k << ": " << v.dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_object() || v.is_array()) {
        os << pad << "-\n";
        render_human(v, os, indent + 2);
      } else {
        os << pad << "- " << v.dump() << "\n";
      }
    }
  } else {
    os << pad << j.dump() << "\n";
  }
}

void emit(const Json& j, const RunConfig& cfg) {
  if (cfg.json)
    std::cout << j.dump(2) << "\n";
  else
    render_human(j, std::cout);
}

Json subgroup_to_json(const Subgroup& s) {
  Json j;
  j["order"] = s.order();
  Json gens = Json::array();
  for (uint32_t e : s.generators()) gens.push_back(perm_to_cycles(s.parent()->element(e)));
  j["generators"] = std::move(gens);
  return j;
}

Subgroup subgroup_from_cycles(const GroupRef& g, const std::vector<std::string>& gens) {
  std::vector<uint32_t> idx;
  for (const std::string& s : gens) idx.push_back(g->index_of(perm_from_cycles(s, g->degree())));
  return idx.empty() ? Subgroup::trivial(g) : Subgroup::generated_by(g, idx);
}

Json tower_to_json(const SplittingTowerRecord& rec) {
  Json j;
  Json stages = Json::array();
  for (const auto& st : rec.stages) {
    Json s;
    s["dim"] = st.dim_over_ground;
    Json comps = Json::array();
    for (const auto& c : st.components) {
      Json cj;
      cj["field"] = c.field_desc;
      cj["field_dim"] = c.field_dim_over_ground;
      cj["fiber_dim"] = c.fiber_dim;
      comps.push_back(std::move(cj));
    }
    s["components"] = std::move(comps);
    stages.push_back(std::move(s));
  }
  j["stages"] = std::move(stages);
  j["degree"] = rec.degree;
  return j;
}

int cmd_alg(const std::string& sub, const std::string& file, const RunConfig& cfg) {
  StructureAlgebra a = algebra_from_json(load_json_file(file), base_dir_of(file));
  Rng rng(cfg.seed);
  Json out;
  if (sub == "validate") {
    ValidationReport rep = a.validate();
    out["valid"] = rep.ok;
    out["violations"] = rep.violations;
  } else if (sub == "separable") {
    auto w = a.is_graded() ? graded_separability_idempotent(a) : separability_idempotent(a);
    out["separable"] = w.has_value();
    if (w.has_value()) {
      Json entries = Json::array();
      size_t n = a.dim();
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          if (!w->e[i * n + j].is_zero())
            entries.push_back(Json::array({i, j, w->e[i * n + j].str()}));
      out["witness"] = std::move(entries);
      out["trace_form_nondegenerate"] = etale_via_trace_form(a);
    }
  } else if (sub == "idempotents") {
    IdempotentDecomposition dec = primitive_idempotents(a, rng);
    out["count"] = dec.idempotents.size();
    Json idems = Json::array();
    for (const Vec& e : dec.idempotents) {
      Json v = Json::array();
      for (const Scalar& c : e) v.push_back(c.str());
      idems.push_back(std::move(v));
    }
    out["idempotents"] = std::move(idems);
  } else if (sub == "tower") {
    SplittingTowerRecord rec = splitting_tower(a, rng);
    out = tower_to_json(rec);
  } else if (sub == "degree") {
    out["degree"] = balmer_degree(a, rng);
  } else {
    throw UsageError("unknown alg subcommand: " + sub);
  }
  emit(out, cfg);
  return 0;
}

int cmd_grp(const std::string& sub, const std::string& file, uint64_t p,
            const std::vector<std::string>& hgens, const std::vector<std::string>& kgens,
            const RunConfig& cfg) {
  GroupRef g = group_from_json(load_json_file(file), cfg.max_group_order);
  Json out;
  if (sub == "info") {
    out["name"] = g->name();
    out["order"] = g->order();
    out["degree"] = g->degree();
    if (p != 0) {
      out["p"] = p;
      int rank = p_rank(g, p);
      out["p_rank"] = rank;
      Subgroup syl = sylow_subgroup(g, p);
      out["sylow_order"] = syl.order();
      if (rank == 1) {
        RankOneClassification cls = rank_one_classification(g, p);
        out["sylow"] = cls.kind == RankOneKind::Cyclic ? "cyclic" : "generalized_quaternion";
        Subgroup pp = order_p_subgroups(g, p)[0];
        NormalizerWeyl nw = normalizer_and_weyl(g, pp);
        out["weyl_order"] = nw.weyl.group->order();
      }
      out["np_order"] = np_closure(g, p).order();
    }
  } else if (sub == "sylow") {
    check_usage(p != 0, "sylow needs -p");
    out["p"] = p;
    out["sylow"] = subgroup_to_json(sylow_subgroup(g, p));
  } else if (sub == "prank") {
    check_usage(p != 0, "prank needs -p");
    out["p"] = p;
    out["p_rank"] = p_rank(g, p);
  } else if (sub == "np") {
    check_usage(p != 0, "np needs -p");
    Subgroup np = np_closure(g, p);
    out["p"] = p;
    out["np"] = subgroup_to_json(np);
    out["quotient_order"] = g->order() / np.order();
  } else if (sub == "weyl") {
    Subgroup pp = hgens.empty() ? sylow_subgroup(g, p) : subgroup_from_cycles(g, hgens);
    NormalizerWeyl nw = normalizer_and_weyl(g, pp);
    out["subgroup_order"] = pp.order();
    out["normalizer"] = subgroup_to_json(nw.normalizer);
    out["weyl_order"] = nw.weyl.group->order();
  } else if (sub == "doublecosets") {
    Subgroup h = hgens.empty() ? Subgroup::whole(g) : subgroup_from_cycles(g, hgens);
    Subgroup k = kgens.empty() ? Subgroup::whole(g) : subgroup_from_cycles(g, kgens);
    DoubleCosetDecomposition dc = double_coset_decomposition(g, h, k);
    out["count"] = dc.classes.size();
    Json classes = Json::array();
    for (const auto& cls : dc.classes) {
      Json cj;
      cj["rep"] = perm_to_cycles(g->element(cls.rep));
      cj["size"] = cls.size;
      cj["intersection_order"] = cls.intersection.order();
      classes.push_back(std::move(cj));
    }
    out["classes"] = std::move(classes);
  } else {
    throw UsageError("unknown grp subcommand: " + sub);
  }
  emit(out, cfg);
  return 0;
}

Json rank_one_report(const GroupRef& g, uint64_t p, const RunConfig& cfg, bool with_covers) {
  FieldRef f = Field::prime(p);
  Json out;
  out["group"] = g->name().empty() ? ("order-" + std::to_string(g->order())) : g->name();
  out["p"] = p;
  GaloisVerificationReport rep = verify_rank_one_galois(g, p, f);
  out["P"] = subgroup_to_json(rep.p_subgroup);
  out["N"] = subgroup_to_json(rep.normalizer);
  out["W_order"] = rep.weyl_order;
  out["degree"] = rep.stable_degree;
  StmodReport sd = stmod_degree(coset_gset(rep.p_subgroup), p, cfg.oracle_cutoff);
  out["maximizing_Q"] =
      sd.maximizing_q.has_value() ? subgroup_to_json(*sd.maximizing_q) : Json(nullptr);
  out["h_equals_tau"] = rep.h_equals_tau;
  out["double_coset_ledger_ok"] = rep.double_coset_ledger_ok;
  out["weyl_orbits"] = rep.weyl_orbit_count;
  out["free_orbits"] = rep.free_orbit_count;
  out["tate_pi0_is_k"] = rep.tate_pi0_is_k;
  out["all_checks_pass"] = rep.ok;
  if (with_covers) {
    RankOneClassificationReport cls = classify_rank_one(g, p, f);
    Json covers = Json::array();
    for (const auto& c : cls.covers) {
      Json cj;
      cj["V_order"] = c.v_order;
      cj["index"] = c.index_in_g;
      cj["W_set"] = "W/" + std::to_string(cls.weyl_order / c.w_set_size) + " (size " +
                    std::to_string(c.w_set_size) + ")";
      covers.push_back(std::move(cj));
    }
    out["covers"] = std::move(covers);
    out["cover_count"] = cls.covers.size();
    out["weyl_subgroup_count"] = cls.weyl_subgroup_count;
  }
  return out;
}

int cmd_stmod(const std::string& sub, const std::string& file, uint64_t p,
              const std::vector<std::string>& hgens, const RunConfig& cfg) {
  GroupRef g = group_from_json(load_json_file(file), cfg.max_group_order);
  check_usage(p != 0, "stmod needs -p");
  Json out;
  if (sub == "degree") {
    Subgroup h = hgens.empty() ? Subgroup::trivial(g) : subgroup_from_cycles(g, hgens);
    GSet x = coset_gset(h);
    StmodReport rep = stmod_degree(x, p, cfg.oracle_cutoff);
    out["group"] = g->name();
    out["p"] = p;
    out["H_order"] = h.order();
    out["X_size"] = x.size();
    out["degree"] = rep.degree;
    out["trivial_category"] = rep.trivial_category;
    if (rep.maximizing_q.has_value()) out["maximizing_Q"] = subgroup_to_json(*rep.maximizing_q);
    out["oracle_ran"] = rep.oracle_ran;
    if (rep.oracle_ran) out["oracle_degree"] = rep.oracle_degree;
    ProjectiveSplit ps = strip_projective_summands(x, p);
    out["nonprojective_orbits"] = ps.nonprojective.size();
    out["projective_orbits"] = ps.projective.size();
  } else if (sub == "galois") {
    out = rank_one_report(g, p, cfg, false);
  } else if (sub == "classify") {
    out = rank_one_report(g, p, cfg, true);
  } else if (sub == "modg") {
    ModGGaloisData data = modg_galois_data(g, p);
    out["group"] = g->name();
    out["p"] = p;
    out["Np_order"] = data.np.order();
    out["quotient_order"] = data.quotient.group->order();
    Json qgens = Json::array();
    for (const Perm& q : data.quotient.group->generators()) qgens.push_back(perm_to_cycles(q));
    out["quotient_generators"] = std::move(qgens);
  } else {
    throw UsageError("unknown stmod subcommand: " + sub);
  }
  emit(out, cfg);
  return 0;
}

int cmd_batch(const std::string& file, const RunConfig& cfg) {
  Json corpus = load_json_file(file);
  check_usage(corpus.contains("entries"), "corpus file needs an entries list");
  std::string dir = base_dir_of(file);
  Json out;
  out["seed"] = cfg.seed;
  Json entries = Json::array();
  for (const auto& entry : corpus.at("entries")) {
    GroupRef g = group_from_ref(entry.at("group"), dir, cfg.max_group_order);
    for (const auto& pj : entry.at("primes")) {
      uint64_t p = pj.get<uint64_t>();
      Json e;
      e["group"] = g->name().empty() ? ("order-" + std::to_string(g->order())) : g->name();
      e["p"] = p;
      int rank = p_rank(g, p);
      e["p_rank"] = rank;
      ModGGaloisData data = modg_galois_data(g, p);
      e["Np_order"] = data.np.order();
      e["modg_quotient_order"] = data.quotient.group->order();
      if (rank == 1) {
        Json r = rank_one_report(g, p, cfg, true);
        for (auto& [k, v] : r.items())
          if (!e.contains(k)) e[k] = v;
      }
      entries.push_back(std::move(e));
    }
  }
  out["entries"] = std::move(entries);
  emit(out, cfg);
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"exact workbench for separable algebras, splitting towers and stable-module data"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_flag("--json", cfg.json, "emit JSON instead of text")->envname("SEPALG_JSON");
  app.add_option("--seed", cfg.seed, "seed for randomized subroutines")->envname("SEPALG_SEED");
  app.add_option("--max-group-order", cfg.max_group_order, "group enumeration cap")
      ->envname("SEPALG_MAX_GROUP_ORDER");
  app.add_option("--oracle-cutoff", cfg.oracle_cutoff, "stable-degree oracle cutoff")
      ->envname("SEPALG_ORACLE_CUTOFF");

  std::string sub, file;
  uint64_t p = 0;
  std::vector<std::string> hgens, kgens;

  CLI::App* alg = app.add_subcommand("alg", "algebra pipelines");
  alg->add_option("subcommand", sub, "validate|separable|idempotents|tower|degree")->required();
  alg->add_option("file", file, "algebra JSON file")->required();

  CLI::App* grp = app.add_subcommand("grp", "permutation group pipelines");
  grp->add_option("subcommand", sub, "info|sylow|prank|np|weyl|doublecosets")->required();
  grp->add_option("file", file, "group JSON file")->required();
  grp->add_option("-p", p, "prime");
  grp->add_option("--h", hgens, "subgroup generators in cycle notation");
  grp->add_option("--k", kgens, "second subgroup generators in cycle notation");

  CLI::App* stmod = app.add_subcommand("stmod", "stable module category pipelines");
  stmod->add_option("subcommand", sub, "degree|galois|classify|modg")->required();
  stmod->add_option("file", file, "group JSON file")->required();
  stmod->add_option("-p", p, "prime")->required();
  stmod->add_option("--h", hgens, "subgroup generators in cycle notation");

  CLI::App* batch = app.add_subcommand("batch", "run a corpus of groups and primes");
  batch->add_option("file", file, "corpus JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(alg)) return cmd_alg(sub, file, cfg);
    if (app.got_subcommand(grp)) return cmd_grp(sub, file, p, hgens, kgens, cfg);
    if (app.got_subcommand(stmod)) return cmd_stmod(sub, file, p, hgens, cfg);
    if (app.got_subcommand(batch)) return cmd_batch(file, cfg);
    throw UsageError("no subcommand");
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace
}  // namespace sepalg

int main(int argc, char** argv) { return sepalg::run(argc, argv); }
