// sphere — spherical systems attached to free saturated weight monoids.
//
// Given a semisimple Dynkin diagram and a tuple of dominant weights, the
// tool validates the tuple (freeness, saturation), computes the attached
// spherical system (S^p, Sigma, {}) with its colours and the dimension of
// the corresponding invariant Hilbert scheme, decomposes systems into
// primitive factors, and serves the catalog of primitive systems.
//
// Exit codes: 0 success, 1 validation failure, 2 malformed input,
//             3 ambiguity or unresolved decomposition.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sphere/catalog_default.hpp"
#include "sphere/json_io.hpp"

using namespace sphere;

namespace {

enum ExitCode { kOk = 0, kValidationFailure = 1, kMalformedInput = 2, kAmbiguous = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

IntVec parse_weight(const std::string& text) {
  IntVec out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      Int v = std::stoll(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError("bad weight coordinate '" + item + "'");
    }
  }
  if (out.empty()) throw InputError("empty weight");
  return out;
}

struct Job {
  std::shared_ptr<const RootSystem> rs;
  std::vector<Weight> weights;
  bool relabeled = false;
};

Job make_job(const std::string& diagram, const std::vector<std::string>& weight_args) {
  Job job;
  DynkinDiagram d;
  try {
    d = DynkinDiagram::parse(diagram);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  job.rs = std::make_shared<const RootSystem>(d);
  job.relabeled = d.relabeled();
  for (const auto& arg : weight_args) {
    IntVec w = parse_weight(arg);
    if (static_cast<int>(w.size()) != d.rank())
      throw InputError("weight '" + arg + "' has " + std::to_string(w.size()) +
                       " coordinates, diagram rank is " + std::to_string(d.rank()));
    // coordinates are entered in the input labeling; map to canonical order
    IntVec canon(d.rank());
    for (int i = 0; i < d.rank(); ++i) canon[d.input_relabeling()[i]] = w[i];
    Weight wt{std::move(canon)};
    for (Int x : wt.w)
      if (x < 0) throw InputError("weights must be dominant (nonnegative coordinates)");
    if (wt.is_zero()) throw InputError("zero weight rejected");
    job.weights.push_back(std::move(wt));
  }
  return job;
}

void emit(const ojson& j, const std::string& format) {
  if (format == "json")
    std::cout << j.dump(2) << "\n";
}

int cmd_validate(const std::string& diagram, const std::vector<std::string>& weight_args,
                 const std::string& format, Int oracle_bound, bool use_oracle) {
  Job job = make_job(diagram, weight_args);
  if (job.weights.empty()) throw InputError("at least one weight is required");
  WeightTuple t(job.rs, job.weights);

  ojson j;
  j["command"] = "validate";
  j["diagram"] = job.rs->diagram().name();
  if (job.relabeled) j["note"] = "input diagram canonicalized; nodes relabeled";
  ojson ws = ojson::array();
  for (const auto& w : t.weights) ws.push_back(to_json(w));
  j["weights"] = ws;

  bool free = check_free(t);
  j["free"] = free;
  bool ok = free;
  if (free) {
    auto sat = is_saturated(t);
    j["saturated"] = sat.saturated;
    if (sat.saturated) {
      ojson wit = ojson::array();
      for (int k : sat.witnesses) wit.push_back(k + 1);
      j["witnesses"] = wit;
    } else {
      j["offending_generator"] = sat.offending + 1;
      ok = false;
    }
    if (use_oracle) {
      Int bound = oracle_bound >= 0 ? oracle_bound : default_oracle_bound(t);
      auto res = saturation_oracle(t, bound);
      ojson o;
      o["box_bound"] = bound;
      o["saturated"] = res.saturated;
      if (res.counterexample) {
        o["counterexample"] = to_json(*res.counterexample);
        o["counterexample_pretty"] = pretty(*res.counterexample);
      }
      j["oracle"] = o;
      if (res.saturated != sat.saturated) {
        j["oracle_agrees"] = false;
        ok = false;
      } else {
        j["oracle_agrees"] = true;
      }
    }
    ojson sp = ojson::array();
    for (int k : compute_sp(t)) sp.push_back(k + 1);
    j["sp"] = sp;
  }
  j["exit"] = ok ? kOk : kValidationFailure;
  emit(j, format);
  if (format == "text") {
    std::cout << "diagram: " << job.rs->diagram().name() << "\n";
    std::cout << "free: " << (free ? "yes" : "no") << "\n";
    if (free) {
      std::cout << "saturated: " << (j["saturated"].get<bool>() ? "yes" : "no") << "\n";
      if (j.contains("witnesses")) {
        std::cout << "witnesses:";
        for (size_t i = 0; i < t.weights.size(); ++i)
          std::cout << " lambda_" << i + 1 << "->a" << j["witnesses"][i].get<int>();
        std::cout << "\n";
      } else if (j.contains("offending_generator")) {
        std::cout << "no witness for lambda_" << j["offending_generator"].get<int>() << "\n";
      }
      if (j.contains("oracle"))
        std::cout << "oracle(bound " << j["oracle"]["box_bound"].get<Int>()
                  << "): " << (j["oracle"]["saturated"].get<bool>() ? "saturated" : "not saturated")
                  << (j["oracle_agrees"].get<bool>() ? " (agrees)" : " (DISAGREES)") << "\n";
      if (j.contains("sp")) {
        std::cout << "S^p:";
        for (const auto& x : j["sp"]) std::cout << " a" << x.get<int>();
        if (j["sp"].empty()) std::cout << " (empty)";
        std::cout << "\n";
      }
    }
  }
  return j["exit"].get<int>();
}

int cmd_sigma(const std::string& diagram, const std::vector<std::string>& weight_args,
              const std::string& format, bool trace) {
  Job job = make_job(diagram, weight_args);
  if (job.weights.empty()) throw InputError("at least one weight is required");
  WeightTuple t(job.rs, job.weights);
  AttachResult r = attach_spherical_system(t);

  ojson j;
  j["command"] = "sigma";
  j["diagram"] = job.rs->diagram().name();
  ojson ws = ojson::array();
  for (const auto& w : t.weights) ws.push_back(to_json(w));
  j["weights"] = ws;

  int code = kOk;
  switch (r.status) {
    case AttachResult::Status::Ok: {
      j["status"] = "ok";
      j["system"] = to_json(r.system);
      j["dimension"] = r.dimension;
      j["unique_maximal"] = r.unique_maximal;
      j["colours"] = to_json(r.colours);
      break;
    }
    case AttachResult::Status::NotFree:
      j["status"] = "not-free";
      j["message"] = r.message;
      code = kValidationFailure;
      break;
    case AttachResult::Status::NotSaturated:
      j["status"] = "not-saturated";
      j["message"] = r.message;
      code = kValidationFailure;
      break;
    case AttachResult::Status::AmbiguousMaximum: {
      j["status"] = "ambiguous-maximum";
      j["message"] = r.message;
      ojson sets = ojson::array();
      for (const auto& s : r.maximal_sets) {
        ojson one = ojson::array();
        for (const auto& g : s) one.push_back(to_json(g));
        sets.push_back(one);
      }
      j["maximal_sets"] = sets;
      code = kAmbiguous;
      break;
    }
  }
  if (trace || format == "json") {
    ojson tr = ojson::array();
    for (const auto& c : r.trace) tr.push_back(to_json(c));
    j["trace"] = tr;
  }
  j["exit"] = code;
  emit(j, format);
  if (format == "text") {
    std::cout << "diagram: " << job.rs->diagram().name() << "\n";
    std::cout << "status: " << j["status"].get<std::string>() << "\n";
    if (r.status == AttachResult::Status::Ok) {
      std::cout << "Sigma:";
      for (const auto& g : r.system.sigma) std::cout << " " << pretty(g);
      if (r.system.sigma.empty()) std::cout << " (empty)";
      std::cout << "\ndimension: " << r.dimension << "\n";
      std::cout << "S^p:";
      for (int a : r.system.sp) std::cout << " a" << a + 1;
      if (r.system.sp.empty()) std::cout << " (empty)";
      std::cout << "\ncolours:";
      for (const auto& c : r.colours.colours)
        std::cout << " " << c.id() << "=" << pretty(c.sigma_weight);
      std::cout << "\n";
    } else {
      std::cout << r.message << "\n";
    }
    if (trace) {
      for (const auto& c : r.trace) {
        std::cout << (c.pass ? "  keep " : "  drop ") << pretty(c.cand.vec) << " ["
                  << to_string(c.cand.type) << "]";
        if (!c.pass) {
          const auto& last = c.steps.back();
          std::cout << " at " << last.rule << ": " << last.detail;
        }
        std::cout << "\n";
      }
    }
  }
  return code;
}

void print_tree(const DecompNode& n, int depth) {
  std::string pad(2 * depth, ' ');
  switch (n.kind) {
    case DecompNode::Kind::Parabolic:
      std::cout << pad << "parabolic induction (kept";
      for (int a : n.kept_nodes) std::cout << " a" << a + 1;
      std::cout << ")\n";
      break;
    case DecompNode::Kind::Product: std::cout << pad << "direct product\n"; break;
    case DecompNode::Kind::Fiber: {
      std::cout << pad << "fiber product (Delta1 =";
      for (const auto& s : n.fiber_delta1) std::cout << " " << s;
      std::cout << "; Delta2 =";
      for (const auto& s : n.fiber_delta2) std::cout << " " << s;
      std::cout << ")\n";
      break;
    }
    default: {
      std::cout << pad << "leaf " << n.leaf_ref;
      if (!n.leaf_params.empty()) {
        std::cout << " (";
        bool first = true;
        for (const auto& [k, v] : n.leaf_params) {
          if (!first) std::cout << ", ";
          std::cout << k << "=" << v;
          first = false;
        }
        std::cout << ")";
      }
      std::cout << "  [" << n.system.rs->diagram().name() << "]\n";
      return;
    }
  }
  for (const auto& c : n.children) print_tree(c, depth + 1);
}

int cmd_decompose(const std::string& diagram, const std::vector<std::string>& weight_args,
                  const std::string& system_file, const std::string& format) {
  SphericalSystem sys;
  if (!system_file.empty()) {
    nlohmann::json doc;
    try {
      if (system_file == "-") {
        doc = nlohmann::json::parse(std::cin);
      } else {
        std::ifstream f(system_file);
        if (!f) throw InputError("cannot open " + system_file);
        doc = nlohmann::json::parse(f);
      }
      sys = system_from_json(doc);
    } catch (const InputError&) {
      throw;
    } catch (const std::exception& e) {
      throw InputError(std::string("bad system file: ") + e.what());
    }
  } else {
    Job job = make_job(diagram, weight_args);
    if (job.weights.empty())
      throw InputError("either --system or a diagram with weights is required");
    AttachResult r = attach_spherical_system(WeightTuple(job.rs, job.weights));
    if (r.status != AttachResult::Status::Ok) {
      std::cerr << "cannot attach a spherical system: " << r.message << "\n";
      return r.status == AttachResult::Status::AmbiguousMaximum ? kAmbiguous
                                                                : kValidationFailure;
    }
    sys = r.system;
  }

  AxiomReport rep = validate_axioms(sys);
  ojson j;
  j["command"] = "decompose";
  j["system"] = to_json(sys);
  j["axioms"] = to_json(rep);
  if (!rep.pass) {
    j["exit"] = kValidationFailure;
    emit(j, format);
    if (format == "text") {
      std::cout << "system fails the axioms:\n";
      for (const auto& c : rep.checks)
        if (!c.pass) std::cout << "  " << c.axiom << ": " << c.detail << "\n";
    }
    return kValidationFailure;
  }

  DecompNode tree = decompose(sys, default_catalog());
  j["tree"] = to_json(tree);
  j["leaves"] = tree.leaf_count();
  bool unresolved = has_unresolved(tree);
  j["exit"] = unresolved ? kAmbiguous : kOk;
  emit(j, format);
  if (format == "text") {
    std::cout << "system: " << to_json(sys).dump() << "\n";
    print_tree(tree, 0);
    if (unresolved) std::cout << "warning: unresolved leaf present\n";
  }
  return unresolved ? kAmbiguous : kOk;
}

int cmd_catalog(bool self_test, const std::string& family, const std::string& show_id,
                const std::map<std::string, Int>& params, const std::string& format) {
  const Catalog& cat = default_catalog();

  if (self_test) {
    ojson report = ojson::array();
    int failures = 0;
    for (const auto& e : cat.entries()) {
      for (const auto& pm : cat.test_instantiations(e)) {
        InstantiatedEntry inst = cat.instantiate(e, pm);
        AxiomReport ax = validate_axioms(inst.system);
        bool colours_ok = true;
        std::string colour_err;
        try {
          build_colours(inst.system);
        } catch (const std::exception& ex) {
          colours_ok = false;
          colour_err = ex.what();
        }
        bool cuspidal = inst.system.cuspidal();
        bool nodoubling = check_no_doubling(inst.system).pass;
        bool ok = ax.pass && colours_ok && cuspidal && nodoubling;
        if (!ok) ++failures;
        ojson r;
        r["id"] = e.id;
        if (!pm.empty()) {
          ojson p;
          for (const auto& [k, v] : pm) p[k] = v;
          r["params"] = p;
        }
        r["axioms"] = ax.pass;
        r["colours"] = colours_ok;
        if (!colours_ok) r["colour_error"] = colour_err;
        r["cuspidal"] = cuspidal;
        r["no_doubling"] = nodoubling;
        r["pass"] = ok;
        report.push_back(r);
      }
    }
    ojson j;
    j["command"] = "catalog-self-test";
    j["entries"] = static_cast<int>(cat.entries().size());
    j["instantiations"] = static_cast<int>(report.size());
    j["failures"] = failures;
    j["report"] = report;
    j["exit"] = failures == 0 ? kOk : kValidationFailure;
    emit(j, format);
    if (format == "text") {
      std::cout << cat.entries().size() << " entries, " << report.size()
                << " instantiations, " << failures << " failures\n";
      for (const auto& r : report)
        if (!r["pass"].get<bool>()) {
          std::cout << "  FAIL " << r["id"].get<std::string>();
          if (r.contains("params")) std::cout << " " << r["params"].dump();
          if (!r["axioms"].get<bool>()) std::cout << " axioms";
          if (!r["colours"].get<bool>()) std::cout << " colours";
          if (!r["cuspidal"].get<bool>()) std::cout << " cuspidal";
          if (!r["no_doubling"].get<bool>()) std::cout << " no-doubling";
          std::cout << "\n";
        }
    }
    return failures == 0 ? kOk : kValidationFailure;
  }

  if (!show_id.empty()) {
    const PrimitiveEntry* e = cat.find(show_id);
    if (!e) throw InputError("unknown catalog entry " + show_id);
    ParamMap pm;
    for (const auto& p : e->params) {
      auto it = params.find(p);
      if (it == params.end())
        throw InputError("entry " + show_id + " needs parameter --" + p);
      pm[p] = it->second;
    }
    InstantiatedEntry inst;
    try {
      inst = cat.instantiate(*e, pm);
    } catch (const std::exception& ex) {
      throw InputError(ex.what());
    }
    ojson j = to_json(inst);
    std::cout << j.dump(2) << "\n";
    return kOk;
  }

  ojson list = ojson::array();
  for (const auto& e : cat.entries()) {
    if (!family.empty() && std::string(1, e.family) != family) continue;
    ojson r;
    r["id"] = e.id;
    r["family"] = std::string(1, e.family);
    std::string dia;
    for (size_t k = 0; k < e.diagram.size(); ++k) {
      if (k) dia += "x";
      dia += e.diagram[k].first;
      dia += e.diagram[k].second;
    }
    r["diagram"] = dia;
    r["params"] = e.params;
    r["constraints"] = e.constraints;
    if (!e.notes.empty()) r["notes"] = e.notes;
    list.push_back(r);
  }
  if (format == "json") {
    ojson j;
    j["command"] = "catalog-list";
    j["entries"] = list;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& r : list) {
      std::cout << r["id"].get<std::string>() << "  " << r["diagram"].get<std::string>();
      if (!r["constraints"].empty()) {
        std::cout << "  (";
        bool first = true;
        for (const auto& c : r["constraints"]) {
          if (!first) std::cout << ", ";
          std::cout << c.get<std::string>();
          first = false;
        }
        std::cout << ")";
      }
      std::cout << "\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spherical systems attached to free saturated weight monoids"};
  app.require_subcommand(1);

  std::string diagram, format = "text", system_file, family, show_id;
  std::vector<std::string> weights;
  Int oracle_bound = -1;
  bool trace = false, self_test = false;
  std::map<std::string, Int> entry_params;

  auto add_common = [&](CLI::App* sub, bool need_diagram) {
    if (need_diagram) {
      sub->add_option("-d,--diagram", diagram, "Dynkin diagram literal, e.g. A3, B4, A3xA3");
      sub->add_option("-w,--weight", weights,
                      "dominant weight in fundamental-weight coordinates, e.g. 1,0,1");
    }
    sub->add_option("--format", format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  auto* validate = app.add_subcommand("validate", "check freeness, saturation and S^p");
  add_common(validate, true);
  bool use_oracle = false;
  validate->add_flag("--oracle", use_oracle, "cross-check saturation by brute force");
  validate->add_option("--oracle-bound", oracle_bound,
                       "box bound for the brute-force check (implies --oracle)");

  auto* sigma = app.add_subcommand("sigma", "attached spherical system and dimension");
  add_common(sigma, true);
  sigma->add_flag("--trace", trace, "show the per-candidate filter trace");

  auto* decomp = app.add_subcommand("decompose", "decompose a system into primitive factors");
  add_common(decomp, true);
  decomp->add_option("--system", system_file, "system JSON file ('-' for stdin)");

  auto* catalog = app.add_subcommand("catalog", "list, instantiate or self-test the catalog");
  add_common(catalog, false);
  catalog->add_flag("--self-test", self_test, "instantiate and validate every entry");
  catalog->add_option("--family", family, "restrict the listing to one family");
  catalog->add_option("show", show_id, "entry id to instantiate, e.g. A.2");
  for (const char* p : {"n", "p", "q", "n1", "n2"})
    catalog->add_option_function<Int>(
        std::string("--") + p, [&entry_params, p](Int v) { entry_params[p] = v; },
        std::string("entry parameter ") + p);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(validate))
      return cmd_validate(diagram, weights, format, oracle_bound,
                          use_oracle || oracle_bound >= 0);
    if (app.got_subcommand(sigma)) return cmd_sigma(diagram, weights, format, trace);
    if (app.got_subcommand(decomp)) return cmd_decompose(diagram, weights, system_file, format);
    if (app.got_subcommand(catalog))
      return cmd_catalog(self_test, family, show_id, entry_params, format);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformedInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformedInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kMalformedInput;
  }
  return kMalformedInput;
}
