#pragma once

#include <nlohmann/json.hpp>

#include "sphere/decompose_tree.hpp"
#include "sphere/sigma.hpp"

namespace sphere {

/// Deterministic JSON views of the library objects.  Ordered maps keep the
/// key order stable so identical inputs produce byte-identical output.
using ojson = nlohmann::ordered_json;

inline ojson to_json(const RootVector& v) {
  ojson a = ojson::array();
  for (Int x : v.c) a.push_back(x);
  return a;
}

inline ojson to_json(const Weight& w) {
  ojson a = ojson::array();
  for (Int x : w.w) a.push_back(x);
  return a;
}

inline ojson nodes_json(const std::vector<int>& nodes) {
  ojson a = ojson::array();
  for (int x : nodes) a.push_back(x + 1);  // 1-based in the interchange format
  return a;
}

inline ojson to_json(const SphericalSystem& sys) {
  ojson j;
  j["diagram"] = sys.rs->diagram().name();
  j["sp"] = nodes_json(sys.sp);
  ojson sig = ojson::array();
  for (const auto& g : sys.sigma) sig.push_back(to_json(g));
  j["sigma"] = sig;
  ojson names = ojson::array();
  for (const auto& g : sys.sigma) names.push_back(pretty(g));
  j["sigma_pretty"] = names;
  return j;
}

inline SphericalSystem system_from_json(const nlohmann::json& j) {
  auto rs = RootSystem::make(j.at("diagram").get<std::string>());
  std::vector<int> sp;
  for (const auto& x : j.at("sp")) {
    int node = x.get<int>() - 1;
    if (node < 0 || node >= rs->rank()) throw std::invalid_argument("sp node out of range");
    sp.push_back(node);
  }
  std::vector<RootVector> sigma;
  for (const auto& row : j.at("sigma")) {
    IntVec c;
    for (const auto& x : row) c.push_back(x.get<Int>());
    if (static_cast<int>(c.size()) != rs->rank())
      throw std::invalid_argument("sigma vector of wrong length");
    sigma.push_back(RootVector(std::move(c)));
  }
  return SphericalSystem(rs, std::move(sp), std::move(sigma));
}

inline ojson to_json(const AxiomReport& rep) {
  ojson j;
  j["pass"] = rep.pass;
  ojson checks = ojson::array();
  for (const auto& c : rep.checks) {
    ojson e;
    e["axiom"] = c.axiom;
    e["pass"] = c.pass;
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(e);
  }
  j["checks"] = checks;
  return j;
}

inline ojson to_json(const Colour& c) {
  ojson j;
  j["id"] = c.id();
  j["kind"] = c.kind == Colour::Kind::APrime ? "a'" : "b";
  j["nodes"] = nodes_json(c.nodes);
  j["sigma_weight"] = to_json(c.sigma_weight);
  j["sigma_weight_pretty"] = pretty(c.sigma_weight);
  ojson rho = ojson::array();
  for (const Rat& r : c.rho) rho.push_back(r.str());
  j["rho"] = rho;
  return j;
}

inline ojson to_json(const ColourSet& cs) {
  ojson a = ojson::array();
  for (const auto& c : cs.colours) a.push_back(to_json(c));
  return a;
}

inline ojson to_json(const CandidateTrace& tr) {
  ojson j;
  j["candidate"] = pretty(tr.cand.vec);
  j["coords"] = to_json(tr.cand.vec);
  j["support_type"] = to_string(tr.cand.type);
  j["pass"] = tr.pass;
  ojson steps = ojson::array();
  for (const auto& s : tr.steps) {
    ojson e;
    e["rule"] = s.rule;
    e["pass"] = s.pass;
    if (!s.pass && !s.detail.empty()) e["detail"] = s.detail;
    steps.push_back(e);
  }
  j["rules"] = steps;
  return j;
}

inline ojson to_json(const DecompNode& n) {
  ojson j;
  switch (n.kind) {
    case DecompNode::Kind::Parabolic: j["kind"] = "parabolic"; break;
    case DecompNode::Kind::Product: j["kind"] = "product"; break;
    case DecompNode::Kind::Fiber: j["kind"] = "fiber"; break;
    case DecompNode::Kind::LeafPrimitive: j["kind"] = "leaf"; break;
    case DecompNode::Kind::LeafExternal: j["kind"] = "leaf"; break;
    case DecompNode::Kind::LeafRank0: j["kind"] = "leaf"; break;
    case DecompNode::Kind::LeafUnresolved: j["kind"] = "leaf"; break;
  }
  j["system"] = to_json(n.system);
  if (n.kind == DecompNode::Kind::Parabolic) {
    j["kept"] = nodes_json(n.kept_nodes);
    if (!n.shed_sp_nodes.empty()) j["shed_sp"] = nodes_json(n.shed_sp_nodes);
  }
  if (n.kind == DecompNode::Kind::Fiber) {
    j["delta1"] = n.fiber_delta1;
    j["delta2"] = n.fiber_delta2;
  }
  if (n.children.empty()) {
    j["leaf"] = n.leaf_ref;
    if (!n.leaf_params.empty()) {
      ojson p;
      for (const auto& [k, v] : n.leaf_params) p[k] = v;
      j["params"] = p;
    }
  } else {
    ojson ch = ojson::array();
    for (const auto& c : n.children) ch.push_back(to_json(c));
    j["children"] = ch;
  }
  return j;
}

inline ojson to_json(const InstantiatedEntry& inst) {
  ojson j;
  j["id"] = inst.id;
  if (!inst.params.empty()) {
    ojson p;
    for (const auto& [k, v] : inst.params) p[k] = v;
    j["params"] = p;
  }
  j["system"] = to_json(inst.system);
  j["K"] = inst.K;
  if (inst.sprime) j["Sprime"] = nodes_json(*inst.sprime);
  if (inst.m_rep) j["m"] = *inst.m_rep;
  if (!inst.notes.empty()) j["notes"] = inst.notes;
  return j;
}

}  // namespace sphere
