#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "sphere/sphsys.hpp"

namespace sphere {

using ParamMap = std::map<std::string, Int>;

namespace catalog_detail {

/// Tiny evaluator for the linear index expressions used by the catalog
/// patterns: integers, parameter names, + - *, exact / and parentheses.
class ExprParser {
public:
  ExprParser(const std::string& text, const ParamMap& env) : s_(text), env_(env) {}

  Int parse() {
    Int v = expr();
    skip_ws();
    if (pos_ != s_.size()) throw std::invalid_argument("trailing input in '" + s_ + "'");
    return v;
  }

private:
  Int expr() {
    Int v = term();
    while (true) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        v += term();
      } else if (peek() == '-') {
        ++pos_;
        v -= term();
      } else {
        return v;
      }
    }
  }
  Int term() {
    Int v = factor();
    while (true) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        v *= factor();
      } else if (peek() == '/') {
        ++pos_;
        Int d = factor();
        if (d == 0 || v % d != 0)
          throw std::invalid_argument("inexact division in '" + s_ + "'");
        v /= d;
      } else {
        return v;
      }
    }
  }
  Int factor() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      Int v = expr();
      skip_ws();
      if (peek() != ')') throw std::invalid_argument("missing ')' in '" + s_ + "'");
      ++pos_;
      return v;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = pos_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      Int v = std::stoll(s_.substr(pos_, j - pos_));
      pos_ = j;
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t j = pos_;
      while (j < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
        ++j;
      std::string name = s_.substr(pos_, j - pos_);
      pos_ = j;
      auto it = env_.find(name);
      if (it == env_.end()) throw std::invalid_argument("unknown parameter '" + name + "'");
      return it->second;
    }
    throw std::invalid_argument("bad expression '" + s_ + "'");
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
  }

  const std::string& s_;
  const ParamMap& env_;
  size_t pos_ = 0;
};

inline Int eval_expr(const std::string& text, const ParamMap& env) {
  return ExprParser(text, env).parse();
}

/// "p+1" or "n2'" -> (component, expression); the apostrophe selects the
/// second diagram component.
inline std::pair<int, std::string> node_ref(const std::string& text) {
  if (!text.empty() && text.back() == '\'') return {1, text.substr(0, text.size() - 1)};
  return {0, text};
}

struct Constraint {
  enum class Kind { Eq, Ge, Le, Even, Odd, InSet } kind;
  std::string lhs, rhs;
  std::vector<Int> set_values;
};

inline Constraint parse_constraint(const std::string& text) {
  Constraint c;
  auto find = [&](const std::string& op) { return text.find(op); };
  size_t p;
  if ((p = find("==")) != std::string::npos) {
    c.kind = Constraint::Kind::Eq;
    c.lhs = text.substr(0, p);
    c.rhs = text.substr(p + 2);
  } else if ((p = find(">=")) != std::string::npos) {
    c.kind = Constraint::Kind::Ge;
    c.lhs = text.substr(0, p);
    c.rhs = text.substr(p + 2);
  } else if ((p = find("<=")) != std::string::npos) {
    c.kind = Constraint::Kind::Le;
    c.lhs = text.substr(0, p);
    c.rhs = text.substr(p + 2);
  } else if ((p = find(" in {")) != std::string::npos) {
    c.kind = Constraint::Kind::InSet;
    c.lhs = text.substr(0, p);
    std::string rest = text.substr(p + 5);
    Int cur = 0;
    bool have = false;
    for (char ch : rest) {
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        cur = cur * 10 + (ch - '0');
        have = true;
      } else if (have) {
        c.set_values.push_back(cur);
        cur = 0;
        have = false;
      }
    }
    if (have) c.set_values.push_back(cur);
  } else if (text.size() > 5 && text.substr(text.size() - 5) == " even") {
    c.kind = Constraint::Kind::Even;
    c.lhs = text.substr(0, text.size() - 5);
  } else if (text.size() > 4 && text.substr(text.size() - 4) == " odd") {
    c.kind = Constraint::Kind::Odd;
    c.lhs = text.substr(0, text.size() - 4);
  } else {
    throw std::invalid_argument("bad constraint '" + text + "'");
  }
  return c;
}

inline bool eval_constraint(const Constraint& c, const ParamMap& env) {
  Int l = eval_expr(c.lhs, env);
  switch (c.kind) {
    case Constraint::Kind::Eq: return l == eval_expr(c.rhs, env);
    case Constraint::Kind::Ge: return l >= eval_expr(c.rhs, env);
    case Constraint::Kind::Le: return l <= eval_expr(c.rhs, env);
    case Constraint::Kind::Even: return l % 2 == 0;
    case Constraint::Kind::Odd: return l % 2 != 0;
    case Constraint::Kind::InSet:
      return std::find(c.set_values.begin(), c.set_values.end(), l) != c.set_values.end();
  }
  return false;
}

/// Substitute {expr} placeholders in Levi descriptors: "N(Sp{n+1})".
inline std::string substitute(const std::string& tmpl, const ParamMap& env) {
  std::string out;
  size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      size_t j = tmpl.find('}', i);
      if (j == std::string::npos) throw std::invalid_argument("unbalanced brace in " + tmpl);
      out += std::to_string(eval_expr(tmpl.substr(i + 1, j - i - 1), env));
      i = j + 1;
    } else {
      out += tmpl[i++];
    }
  }
  return out;
}

}  // namespace catalog_detail

/// One parametrized catalog row.
struct PrimitiveEntry {
  std::string id;
  char family;
  std::vector<std::pair<char, std::string>> diagram;  // family, rank expression
  std::vector<std::string> params;
  std::vector<std::string> constraints;
  nlohmann::json sp_spec;
  bool sp_orthogonal_filter = false;
  nlohmann::json sigma_spec;
  nlohmann::json branches;
  std::vector<std::string> notes;

  bool admissible(const ParamMap& env) const {
    for (const auto& p : params)
      if (!env.count(p)) return false;
    try {
      for (const auto& text : constraints)
        if (!catalog_detail::eval_constraint(catalog_detail::parse_constraint(text), env))
          return false;
    } catch (const std::exception&) {
      return false;
    }
    return true;
  }
};

struct InstantiatedEntry {
  std::string id;
  ParamMap params;
  SphericalSystem system;
  std::string K;
  std::optional<std::vector<int>> sprime;  // node subset of S, when N is not reductive
  std::optional<std::string> m_rep;
  std::vector<std::string> notes;
};

struct MatchResult {
  std::string entry_id;
  ParamMap params;
  std::vector<int> relabeling;  // diagram automorphism applied to the entry
};

struct NoMatch {
  std::string reason;
};

class Catalog {
public:
  static Catalog from_json_text(const std::string& text) {
    Catalog cat;
    nlohmann::json doc = nlohmann::json::parse(text);
    cat.version_ = doc.at("version").get<int>();
    for (const auto& e : doc.at("entries")) {
      PrimitiveEntry entry;
      entry.id = e.at("id").get<std::string>();
      entry.family = e.at("family").get<std::string>().at(0);
      for (const auto& d : e.at("diagram"))
        entry.diagram.emplace_back(d.at(0).get<std::string>().at(0), d.at(1).get<std::string>());
      for (const auto& p : e.at("params")) entry.params.push_back(p.get<std::string>());
      for (const auto& c : e.at("constraints")) entry.constraints.push_back(c.get<std::string>());
      entry.sp_spec = e.at("sp");
      entry.sp_orthogonal_filter = e.value("sp_orthogonal_filter", false);
      entry.sigma_spec = e.at("sigma");
      entry.branches = e.at("branches");
      for (const auto& n : e.at("notes")) entry.notes.push_back(n.get<std::string>());
      cat.entries_.push_back(std::move(entry));
    }
    return cat;
  }

  int version() const { return version_; }
  const std::vector<PrimitiveEntry>& entries() const { return entries_; }

  const PrimitiveEntry* find(const std::string& id) const {
    for (const auto& e : entries_)
      if (e.id == id) return &e;
    return nullptr;
  }

  InstantiatedEntry instantiate(const PrimitiveEntry& entry, const ParamMap& params) const {
    using namespace catalog_detail;
    for (const auto& p : entry.params)
      if (!params.count(p))
        throw std::invalid_argument(entry.id + ": missing parameter " + p);
    for (const auto& text : entry.constraints)
      if (!eval_constraint(parse_constraint(text), params))
        throw std::invalid_argument(entry.id + ": constraint '" + text + "' violated");

    std::vector<std::pair<char, int>> comps;
    for (const auto& [fam, rk_expr] : entry.diagram)
      comps.emplace_back(fam, static_cast<int>(eval_expr(rk_expr, params)));
    auto rs = std::make_shared<const RootSystem>(DynkinDiagram(comps));

    auto comp_first = [&](int comp) { return rs->diagram().components()[comp].first; };
    auto comp_rank = [&](int comp) { return rs->diagram().components()[comp].rank; };
    auto global = [&](const std::string& ref) {
      auto [comp, expr] = node_ref(ref);
      Int idx = eval_expr(expr, params);
      if (comp >= static_cast<int>(rs->diagram().components().size()) || idx < 1 ||
          idx > comp_rank(comp))
        throw std::invalid_argument(entry.id + ": node '" + ref + "' out of range");
      return comp_first(comp) + static_cast<int>(idx) - 1;
    };

    std::vector<int> sp;
    for (const auto& item : entry.sp_spec) {
      if (item.contains("node")) {
        sp.push_back(global(item.at("node").get<std::string>()));
      } else if (item.contains("range")) {
        auto [ca, ea] = node_ref(item.at("range").at(0).get<std::string>());
        auto [cb, eb] = node_ref(item.at("range").at(1).get<std::string>());
        if (ca != cb) throw std::invalid_argument(entry.id + ": mixed-component range");
        for (Int i = eval_expr(ea, params); i <= eval_expr(eb, params); ++i)
          sp.push_back(comp_first(ca) + static_cast<int>(i) - 1);
      } else if (item.contains("odds")) {
        auto [ca, ea] = node_ref(item.at("odds").at(0).get<std::string>());
        auto [cb, eb] = node_ref(item.at("odds").at(1).get<std::string>());
        if (ca != cb) throw std::invalid_argument(entry.id + ": mixed-component range");
        for (Int i = eval_expr(ea, params); i <= eval_expr(eb, params); ++i)
          if (i % 2 != 0) sp.push_back(comp_first(ca) + static_cast<int>(i) - 1);
      } else {
        throw std::invalid_argument(entry.id + ": bad S^p item");
      }
    }

    std::vector<RootVector> sigma;
    auto add_terms = [&](const nlohmann::json& root_spec, const ParamMap& env) {
      IntVec c(rs->rank(), 0);
      for (const auto& term : root_spec.at("terms")) {
        Int coeff = term.at(0).get<Int>();
        std::string ref = term.at(1).get<std::string>();
        size_t dots = ref.find("..");
        if (dots == std::string::npos) {
          auto [comp, expr] = node_ref(ref);
          Int idx = catalog_detail::eval_expr(expr, env);
          if (idx < 1 || idx > comp_rank(comp))
            throw std::invalid_argument(entry.id + ": node '" + ref + "' out of range");
          c[comp_first(comp) + static_cast<int>(idx) - 1] += coeff;
        } else {
          auto [ca, ea] = node_ref(ref.substr(0, dots));
          auto [cb, eb] = node_ref(ref.substr(dots + 2));
          if (ca != cb) throw std::invalid_argument(entry.id + ": mixed-component range");
          for (Int i = catalog_detail::eval_expr(ea, env);
               i <= catalog_detail::eval_expr(eb, env); ++i) {
            if (i < 1 || i > comp_rank(ca))
              throw std::invalid_argument(entry.id + ": range node out of bounds");
            c[comp_first(ca) + static_cast<int>(i) - 1] += coeff;
          }
        }
      }
      if (!std::all_of(c.begin(), c.end(), [](Int x) { return x == 0; }))
        sigma.push_back(RootVector(std::move(c)));
    };
    for (const auto& root_spec : entry.sigma_spec) {
      if (root_spec.contains("when") &&
          !eval_constraint(parse_constraint(root_spec.at("when").get<std::string>()), params))
        continue;
      if (root_spec.contains("for")) {
        const auto& loop = root_spec.at("for");
        std::string var = loop.at(0).get<std::string>();
        Int from = eval_expr(loop.at(1).get<std::string>(), params);
        Int to = eval_expr(loop.at(2).get<std::string>(), params);
        for (Int i = from; i <= to; ++i) {
          ParamMap env = params;
          env[var] = i;
          add_terms(root_spec, env);
        }
      } else {
        add_terms(root_spec, params);
      }
    }

    InstantiatedEntry out{entry.id, params, SphericalSystem{}, "", std::nullopt, std::nullopt,
                          entry.notes};
    if (entry.sp_orthogonal_filter) {
      std::vector<int> kept;
      for (int a : sp) {
        bool orth = true;
        for (const auto& g : sigma)
          if (!rs->inner(g, rs->simple_root(a)).is_zero()) orth = false;
        if (orth) kept.push_back(a);
        else
          out.notes.push_back("S^p node a" + std::to_string(a + 1) +
                              " dropped: not orthogonal to Sigma at these parameters");
      }
      sp = std::move(kept);
    }
    out.system = SphericalSystem(rs, std::move(sp), std::move(sigma));

    for (const auto& branch : entry.branches) {
      if (branch.contains("when") &&
          !eval_constraint(parse_constraint(branch.at("when").get<std::string>()), params))
        continue;
      out.K = substitute(branch.at("K").get<std::string>(), params);
      if (branch.contains("Sprime")) {
        std::set<int> except;
        for (const auto& ref : branch.at("Sprime").at("except"))
          except.insert(global(ref.get<std::string>()));
        std::vector<int> sprime;
        for (int a = 0; a < rs->rank(); ++a)
          if (!except.count(a)) sprime.push_back(a);
        out.sprime = sprime;
      }
      if (branch.contains("m")) out.m_rep = branch.at("m").get<std::string>();
      break;
    }
    if (out.K.empty()) throw std::invalid_argument(entry.id + ": no branch matched");
    return out;
  }

  InstantiatedEntry instantiate(const std::string& id, const ParamMap& params) const {
    const PrimitiveEntry* e = find(id);
    if (!e) throw std::invalid_argument("unknown catalog entry " + id);
    return instantiate(*e, params);
  }

  /// Parameter assignments used by the self test: every free parameter at
  /// its minimal admissible value and at the next one, all combinations.
  std::vector<ParamMap> test_instantiations(const PrimitiveEntry& entry, int rank_cap = 24) const {
    // rank parameters are driven by the diagram; the rest enumerate freely
    std::vector<ParamMap> admissible;
    std::vector<ParamMap> frontier = {{}};
    for (const auto& p : entry.params) {
      std::vector<ParamMap> next;
      for (const auto& base : frontier)
        for (Int v = 1; v <= rank_cap; ++v) {
          ParamMap env = base;
          env[p] = v;
          next.push_back(std::move(env));
        }
      frontier = std::move(next);
    }
    for (auto& env : frontier) {
      if (!entry.admissible(env)) continue;
      Int total = 0;
      for (const auto& [fam, rk] : entry.diagram) {
        (void)fam;
        total += catalog_detail::eval_expr(rk, env);
      }
      if (total <= rank_cap) admissible.push_back(env);
    }
    if (admissible.empty()) return {{}};  // parameterless entry

    // parameters determined by an equation enumerate implicitly; the free
    // ones take their two smallest admissible values, all combinations
    std::set<std::string> derived;
    for (const auto& text : entry.constraints) {
      size_t p = text.find("==");
      if (p == std::string::npos) continue;
      std::string lhs = text.substr(0, p);
      if (std::find(entry.params.begin(), entry.params.end(), lhs) != entry.params.end())
        derived.insert(lhs);
    }
    std::map<std::string, std::set<Int>> chosen;
    for (const auto& p : entry.params) {
      if (derived.count(p)) continue;
      std::set<Int> values;
      for (const auto& env : admissible) values.insert(env.at(p));
      auto it = values.begin();
      chosen[p].insert(*it);
      if (++it != values.end()) chosen[p].insert(*it);
    }
    std::vector<ParamMap> out;
    for (const auto& env : admissible) {
      bool keep = true;
      for (const auto& p : entry.params)
        if (!derived.count(p) && !chosen[p].count(env.at(p))) keep = false;
      if (keep) out.push_back(env);
    }
    return out;
  }

  /// Unify a cuspidal indecomposable system against the catalog, over
  /// parameters and diagram automorphisms.
  std::variant<MatchResult, NoMatch> match(const SphericalSystem& sys) const {
    if (sys.sigma.size() <= 2)
      return NoMatch{"external: rank <= 2 tables"};
    const auto& comps = sys.rs->diagram().components();
    auto autos = sys.rs->diagram().automorphisms();

    for (const auto& entry : entries_) {
      if (entry.diagram.size() != comps.size()) continue;
      // assign rank parameters from query components, in template order
      std::vector<std::vector<int>> comp_orders;
      if (comps.size() == 1) {
        comp_orders = {{0}};
      } else {
        comp_orders = {{0, 1}, {1, 0}};
      }
      for (const auto& order : comp_orders) {
        bool fam_ok = true;
        ParamMap bound;
        for (size_t k = 0; k < entry.diagram.size(); ++k) {
          if (entry.diagram[k].first != comps[order[k]].family) {
            fam_ok = false;
            break;
          }
          const std::string& rk = entry.diagram[k].second;
          bool is_var = std::isalpha(static_cast<unsigned char>(rk[0]));
          if (is_var) {
            auto it = bound.find(rk);
            if (it != bound.end() && it->second != comps[order[k]].rank) {
              fam_ok = false;
              break;
            }
            bound[rk] = comps[order[k]].rank;
          } else if (catalog_detail::eval_expr(rk, {}) != comps[order[k]].rank) {
            fam_ok = false;
            break;
          }
        }
        if (!fam_ok) continue;

        // remaining parameters: bounded enumeration
        std::vector<std::string> free_params;
        for (const auto& p : entry.params)
          if (!bound.count(p)) free_params.push_back(p);
        const Int cap = sys.rs->rank() + 2;
        std::vector<ParamMap> assignments = {bound};
        for (const auto& p : free_params) {
          std::vector<ParamMap> next;
          for (const auto& base : assignments)
            for (Int v = 1; v <= cap; ++v) {
              ParamMap env = base;
              env[p] = v;
              next.push_back(std::move(env));
            }
          assignments = std::move(next);
        }
        for (const auto& env : assignments) {
          if (!entry.admissible(env)) continue;
          InstantiatedEntry inst = instantiate(entry, env);
          if (inst.system.rs->diagram() != sys.rs->diagram()) continue;
          for (const auto& perm : autos) {
            std::vector<int> sp;
            for (int a : inst.system.sp) sp.push_back(perm[a]);
            std::sort(sp.begin(), sp.end());
            std::vector<RootVector> sigma;
            for (const auto& g : inst.system.sigma) sigma.push_back(sys.rs->apply_perm(perm, g));
            std::sort(sigma.begin(), sigma.end());
            if (sp == sys.sp && sigma == sys.sigma)
              return MatchResult{entry.id, env, perm};
          }
        }
      }
    }
    return NoMatch{"no catalog entry matches"};
  }

private:
  int version_ = 0;
  std::vector<PrimitiveEntry> entries_;
};

}  // namespace sphere
