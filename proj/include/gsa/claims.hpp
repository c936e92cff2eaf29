#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gsa/graph_claims.hpp"
#include "gsa/ideals.hpp"
#include "gsa/io.hpp"
#include "gsa/partial_group_ring.hpp"

namespace gsa {

struct Certificate {
  std::string claim, instance_hash, field;
  std::uint64_t seed = 1;
  std::vector<Check> checks;
  std::map<std::string, std::string> info;
  bool pass = false;

  json to_json() const {
    json cs = json::array();
    for (auto& c : checks) cs.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"claim", claim}, {"instance_hash", instance_hash}, {"field", field}, {"seed", seed},
            {"checks", cs},   {"info", info},                   {"pass", pass}};
  }

  std::string to_text() const {
    std::ostringstream os;
    os << claim << " [" << field << ", seed " << seed << ", instance " << instance_hash << "]: "
       << (pass ? "PASS" : "FAIL") << "\n";
    for (auto& [k, v] : info) os << "  " << k << " = " << v << "\n";
    for (auto& c : checks)
      os << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    return os.str();
  }
};

struct ClaimRequest {
  std::string claim;
  std::optional<json> instance, graph;
  std::string group;  // for pgr
  std::string field = "q";
  std::uint64_t seed = 1;
  std::size_t cap_paths = 2;
  std::size_t cap_bisections = 20000;
  std::optional<std::vector<std::string>> subset;  // invariant U, default the whole space
};

inline const std::vector<std::string>& known_claims() {
  static const std::vector<std::string> c{"thm26", "prop36", "prop312", "pgr",     "cor43",
                                          "cor45", "lemma44", "lemma41", "lemma31", "lemma33"};
  return c;
}

namespace detail {

inline void take(Certificate& c, const std::vector<Check>& cs, const std::string& prefix = "") {
  for (auto& x : cs) c.checks.push_back({prefix + x.name, x.pass, x.detail});
}

inline IndexSet chosen_subset(const SetPartialAction& a, const ClaimRequest& req) {
  if (!req.subset) return a.space()->all();
  return a.space()->subset(*req.subset);
}

inline SetPartialAction need_instance(const ClaimRequest& req) {
  require(req.instance.has_value(), ErrorKind::Parse, req.claim + " needs --instance");
  return parse_instance(*req.instance);
}

inline Graph need_graph(const ClaimRequest& req) {
  require(req.graph.has_value(), ErrorKind::Parse, req.claim + " needs --graph");
  return parse_graph(*req.graph);
}

}  // namespace detail

inline Certificate run_claim(const ClaimRequest& req) {
  Certificate cert;
  cert.claim = req.claim;
  cert.seed = req.seed;
  Ring ring = Ring::parse(req.field);
  cert.field = ring.name();
  json hashed = {{"claim", req.claim}};
  if (req.instance) hashed["instance"] = *req.instance;
  if (req.graph) hashed["graph"] = *req.graph;
  if (!req.group.empty()) hashed["group"] = req.group;
  if (req.subset) hashed["subset"] = *req.subset;
  cert.instance_hash = content_hash(hashed);
  const std::string& c = req.claim;

  if (c == "thm26" || c == "prop36" || c == "prop312" || c == "lemma33" || (c == "lemma31" && req.instance)) {
    SetPartialAction a = detail::need_instance(req);
    ActionReport ar = validate_group_action(a);
    cert.checks.push_back({"instance is a partial action", ar.pass, ar.pass ? "" : ar.axiom + ": " + ar.witness});
    if (!ar.pass) return cert;
    if (c == "thm26") {
      IndexSet U = detail::chosen_subset(a, req);
      Thm26Result r = thm26(transformation_groupoid(a), U, ring, req.cap_bisections, req.seed);
      detail::take(cert, r.checks);
      cert.info["U"] = a.space()->format(U);
      cert.info["rank"] = std::to_string(verify_graded_hom(r.f, false).rank);
      cert.info["arrows"] = std::to_string(r.restricted->size());
    } else if (c == "prop36") {
      IndexSet U = detail::chosen_subset(a, req);
      Prop36Result r = prop36(a, U, ring, req.cap_bisections, req.seed);
      detail::take(cert, r.checks);
      cert.info["U"] = a.space()->format(U);
      cert.info["dim"] = std::to_string(r.skew.algebra->dim());
    } else if (c == "prop312") {
      CorrespondenceReport r = correspondence_check(a, ring, 20, req.seed);
      detail::take(cert, r.checks);
      cert.info["invariant_subsets"] = std::to_string(r.invariant_subsets.size());
      cert.info["graded_ideals"] = std::to_string(r.graded_ideals.size());
      std::string m;
      for (std::size_t i = 0; i < r.invariant_subsets.size(); ++i)
        m += (i ? " " : "") + a.space()->format(r.invariant_subsets[i]) + "->" +
             (r.matching[i] < r.graded_ideals.size() ? std::to_string(r.graded_ideals[r.matching[i]].dim()) : "?");
      cert.info["matching"] = m;
    } else if (c == "lemma33") {
      SkewRing R = skew_group_ring(a, ring);
      const FiniteAlgebra& A = *R.algebra;
      Check q{"every homogeneous basis element has a graded quasi-inverse", true, ""};
      for (std::size_t i = 0; i < A.dim(); ++i) {
        auto y = graded_quasi_inverse(A, A.basis(i));
        if (!y || A.mul(A.mul(A.basis(i), *y), A.basis(i)) != A.basis(i)) {
          q.pass = false;
          q.detail = A.label(i);
        }
      }
      cert.checks.push_back(q);
      cert.info["dim"] = std::to_string(A.dim());
    } else {
      const Group& G = *a.group();
      GroupPtr T = Group::cyclic(1);
      GroupHom psi = G.kind() == GroupKind::Free ? GroupHom::letter_count(a.group(), Group::integers())
                     : G.is_finite() ? GroupHom::from_table(a.group(), T, std::vector<GroupElem>(G.order(), T->identity()))
                                     : GroupHom::on_generators(a.group(), T, {T->identity()});
      InduceResult r = induce_via_hom(a, psi);
      cert.checks.push_back({"direct and kernel conditions agree", r.kernel_route_agrees, r.detail});
      cert.info["obstruction"] = r.obstruction ? G.format(*r.obstruction) : "none";
    }
  } else if (c == "pgr") {
    GroupPtr G = parse_group_spec(req.group.empty() ? "zmod:2" : req.group);
    PartialGroupRing P = build_PG(G, ring);
    detail::take(cert, P.checks);
    cert.info["dim_A_eps"] = std::to_string(P.a_eps.size());
    cert.info["dim_PG"] = std::to_string(P.PG.algebra->dim());
  } else if (c == "cor43" || c == "cor45") {
    Graph g = detail::need_graph(req);
    GraphCertificate gc = c == "cor43" ? verify_cor43(g, ring, req.cap_paths, req.cap_bisections, req.seed)
                                       : verify_cor45(g, ring, req.cap_paths, req.cap_bisections, req.seed);
    cert.checks = gc.checks;
    cert.info = gc.info;
  } else if (c == "lemma44") {
    Graph g = detail::need_graph(req);
    StarReport s = check_star_injective(g);
    cert.info["star_injective"] = s.star_injective ? "true" : "false";
    cert.info["witness"] = s.witness_vertex ? g.vertex(*s.witness_vertex) : "none";
    cert.info["mode"] = s.mode;
    cert.checks.push_back({"degree test agrees with Star(x) search", s.agree, s.brute_force_witness});
  } else if (c == "lemma41") {
    Graph g = detail::need_graph(req);
    if (g.is_acyclic()) {
      Lemma41Report r = lemma41_canonical(g, ring);
      cert.checks.push_back({"generator relations", r.report.relations, r.report.relation_witness});
      cert.checks.push_back({"hypothesis pi(v) != 0", r.report.hypothesis,
                             r.report.witness_vertex ? g.vertex(*r.report.witness_vertex) : ""});
      cert.checks.push_back({"kernel trivial", r.report.kernel_dim == std::optional<std::size_t>(0),
                             "kernel dimension " + std::to_string(r.report.kernel_dim.value_or(0))});
      cert.info["dim_L"] = std::to_string(r.dim_L);
      cert.info["injectivity"] = "exact rank";
    } else {
      detail::take(cert, symbolic_hom_checks(g, ring, req.cap_paths));
      cert.checks.push_back({"hypothesis pi(v) != 0", true, "every Z(v) is a nonempty cylinder"});
      cert.info["injectivity"] = "asserted";
    }
  } else if (c == "lemma31") {
    Graph g = detail::need_graph(req);
    std::vector<std::string> names;
    for (auto& e : g.edges()) names.push_back(e.name);
    if (g.is_acyclic()) {
      ExplicitGraph eg = explicit_graph(g);
      InduceResult r = induce_via_hom(theta_action(eg), GroupHom::letter_count(eg.free, eg.integers));
      cert.checks.push_back({"direct and kernel conditions agree", r.kernel_route_agrees, r.detail});
      cert.info["obstruction"] = r.obstruction ? eg.free->format(*r.obstruction) : "none";
    } else {
      GroupPtr F = Group::free_group(names);
      auto ob = theta_kernel_obstruction(g, F, std::max<std::size_t>(req.cap_paths, 1));
      cert.checks.push_back({"obstruction iff some vertex receives two edges", ob.has_value() == degree_witness(g).has_value(), ""});
      cert.info["obstruction"] = ob ? F->format(*ob) : "none";
    }
  } else {
    fail(ErrorKind::Parse, "unknown claim '" + c + "'");
  }
  cert.pass = all_pass(cert.checks);
  return cert;
}

}  // namespace gsa
