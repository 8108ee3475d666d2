#include "boolsketch/json_io.hpp"

#include "boolsketch/errors.hpp"

namespace boolsketch {

namespace {

std::size_t dimension_of(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_unsigned()) {
    throw InvalidArgument("json: expected an object with a non-negative integer \"n\"");
  }
  return j["n"].get<std::size_t>();
}

std::vector<std::size_t> indices_of(const Json& list, std::size_t n) {
  if (!list.is_array()) throw InvalidArgument("json: expected an index array");
  std::vector<std::size_t> out;
  for (const auto& v : list) {
    if (!v.is_number_unsigned()) throw InvalidArgument("json: indices must be positive integers");
    const auto i = v.get<std::size_t>();
    if (i < 1 || i > n) throw InvalidArgument("json: index out of range");
    out.push_back(i - 1);
  }
  return out;
}

}  // namespace

Json to_json(const ParitySet& s) {
  Json out = Json::array();
  for (std::size_t i : s.indices()) out.push_back(i + 1);
  return out;
}

Json to_json(const SparsePolynomial& f) {
  Json terms = Json::array();
  for (const auto& [set, coeff] : f.terms()) {
    terms.push_back({{"set", to_json(set)}, {"coeff", coeff}});
  }
  return {{"n", f.dimension()}, {"terms", std::move(terms)}};
}

SparsePolynomial polynomial_from_json(const Json& j) {
  const std::size_t n = dimension_of(j);
  if (!j.contains("terms") || !j["terms"].is_array()) {
    throw InvalidArgument("json: polynomial needs a \"terms\" array");
  }
  SparsePolynomial f(n);
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("set") || !t.contains("coeff") ||
        !t["coeff"].is_number()) {
      throw InvalidArgument("json: each term needs \"set\" and numeric \"coeff\"");
    }
    const auto idx = indices_of(t["set"], n);
    f.add(ParitySet::from_indices(n, idx), t["coeff"].get<double>());
  }
  return f;
}

Json to_json(const Hypergraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) {
    Json edge = Json::array();
    for (Vertex v : e) edge.push_back(v + 1);
    edges.push_back(std::move(edge));
  }
  return {{"n", g.vertex_count()}, {"edges", std::move(edges)}};
}

Hypergraph hypergraph_from_json(const Json& j) {
  const std::size_t n = dimension_of(j);
  if (!j.contains("edges") || !j["edges"].is_array()) {
    throw InvalidArgument("json: hypergraph needs an \"edges\" array");
  }
  Hypergraph g(n);
  for (const auto& e : j["edges"]) {
    Edge edge;
    for (std::size_t v : indices_of(e, n)) edge.push_back(static_cast<Vertex>(v));
    g.add_edge(std::move(edge));
  }
  return g;
}

Json to_json(const LearnOutcome& outcome) {
  const auto& d = outcome.diagnostics;
  Json candidates = Json::array();
  for (const auto& s : outcome.candidates) candidates.push_back(to_json(s));
  return {{"polynomial", to_json(outcome.v_opt)},
          {"candidates", std::move(candidates)},
          {"beta", outcome.beta},
          {"diagnostics",
           {{"n_max", d.n_max},
            {"rank_y", d.rank_y},
            {"eta", d.eta},
            {"m1", d.m1_used},
            {"m", d.m_used},
            {"attempts", d.attempts},
            {"solver", d.solver},
            {"objective", d.objective},
            {"residual", d.residual}}}};
}

Json to_json(const SketchResult& result) {
  const auto& d = result.diagnostics;
  Json classes = Json::array();
  for (const auto& c : d.classes) {
    Json cls = Json::array();
    for (Vertex v : c) cls.push_back(v + 1);
    classes.push_back(std::move(cls));
  }
  return {{"c0", result.c0},
          {"d", result.d_est},
          {"polynomial", to_json(result.polynomial)},
          {"edges", to_json(result.edges)},
          {"diagnostics",
           {{"n_max", d.n_max},
            {"m1", d.m1},
            {"attempts", d.attempts},
            {"degenerate", d.degenerate},
            {"classes", std::move(classes)}}}};
}

Json to_json(const RecoveryResult& result, const CandidateSet& candidates) {
  Json sets = Json::array();
  for (const auto& s : candidates) sets.push_back(to_json(s));
  return {{"candidates", std::move(sets)},
          {"beta", result.beta},
          {"objective", result.objective},
          {"residual", result.residual},
          {"tolerance", result.tolerance},
          {"status", result.status == RecoveryStatus::kOptimal ? "optimal" : "infeasible"},
          {"method", result.method}};
}

Json to_json(const WindowGraph& window, const WindowSpec& spec) {
  const auto& d = window.diagnostics;
  return {{"day", spec.day},
          {"index", spec.index},
          {"dt", spec.dt},
          {"start", spec.index * spec.dt},
          {"zipcodes", spec.zipcodes},
          {"ambient", spec.ambient},
          {"nodes", window.nodes},
          {"records", d.records},
          {"transmitters", d.transmitters},
          {"dropped_singletons", d.dropped_singletons},
          {"merged_duplicates", d.merged_duplicates},
          {"hypergraph", to_json(window.graph)}};
}

}  // namespace boolsketch
