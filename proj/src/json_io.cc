#include "searchlab/json_io.h"

#include "searchlab/error.h"

namespace searchlab {

Json to_json(const SampleSet &set) {
  Json j;
  j["kind"] = to_string(set.kind);
  j["seed"] = set.seed;
  Json items = Json::array();
  if (set.kind == SampleKind::kWalks) {
    for (const WalkRecord &w : set.walks) {
      Json item;
      item["nodes"] = w.nodes;
      item["start"] = w.start;
      item["policy"] = to_string(w.policy);
      items.push_back(std::move(item));
    }
  } else {
    for (const SearchRecord &s : set.searches) {
      Json item;
      item["visit_order"] = s.visit_order;
      Json tree = Json::array();
      for (auto [p, c] : s.tree_edges) tree.push_back({p, c});
      item["tree_edges"] = std::move(tree);
      item["root"] = s.root;
      items.push_back(std::move(item));
    }
  }
  j["items"] = std::move(items);
  return j;
}

SampleSet sample_set_from_json(const Json &j) {
  try {
    SampleSet set;
    set.kind = parse_sample_kind(j.at("kind").get<std::string>());
    set.seed = j.at("seed").get<std::uint64_t>();
    for (const Json &item : j.at("items")) {
      if (set.kind == SampleKind::kWalks) {
        WalkRecord w;
        w.nodes = item.at("nodes").get<std::vector<NodeId>>();
        w.start = item.at("start").get<NodeId>();
        if (item.contains("policy"))
          w.policy = parse_walk_policy(item["policy"].get<std::string>());
        set.walks.push_back(std::move(w));
      } else {
        SearchRecord s;
        s.visit_order = item.at("visit_order").get<std::vector<NodeId>>();
        for (const Json &e : item.at("tree_edges"))
          s.tree_edges.emplace_back(e.at(0).get<NodeId>(), e.at(1).get<NodeId>());
        s.root = item.at("root").get<NodeId>();
        set.searches.push_back(std::move(s));
      }
    }
    return set;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kParse, std::string("sample set JSON: ") + e.what());
  }
}

Json to_json(const BinaryMatrix &m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(int{m(i, k)});
    data.push_back(std::move(row));
  }
  return Json{{"shape", {m.rows(), m.cols()}}, {"data", std::move(data)}};
}

Json to_json(const PosEncoding &pe) {
  return Json{{"window", pe.window},
              {"d_pe", pe.d_pe()},
              {"identity", to_json(pe.identity)},
              {"adjacency", to_json(pe.adjacency)}};
}

Json to_json(const BoundResult &bound) {
  return Json{{"C", bound.query.c},
              {"n", bound.query.n},
              {"d_max", bound.query.d_max},
              {"delta", bound.query.delta},
              {"m_required", bound.m_required},
              {"raw", bound.raw},
              {"degenerate", bound.degenerate}};
}

Json to_json(const Verdict &verdict) {
  return Json{{"test", verdict.test.name()},
              {"result", verdict.distinguished ? "distinguished" : "inconclusive"},
              {"rounds_to_stable", verdict.rounds_to_stable}};
}

Json to_json(const ReconstructionReport &report) {
  return Json{{"n", report.n},
              {"m", report.m},
              {"s", report.window},
              {"missing_count", report.missing.size()},
              {"spurious_count", report.spurious.size()},
              {"exact", report.exact}};
}

Json to_json(const CoverTimeReport &report) {
  return Json{{"mean", report.mean},
              {"q10", report.q10},
              {"q50", report.q50},
              {"q90", report.q90},
              {"censored", report.censored},
              {"cap", report.cap},
              {"trials", report.steps.size()}};
}

Json to_json(const EdgeInclusion &inclusion) {
  Json j{{"edge", {inclusion.edge.u, inclusion.edge.v}},
         {"probability", inclusion.probability}};
  if (inclusion.exact) j["exact"] = inclusion.exact->str();
  j["tau_bound"] = inclusion.bounds.tau_bound.str();
  j["degree_bound"] = inclusion.bounds.degree_bound.str();
  j["dmax_bound"] = inclusion.bounds.dmax_bound.str();
  j["bound_holds"] = inclusion.bound_holds;
  return j;
}

Json to_json(const Partition &partition) { return partition.blocks(); }

}  // namespace searchlab
