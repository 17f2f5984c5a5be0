#include "searchlab/encodings.h"

#include <unordered_map>

namespace searchlab {

BinaryMatrix PosEncoding::concatenated() const {
  BinaryMatrix out(identity.rows(), identity.cols() + adjacency.cols());
  out << identity, adjacency;
  return out;
}

PosEncoding walk_encoding(const Graph &g, const WalkRecord &walk, int window,
                          IdentityColumns columns) {
  PosEncoding pe;
  pe.window = window;
  pe.identity = identity_encoding(walk.nodes, window, columns);
  pe.adjacency = adjacency_encoding(g, walk.nodes, window);
  return pe;
}

BinaryMatrix search_encoding(const Graph &g, const SearchRecord &search,
                             int window) {
  return adjacency_encoding(g, search.visit_order, window);
}

std::vector<int> anonymous_encoding(std::span<const NodeId> seq) {
  if (seq.empty())
    throw Error(ErrorCode::kInvalidArgument,
                "anonymous encoding of an empty sequence");
  std::unordered_map<NodeId, int> label;
  std::vector<int> out;
  out.reserve(seq.size());
  for (NodeId v : seq) {
    auto [it, fresh] = label.try_emplace(v, static_cast<int>(label.size()) + 1);
    out.push_back(it->second);
  }
  return out;
}

std::vector<int> TagMap::apply(std::span<const NodeId> seq) const {
  std::vector<int> out;
  out.reserve(seq.size());
  for (NodeId v : seq) out.push_back(tags.at(v));
  return out;
}

TagMap anonymous_tags(const SearchRecord &first_search) {
  const auto &order = first_search.visit_order;
  TagMap map;
  map.tags.assign(order.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const NodeId v = order[i];
    if (v < 0 || static_cast<std::size_t>(v) >= order.size() || map.tags[v])
      throw Error(ErrorCode::kInvalidArgument,
                  "anonymous tags need a search covering every node once");
    map.tags[v] = static_cast<int>(i) + 1;
  }
  return map;
}

}  // namespace searchlab
