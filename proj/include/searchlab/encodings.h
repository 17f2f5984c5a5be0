#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "searchlab/error.h"
#include "searchlab/graph.h"
#include "searchlab/samplers.h"

namespace searchlab {

template <typename Scalar>
using EncodingMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using BinaryMatrix = EncodingMatrix<std::uint8_t>;

// Which offsets the identity columns compare against.
enum class IdentityColumns {
  // Column j compares w_i with w_{i-j} for j = 0..s-1. Column 0 is the
  // self-comparison and therefore 1 on every row i >= 1.
  kLiteral,
  // Column j-1 compares w_i with w_{i-j} for j = 1..s.
  kShifted,
};

// id[i, j] = 1 iff i >= 1, i - j >= 0 and seq[i] == seq[i - j]; shape
// (len) x s. Row 0 stays zero.
template <typename Scalar = std::uint8_t>
EncodingMatrix<Scalar> identity_encoding(
    std::span<const NodeId> seq, int window,
    IdentityColumns columns = IdentityColumns::kLiteral) {
  if (window < 1)
    throw Error(ErrorCode::kInvalidArgument,
                "identity encoding needs window >= 1");
  const Eigen::Index rows = static_cast<Eigen::Index>(seq.size());
  EncodingMatrix<Scalar> id = EncodingMatrix<Scalar>::Zero(rows, window);
  const int shift = columns == IdentityColumns::kLiteral ? 0 : 1;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (int col = 0; col < window; ++col) {
      const Eigen::Index j = col + shift;
      if (i >= 1 && i - j >= 0 && seq[i] == seq[i - j]) id(i, col) = Scalar(1);
    }
  }
  return id;
}

// adj[i, j-1] = 1 iff i - j >= 0 and (seq[i], seq[i - j]) is an edge of g,
// for j = 1..s-1; shape (len) x (s-1). The sequence need not be a walk.
template <typename Scalar = std::uint8_t>
EncodingMatrix<Scalar> adjacency_encoding(const Graph &g,
                                          std::span<const NodeId> seq,
                                          int window) {
  if (window < 2)
    throw Error(ErrorCode::kInvalidArgument,
                "adjacency encoding needs window >= 2");
  for (NodeId v : seq)
    if (!g.contains(v))
      throw Error(ErrorCode::kMismatch,
                  "sequence node " + std::to_string(v) + " not in graph");
  const Eigen::Index rows = static_cast<Eigen::Index>(seq.size());
  EncodingMatrix<Scalar> adj = EncodingMatrix<Scalar>::Zero(rows, window - 1);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 1; j < window; ++j) {
      if (i - j >= 0 && g.has_edge(seq[i], seq[i - j])) adj(i, j - 1) = Scalar(1);
    }
  }
  return adj;
}

struct PosEncoding {
  BinaryMatrix identity;   // (len) x s
  BinaryMatrix adjacency;  // (len) x (s-1)
  int window = 0;

  // [identity | adjacency], d_pe = 2s - 1 columns.
  BinaryMatrix concatenated() const;
  int d_pe() const noexcept {
    return static_cast<int>(identity.cols() + adjacency.cols());
  }
};

PosEncoding walk_encoding(const Graph &g, const WalkRecord &walk, int window,
                          IdentityColumns columns = IdentityColumns::kLiteral);

// Searches carry only the adjacency block.
BinaryMatrix search_encoding(const Graph &g, const SearchRecord &search,
                             int window);

// First-appearance relabelling: the first new node gets 1, the next new node
// 2, and repeated nodes reuse their label.
std::vector<int> anonymous_encoding(std::span<const NodeId> seq);

// tag[v] in 1..n, assigned by first-visit order of one search and shared by
// every search of the same sample set.
struct TagMap {
  std::vector<int> tags;

  int operator()(NodeId v) const { return tags.at(v); }
  std::vector<int> apply(std::span<const NodeId> seq) const;
};

TagMap anonymous_tags(const SearchRecord &first_search);

}  // namespace searchlab
