#pragma once

// Depth-limited pictures of a topograph around its root edge.
//
// The root edge separates the faces Q(e1) (left) and Q(e2) (right). Above it
// grows the tree of L/R turns of Q; below it the same tree for Q(x, -y),
// whose root vertex is the other end of the root edge. Every vertex opens a
// new face between its two children; that value is drawn in the wedge.

#include <string>
#include <vector>

#include "conway/topograph.hpp"

namespace conway {

struct TopographVertex {
  TurnWord word;       // turns from the root vertex of its half
  bool lower = false;  // in the Q(x, -y) half
  SuperbaseTriple triple;
  int parent = -1;     // index into the vertex list; -1 for the two root vertices
  bool river_edge = false;  // the edge to the parent separates opposite signs
};

struct TopographNeighborhood {
  QuadraticForm form;
  int depth = 0;
  bool root_edge_on_river = false;
  std::vector<TopographVertex> vertices;  // breadth first, upper root first
};

/// Vertices up to `depth` turns from the root edge, 0 <= depth <= 12.
TopographNeighborhood topograph_neighborhood(const QuadraticForm& q, int depth);

std::string render_dot(const TopographNeighborhood& nb);
std::string render_svg(const TopographNeighborhood& nb);

}  // namespace conway
