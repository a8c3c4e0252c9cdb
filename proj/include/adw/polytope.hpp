#pragma once

#include <optional>
#include <vector>

#include "adw/interval.hpp"
#include "adw/linalg.hpp"

namespace adw {

// The real component of our convex bodies is always a centrally symmetric
// polytope: a coordinate box intersected with a few evaluation slabs,
//   { x : |x_k| <= box_k,  |<c_j, x>| <= b_j }.
// This module provides its support function and exact volume.

struct SlabSystem {
  std::vector<Rat> box;                    // per-coordinate box bounds
  std::vector<std::vector<Rat>> slab_c;    // slab normal vectors
  std::vector<Rat> slab_b;                 // slab bounds
  int dim() const { return static_cast<int>(box.size()); }
};

// Interval version (transcendental evaluation points).
struct SlabSystemIv {
  std::vector<Rat> box;
  std::vector<std::vector<Ival>> slab_c;
  std::vector<Rat> slab_b;
  int dim() const { return static_cast<int>(box.size()); }
};

// Support function h(u) = max { <u, x> : x in the polytope }, exact.
// Works by enumerating candidate tight sets: j slab rows plus dim-j box
// faces; intended for a small number of slabs (j <= 4 or so).
Rat support_function(const SlabSystem& s, const std::vector<Rat>& u);

// Sound enclosure of the support function for interval slab normals.
Ival support_function(const SlabSystemIv& s, const std::vector<Rat>& u,
                      mpfr_prec_t prec);

// Largest r_k with r_k * e_k inside the polytope (per-coordinate inradius);
// gives the coercivity bound h(u) >= max_k r_k |u_k|.
std::vector<Rat> coordinate_inradii(const SlabSystem& s);
std::vector<Ival> coordinate_inradii(const SlabSystemIv& s, mpfr_prec_t prec);

// Exact Euclidean volume (Lasserre recursion with a box fast path).
Rat polytope_volume(const SlabSystem& s);

// All vertices, exact (rational data).  Intended for small dimensions; the
// dual-body gauge is the max of |<v, .>| over these.
std::vector<std::vector<Rat>> polytope_vertices(const SlabSystem& s);

// Vertex enclosures for interval data.  `certain` marks candidates whose
// feasibility is certified (sound lower bounds); all candidates together
// cover every true vertex (sound upper bounds).
struct VertexEnclosure {
  std::vector<Ival> x;
  bool certain = true;
};
std::vector<VertexEnclosure> polytope_vertices(const SlabSystemIv& s,
                                               mpfr_prec_t prec);

}  // namespace adw
