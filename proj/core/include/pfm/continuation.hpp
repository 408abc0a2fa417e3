// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pfm/frobenius.hpp"

namespace pfm {

struct Waypoint {
  BigComplex location;
  bool is_anchor = false;   // expansion point; otherwise a common evaluation point
  BigFloat ratio_prev;      // hop ratio toward the previous anchor (common points)
  BigFloat ratio_next;      // hop ratio toward the next anchor
};

struct PathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ContinuationConfig {
  unsigned precision = 60;
  int terms = 80;
  BigFloat tol = BigFloat("1e-20");
  int max_terms = 6000;
  unsigned max_precision = 700;
  double ratio_cap = 0.6;
  double ladder = 3.0;
};

// Chain of anchors (expansion points) and common evaluation points from
// z_from to z_to, alternating anchor, common, anchor, ..., anchor. The
// endpoints are included as the first and last anchors; an empty chain is
// returned when the endpoints coincide. Deterministic.
std::vector<Waypoint> plan_waypoints(const BigComplex& z_from, const BigComplex& z_to,
                                     const std::vector<BigComplex>& singularities,
                                     double ratio_cap = 0.6, double ladder = 3.0);

struct TransitionMatrix {
  CMatrix m;  // W_from = m * W_to at the common point
  BigFloat error_estimate;
};

TransitionMatrix transition_matrix(const FrobeniusBasis& from, const FrobeniusBasis& to,
                                   const BigComplex& zeta, const BranchRecord& branch_from,
                                   const BranchRecord& branch_to);

// Plans waypoints, builds bases along the chain and composes transitions,
// doubling the truncation (and raising precision) until every entry
// stabilizes within cfg.tol. Branch records at the two endpoint bases start
// from arg_from / arg_to and are threaded continuously along the chain.
TransitionMatrix connect(const Operator& op, const ExpansionPoint& from,
                         const ExpansionPoint& to, const ContinuationConfig& cfg,
                         const std::vector<BigComplex>& singularities,
                         const BigFloat& arg_from, const BigFloat& arg_to);

// Convenience: computes singularities and endpoint args by the standard
// below-axis convention (principal argument, -pi on the negative real axis).
TransitionMatrix connect(const Operator& op, const ExpansionPoint& from,
                         const ExpansionPoint& to, const ContinuationConfig& cfg);

// Initial-argument convention for a path leaving `center` toward `toward`.
BigFloat initial_arg(const BigComplex& toward_minus_center);

// Distance from p to the nearest listed singularity, ignoring entries
// closer than `exclude_within` (used to skip p itself).
BigFloat local_radius(const BigComplex& p, const std::vector<BigComplex>& singularities,
                      const BigFloat& exclude_within);

std::vector<BigComplex> singular_locations(const Operator& op, unsigned digits);

}  // namespace pfm
